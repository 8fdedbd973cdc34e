#pragma once

#include <optional>
#include <vector>

#include "arrlog/logmodule.hpp"

namespace arrlog {

/// rho^H: D^p(A) -> D^p(A^H). Keeps the coefficients theta_J with J free of
/// the pivot of H and restricts them; throws NotLogarithmic when theta is
/// not in D^p(A) and `verify` is set.
template <class F>
CoeffVector<F> euler_restrict_der(const CoeffVector<F>& theta, const Arrangement<F>& a, const Restriction<F>& r,
                                  bool verify = true);
template <class F>
CoeffVector<F> euler_restrict_der(const CoeffVector<F>& theta, const Arrangement<F>& a, std::size_t i);

/// res_H: Omega^p(A') -> Omega^p(A'^H) for a hyperplane H not in A'. Pulls
/// the form back to H and clears the repeated trace factors of Q(A') by exact
/// division; throws NotLogarithmic when that division fails or, with
/// `verify`, when omega is not in Omega^p(A').
template <class F>
CoeffVector<F> restrict_form(const CoeffVector<F>& omega, const Arrangement<F>& a_prime, const Restriction<F>& r,
                             bool verify = true);
template <class F>
CoeffVector<F> restrict_form(const CoeffVector<F>& omega, const Arrangement<F>& a_prime, const Vec<F>& h);

/// All coefficients concatenated, for rank computations.
template <class F>
Vec<F> flatten(const CoeffVector<F>& v);

struct SurjectivityStep {
  int degree = 0;
  std::size_t source_dim = 0;
  std::size_t image_dim = 0;
  std::size_t target_dim = 0;
};

struct SurjectivityVerdict {
  bool surjective = false;
  std::vector<int> target_generator_degrees;
  std::vector<SurjectivityStep> ledger;
  std::optional<int> first_failure;  // lowest target generator degree that is not hit
};

/// rho^H on D^p(A) for H = A[i]. Target generators are searched in
/// [0, |A^H|] unless a range is given; the ledger covers their degrees.
template <class F>
SurjectivityVerdict surjectivity_check_der(const Arrangement<F>& a, std::size_t i, int p,
                                           std::optional<std::pair<int, int>> range = std::nullopt);

/// res_H on Omega^1(A'), with the source given by any module whose elements
/// are the logarithmic forms of A' (direct solve or a free basis).
template <class F>
SurjectivityVerdict surjectivity_check_forms(const ElementModule<F>& source, const Arrangement<F>& a_prime,
                                             const Vec<F>& h,
                                             std::optional<std::pair<int, int>> range = std::nullopt);

/// Same, with the target module and its generators already known.
template <class F>
SurjectivityVerdict surjectivity_check_forms(const ElementModule<F>& source, const Arrangement<F>& a_prime,
                                             const Restriction<F>& r, const ElementModule<F>& target,
                                             const std::vector<int>& target_generator_degrees);

/// For omega in Omega^1(A) and H = A[i]: the coefficient of d alpha_H,
/// restricted to H, is divisible by the product of the forms of A^H.
template <class F>
bool preparation_check(const CoeffVector<F>& omega, const Arrangement<F>& a, std::size_t i);

}  // namespace arrlog
