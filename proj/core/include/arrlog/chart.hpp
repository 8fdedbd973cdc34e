#pragma once

#include <map>
#include <vector>

#include "arrlog/poly.hpp"

namespace arrlog {

/// Truncated expansion of a polynomial around a hyperplane alpha = t:
/// layer[k] is the coefficient of t^k, a polynomial of degree `degree - k`
/// in the l-1 coordinates of the hyperplane. Only t^0 .. t^(m-1) are kept.
template <class F>
struct Layered {
  int degree = 0;
  std::vector<HomPoly<F>> layer;
};

/// Coordinates adapted to a hyperplane alpha with pivot p (its first nonzero
/// coefficient): x_j for j != p stay, and x_p = L(x') + t / a_p with
/// L = -sum_{j != p} (a_j / a_p) x_j. Setting t = 0 is the restriction to
/// alpha = 0, matching the embedding used by the arrangement restriction.
template <class F>
class Chart {
 public:
  Chart(F field, Vec<F> alpha);

  const F& field() const { return field_; }
  int pivot() const { return pivot_; }
  int ambient_vars() const { return static_cast<int>(alpha_.size()); }
  int restricted_vars() const { return ambient_vars() - 1; }
  const Vec<F>& alpha() const { return alpha_; }

  Monomial drop_pivot(const Monomial& m) const;

  Layered<F> restrict_linear(const Vec<F>& beta, int m) const;
  Layered<F> restrict(const HomPoly<F>& h, int m) const;
  /// Restriction to the hyperplane itself (t = 0).
  HomPoly<F> pullback(const HomPoly<F>& h) const;
  Layered<F> multiply(const Layered<F>& a, const Layered<F>& b, int m) const;
  /// x_p^e in layered form; cached per truncation order. Not thread safe.
  const Layered<F>& pivot_power(int e, int m) const;

 private:
  F field_;
  Vec<F> alpha_;
  int pivot_ = 0;
  mutable std::map<int, std::vector<Layered<F>>> powers_;
};

template <class F>
Layered<F> layered_zero(const F& f, int nvars, int degree, int m);

}  // namespace arrlog
