#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "arrlog/matrix.hpp"

namespace arrlog {

constexpr int kMaxVars = 8;

/// Exponent vector; entries beyond the ambient variable count stay zero.
struct Monomial {
  std::array<std::uint16_t, kMaxVars> e{};

  int degree() const {
    int d = 0;
    for (auto x : e) d += x;
    return d;
  }
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

Monomial monomial(const std::vector<int>& exps);
Monomial mono_mul(const Monomial& a, const Monomial& b);
std::string to_string(const Monomial& m, int nvars);

/// Exact binomial coefficient; 0 outside 0 <= k <= n.
std::uint64_t binomial(long n, long k);

/// Number of monomials of degree d in nvars variables, 0 for d < 0.
std::size_t monomial_count(int nvars, int d);

/// All monomials of degree d in descending lexicographic order
/// (x1^d first). Empty for d < 0.
std::vector<Monomial> monomial_basis(int nvars, int d);

/// Position of m inside monomial_basis(nvars, deg m).
std::size_t monomial_rank(const Monomial& m, int nvars);

/// Cached view of monomial_basis for repeated lookups.
const std::vector<Monomial>& monomials_cached(int nvars, int d);

/// Homogeneous polynomial of a fixed degree stored densely in
/// monomial_basis order. Degree < 0 means the zero space.
template <class F>
struct HomPoly {
  int nvars = 0;
  int degree = 0;
  Vec<F> c;

  static HomPoly zero(const F& f, int nvars, int degree) {
    return HomPoly{nvars, degree, Vec<F>(monomial_count(nvars, degree), f.zero())};
  }
  bool is_zero() const {
    for (const auto& x : c)
      if (!F::is_zero(x)) return false;
    return true;
  }
  friend bool operator==(const HomPoly& a, const HomPoly& b) {
    return a.nvars == b.nvars && a.degree == b.degree && a.c == b.c;
  }
};

template <class F>
HomPoly<F> hp_linear(const F& f, const Vec<F>& coeffs);
template <class F>
HomPoly<F> hp_constant(const F& f, int nvars, const typename F::Elem& v);
template <class F>
HomPoly<F> hp_mul(const F& f, const HomPoly<F>& a, const HomPoly<F>& b);
/// Multiply by a single monomial.
template <class F>
HomPoly<F> hp_shift(const HomPoly<F>& a, const Monomial& m);
/// a += s * b; both of the same degree.
template <class F>
void hp_axpy(const F& f, HomPoly<F>& a, const typename F::Elem& s, const HomPoly<F>& b);
template <class F>
HomPoly<F> hp_scale(const F& f, const HomPoly<F>& a, const typename F::Elem& s);
/// Exact division by a nonzero linear form; returns false if it does not divide.
template <class F>
bool hp_divide_linear(const F& f, const HomPoly<F>& a, const Vec<F>& lin, HomPoly<F>& out);
/// Scalar c with a = c * b, if one exists (b nonzero).
template <class F>
bool hp_proportional(const F& f, const HomPoly<F>& a, const HomPoly<F>& b, typename F::Elem& c);
template <class F>
HomPoly<F> hp_product_of_linear(const F& f, int nvars, const std::vector<Vec<F>>& forms,
                                const std::vector<int>& powers);
template <class F>
std::string hp_to_string(const F& f, const HomPoly<F>& a);

/// Sparse polynomial: sorted map from monomials to nonzero coefficients.
template <class F>
class Poly {
 public:
  using Elem = typename F::Elem;

  Poly(F field, int nvars) : field_(std::move(field)), nvars_(nvars) {}
  static Poly variable(F field, int nvars, int i);
  static Poly constant(F field, int nvars, const Elem& v);
  static Poly from_hom(F field, const HomPoly<F>& h);

  const F& field() const { return field_; }
  int nvars() const { return nvars_; }
  const std::map<Monomial, Elem>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous() const;
  /// Requires homogeneity; throws NotHomogeneous otherwise.
  HomPoly<F> to_hom(int degree_if_zero = 0) const;

  void add_term(const Monomial& m, const Elem& v);
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly scaled(const Elem& s) const;
  Poly pow(int e) const;

  std::string to_string() const;
  friend bool operator==(const Poly& a, const Poly& b) {
    return a.field_ == b.field_ && a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  F field_;
  int nvars_;
  std::map<Monomial, Elem> terms_;
};

/// f(T x): x_i is replaced by sum_j T(i,j) x_j. Throws Singular if T is not invertible.
template <class F>
Poly<F> substitute_linear(const Poly<F>& f, const Matrix<F>& t);

/// Nonzero linear form; the first nonzero coefficient is its pivot.
template <class F>
struct LinearForm {
  Vec<F> coeffs;

  /// Throws ZeroForm for the zero vector.
  static LinearForm make(const F& f, Vec<F> coeffs);
  int pivot() const;
  int nvars() const { return static_cast<int>(coeffs.size()); }
  std::vector<int> support() const;
};

/// N with y = N x: row `pivot` is the form, all other rows are unit vectors.
template <class F>
Matrix<F> adapted_coordinates(const F& f, const LinearForm<F>& a);

/// Rows whose kernel, on coefficient vectors of degree-d polynomials in
/// monomial_basis order, is exactly the set of multiples of alpha^m.
template <class F>
Matrix<F> divisibility_constraints(const F& f, int nvars, int d, const LinearForm<F>& alpha, int m);

/// g_ij = f_i a_j - f_j a_i for i < j, in lexicographic pair order.
template <class F>
std::vector<Poly<F>> wedge_numerators(const std::vector<Poly<F>>& f, const LinearForm<F>& alpha);

/// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> subsets(int n, int k);
/// Sign of the permutation sorting the concatenation I ++ J (disjoint).
int shuffle_sign(const std::vector<int>& i, const std::vector<int>& j);

}  // namespace arrlog
