#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "arrlog/arrangement.hpp"
#include "arrlog/chart.hpp"

namespace arrlog {

enum class LogKind { Derivations, Forms };
std::string to_string(LogKind k);

/// An element of D^p(A,m) or Omega^p(A,m). Coefficients are indexed by
/// subsets(nvars, p). For forms they are numerators over Q(A,m), so their
/// polynomial degree is degree + denominator_degree.
template <class F>
struct CoeffVector {
  LogKind kind = LogKind::Derivations;
  int p = 1;
  int nvars = 0;
  int degree = 0;
  int denominator_degree = 0;
  std::vector<HomPoly<F>> coeffs;

  int poly_degree() const { return degree + denominator_degree; }
  bool is_zero() const {
    for (const auto& c : coeffs)
      if (!c.is_zero()) return false;
    return true;
  }
};

template <class F>
CoeffVector<F> coeff_zero(const F& f, LogKind kind, int p, int nvars, int degree, int denominator_degree);

/// Direct membership test: divides theta(alpha_H, x_K), respectively the
/// coefficients of Q/alpha_H^m * omega ^ d alpha_H, by alpha_H one factor at
/// a time. Independent of the solver's restriction charts.
template <class F>
bool is_logarithmic(const Arrangement<F>& a, const CoeffVector<F>& v);

/// Omega^p numerators f_I become D^(l-p) coefficients sign(I, I^c) f_I at
/// I^c, and back. Forms of degree d land in degree d + deg Q.
template <class F>
CoeffVector<F> star_forms_to_derivations(const F& f, const CoeffVector<F>& v);
template <class F>
CoeffVector<F> star_derivations_to_forms(const F& f, const CoeffVector<F>& v, int denominator_degree);

/// A degree piece: basis[i][coords[j]] is 1 for i == j and 0 otherwise, so
/// the entries at `coords` are coordinates with respect to `basis`.
template <class F>
struct Piece {
  std::vector<Vec<F>> basis;
  std::vector<std::size_t> coords;
};

/// Graded submodule of a free module with twisted summands: component c
/// holds polynomials of degree d - twists[c] in degree d.
template <class F>
class GradedModule {
 public:
  GradedModule(F field, int nvars, std::vector<int> twists);
  virtual ~GradedModule() = default;
  GradedModule(const GradedModule&) = delete;
  GradedModule& operator=(const GradedModule&) = delete;

  const F& field() const { return field_; }
  int nvars() const { return nvars_; }
  const std::vector<int>& twists() const { return twists_; }
  std::size_t ambient_dim(int d) const;
  std::size_t offset(std::size_t component, int d) const;
  /// Nothing lives below this degree.
  int lowest_degree() const;

  virtual std::size_t dimension(int d) const { return piece(d).basis.size(); }
  /// Memoized; safe to call from several threads.
  const Piece<F>& piece(int d) const;
  /// mu * v for v in degree d.
  Vec<F> multiply(const Vec<F>& v, int d, const Monomial& mu) const;

 protected:
  virtual Piece<F> compute_piece(int d) const = 0;

 private:
  F field_;
  int nvars_;
  std::vector<int> twists_;
  mutable std::mutex mutex_;
  mutable std::map<int, std::unique_ptr<Piece<F>>> cache_;
};

/// Graded module whose vectors describe logarithmic derivations or forms.
template <class F>
class ElementModule : public GradedModule<F> {
 public:
  using GradedModule<F>::GradedModule;
  virtual CoeffVector<F> element(const Vec<F>& v, int d) const = 0;
};

/// Kernel of per-hyperplane divisibility conditions. Each block lists, for
/// one hyperplane chart and one condition, the restricted multiplier that
/// component c contributes; the condition is that sum_c mult_c * h_c
/// vanishes to order m along the hyperplane.
template <class F>
struct ConstraintBlock {
  std::size_t chart = 0;
  int m = 1;
  std::vector<std::pair<std::size_t, Layered<F>>> terms;
};

template <class F>
class ConstrainedModule : public ElementModule<F> {
 public:
  using ElementModule<F>::ElementModule;
  /// The matrix whose kernel is piece(d), rows grouped by block.
  Matrix<F> constraint_matrix(int d) const;

 protected:
  Piece<F> compute_piece(int d) const override;
  std::vector<Chart<F>> charts_;
  std::vector<ConstraintBlock<F>> blocks_;
};

/// D^p(A,m) or Omega^p(A,m) solved directly. Component I stores h_I with
/// coefficient P_I * h_I, where P_I collects the factors alpha_H^m(H) that
/// every element is known to carry: for D when supp(alpha_H) lies in I, for
/// Omega when supp(alpha_H) misses I. Conditions made trivial by these
/// factors are dropped.
template <class F>
class LogModule : public ConstrainedModule<F> {
 public:
  LogModule(const Arrangement<F>& a, LogKind kind, int p);
  CoeffVector<F> element(const Vec<F>& v, int d) const override;

  const Arrangement<F>& arrangement() const { return a_; }
  LogKind kind() const { return kind_; }
  int order() const { return p_; }
  /// deg Q(A,m) for forms, 0 for derivations.
  int shift() const { return shift_; }
  const std::vector<std::vector<int>>& families() const { return families_; }
  const HomPoly<F>& prefactor(std::size_t i) const { return prefactor_[i]; }

 private:
  Arrangement<F> a_;
  LogKind kind_;
  int p_;
  int shift_ = 0;
  std::vector<std::vector<int>> families_;
  std::vector<HomPoly<F>> prefactor_;
};

/// Omega^1(A' + H) for a free A' with known Omega^1 basis omega_k of degree
/// -e_k. An element omega of degree d is stored through alpha_H * omega =
/// sum g_k omega_k, g_k of degree d + 1 + e_k; the only conditions are at H.
template <class F>
class ExtendedFormModule : public ConstrainedModule<F> {
 public:
  ExtendedFormModule(const Arrangement<F>& a_prime, std::vector<CoeffVector<F>> basis, Vec<F> h);
  CoeffVector<F> element(const Vec<F>& v, int d) const override;

 private:
  std::vector<CoeffVector<F>> basis_;
  int denominator_degree_ = 0;
};

/// Free module spanned by given logarithmic elements.
template <class F>
class FreeSpanModule : public ElementModule<F> {
 public:
  FreeSpanModule(const F& field, int nvars, std::vector<CoeffVector<F>> basis);
  CoeffVector<F> element(const Vec<F>& v, int d) const override;
  std::size_t dimension(int d) const override { return this->ambient_dim(d); }

 protected:
  Piece<F> compute_piece(int d) const override;

 private:
  std::vector<CoeffVector<F>> basis_;
};

/// Rows are mu * g_j, j ascending, mu in monomial order: exactly the ambient
/// coordinate order of the free module with twists `degrees`.
template <class F>
Matrix<F> product_matrix(const GradedModule<F>& m, const std::vector<Vec<F>>& gens, const std::vector<int>& degrees,
                         int d);

/// Relations among generators of a parent module. Its dimension up to
/// `generated_through` is read off by rank-nullity from the parent.
template <class F>
class SyzygyModule : public GradedModule<F> {
 public:
  SyzygyModule(const GradedModule<F>& parent, std::vector<Vec<F>> gens, std::vector<int> degrees,
               int generated_through);
  std::size_t dimension(int d) const override;
  const std::vector<Vec<F>>& generators() const { return gens_; }

 protected:
  Piece<F> compute_piece(int d) const override;

 private:
  const GradedModule<F>& parent_;
  std::vector<Vec<F>> gens_;
  int generated_through_;
};

struct DegreeStep {
  int degree = 0;
  std::size_t dimension = 0;
  std::size_t span_rank = 0;  // rank of the S-multiples of earlier generators
  std::size_t new_generators = 0;
};

template <class F>
struct GeneratorSet {
  std::vector<int> degrees;
  std::vector<Vec<F>> vectors;
  int degree_lo = 0;
  int degree_bound_used = 0;
  bool stopped_early = false;
  std::vector<DegreeStep> ledger;
};

template <class F>
using SweepStop = std::function<bool(const GeneratorSet<F>&)>;

/// Ascending degree sweep over [lo, hi]. At each degree the products of the
/// generators found so far are compared with the piece; representatives of
/// the quotient are taken from the piece basis after reduction against the
/// products, in basis order. `stop` is consulted after every degree.
template <class F>
GeneratorSet<F> minimal_generators(const GradedModule<F>& m, int lo, int hi, const SweepStop<F>& stop = {});
/// Continues an earlier sweep up to `hi`.
template <class F>
void extend_generators(const GradedModule<F>& m, GeneratorSet<F>& set, int hi, const SweepStop<F>& stop = {});

template <class F>
struct GradedBasis {
  LogKind kind = LogKind::Derivations;
  int p = 1;
  int degree = 0;
  std::vector<CoeffVector<F>> basis;
};

template <class F>
GradedBasis<F> graded_basis(const Arrangement<F>& a, LogKind kind, int p, int d);

/// Default generator search windows: [-deg Q, 0] for forms and [0, deg Q]
/// for derivations.
template <class F>
std::pair<int, int> default_degree_range(const Arrangement<F>& a, LogKind kind);

/// Determinant of a square matrix of homogeneous polynomials (Laplace).
template <class F>
HomPoly<F> poly_determinant(const F& f, const std::vector<std::vector<HomPoly<F>>>& m);

template <class F>
struct FreenessResult {
  std::string verdict;  // "free", "not free", "not free up to bound"
  bool free = false;
  std::vector<int> exponents;
  GeneratorSet<F> generators;
  std::vector<CoeffVector<F>> basis;  // derivations sorted by degree, when free
  std::optional<typename F::Elem> det_scalar;
};

/// Minimal generators of D^1(A,m) with Saito's determinant test each time
/// exactly l generators are known. More than l minimal generators means not
/// free. `bound` defaults to deg Q(A,m).
template <class F>
FreenessResult<F> saito_check(const Arrangement<F>& a, std::optional<int> bound = std::nullopt);

/// Omega^1 basis dual to a derivation basis with det = c Q: numerators are
/// adj(Theta^T) / c.
template <class F>
std::vector<CoeffVector<F>> dual_form_basis(const Arrangement<F>& a, const std::vector<CoeffVector<F>>& ders,
                                            const typename F::Elem& c);

/// Saito for l forms in Omega^1(A): det of numerators is c * Q^(l-1), c != 0.
template <class F>
bool forms_saito(const Arrangement<F>& a, const std::vector<CoeffVector<F>>& forms);

template <class F>
struct BettiTable {
  int nvars = 0;
  std::vector<std::vector<int>> columns;  // sorted twist degrees per homological degree
  int pd = 0;
  int validity_bound = 0;
  bool certified_free_tail = false;
  std::vector<int> hilbert_checked;  // degrees where the alternating count matched
  std::string note;                  // reason when not certified
  /// Relations of column 1 as coefficient polynomials on the column 0 generators.
  std::vector<std::vector<HomPoly<F>>> relations;
};

/// Truncated minimal free resolution. Generators are searched in [lo, hi];
/// the validity bound is max generator degree + l + 2.
template <class F>
BettiTable<F> betti_table(const GradedModule<F>& m, int lo, int hi);
/// Same, reusing an existing generator sweep of m.
template <class F>
BettiTable<F> betti_table(const GradedModule<F>& m, GeneratorSet<F> gens);

struct SpogShape {
  std::vector<int> degrees;  // generator degrees other than the level element, ascending
  int level = 0;             // degree of the level element
};

/// l+1 generators, one relation, and the relation's coefficient on a
/// generator of degree (relation degree - 1) is a nonzero linear form.
template <class F>
std::optional<SpogShape> spog_detect(const BettiTable<F>& b);

}  // namespace arrlog
