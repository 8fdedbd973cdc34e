#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "arrlog/poly.hpp"

namespace arrlog {

/// Field-independent description of an arrangement as read from a file or
/// built from the example library. Coefficients over F_p are stored as
/// integer residues.
struct ArrangementText {
  FieldSpec field;
  int dim = 0;
  std::vector<std::vector<mpq_class>> forms;
  std::vector<int> mult;
  std::string name;
};

/// Line-oriented format: `field Q` or `field Fp <p>`, `dim <l>`, then one
/// hyperplane per line with an optional trailing `*m`. `#` starts a comment.
ArrangementText parse_arrangement(const std::string& text);
ArrangementText read_arrangement_file(const std::string& path);
std::string format_arrangement(const ArrangementText& a);

/// Library names: boolean:l, braid:n, braid-ess:n, empty:l, generic:n,l,seed,
/// g:r, ziegler22, nine4d. `field` overrides the natural field of the entry.
ArrangementText example_library(const std::string& spec, std::optional<FieldSpec> field = std::nullopt);
/// Three primes p = 1 mod r with p >= 2r+1, smallest first.
std::vector<std::uint64_t> default_primes_for_roots(int r);

template <class F>
struct Arrangement {
  F field;
  int dim = 0;
  std::vector<Vec<F>> forms;
  std::vector<int> mult;

  std::size_t size() const { return forms.size(); }
  /// deg Q(A, m).
  int degree() const;
  bool is_simple_multiplicity() const;
  LinearForm<F> form(std::size_t i) const { return LinearForm<F>{forms.at(i)}; }
  /// Q(A, m) as a dense homogeneous polynomial.
  HomPoly<F> defining_polynomial() const;
  ArrangementText to_text(const std::string& name = {}) const;
};

struct ValidationReport {
  int rank = 0;
  bool essential = false;
};

/// Maps coefficients into F and validates. Throws ZeroForm,
/// DuplicateHyperplane or FieldUnsupported.
template <class F>
Arrangement<F> make_arrangement(const F& field, const ArrangementText& text);

template <class F>
ValidationReport validate(const Arrangement<F>& a);

template <class F>
struct Flat {
  Matrix<F> equations;  // reduced row echelon form, one row per codimension
  std::vector<int> members;
  int codim = 0;
  long mobius = 0;
};

template <class F>
struct Lattice {
  int dim = 0;
  int max_codim = 0;
  std::vector<std::vector<Flat<F>>> levels;  // levels[k] holds the flats of codimension k
};

/// Flats of codimension <= max_codim by closure; each level is sorted by member list.
template <class F>
Lattice<F> intersection_lattice(const Arrangement<F>& a, int max_codim);

/// Coefficients of chi(A, t) from t^0 upwards.
template <class F>
std::vector<long> characteristic_polynomial(const Arrangement<F>& a);
std::string polynomial_to_string(const std::vector<long>& coeffs, const std::string& var = "t");

template <class F>
Arrangement<F> delete_hyperplane(const Arrangement<F>& a, std::size_t i);

/// Adds a hyperplane at the end; throws DuplicateHyperplane if it is already present.
template <class F>
Arrangement<F> add_hyperplane(const Arrangement<F>& a, const Vec<F>& form);

template <class F>
struct Restriction {
  Arrangement<F> arrangement;   // simple restriction, coordinates x_j for j != pivot
  Matrix<F> embedding;          // rows form a basis of H inside V
  int pivot = 0;
  Vec<F> hyperplane;
  std::vector<int> trace_index;  // per original hyperplane, index in the restriction or -1
  std::vector<int> ziegler_multiplicity;
};

/// Restriction to hyperplane i of A.
template <class F>
Restriction<F> restrict_to(const Arrangement<F>& a, std::size_t i);
/// Restriction of A to a hyperplane H not in A.
template <class F>
Restriction<F> restrict_to_form(const Arrangement<F>& a, const Vec<F>& h);

/// Pulls a linear form back along the restriction embedding.
template <class F>
Vec<F> pullback_form(const F& field, const Vec<F>& form, int pivot, const Vec<F>& h);

template <class F>
struct GenericityCertificate {
  int k = 0;
  bool generic = false;
  std::optional<std::vector<int>> witness;  // members of a flat Y with codim(X cap Y) != codim X + codim Y
  int witness_codim = 0;
};

/// X is given by its defining equations. Throws InLattice when X belongs to L(A).
template <class F>
GenericityCertificate<F> is_k_generic(const Matrix<F>& x, const Arrangement<F>& a, int k);
template <class F>
GenericityCertificate<F> is_k_generic(const Matrix<F>& x, const Arrangement<F>& a, const Lattice<F>& lattice, int k);
/// Largest k in [0, l - codim X] for which X is k-generic.
template <class F>
int genericity_level(const Matrix<F>& x, const Arrangement<F>& a, const Lattice<F>& lattice);

template <class F>
struct SampledHyperplane {
  Vec<F> form;
  int attempts = 0;
  GenericityCertificate<F> certificate;
};

/// Seeded sampling of a hyperplane generic with respect to A, always certified.
/// Rationals draw coefficients from [1, 1000], prime fields from the whole field.
template <class F>
SampledHyperplane<F> sample_generic_hyperplane(const Arrangement<F>& a, std::uint64_t seed, int max_attempts = 64);

/// Draw from [lo, hi]. The reduction is spelled out instead of using
/// std::uniform_int_distribution, whose output differs between standard libraries.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi);

}  // namespace arrlog
