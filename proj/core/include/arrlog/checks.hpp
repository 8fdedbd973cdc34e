#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arrlog/maps.hpp"

namespace arrlog {

// ---- criticality

struct DeletionEntry {
  std::size_t hyperplane = 0;
  std::size_t dimension = 0;  // dim Omega^1(A \ H)_{-k}
  std::size_t restriction_size = 0;
  int gap = 0;  // |A| - |A^H|
};

struct CriticalityVerdict {
  int k = 0;
  std::size_t dimension = 0;  // dim Omega^1(A)_{-k}
  std::vector<DeletionEntry> ledger;
  bool critical = false;
  int min_gap = 0;
  /// Some hyperplane has |A| - |A^H| = k. Reported under the JSON key "conjecture86_holds".
  bool gap_k_attained = false;
  /// Critical, yet no hyperplane reaches the gap k.
  bool counterexample = false;
  /// First deletion that keeps a degree -k form, when that is why A is not critical.
  std::optional<std::size_t> witness;
};

/// The deletion ledger is computed on `threads` workers and merged by hyperplane index.
template <class F>
CriticalityVerdict criticality_check(const Arrangement<F>& a, int k, unsigned threads = 1);

// ---- duality between Omega^p and D^(l-p)

struct DualityRow {
  int degree = 0;
  std::size_t forms_dim = 0;
  std::size_t derivations_dim = 0;
};

/// Shift sigma with dim Omega^p_d = dim D^(l-p)_{d+sigma}, found by search on
/// reference arrangements and fitted as sigma = intercept + slope * deg Q.
struct DualityCalibration {
  int shift_empty = 0;
  int shift_boolean = 0;
  int shift_boolean_double = 0;  // Boolean with every multiplicity 2
  int intercept = 0;
  int slope = 0;
  bool unique = false;  // every search had exactly one solution and the three points are collinear
};

DualityCalibration calibrate_duality_shift(int l, int p);

struct DualityReport {
  int p = 1;
  int shift = 0;
  DualityCalibration calibration;
  std::vector<DualityRow> rows;
  bool agree = false;
};

/// 1 <= p <= l-1. Default range [-deg Q, 0].
template <class F>
DualityReport duality_dimension_check(const Arrangement<F>& a, int p, std::optional<std::pair<int, int>> range = {});

// ---- exactness of the restriction sequences

struct ExactnessRow {
  int degree = 0;
  std::size_t kernel_dim = 0;  // dimension the sequence predicts for the kernel
  std::size_t image_dim = 0;
  std::size_t middle_dim = 0;
  bool exact = false;
};

struct ExactnessLedger {
  std::string kind;  // "D" or "Omega"
  std::size_t hyperplane = 0;
  std::vector<ExactnessRow> rows;
  bool exact = false;
};

/// 0 -> D(A \ H)(-1) -> D(A) -> D(A^H): dim D(A')_{d-1} + rank rho^H = dim D(A)_d.
template <class F>
ExactnessLedger euler_exactness_der(const Arrangement<F>& a, std::size_t i, int lo, int hi);
/// 0 -> Omega^1(A)(-1) -> Omega^1(A \ H) -> Omega^1(A^H), with A' = A \ H the source of res_H.
template <class F>
ExactnessLedger euler_exactness_forms(const Arrangement<F>& a, std::size_t i, int lo, int hi);

// ---- freeness consistency

struct HilbertConsistency {
  std::vector<int> exponents;
  int bound = 0;
  bool sum_matches = false;  // sum of exponents = deg Q
  std::vector<int> mismatched_degrees;
  std::optional<bool> characteristic_matches;  // chi(A,t) = prod (t - d_i); simple arrangements only
  bool ok = false;
};

/// dim D(A)_d against sum_i dim S_{d - d_i} for d in [0, bound].
template <class F>
HilbertConsistency saito_hilbert_consistency(const Arrangement<F>& a, const std::vector<int>& exponents, int bound);

struct DichotomyReport {
  int a = 0;
  int b = 0;
  std::vector<std::size_t> sizes;  // |A^H| per hyperplane
  bool holds = false;
  std::optional<std::size_t> witness;
};

/// Free rank-3 arrangement with exponents (1, a, b): every |A^H| is <= a+1 or = b+1.
template <class F>
DichotomyReport restriction_size_dichotomy(const Arrangement<F>& a, const std::vector<int>& exponents);

struct FreenessSummary {
  bool free = false;
  std::string verdict;
  std::vector<int> exponents;
};

template <class F>
FreenessSummary summarize(const FreenessResult<F>& r);

struct TripleReport {
  std::size_t hyperplane = 0;
  FreenessSummary whole, deletion, restriction;
  std::vector<std::string> premises;  // pairs found free with matching exponents
  bool consistent = false;
  std::string note;
};

/// Addition-deletion on (A, A \ H, A^H): any two free with the matching
/// exponent pattern force the third, and A, A \ H free forces the pattern.
template <class F>
TripleReport addition_deletion_triple(const Arrangement<F>& a, std::size_t i);

// ---- poles and the extra generator

struct PoleBoundRow {
  std::size_t hyperplane = 0;
  int bound = 0;  // |A^H| - |A|
  std::vector<int> checked_degrees;
  std::optional<int> violation;
};

struct PoleBoundReport {
  std::vector<PoleBoundRow> rows;
  bool holds = false;
};

/// Below |A^H| - |A| every logarithmic form is regular along H, so
/// Omega^1(A)_d = Omega^1(A \ H)_d. Compared by dimension from `lowest` up.
template <class F>
PoleBoundReport pole_bound_check(const Arrangement<F>& a, std::optional<int> lowest = {});

struct ExtensionReport {
  std::size_t hyperplane = 0;
  int d = 0;  // |A| - |A^H|
  /// rho^H on D^(l-1)(A) hits the generator of D^(l-1)(A^H), read through the
  /// star isomorphism as: some omega in Omega^1(A)_{-d} has f_pivot nonzero on H.
  bool top_restriction_surjective = false;
  std::size_t dim_whole = 0;
  std::size_t dim_deletion = 0;
  bool holds = false;
};

/// `whole` holds Omega^1(A), `deletion` Omega^1(A \ H) with H = A[i].
template <class F>
ExtensionReport single_generator_extension(const Arrangement<F>& a, std::size_t i, const ElementModule<F>& whole,
                                           const ElementModule<F>& deletion);

// ---- generic cut

template <class F>
struct GenericCutInput {
  std::optional<Vec<F>> hyperplane;  // sampled from `seed` when empty
  std::uint64_t seed = 1;
};

struct ClaimResult {
  std::string name;
  std::string status;  // "pass", "fail", "skipped", "uncertified"
  std::string detail;
};

template <class F>
struct GenericCutReport {
  Vec<F> hyperplane;
  int sample_attempts = 0;
  bool sampled = false;
  int genericity_level = 0;
  int required_level = 0;  // l - 1
  bool generic = false;
  std::optional<std::vector<int>> genericity_witness;

  FreenessSummary a_prime_freeness;
  FreenessSummary restriction_freeness;
  std::vector<int> a_prime_generators;
  std::vector<int> whole_generators;
  std::vector<int> restriction_generators;
  SurjectivityVerdict surjectivity;
  std::optional<ExtensionReport> extension;
  /// Extended-basis and direct solve of Omega^1(A) agree across the generator window.
  bool dual_route_agrees = true;

  std::optional<BettiTable<F>> betti_a_prime;
  std::optional<BettiTable<F>> betti_whole;
  std::optional<BettiTable<F>> betti_restriction;
  std::optional<SpogShape> spog;
  bool hypothesis_pd = false;  // pd Omega^1(A') < l - 2

  std::vector<ClaimResult> claims;
};

/// Runs the genericity certificate, surjectivity of res_H, generator
/// comparison, non-freeness of the cut, the extra generator of Omega^1(A),
/// projective dimensions and SPOG shape for A = A' + H.
template <class F>
GenericCutReport<F> generic_cut(const Arrangement<F>& a_prime, const GenericCutInput<F>& input);

// ---- small helpers

/// Arrangement of n distinct random forms in l variables with coefficients in
/// [-2, 2], essential; deterministic in the seed.
template <class F>
Arrangement<F> random_small_arrangement(const F& f, int n, int l, std::uint64_t seed);

std::vector<int> sorted(std::vector<int> v);

}  // namespace arrlog
