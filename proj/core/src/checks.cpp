#include "arrlog/checks.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "arrlog/parallel.hpp"

namespace arrlog {

std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

namespace {

std::string join(const std::vector<int>& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

std::vector<int> negated(std::vector<int> v) {
  for (int& x : v) x = -x;
  return sorted(std::move(v));
}

/// Removes one copy of x; false when absent.
bool remove_one(std::vector<int>& v, int x) {
  const auto it = std::find(v.begin(), v.end(), x);
  if (it == v.end()) return false;
  v.erase(it);
  return true;
}

/// The single element of `big` left over after removing `small`, if the
/// multiset difference has exactly one element.
std::optional<int> extra_element(std::vector<int> big, const std::vector<int>& small) {
  if (big.size() != small.size() + 1) return std::nullopt;
  for (int x : small)
    if (!remove_one(big, x)) return std::nullopt;
  return big.front();
}

template <class F>
std::size_t rank_of(const F& f, const std::vector<Vec<F>>& rows) {
  if (rows.empty() || rows.front().empty()) return 0;
  return rank(Matrix<F>::from_vectors(f, rows, rows.front().size()));
}

template <class F>
bool proportional(const F& f, const Vec<F>& a, const Vec<F>& b) {
  return rank(Matrix<F>::from_vectors(f, {a, b}, a.size())) < 2;
}

int search_shift(const ArrangementText& text, int p, bool& unique) {
  const RationalField q;
  const auto a = make_arrangement(q, text);
  const int l = a.dim;
  const int dq = a.degree();
  LogModule<RationalField> forms(a, LogKind::Forms, p);
  LogModule<RationalField> ders(a, LogKind::Derivations, l - p);
  const int lo = -dq - 2, hi = 2;
  std::vector<int> hits;
  // deg Q is at most 2l on the references; a wider window only adds large dense pieces.
  for (int s = -2 * l - 2; s <= 2 * l + 2; ++s) {
    bool ok = true;
    for (int d = lo; d <= hi && ok; ++d) ok = forms.dimension(d) == ders.dimension(d + s);
    if (ok) hits.push_back(s);
  }
  if (hits.size() != 1) unique = false;
  return hits.empty() ? 0 : hits.front();
}

}  // namespace

// ---- criticality

template <class F>
CriticalityVerdict criticality_check(const Arrangement<F>& a, int k, unsigned threads) {
  CriticalityVerdict v;
  v.k = k;
  v.dimension = LogModule<F>(a, LogKind::Forms, 1).dimension(-k);
  v.ledger.resize(a.size());
  parallel_for(a.size(), threads, [&](std::size_t i) {
    DeletionEntry e;
    e.hyperplane = i;
    e.dimension = LogModule<F>(delete_hyperplane(a, i), LogKind::Forms, 1).dimension(-k);
    e.restriction_size = restrict_to(a, i).arrangement.size();
    e.gap = static_cast<int>(a.size()) - static_cast<int>(e.restriction_size);
    v.ledger[i] = e;
  });
  v.critical = v.dimension > 0;
  v.min_gap = v.ledger.empty() ? 0 : v.ledger.front().gap;
  for (const auto& e : v.ledger) {
    if (e.dimension > 0) {
      v.critical = false;
      if (!v.witness) v.witness = e.hyperplane;
    }
    v.min_gap = std::min(v.min_gap, e.gap);
    if (e.gap == k) v.gap_k_attained = true;
  }
  v.counterexample = v.critical && !v.gap_k_attained;
  return v;
}

// ---- duality

DualityCalibration calibrate_duality_shift(int l, int p) {
  DualityCalibration c;
  c.unique = true;
  const auto empty = example_library("empty:" + std::to_string(l));
  auto boolean = example_library("boolean:" + std::to_string(l));
  c.shift_empty = search_shift(empty, p, c.unique);
  c.shift_boolean = search_shift(boolean, p, c.unique);
  boolean.mult.assign(boolean.forms.size(), 2);
  c.shift_boolean_double = search_shift(boolean, p, c.unique);
  c.intercept = c.shift_empty;
  // deg Q is 0, l and 2l on the three references.
  if ((c.shift_boolean - c.shift_empty) % l != 0) c.unique = false;
  c.slope = (c.shift_boolean - c.shift_empty) / l;
  if (c.shift_boolean_double != c.intercept + 2 * l * c.slope) c.unique = false;
  return c;
}

template <class F>
DualityReport duality_dimension_check(const Arrangement<F>& a, int p, std::optional<std::pair<int, int>> range) {
  const int l = a.dim;
  if (p < 1 || p > l - 1) throw Error(ErrorCode::InvalidArgument, "duality check needs 1 <= p <= l-1");
  DualityReport r;
  r.p = p;
  r.calibration = calibrate_duality_shift(l, p);
  r.shift = r.calibration.intercept + r.calibration.slope * a.degree();
  LogModule<F> forms(a, LogKind::Forms, p);
  LogModule<F> ders(a, LogKind::Derivations, l - p);
  const auto [lo, hi] = range.value_or(std::pair{-a.degree(), 0});
  r.agree = r.calibration.unique;
  for (int d = lo; d <= hi; ++d) {
    DualityRow row{d, forms.dimension(d), ders.dimension(d + r.shift)};
    if (row.forms_dim != row.derivations_dim) r.agree = false;
    r.rows.push_back(row);
  }
  return r;
}

// ---- exactness

template <class F>
ExactnessLedger euler_exactness_der(const Arrangement<F>& a, std::size_t i, int lo, int hi) {
  ExactnessLedger out;
  out.kind = "D";
  out.hyperplane = i;
  const Restriction<F> r = restrict_to(a, i);
  LogModule<F> whole(a, LogKind::Derivations, 1);
  LogModule<F> deletion(delete_hyperplane(a, i), LogKind::Derivations, 1);
  out.exact = true;
  for (int d = lo; d <= hi; ++d) {
    ExactnessRow row;
    row.degree = d;
    row.middle_dim = whole.dimension(d);
    row.kernel_dim = deletion.dimension(d - 1);
    std::vector<Vec<F>> images;
    for (const auto& v : whole.piece(d).basis) images.push_back(flatten(euler_restrict_der(whole.element(v, d), a, r, false)));
    row.image_dim = rank_of(a.field, images);
    row.exact = row.kernel_dim + row.image_dim == row.middle_dim;
    out.exact = out.exact && row.exact;
    out.rows.push_back(row);
  }
  return out;
}

template <class F>
ExactnessLedger euler_exactness_forms(const Arrangement<F>& a, std::size_t i, int lo, int hi) {
  ExactnessLedger out;
  out.kind = "Omega";
  out.hyperplane = i;
  const Arrangement<F> a_prime = delete_hyperplane(a, i);
  const Restriction<F> r = restrict_to_form(a_prime, a.forms[i]);
  LogModule<F> whole(a, LogKind::Forms, 1);
  LogModule<F> deletion(a_prime, LogKind::Forms, 1);
  out.exact = true;
  for (int d = lo; d <= hi; ++d) {
    ExactnessRow row;
    row.degree = d;
    row.middle_dim = deletion.dimension(d);
    row.kernel_dim = whole.dimension(d - 1);
    std::vector<Vec<F>> images;
    for (const auto& v : deletion.piece(d).basis)
      images.push_back(flatten(restrict_form(deletion.element(v, d), a_prime, r, false)));
    row.image_dim = rank_of(a.field, images);
    row.exact = row.kernel_dim + row.image_dim == row.middle_dim;
    out.exact = out.exact && row.exact;
    out.rows.push_back(row);
  }
  return out;
}

// ---- freeness consistency

template <class F>
HilbertConsistency saito_hilbert_consistency(const Arrangement<F>& a, const std::vector<int>& exponents, int bound) {
  HilbertConsistency h;
  h.exponents = sorted(exponents);
  h.bound = bound;
  long sum = 0;
  for (int e : exponents) sum += e;
  h.sum_matches = sum == a.degree();
  LogModule<F> m(a, LogKind::Derivations, 1);
  for (int d = 0; d <= bound; ++d) {
    std::size_t expected = 0;
    for (int e : exponents) expected += monomial_count(a.dim, d - e);
    if (expected != m.dimension(d)) h.mismatched_degrees.push_back(d);
  }
  if (a.is_simple_multiplicity()) {
    // prod (t - d_i), coefficients from t^0 upwards.
    std::vector<long> prod{1};
    for (int e : exponents) {
      std::vector<long> next(prod.size() + 1, 0);
      for (std::size_t j = 0; j < prod.size(); ++j) {
        next[j + 1] += prod[j];
        next[j] -= e * prod[j];
      }
      prod = std::move(next);
    }
    h.characteristic_matches = characteristic_polynomial(a) == prod;
  }
  h.ok = h.sum_matches && h.mismatched_degrees.empty() && h.characteristic_matches.value_or(true);
  return h;
}

template <class F>
DichotomyReport restriction_size_dichotomy(const Arrangement<F>& a, const std::vector<int>& exponents) {
  if (a.dim != 3 || exponents.size() != 3) throw Error(ErrorCode::InvalidArgument, "needs a free rank-3 arrangement");
  const auto e = sorted(exponents);
  DichotomyReport r;
  r.a = e[1];
  r.b = e[2];
  r.holds = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::size_t n = restrict_to(a, i).arrangement.size();
    r.sizes.push_back(n);
    const bool ok = n <= static_cast<std::size_t>(r.a + 1) || n == static_cast<std::size_t>(r.b + 1);
    if (!ok && r.holds) {
      r.holds = false;
      r.witness = i;
    }
  }
  return r;
}

template <class F>
FreenessSummary summarize(const FreenessResult<F>& r) {
  return {r.free, r.verdict, sorted(r.exponents)};
}

template <class F>
TripleReport addition_deletion_triple(const Arrangement<F>& a, std::size_t i) {
  TripleReport t;
  t.hyperplane = i;
  t.whole = summarize(saito_check(a));
  t.deletion = summarize(saito_check(delete_hyperplane(a, i)));
  t.restriction = summarize(saito_check(restrict_to(a, i).arrangement));
  const auto& ew = t.whole.exponents;
  const auto& ed = t.deletion.exponents;
  const auto& er = t.restriction.exponents;
  t.consistent = true;
  auto expect = [&](const FreenessSummary& s, std::vector<int> predicted, const std::string& who) {
    predicted = sorted(std::move(predicted));
    if (!s.free || s.exponents != predicted) {
      t.consistent = false;
      t.note += who + " should be free with exponents " + join(predicted) + "; ";
    }
  };
  if (t.whole.free && t.deletion.free) {
    // exp(A') is exp(A) with one entry lowered by one.
    std::optional<int> lowered;
    for (int e : ew) {
      std::vector<int> cand = ew;
      remove_one(cand, e);
      cand.push_back(e - 1);
      if (sorted(cand) == ed) lowered = e;
    }
    if (lowered) {
      t.premises.push_back("whole+deletion");
      std::vector<int> pred = ew;
      remove_one(pred, *lowered);
      expect(t.restriction, pred, "restriction");
    } else {
      t.consistent = false;
      t.note += "whole and deletion free without the exponent pattern; ";
    }
  }
  if (t.whole.free && t.restriction.free) {
    if (const auto e = extra_element(ew, er)) {
      t.premises.push_back("whole+restriction");
      std::vector<int> pred = er;
      pred.push_back(*e - 1);
      expect(t.deletion, pred, "deletion");
    }
  }
  if (t.deletion.free && t.restriction.free) {
    if (const auto e = extra_element(ed, er)) {
      t.premises.push_back("deletion+restriction");
      std::vector<int> pred = er;
      pred.push_back(*e + 1);
      expect(t.whole, pred, "whole");
    }
  }
  return t;
}

// ---- poles

template <class F>
PoleBoundReport pole_bound_check(const Arrangement<F>& a, std::optional<int> lowest) {
  PoleBoundReport rep;
  rep.holds = true;
  LogModule<F> whole(a, LogKind::Forms, 1);
  const int lo = std::max(lowest.value_or(-a.degree()), -a.degree());
  for (std::size_t i = 0; i < a.size(); ++i) {
    PoleBoundRow row;
    row.hyperplane = i;
    row.bound = static_cast<int>(restrict_to(a, i).arrangement.size()) - static_cast<int>(a.size());
    LogModule<F> deletion(delete_hyperplane(a, i), LogKind::Forms, 1);
    for (int d = lo; d < row.bound; ++d) {
      row.checked_degrees.push_back(d);
      if (whole.dimension(d) != deletion.dimension(d) && !row.violation) row.violation = d;
    }
    if (row.violation) rep.holds = false;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

template <class F>
ExtensionReport single_generator_extension(const Arrangement<F>& a, std::size_t i, const ElementModule<F>& whole,
                                           const ElementModule<F>& deletion) {
  ExtensionReport r;
  r.hyperplane = i;
  r.d = static_cast<int>(a.size()) - static_cast<int>(restrict_to(a, i).arrangement.size());
  const Chart<F> chart(a.field, a.forms.at(i));
  for (const auto& v : whole.piece(-r.d).basis) {
    const auto omega = whole.element(v, -r.d);
    if (!chart.pullback(omega.coeffs[chart.pivot()]).is_zero()) {
      r.top_restriction_surjective = true;
      break;
    }
  }
  r.dim_whole = whole.dimension(-r.d);
  r.dim_deletion = deletion.dimension(-r.d);
  r.holds = !r.top_restriction_surjective || r.dim_whole == r.dim_deletion + 1;
  return r;
}

// ---- generic cut

template <class F>
GenericCutReport<F> generic_cut(const Arrangement<F>& a_prime, const GenericCutInput<F>& input) {
  const F& f = a_prime.field;
  const int l = a_prime.dim;
  GenericCutReport<F> out;
  out.required_level = l - 1;
  auto claim = [&](const std::string& name, bool pass, const std::string& detail) {
    out.claims.push_back({name, pass ? "pass" : "fail", detail});
  };
  const char* bundle[] = {"res_surjective",     "generators_preserved", "extra_generator_degree_minus_one",
                          "projective_dimension", "spog_level",           "single_generator_extension"};
  auto skip_bundle = [&](const std::string& why) {
    for (const char* n : bundle) out.claims.push_back({n, "skipped", "hypothesis fails: " + why});
  };

  const Lattice<F> lattice = intersection_lattice(a_prime, l);
  if (input.hyperplane) {
    out.hyperplane = *input.hyperplane;
  } else {
    const auto s = sample_generic_hyperplane(a_prime, input.seed);
    out.hyperplane = s.form;
    out.sample_attempts = s.attempts;
    out.sampled = true;
  }
  const Matrix<F> x = Matrix<F>::from_vectors(f, {out.hyperplane}, l);
  out.genericity_level = genericity_level(x, a_prime, lattice);
  out.generic = out.genericity_level >= out.required_level;
  const std::string level_text =
      "genericity level " + std::to_string(out.genericity_level) + ", required " + std::to_string(out.required_level);
  if (out.generic) {
    out.claims.push_back({"genericity_certificate", "pass", level_text});
  } else {
    out.genericity_witness = is_k_generic(x, a_prime, lattice, out.genericity_level + 1).witness;
    out.claims.push_back({"genericity_certificate", "skipped", level_text + "; the bundle hypotheses do not hold"});
  }

  const Arrangement<F> a = add_hyperplane(a_prime, out.hyperplane);
  const std::size_t h_index = a.size() - 1;
  const Restriction<F> r = restrict_to_form(a_prime, out.hyperplane);
  const int gap = static_cast<int>(a.size()) - static_cast<int>(r.arrangement.size());

  const FreenessResult<F> prime_free = saito_check(a_prime);
  out.a_prime_freeness = summarize(prime_free);
  out.restriction_freeness = summarize(saito_check(r.arrangement));
  if (!out.generic) {
    skip_bundle("H is not (l-1)-generic");
    if (out.restriction_freeness.free)
      claim("free_cut_not_a_contradiction", true, "A^H is free and H is not (l-1)-generic");
    return out;
  }

  LogModule<F> source(a_prime, LogKind::Forms, 1);
  {
    const auto [lo, hi] = default_degree_range(a_prime, LogKind::Forms);
    GeneratorSet<F> gens = minimal_generators(source, lo, hi);
    out.a_prime_generators = sorted(gens.degrees);
    if (prime_free.free) {
      out.hypothesis_pd = l - 2 > 0;
    } else {
      out.betti_a_prime = betti_table(source, std::move(gens));
      out.hypothesis_pd = out.betti_a_prime->certified_free_tail && out.betti_a_prime->pd < l - 2;
    }
  }
  LogModule<F> target(r.arrangement, LogKind::Forms, 1);
  const auto [tlo, thi] = default_degree_range(r.arrangement, LogKind::Forms);
  GeneratorSet<F> target_gens = minimal_generators(target, tlo, thi);
  out.restriction_generators = sorted(target_gens.degrees);
  out.surjectivity = surjectivity_check_forms(source, a_prime, r, target, target_gens.degrees);

  if (l < 4 || !out.hypothesis_pd) {
    std::string why = "rank below 4";
    if (l >= 4)
      why = out.betti_a_prime && out.betti_a_prime->certified_free_tail
                ? "pd Omega^1(A') = " + std::to_string(out.betti_a_prime->pd) + " > dim X - 2 = " + std::to_string(l - 3)
                : "pd Omega^1(A') is not certified";
    skip_bundle(why);
    for (auto& c : out.claims)
      if (c.name == "res_surjective")
        c.detail = (out.surjectivity.surjective ? "surjective" : "not surjective, unhit target generator in degree " +
                                                                     std::to_string(*out.surjectivity.first_failure)) +
                   "; " + c.detail;
    return out;
  }

  LogModule<F> whole(a, LogKind::Forms, 1);
  const auto [wlo, whi] = default_degree_range(a, LogKind::Forms);
  GeneratorSet<F> whole_gens = minimal_generators(whole, wlo, whi);
  out.whole_generators = sorted(whole_gens.degrees);
  out.extension = single_generator_extension(a, h_index, whole, source);

  // Omega^1(A) a second way when A' is free: through the basis of Omega^1(A').
  if (prime_free.free) {
    ExtendedFormModule<F> extended(a_prime, dual_form_basis(a_prime, prime_free.basis, *prime_free.det_scalar),
                                   out.hyperplane);
    if (!out.whole_generators.empty())
      for (int d = out.whole_generators.front(); d <= out.whole_generators.back(); ++d)
        if (extended.dimension(d) != whole.dimension(d)) out.dual_route_agrees = false;
    out.betti_whole = betti_table(extended, wlo, whi);
  } else {
    out.betti_whole = betti_table(whole, whole_gens);
  }
  out.betti_restriction = betti_table(target, target_gens);
  out.spog = spog_detect(*out.betti_whole);

  claim("res_surjective", out.surjectivity.surjective,
        out.surjectivity.first_failure ? "unhit target generator in degree " + std::to_string(*out.surjectivity.first_failure)
                                       : "every target generator degree is hit");
  claim("generators_preserved", out.a_prime_generators == out.restriction_generators && !out.restriction_freeness.free,
        "Omega^1(A') " + join(out.a_prime_generators) + ", Omega^1(A^H) " + join(out.restriction_generators) +
            ", A^H " + out.restriction_freeness.verdict);
  {
    std::vector<int> expected = out.a_prime_generators;
    expected.push_back(-1);
    claim("extra_generator_degree_minus_one", sorted(expected) == out.whole_generators && out.dual_route_agrees,
          "Omega^1(A) " + join(out.whole_generators) + (out.dual_route_agrees ? "" : ", solver routes disagree"));
  }
  {
    const auto& bw = *out.betti_whole;
    const auto& br = *out.betti_restriction;
    if (!bw.certified_free_tail || !br.certified_free_tail) {
      out.claims.push_back({"projective_dimension", "uncertified",
                            "Betti table not certified up to its validity bound " + std::to_string(bw.validity_bound)});
    } else if (prime_free.free) {
      claim("projective_dimension", bw.pd == 1 && br.pd == 1,
            "pd Omega^1(A) = " + std::to_string(bw.pd) + ", pd Omega^1(A^H) = " + std::to_string(br.pd));
    } else {
      const int pp = out.betti_a_prime->pd;
      claim("projective_dimension", 1 <= br.pd && br.pd <= bw.pd && bw.pd == pp,
            "pd Omega^1(A^H) = " + std::to_string(br.pd) + ", pd Omega^1(A) = " + std::to_string(bw.pd) +
                ", pd Omega^1(A') = " + std::to_string(pp));
    }
  }
  if (prime_free.free) {
    const bool ok = out.spog && out.spog->level == -gap && negated(out.spog->degrees) == out.a_prime_freeness.exponents;
    claim("spog_level", ok,
          out.spog ? "level " + std::to_string(out.spog->level) + ", POexp " + join(negated(out.spog->degrees)) +
                         ", expected level " + std::to_string(-gap)
                   : std::string("Betti table is not of SPOG shape"));
  } else {
    out.claims.push_back({"spog_level", "skipped", "A' is not free"});
  }
  claim("single_generator_extension", out.extension->top_restriction_surjective && out.extension->holds,
        "dim Omega^1(A)_" + std::to_string(-out.extension->d) + " = " + std::to_string(out.extension->dim_whole) +
            ", dim Omega^1(A')_" + std::to_string(-out.extension->d) + " = " + std::to_string(out.extension->dim_deletion));
  return out;
}

template <class F>
Arrangement<F> random_small_arrangement(const F& f, int n, int l, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (;;) {
    Arrangement<F> a{f, l, {}, {}};
    int guard = 0;
    while (static_cast<int>(a.size()) < n && guard++ < 1000) {
      Vec<F> v;
      bool nonzero = false;
      for (int j = 0; j < l; ++j) {
        const long c = static_cast<long>(draw(rng, 0, 4)) - 2;
        nonzero = nonzero || c != 0;
        v.push_back(f.from_int(c));
      }
      if (!nonzero) continue;
      bool fresh = true;
      for (const auto& w : a.forms) fresh = fresh && !proportional(f, v, w);
      if (fresh) a.forms.push_back(std::move(v));
    }
    a.mult.assign(a.size(), 1);
    if (static_cast<int>(a.size()) == n && validate(a).essential) return a;
  }
}

#define ARRLOG_INSTANTIATE(F)                                                                                 \
  template CriticalityVerdict criticality_check(const Arrangement<F>&, int, unsigned);                        \
  template DualityReport duality_dimension_check(const Arrangement<F>&, int, std::optional<std::pair<int, int>>); \
  template ExactnessLedger euler_exactness_der(const Arrangement<F>&, std::size_t, int, int);                 \
  template ExactnessLedger euler_exactness_forms(const Arrangement<F>&, std::size_t, int, int);               \
  template HilbertConsistency saito_hilbert_consistency(const Arrangement<F>&, const std::vector<int>&, int);  \
  template DichotomyReport restriction_size_dichotomy(const Arrangement<F>&, const std::vector<int>&);        \
  template FreenessSummary summarize(const FreenessResult<F>&);                                               \
  template TripleReport addition_deletion_triple(const Arrangement<F>&, std::size_t);                         \
  template PoleBoundReport pole_bound_check(const Arrangement<F>&, std::optional<int>);                       \
  template ExtensionReport single_generator_extension(const Arrangement<F>&, std::size_t, const ElementModule<F>&, \
                                                      const ElementModule<F>&);                               \
  template GenericCutReport<F> generic_cut(const Arrangement<F>&, const GenericCutInput<F>&);                 \
  template Arrangement<F> random_small_arrangement(const F&, int, int, std::uint64_t);

ARRLOG_INSTANTIATE(RationalField)
ARRLOG_INSTANTIATE(PrimeField)

#undef ARRLOG_INSTANTIATE

}  // namespace arrlog
