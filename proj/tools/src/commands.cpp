#include <algorithm>
#include <map>
#include <set>

#include "common.hpp"

namespace arrlog::cli {

namespace {

std::string claim_reproduce(const Options& o, const std::string& extra) {
  return "arrlog " + o.command + " " + o.input + (o.field ? " --field " + *o.field : "") + extra;
}

std::vector<int> degree_set(const std::vector<int>& degrees) {
  std::set<int> s(degrees.begin(), degrees.end());
  return {s.begin(), s.end()};
}

// ---- lattice

template <class F>
Run lattice_impl(const F& f, const Options& o) {
  const auto a = make_arrangement(f, load_input(o.input, f.spec()));
  Run run;
  run.data["arrangement"] = arrangement_json(a);
  const int top = o.max_codim < 0 ? a.dim : std::min(o.max_codim, a.dim);
  const auto lat = intersection_lattice(a, top);
  json levels = json::array();
  for (std::size_t k = 0; k < lat.levels.size(); ++k) {
    json flats = json::array();
    for (const auto& x : lat.levels[k]) flats.push_back({{"members", x.members}, {"mobius", x.mobius}});
    levels.push_back({{"codim", k}, {"count", lat.levels[k].size()}, {"flats", flats}});
  }
  run.data["levels"] = levels;
  std::vector<std::size_t> sizes;
  for (std::size_t i = 0; i < a.size(); ++i) sizes.push_back(restrict_to(a, i).arrangement.size());
  run.data["restriction_sizes"] = sizes;
  {
    std::string counts;
    for (const auto& level : lat.levels) counts += (counts.empty() ? "" : ",") + std::to_string(level.size());
    run.notes.push_back("flats per codimension: " + counts);
  }
  if (top == a.dim) {
    const auto chi = characteristic_polynomial(a);
    run.data["characteristic_polynomial"] = {{"coefficients", chi}, {"text", polynomial_to_string(chi)}};
    run.notes.push_back("chi(A,t) = " + polynomial_to_string(chi));
  }
  // Sum of mu over the flats below Y (those containing it) vanishes for Y != V.
  std::optional<std::vector<int>> bad;
  for (std::size_t k = 1; k < lat.levels.size() && !bad; ++k)
    for (const auto& y : lat.levels[k]) {
      long sum = 0;
      for (std::size_t j = 0; j <= k; ++j)
        for (const auto& x : lat.levels[j])
          if (std::includes(y.members.begin(), y.members.end(), x.members.begin(), x.members.end())) sum += x.mobius;
      if (sum != 0) {
        bad = y.members;
        break;
      }
    }
  Claim c = make_claim("mobius_recursion", "intersection lattice: Moebius recursion", !bad,
                       bad ? "recursion fails at a flat" : "sum of mu below every flat is zero");
  if (bad) c.witness = {{"flat_members", *bad}};
  run.claims.push_back(c);
  return run;
}

// ---- free

template <class F>
json genericity_json(const Matrix<F>& x, const Arrangement<F>& a, const Lattice<F>& lat, int top) {
  json per_k = json::object();
  std::optional<std::vector<int>> witness;
  for (int k = 1; k <= top; ++k) {
    const auto cert = is_k_generic(x, a, lat, k);
    per_k[std::to_string(k)] = cert.generic;
    if (!cert.generic && !witness) witness = cert.witness;
  }
  json out{{"level", genericity_level(x, a, lat)}, {"k_generic", per_k}};
  out["witness_flat"] = witness ? json(*witness) : json(nullptr);
  return out;
}

template <class F>
Run free_impl(const F& f, const Options& o) {
  const auto a = make_arrangement(f, load_input(o.input, f.spec()));
  Run run;
  run.data["arrangement"] = arrangement_json(a);
  Arrangement<F> target = a;
  if (o.restrict_index) {
    const auto r = restrict_to(a, static_cast<std::size_t>(*o.restrict_index));
    run.data["restriction"] = {{"hyperplane_index", *o.restrict_index}, {"arrangement", arrangement_json(r.arrangement)}};
    target = r.arrangement;
  } else if (o.restrict_form) {
    const auto h = to_field(f, parse_vector(*o.restrict_form));
    const auto r = restrict_to_form(a, h);
    const auto lat = intersection_lattice(a, a.dim);
    const auto x = Matrix<F>::from_vectors(f, {h}, a.dim);
    run.data["restriction"] = {{"hyperplane", vec_json(f, h)},
                               {"arrangement", arrangement_json(r.arrangement)},
                               {"genericity", genericity_json(x, a, lat, a.dim - 1)}};
    target = r.arrangement;
  }
  const auto fr = saito_check(target, o.bound);
  json fj = freeness_json(summarize(fr));
  fj["generator_degrees"] = sorted(fr.generators.degrees);
  fj["degree_bound_used"] = fr.generators.degree_bound_used;
  fj["ledger"] = ledger_json(fr.generators.ledger);
  if (fr.det_scalar) fj["det_scalar"] = f.to_string(*fr.det_scalar);
  run.data["freeness"] = fj;
  run.notes.push_back(fr.verdict + (fr.free ? " with exponents " + vector_text(fr.exponents) : ""));
  if (fr.verdict == "not free up to bound") {
    Claim c = status_claim("freeness_decided", "Saito criterion", "uncertified",
            "generator search stopped at degree " + std::to_string(fr.generators.degree_bound_used));
    run.claims.push_back(c);
  } else {
    run.claims.push_back(make_claim("freeness_decided", "Saito criterion", true, fr.verdict));
  }
  if (fr.free) {
    const auto h = saito_hilbert_consistency(target, fr.exponents, fr.generators.degree_bound_used);
    run.data["hilbert"] = {{"bound", h.bound},
                           {"sum_matches", h.sum_matches},
                           {"mismatched_degrees", h.mismatched_degrees},
                           {"characteristic_matches", h.characteristic_matches ? json(*h.characteristic_matches)
                                                                               : json(nullptr)}};
    Claim c = make_claim("saito_hilbert_consistency", "free module dimensions and exponent sum", h.ok,
                         "dim D_d matches the free module on " + vector_text(h.exponents));
    if (!h.ok && !h.mismatched_degrees.empty()) c.witness = {{"degree", h.mismatched_degrees.front()}};
    run.claims.push_back(c);
  }
  return run;
}

// ---- omega / dmodule

template <class F>
Run module_impl(const F& f, const Options& o) {
  const auto a = make_arrangement(f, load_input(o.input, f.spec()));
  const bool forms = o.command == "omega";
  const LogKind kind = forms ? LogKind::Forms : LogKind::Derivations;
  if (o.p < 1 || o.p > a.dim) throw Error(ErrorCode::InvalidArgument, "--p must lie in [1, l]");
  Run run;
  run.data["arrangement"] = arrangement_json(a);
  LogModule<F> m(a, kind, o.p);
  const auto range =
      o.range.value_or(forms ? std::pair{-a.degree(), 0} : std::pair{0, a.degree()});
  const auto gens = minimal_generators(m, range.first, range.second);
  run.data["module"] = {{"kind", to_string(kind)},
                        {"p", o.p},
                        {"range", {range.first, range.second}},
                        {"generator_degrees", sorted(gens.degrees)},
                        {"degree_set", degree_set(gens.degrees)},
                        {"multiplicities", multiplicities_json(gens.degrees)},
                        {"degree_bound_used", gens.degree_bound_used},
                        {"ledger", ledger_json(gens.ledger)}};
  run.notes.push_back("generator degrees " + vector_text(sorted(gens.degrees)));
  std::optional<std::size_t> bad;
  for (std::size_t i = 0; i < gens.vectors.size() && !bad; ++i)
    if (!is_logarithmic(a, m.element(gens.vectors[i], gens.degrees[i]))) bad = i;
  Claim c = make_claim("membership", "generators satisfy the divisibility conditions", !bad,
                       "every generator checked against each hyperplane by direct division");
  if (bad) c.witness = {{"generator", *bad}, {"degree", gens.degrees[*bad]}};
  run.claims.push_back(c);

  if (forms && o.restrict_form) {
    if (o.p != 1) throw Error(ErrorCode::InvalidArgument, "--restrict needs --p 1");
    const auto h = to_field(f, parse_vector(*o.restrict_form));
    const auto r = restrict_to_form(a, h);
    LogModule<F> target(r.arrangement, LogKind::Forms, 1);
    const auto [tlo, thi] = default_degree_range(r.arrangement, LogKind::Forms);
    const auto tg = minimal_generators(target, tlo, thi);
    const auto v = surjectivity_check_forms(m, a, r, target, tg.degrees);
    const auto lat = intersection_lattice(a, a.dim);
    const auto x = Matrix<F>::from_vectors(f, {h}, a.dim);
    run.data["restriction"] = {{"hyperplane", vec_json(f, h)},
                               {"arrangement", arrangement_json(r.arrangement)},
                               {"genericity", genericity_json(x, a, lat, a.dim - 1)},
                               {"generator_degrees", sorted(tg.degrees)},
                               {"degree_set", degree_set(tg.degrees)},
                               {"multiplicities", multiplicities_json(tg.degrees)},
                               {"surjectivity", surjectivity_json(v)}};
    run.notes.push_back("restriction generator degrees " + vector_text(sorted(tg.degrees)));
    run.notes.push_back(v.surjective ? "res_H is surjective"
                                     : "res_H is NOT surjective: degree " + std::to_string(*v.first_failure) + " unhit");
    // Images of the source generators land in the target module (direct oracle).
    std::optional<std::size_t> bad_image;
    for (std::size_t i = 0; i < gens.vectors.size() && !bad_image; ++i) {
      const auto w = restrict_form(m.element(gens.vectors[i], gens.degrees[i]), a, r, true);
      if (!is_logarithmic(r.arrangement, w)) bad_image = i;
    }
    Claim ci = make_claim("restricted_images_logarithmic", "res_H lands in the restricted module", !bad_image,
                          "restriction of every source generator is logarithmic for A^H");
    if (bad_image) ci.witness = {{"generator", *bad_image}};
    run.claims.push_back(ci);
  } else if (!forms && o.restrict_index) {
    const auto v = surjectivity_check_der(a, static_cast<std::size_t>(*o.restrict_index), o.p);
    run.data["restriction"] = {{"hyperplane_index", *o.restrict_index}, {"surjectivity", surjectivity_json(v)}};
    run.notes.push_back(v.surjective ? "rho^H is surjective"
                                     : "rho^H is NOT surjective: degree " + std::to_string(*v.first_failure) + " unhit");
  }
  return run;
}

// ---- betti

template <class F>
Run betti_impl(const F& f, const Options& o) {
  const auto a = make_arrangement(f, load_input(o.input, f.spec()));
  const bool forms = o.kind != "d";
  const LogKind kind = forms ? LogKind::Forms : LogKind::Derivations;
  Run run;
  run.data["arrangement"] = arrangement_json(a);
  LogModule<F> m(a, kind, o.p);
  const auto range = o.range.value_or(forms ? std::pair{-a.degree(), 0} : std::pair{0, a.degree()});
  const auto b = betti_table(m, range.first, range.second);
  run.data["betti"] = betti_json(b, forms);
  run.data["betti"]["kind"] = to_string(kind);
  run.notes.push_back("pd " + std::to_string(b.pd) + ", " + std::to_string(b.columns.size()) + " columns");
  Claim c = status_claim("resolution_certified", "truncated minimal free resolution", b.certified_free_tail ? "pass" : "uncertified",
          b.certified_free_tail ? "Hilbert counts match through degree " + std::to_string(b.validity_bound) : b.note);
  run.claims.push_back(c);
  return run;
}

// ---- critical

template <class F>
Run critical_impl(const F& f, const Options& o) {
  const auto a = make_arrangement(f, load_input(o.input, f.spec()));
  if (o.k < 1) throw Error(ErrorCode::InvalidArgument, "critical needs --k >= 1");
  Run run;
  run.data["arrangement"] = arrangement_json(a);
  const auto v = criticality_check(a, o.k, o.threads);
  json ledger = json::array();
  for (const auto& e : v.ledger)
    ledger.push_back({{"hyperplane", e.hyperplane},
                      {"deletion_dimension", e.dimension},
                      {"restriction_size", e.restriction_size},
                      {"gap", e.gap}});
  run.data["criticality"] = {{"k", v.k},
                             {"dimension", v.dimension},
                             {"critical", v.critical},
                             {"min_gap", v.min_gap},
                             {"conjecture86_holds", v.gap_k_attained},
                             {"counterexample", v.counterexample},
                             {"witness_hyperplane", v.witness ? json(*v.witness) : json(nullptr)},
                             {"ledger", ledger}};
  run.notes.push_back(std::string(v.critical ? "critical" : "not critical") + " at k = " + std::to_string(o.k) +
                      ", min gap " + std::to_string(v.min_gap) + (v.counterexample ? ", COUNTEREXAMPLE" : ""));
  // A form of degree -k with a pole on H forces |A| - |A^H| >= k.
  std::optional<std::size_t> bad;
  for (const auto& e : v.ledger)
    if (e.dimension < v.dimension && e.gap < o.k && !bad) bad = e.hyperplane;
  Claim c = make_claim("pole_bound", "forms with a pole on H have degree at least |A^H| - |A|", !bad,
                       "checked on every hyperplane whose deletion loses degree -" + std::to_string(o.k) + " forms");
  if (bad) {
    c.witness = {{"hyperplane", *bad}};
    c.reproduce = claim_reproduce(o, " --k " + std::to_string(o.k));
  }
  run.claims.push_back(c);
  return run;
}

// ---- generic cut

template <class F>
json cut_json(const GenericCutReport<F>& r, const F& f) {
  json out{{"hyperplane", vec_json(f, r.hyperplane)},
           {"sampled", r.sampled},
           {"sample_attempts", r.sample_attempts},
           {"genericity_level", r.genericity_level},
           {"required_level", r.required_level},
           {"generic", r.generic},
           {"a_prime", freeness_json(r.a_prime_freeness)},
           {"restriction", freeness_json(r.restriction_freeness)}};
  out["genericity_witness"] = r.genericity_witness ? json(*r.genericity_witness) : json(nullptr);
  if (!r.generic) return out;
  out["generators"] = {{"a_prime", r.a_prime_generators},
                       {"whole", r.whole_generators},
                       {"restriction", r.restriction_generators}};
  out["surjectivity"] = surjectivity_json(r.surjectivity);
  out["pd_hypothesis"] = r.hypothesis_pd;
  if (r.betti_a_prime) out["betti_a_prime"] = betti_json(*r.betti_a_prime, true);
  if (r.betti_whole) out["betti_whole"] = betti_json(*r.betti_whole, true);
  if (r.betti_restriction) out["betti_restriction"] = betti_json(*r.betti_restriction, true);
  if (r.extension)
    out["extension"] = {{"d", r.extension->d},
                        {"top_restriction_surjective", r.extension->top_restriction_surjective},
                        {"dim_whole", r.extension->dim_whole},
                        {"dim_deletion", r.extension->dim_deletion}};
  out["dual_route_agrees"] = r.dual_route_agrees;
  return out;
}

template <class F>
Run generic_cut_impl(const F& f, const Options& o) {
  Arrangement<F> a = make_arrangement(f, load_input(o.input, f.spec()));
  const Arrangement<F> original = a;
  Run run;
  run.data["arrangement"] = arrangement_json(a);
  std::vector<std::string> given;
  if (o.restrict_form) given = split(*o.restrict_form, ';');
  json steps = json::array();
  std::vector<Vec<F>> lifted;  // equations of X in the original coordinates
  std::vector<int> pivots;
  bool stepwise_generic = true;
  for (int s = 0; s < o.codim; ++s) {
    GenericCutInput<F> in;
    in.seed = o.seed + static_cast<std::uint64_t>(s);
    if (s < static_cast<int>(given.size())) in.hyperplane = to_field(f, parse_vector(given[s]));
    const auto rep = generic_cut(a, in);
    stepwise_generic = stepwise_generic && rep.generic;
    run.notes.push_back("step " + std::to_string(s + 1) + ": H = (" + [&] {
      std::string t;
      for (const auto& x : rep.hyperplane) t += (t.empty() ? "" : ",") + f.to_string(x);
      return t;
    }() + "), genericity level " + std::to_string(rep.genericity_level) + ", A^H " + rep.restriction_freeness.verdict);
    json sj = cut_json(rep, f);
    sj["step"] = s + 1;
    sj["dim"] = a.dim;
    steps.push_back(sj);
    for (const auto& c : rep.claims) {
      Claim cc = status_claim("step" + std::to_string(s + 1) + "." + c.name, "generic cut: " + c.name, c.status, c.detail);
      if (c.status == "fail" && c.name == "res_surjective" && rep.surjectivity.first_failure) {
        cc.witness = {{"degree", *rep.surjectivity.first_failure}};
      }
      if (c.status == "fail") cc.reproduce = claim_reproduce(o, "");
      run.claims.push_back(cc);
    }
    // Lift to the original space: restricted coordinates are the ambient
    // ones with the pivot removed, so a zero goes back in at each pivot.
    Vec<F> h = rep.hyperplane;
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) h.insert(h.begin() + *it, f.zero());
    lifted.push_back(h);
    if (s + 1 >= o.codim || a.dim - 1 < 3) break;
    const auto r = restrict_to_form(a, rep.hyperplane);
    pivots.push_back(r.pivot);
    a = r.arrangement;
  }
  run.data["steps"] = steps;
  run.data["stepwise_generic"] = stepwise_generic;
  json eqs = json::array();
  for (const auto& h : lifted) eqs.push_back(vec_json(f, h));
  const auto x = Matrix<F>::from_vectors(f, lifted, original.dim);
  const auto lat = intersection_lattice(original, original.dim);
  const int k = original.dim - static_cast<int>(lifted.size());
  const auto cert = is_k_generic(x, original, lat, k);
  run.data["subspace"] = {{"equations", eqs},
                          {"codim", lifted.size()},
                          {"fixed_k", k},
                          {"fixed_k_generic", cert.generic},
                          {"genericity_level", genericity_level(x, original, lat)}};
  return run;
}

}  // namespace

Run run_lattice(const Options& o, const FieldSpec& fs) {
  return with_field(fs, [&](const auto& f) { return lattice_impl(f, o); });
}
Run run_free(const Options& o, const FieldSpec& fs) {
  return with_field(fs, [&](const auto& f) { return free_impl(f, o); });
}
Run run_module(const Options& o, const FieldSpec& fs) {
  return with_field(fs, [&](const auto& f) { return module_impl(f, o); });
}
Run run_betti(const Options& o, const FieldSpec& fs) {
  return with_field(fs, [&](const auto& f) { return betti_impl(f, o); });
}
Run run_critical(const Options& o, const FieldSpec& fs) {
  return with_field(fs, [&](const auto& f) { return critical_impl(f, o); });
}
Run run_generic_cut(const Options& o, const FieldSpec& fs) {
  return with_field(fs, [&](const auto& f) { return generic_cut_impl(f, o); });
}

}  // namespace arrlog::cli
