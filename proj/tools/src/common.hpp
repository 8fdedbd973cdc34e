#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "arrlog/checks.hpp"

namespace arrlog::cli {

using json = nlohmann::ordered_json;

struct Options {
  std::string command;
  std::string input;
  std::optional<std::string> field;
  std::vector<std::uint64_t> primes;
  std::optional<int> bound;
  std::uint64_t seed = 1;
  std::optional<std::string> json_path;
  bool timing = false;
  unsigned threads = 1;

  int max_codim = -1;
  std::optional<std::string> restrict_form;  // "1,3,5,7"
  std::optional<int> restrict_index;
  int p = 1;
  std::optional<std::pair<int, int>> range;
  int k = 0;
  std::string kind = "omega";
  int codim = 1;
  std::vector<std::string> only;
  bool properties = false;
};

struct Claim {
  std::string id;
  std::string anchor;
  std::string status;  // pass, fail, skipped, uncertified
  std::string detail;
  json data = json::object();
  json witness;            // smallest datum that reproduces a failure
  std::string reproduce;  // arrlog invocation for that datum
};

/// One computation over one field.
struct Run {
  std::string field;
  json data = json::object();
  std::vector<Claim> claims;
  std::vector<std::string> notes;  // one-line verdicts for the human table
};

inline Claim make_claim(std::string id, std::string anchor, bool pass, std::string detail) {
  Claim c;
  c.id = std::move(id);
  c.anchor = std::move(anchor);
  c.status = pass ? "pass" : "fail";
  c.detail = std::move(detail);
  return c;
}

inline Claim status_claim(std::string id, std::string anchor, std::string status, std::string detail) {
  Claim c;
  c.id = std::move(id);
  c.anchor = std::move(anchor);
  c.status = std::move(status);
  c.detail = std::move(detail);
  return c;
}

std::vector<std::string> split(const std::string& s, char sep);
std::vector<FieldSpec> resolve_fields(const Options& o, const std::string& input);
ArrangementText load_input(const std::string& input, const FieldSpec& field);
/// "1,3,5,7" or "1/2,-3" into rationals.
std::vector<mpq_class> parse_vector(const std::string& text);
std::pair<int, int> parse_range(const std::string& text);
std::string vector_text(const std::vector<int>& v);

template <class Fn>
auto with_field(const FieldSpec& fs, Fn&& fn) {
  if (fs.is_prime_field()) return fn(PrimeField(fs.p));
  return fn(RationalField());
}

template <class F>
Vec<F> to_field(const F& f, const std::vector<mpq_class>& v) {
  Vec<F> out;
  for (const auto& x : v) out.push_back(f.from_rational(x));
  return out;
}

template <class F>
json vec_json(const F& f, const Vec<F>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(f.to_string(x));
  return out;
}

template <class F>
json arrangement_json(const Arrangement<F>& a) {
  json forms = json::array();
  for (const auto& v : a.forms) forms.push_back(vec_json(a.field, v));
  const auto rep = validate(a);
  return json{{"dim", a.dim}, {"size", a.size()}, {"rank", rep.rank}, {"essential", rep.essential},
              {"degree", a.degree()}, {"forms", forms}, {"multiplicities", a.mult}};
}

json ledger_json(const std::vector<DegreeStep>& steps);
json multiplicities_json(const std::vector<int>& degrees);
json surjectivity_json(const SurjectivityVerdict& v);
json freeness_json(const FreenessSummary& s);

template <class F>
json betti_json(const BettiTable<F>& b, bool forms) {
  json out{{"columns", b.columns},       {"pd", b.pd},
           {"validity_bound", b.validity_bound}, {"certified_free_tail", b.certified_free_tail},
           {"hilbert_checked", b.hilbert_checked}};
  if (!b.note.empty()) out["note"] = b.note;
  if (const auto s = spog_detect(b)) {
    std::vector<int> poexp = s->degrees;
    if (forms)
      for (int& x : poexp) x = -x;
    std::sort(poexp.begin(), poexp.end());
    out["spog"] = json{{"poexp", poexp}, {"level", s->level}};
  } else {
    out["spog"] = nullptr;
  }
  return out;
}

// Subcommands, one run per field.
Run run_lattice(const Options& o, const FieldSpec& fs);
Run run_free(const Options& o, const FieldSpec& fs);
Run run_module(const Options& o, const FieldSpec& fs);  // omega and dmodule
Run run_betti(const Options& o, const FieldSpec& fs);
Run run_critical(const Options& o, const FieldSpec& fs);
Run run_generic_cut(const Options& o, const FieldSpec& fs);

/// The verify-paper suite; claims carry their own field labels.
std::vector<Claim> run_verify_paper(const Options& o);

}  // namespace arrlog::cli
