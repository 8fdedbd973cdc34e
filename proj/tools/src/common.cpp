#include <algorithm>
#include <map>
#include <sstream>

#include "common.hpp"

namespace arrlog::cli {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

bool is_library(const std::string& input) { return !input.empty() && input[0] == '@'; }

}  // namespace

std::vector<mpq_class> parse_vector(const std::string& text) {
  std::vector<mpq_class> out;
  for (const auto& t : split(text, ',')) {
    const std::string s = trim(t);
    out.push_back(parse_rational(s));
  }
  if (out.empty()) throw Error(ErrorCode::Parse, "empty vector");
  return out;
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw Error(ErrorCode::Parse, "range must be lo,hi");
  return {std::stoi(trim(parts[0])), std::stoi(trim(parts[1]))};
}

std::string vector_text(const std::vector<int>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

std::vector<FieldSpec> resolve_fields(const Options& o, const std::string& input) {
  std::vector<FieldSpec> out;
  if (!o.primes.empty()) {
    for (auto p : o.primes) out.push_back(FieldSpec::prime(p));
    return out;
  }
  if (o.field) return {FieldSpec::parse(*o.field)};
  if (is_library(input)) {
    const auto text = input.substr(1);
    if (text.rfind("g:", 0) == 0 || text == "g") {
      const int r = text == "g" ? 3 : std::stoi(text.substr(2));
      if (r > 2) {
        for (auto p : default_primes_for_roots(r)) out.push_back(FieldSpec::prime(p));
        return out;
      }
    }
    return {FieldSpec::rationals()};
  }
  return {read_arrangement_file(input).field};
}

ArrangementText load_input(const std::string& input, const FieldSpec& field) {
  if (is_library(input)) return example_library(input, field);
  ArrangementText t = read_arrangement_file(input);
  if (t.field.is_prime_field() && !field.is_prime_field())
    throw Error(ErrorCode::FieldUnsupported, "an arrangement over F_p cannot be read over Q");
  t.field = field;
  return t;
}

json ledger_json(const std::vector<DegreeStep>& steps) {
  json out = json::array();
  for (const auto& s : steps)
    out.push_back({{"degree", s.degree},
                   {"dimension", s.dimension},
                   {"span_rank", s.span_rank},
                   {"new_generators", s.new_generators}});
  return out;
}

json multiplicities_json(const std::vector<int>& degrees) {
  std::map<int, int> count;
  for (int d : degrees) ++count[d];
  json out = json::array();
  for (auto [d, c] : count) out.push_back({{"degree", d}, {"count", c}});
  return out;
}

json surjectivity_json(const SurjectivityVerdict& v) {
  json ledger = json::array();
  for (const auto& s : v.ledger)
    ledger.push_back({{"degree", s.degree},
                      {"source_dim", s.source_dim},
                      {"image_dim", s.image_dim},
                      {"target_dim", s.target_dim}});
  json out{{"surjective", v.surjective}, {"target_generator_degrees", sorted(v.target_generator_degrees)},
           {"ledger", ledger}};
  out["first_unhit_degree"] = v.first_failure ? json(*v.first_failure) : json(nullptr);
  return out;
}

json freeness_json(const FreenessSummary& s) {
  return {{"verdict", s.verdict}, {"free", s.free}, {"exponents", s.exponents}};
}

}  // namespace arrlog::cli
