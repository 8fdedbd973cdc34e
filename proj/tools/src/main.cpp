#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "arrlog/parallel.hpp"
#include "common.hpp"

#ifndef ARRLOG_VERSION
#define ARRLOG_VERSION "0.0.0"
#endif

namespace {

using arrlog::cli::Claim;
using arrlog::cli::json;
using arrlog::cli::Options;
using arrlog::cli::Run;

constexpr int kExitClaims = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBadPrime = 3;

json claim_json(const Claim& c) {
  json j{{"id", c.id}, {"anchor", c.anchor}, {"status", c.status}, {"detail", c.detail}};
  if (!c.data.empty()) j["data"] = c.data;
  if (!c.witness.is_null()) j["witness"] = c.witness;
  if (!c.reproduce.empty()) j["reproduce"] = c.reproduce;
  return j;
}

// Keys whose values are field elements and so legitimately differ between primes.
void strip_field_values(json& j) {
  if (j.is_object()) {
    for (const char* key : {"forms", "hyperplane", "det_scalar", "equations"}) j.erase(key);
    for (auto& [k, v] : j.items()) strip_field_values(v);
  } else if (j.is_array()) {
    for (auto& v : j) strip_field_values(v);
  }
}

json run_signature(const Run& r) {
  json j{{"data", r.data}, {"claims", json::array()}};
  for (const auto& c : r.claims) j["claims"].push_back({c.id, c.status});
  strip_field_values(j);
  return j;
}

void print_table(const std::vector<std::pair<std::string, Claim>>& claims) {
  std::size_t width = 2;
  for (const auto& [field, c] : claims) width = std::max(width, c.id.size());
  for (const auto& [field, c] : claims) {
    std::printf("%-11s %-*s  %s", c.status.c_str(), static_cast<int>(width), c.id.c_str(), c.detail.c_str());
    if (!field.empty()) std::printf("  [%s]", field.c_str());
    std::printf("\n");
  }
}

std::vector<std::string> echo_args(int argc, char** argv) {
  std::vector<std::string> out;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--json") {
      ++i;
      continue;
    }
    if (a.rfind("--json=", 0) == 0) continue;
    out.push_back(a);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Logarithmic forms and derivations of hyperplane arrangements"};
  app.set_version_flag("--version", ARRLOG_VERSION);
  std::string primes_text, range_text, only_text;
  app.add_option("command", o.command, "Subcommand")
      ->required()
      ->check(CLI::IsMember(
          {"lattice", "free", "omega", "dmodule", "betti", "critical", "generic-cut", "verify-paper"}));
  app.add_option("input", o.input, "Arrangement file or @library-name[:params]");
  app.add_option("--field", o.field, "Q or Fp:<p>");
  app.add_option("--primes", primes_text, "Comma separated primes; one run per prime");
  app.add_option("--bound", o.bound, "Degree bound for generator searches");
  app.add_option("--seed", o.seed, "Seed for sampled hyperplanes");
  app.add_option("--json", o.json_path, "Write the JSON report here");
  app.add_flag("--timing", o.timing, "Include wall time in the JSON report");
  app.add_option("--threads", o.threads, "Worker count (default ARRLOG_THREADS or hardware)");
  app.add_option("--max-codim", o.max_codim, "lattice: highest codimension listed");
  app.add_option("--restrict", o.restrict_form, "Restrict to the hyperplane with these coefficients");
  app.add_option("--restrict-index", o.restrict_index, "Restrict to the i-th hyperplane (0-based)");
  app.add_option("--p", o.p, "Order p of Omega^p or D^p");
  app.add_option("--range", range_text, "Degree window lo,hi");
  app.add_option("--k", o.k, "critical: degree -k");
  app.add_option("--kind", o.kind, "betti: omega or d")->check(CLI::IsMember({"omega", "d"}));
  app.add_option("--hyperplane", o.restrict_form, "generic-cut: hyperplanes, ';' separated per step");
  app.add_option("--codim", o.codim, "generic-cut: number of cutting steps")->check(CLI::PositiveNumber);
  app.add_option("--only", only_text, "verify-paper: ziegler22,nine4d,criticality,properties");
  app.add_flag("--properties", o.properties, "verify-paper: property suites");

  o.threads = arrlog::worker_count();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  json report;
  std::vector<std::pair<std::string, Claim>> table;
  std::vector<arrlog::FieldSpec> fields;
  std::vector<std::string> notes;
  bool bad_prime = false;
  try {
    if (!primes_text.empty())
      for (const auto& t : CLI::detail::split(primes_text, ',')) o.primes.push_back(std::stoull(t));
    if (!range_text.empty()) o.range = arrlog::cli::parse_range(range_text);
    if (!only_text.empty()) {
      o.only = CLI::detail::split(only_text, ',');
      for (const auto& g : o.only)
        if (g != "ziegler22" && g != "nine4d" && g != "criticality" && g != "properties")
          throw arrlog::Error(arrlog::ErrorCode::InvalidArgument, "unknown --only group '" + g + "'");
    }
    if (o.restrict_form && o.restrict_index)
      throw arrlog::Error(arrlog::ErrorCode::InvalidArgument, "--restrict and --restrict-index are exclusive");

    report["command"] = echo_args(argc, argv);
    report["version"] = ARRLOG_VERSION;

    if (o.command == "verify-paper") {
      report["field"] = o.field ? json(*o.field) : json("default");
      report["primes"] = o.primes;
      report["seed"] = o.seed;
      report["bound"] = o.bound ? json(*o.bound) : json(nullptr);
      json claims = json::array();
      for (const auto& c : arrlog::cli::run_verify_paper(o)) {
        claims.push_back(claim_json(c));
        table.emplace_back("", c);
      }
      report["claims"] = claims;
    } else {
      if (o.input.empty()) throw arrlog::Error(arrlog::ErrorCode::InvalidArgument, "missing input");
      fields = arrlog::cli::resolve_fields(o, o.input);
      report["field"] = fields.size() == 1 ? json(fields.front().to_string()) : json("multi");
      json primes = json::array();
      for (const auto& f : fields)
        if (f.is_prime_field()) primes.push_back(f.p);
      report["primes"] = primes;
      report["seed"] = o.seed;
      report["bound"] = o.bound ? json(*o.bound) : json(nullptr);

      json runs = json::array();
      std::vector<json> sigs;
      for (const auto& fs : fields) {
        Run r;
        if (o.command == "lattice") r = arrlog::cli::run_lattice(o, fs);
        else if (o.command == "free") r = arrlog::cli::run_free(o, fs);
        else if (o.command == "omega" || o.command == "dmodule") r = arrlog::cli::run_module(o, fs);
        else if (o.command == "betti") r = arrlog::cli::run_betti(o, fs);
        else if (o.command == "critical") r = arrlog::cli::run_critical(o, fs);
        else r = arrlog::cli::run_generic_cut(o, fs);
        r.field = fs.to_string();
        json claims = json::array();
        for (const auto& n : r.notes) notes.push_back(fields.size() > 1 ? n + "  [" + r.field + "]" : n);
        for (const auto& c : r.claims) {
          claims.push_back(claim_json(c));
          table.emplace_back(fields.size() > 1 ? r.field : "", c);
        }
        runs.push_back({{"field", r.field}, {"data", r.data}, {"claims", claims}});
        sigs.push_back(run_signature(r));
      }
      report["runs"] = runs;
      if (fields.size() > 1) {
        std::optional<std::size_t> bad;
        for (std::size_t i = 1; i < sigs.size() && !bad; ++i)
          if (sigs[i] != sigs[0]) bad = i;
        bad_prime = bad.has_value();
        report["agreement"] = {{"agree", !bad_prime},
                               {"status", bad_prime ? arrlog::to_string(arrlog::ErrorCode::BadPrimeSuspected) : "ok"}};
        if (bad) report["agreement"]["fields"] = {fields.front().to_string(), fields[*bad].to_string()};
      }
    }
  } catch (const arrlog::Error& e) {
    std::fprintf(stderr, "arrlog: %s\n", e.what());
    const bool usage = e.code() == arrlog::ErrorCode::Parse || e.code() == arrlog::ErrorCode::InvalidArgument ||
                       e.code() == arrlog::ErrorCode::UnknownLibrary || e.code() == arrlog::ErrorCode::FieldUnsupported;
    return usage ? kExitUsage : kExitClaims;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "arrlog: %s\n", e.what());
    return kExitUsage;
  }

  std::map<std::string, int> counts{{"pass", 0}, {"fail", 0}, {"skipped", 0}, {"uncertified", 0}};
  for (const auto& [f, c] : table) ++counts[c.status];
  report["summary"] = counts;
  if (o.timing)
    report["wall_time_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  for (const auto& n : notes) std::printf("%s\n", n.c_str());
  print_table(table);
  std::printf("%d pass, %d fail, %d uncertified, %d skipped\n", counts["pass"], counts["fail"], counts["uncertified"],
              counts["skipped"]);
  if (bad_prime) std::printf("%s: results differ between primes\n", arrlog::to_string(arrlog::ErrorCode::BadPrimeSuspected));

  if (o.json_path) {
    std::ofstream out(*o.json_path);
    if (!out) {
      std::fprintf(stderr, "arrlog: cannot write %s\n", o.json_path->c_str());
      return kExitUsage;
    }
    out << report.dump(2) << "\n";
  }
  if (bad_prime) return kExitBadPrime;
  return counts["fail"] + counts["uncertified"] == 0 ? 0 : kExitClaims;
}
