// Drives the arrlog binary through the seven acceptance criteria and prints
// one PASS/FAIL line per criterion. Expected values are recomputed here from
// closed formulas, not read back from the tool.
//
// usage: arrlog_acceptance <path-to-arrlog> [workdir]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string g_tool;
fs::path g_work;

struct Outcome {
  bool ok = true;
  std::vector<std::string> failures;
  double seconds = 0;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      failures.push_back(what);
    }
  }
};

struct Invocation {
  int exit_code = -1;
  json report;
  std::string raw;
  double seconds = 0;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Invocation run_tool(const std::string& args, const std::string& tag) {
  const fs::path out = g_work / (tag + ".json");
  const fs::path log = g_work / (tag + ".log");
  fs::remove(out);
  const std::string cmd = "'" + g_tool + "' " + args + " --json '" + out.string() + "' > '" + log.string() + "' 2>&1";
  const auto start = std::chrono::steady_clock::now();
  const int status = std::system(cmd.c_str());
  Invocation inv;
  inv.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  inv.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  if (fs::exists(out)) {
    inv.raw = slurp(out);
    inv.report = json::parse(inv.raw, nullptr, false);
  }
  return inv;
}

std::vector<int> ints(const json& j) {
  std::vector<int> v;
  if (j.is_array())
    for (const auto& x : j) v.push_back(x.get<int>());
  return v;
}

std::multiset<int> bag(const json& j) {
  const auto v = ints(j);
  return {v.begin(), v.end()};
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Copies, so that lookups of missing keys yield null instead of asserting.
json first_run(const Invocation& inv) {
  if (!inv.report.is_object() || !inv.report.contains("runs") || inv.report["runs"].empty()) return json::object();
  return inv.report["runs"][0]["data"];
}

// 1. ziegler22 over Q is free with exponents (1,5,7,9); the Saito
// determinant is a nonzero scalar times Q, so the exponents sum to |A|.
Outcome criterion1() {
  Outcome o;
  const auto inv = run_tool("free @ziegler22 --field Q", "c1");
  o.seconds = inv.seconds;
  json d = first_run(inv);
  o.expect(inv.exit_code == 0, "exit code " + std::to_string(inv.exit_code));
  o.expect(d["freeness"]["free"] == true, "not certified free");
  o.expect(ints(d["freeness"]["exponents"]) == std::vector<int>{1, 5, 7, 9}, "exponents");
  const std::string det = d["freeness"].value("det_scalar", "0");
  o.expect(det != "0", "Saito determinant scalar missing or zero");
  o.expect(d["arrangement"]["size"] == 22 && 1 + 5 + 7 + 9 == 22, "sum of exponents != |A|");
  o.expect(inv.seconds < 60, "runtime above 60 s");
  return o;
}

// 2. Restriction to x1+x2+x3 = 0: rank 3, free (1,10,11); 2-generic, not 3-generic.
Outcome criterion2() {
  Outcome o;
  const auto inv = run_tool("free @ziegler22 --field Q --restrict 1,1,1,0", "c2");
  o.seconds = inv.seconds;
  json d = first_run(inv);
  o.expect(inv.exit_code == 0, "exit code " + std::to_string(inv.exit_code));
  o.expect(d["restriction"]["arrangement"]["rank"] == 3, "restriction rank");
  o.expect(d["freeness"]["free"] == true, "restriction not certified free");
  o.expect(ints(d["freeness"]["exponents"]) == std::vector<int>{1, 10, 11}, "exponents");
  o.expect(d["restriction"]["arrangement"]["size"] == 1 + 10 + 11, "sum of exponents != |A^H|");
  json g = d["restriction"]["genericity"];
  o.expect(g["k_generic"]["1"] == true && g["k_generic"]["2"] == true, "not 2-generic");
  o.expect(g["k_generic"]["3"] == false, "reported 3-generic");
  o.expect(g["witness_flat"].is_array() && !g["witness_flat"].empty(), "no witness flat for k = 3");
  return o;
}

// 3. nine4d over Q: Omega^1 generated in {-1,-2}, the restriction to
// (1,3,5,7) in {-1,-2,-3}, and res_H misses the degree -3 generator.
Outcome criterion3() {
  Outcome o;
  const auto inv = run_tool("omega @nine4d --field Q --restrict 1,3,5,7", "c3");
  o.seconds = inv.seconds;
  json d = first_run(inv);
  o.expect(inv.exit_code == 0, "exit code " + std::to_string(inv.exit_code));
  o.expect(ints(d["module"]["degree_set"]) == std::vector<int>{-2, -1}, "Omega^1(A) degree set");
  o.expect(ints(d["restriction"]["degree_set"]) == std::vector<int>{-3, -2, -1}, "Omega^1(A^H) degree set");
  o.expect(d["restriction"]["surjectivity"]["surjective"] == false, "res_H reported surjective");
  o.expect(d["restriction"]["surjectivity"]["first_unhit_degree"] == -3, "unhit degree is not -3");
  o.expect(inv.seconds < 120, "runtime above 120 s");
  return o;
}

// 4. G(r,r,3), r = 3,4,5, three primes p = 1 mod r each: free (1, r+1, 2r-2),
// (2r-2)-critical, |A^H| = r+1 for all H, min gap 3r-(r+1) = 2r-1 > 2r-2,
// and no hyperplane with gap 2r-2.
Outcome criterion4() {
  Outcome o;
  for (int r = 3; r <= 5; ++r) {
    const std::string tag = "c4_r" + std::to_string(r);
    const int k = 2 * r - 2;
    const auto fr = run_tool("free @g:" + std::to_string(r), tag + "_free");
    const auto cr = run_tool("critical @g:" + std::to_string(r) + " --k " + std::to_string(k), tag + "_crit");
    o.seconds += fr.seconds + cr.seconds;
    const std::string rs = "r=" + std::to_string(r) + ": ";
    o.expect(fr.exit_code == 0 && cr.exit_code == 0, rs + "nonzero exit");
    std::set<std::uint64_t> primes;
    for (auto run : fr.report.value("runs", json::array())) {
      const std::string field = run["field"];
      const auto p = std::stoull(field.substr(field.find(':') + 1));
      primes.insert(p);
      o.expect(is_prime(p) && p % r == 1, rs + field + " is not a prime = 1 mod r");
      o.expect(run["data"]["arrangement"]["size"] == 3 * r, rs + "|A| != 3r");
      o.expect(run["data"]["freeness"]["free"] == true, rs + field + " not free");
      o.expect(ints(run["data"]["freeness"]["exponents"]) == std::vector<int>{1, r + 1, 2 * r - 2},
               rs + field + " exponents");
    }
    o.expect(primes.size() == 3, rs + "expected three distinct primes");
    std::size_t crit_runs = 0;
    for (auto run : cr.report.value("runs", json::array())) {
      ++crit_runs;
      json c = run["data"]["criticality"];
      const std::string fs_ = rs + run["field"].get<std::string>() + " ";
      o.expect(c["critical"] == true, fs_ + "not critical");
      o.expect(c["dimension"].get<int>() > 0, fs_ + "Omega^1(A)_{-k} is zero");
      for (auto e : c["ledger"]) {
        o.expect(e["restriction_size"] == r + 1, fs_ + "|A^H| != r+1");
        o.expect(e["deletion_dimension"] == 0, fs_ + "a deletion keeps a degree -k form");
      }
      o.expect(c["ledger"].size() == static_cast<std::size_t>(3 * r), fs_ + "ledger size");
      o.expect(c["min_gap"] == 2 * r - 1 && 2 * r - 1 > k, fs_ + "min gap");
      o.expect(c["conjecture86_holds"] == false, fs_ + "a hyperplane reaches gap k");
    }
    o.expect(crit_runs == 3, rs + "criticality not run on three primes");
  }
  o.expect(o.seconds < 300, "runtime above 5 min");
  return o;
}

// 5. Generic cut of ziegler22 on three seeds: surjective res_H, equal
// generator multisets for A' and A'^H with A'^H not free, exactly one extra
// generator of degree -1, SPOG with level -|A| + |A^H|.
Outcome criterion5() {
  Outcome o;
  std::set<std::string> hyperplanes;
  for (int seed = 1; seed <= 3; ++seed) {
    const std::string ss = "seed " + std::to_string(seed) + ": ";
    const auto inv = run_tool("generic-cut @ziegler22 --field Fp:1000003 --seed " + std::to_string(seed),
                         "c5_seed" + std::to_string(seed));
    o.seconds += inv.seconds;
    o.expect(inv.exit_code == 0, ss + "exit code " + std::to_string(inv.exit_code));
    json d = first_run(inv);
    if (!d.contains("steps") || d["steps"].empty()) {
      o.expect(false, ss + "no step in report");
      continue;
    }
    json s = d["steps"][0];
    hyperplanes.insert(s["hyperplane"].dump());
    const int n_prime = d["arrangement"]["size"];
    o.expect(s["generic"] == true && s["genericity_level"] == 3, ss + "H not certified 3-generic");
    o.expect(s["surjectivity"]["surjective"] == true, ss + "res_H not surjective");
    const auto ap = bag(s["generators"]["a_prime"]);
    const auto rest = bag(s["generators"]["restriction"]);
    auto whole = bag(s["generators"]["whole"]);
    o.expect(ap == rest, ss + "generator multisets of A' and A'^H differ");
    o.expect(s["restriction"]["free"] == false, ss + "cut reported free");
    o.expect(whole.size() == ap.size() + 1, ss + "not exactly one extra generator");
    if (auto it = whole.find(-1); it != whole.end()) whole.erase(it);
    o.expect(whole == ap, ss + "extra generator is not in degree -1");
    // H is generic, so the traces of A' on H are pairwise distinct: |A^H| = |A'|.
    const int size_a = n_prime + 1, size_ah = n_prime;
    json spog = s["betti_whole"]["spog"];
    o.expect(spog.is_object(), ss + "Omega^1(A) not SPOG");
    if (spog.is_object()) {
      o.expect(spog["level"] == -size_a + size_ah, ss + "SPOG level");
      o.expect(ints(spog["poexp"]) == ints(s["a_prime"]["exponents"]), ss + "POexp != exp(A')");
    }
    o.expect(s["betti_whole"]["certified_free_tail"] == true, ss + "Betti table uncertified");
    o.expect(json(inv.report)["summary"]["fail"] == 0 && json(inv.report)["summary"]["uncertified"] == 0 &&
                 json(inv.report)["summary"]["skipped"] == 0,
             ss + "claims not all passing");
  }
  o.expect(hyperplanes.size() == 3, "seeds did not give three distinct hyperplanes");
  return o;
}

// 6. Property suites: every required family present, all exact passes.
Outcome criterion6() {
  Outcome o;
  const auto inv = run_tool("verify-paper --properties", "c6");
  o.seconds = inv.seconds;
  o.expect(inv.exit_code == 0, "exit code " + std::to_string(inv.exit_code));
  json claims = inv.report.value("claims", json::array());
  auto count = [&](const std::string& prefix) {
    int n = 0;
    for (auto c : claims)
      if (c["id"].get<std::string>().rfind(prefix, 0) == 0) {
        ++n;
        o.expect(c["status"] == "pass", c["id"].get<std::string>() + " is " + c["status"].get<std::string>());
      }
    return n;
  };
  o.expect(count("properties.exactness.random") == 10, "expected 10 random exactness ledgers");
  o.expect(count("properties.saito_hilbert.") >= 1, "no Saito/Hilbert consistency claims");
  o.expect(count("properties.dichotomy.g3") == 1, "no dichotomy on G(3,3,3)");
  o.expect(count("properties.dichotomy.braid") == 1, "no dichotomy on braid");
  o.expect(count("properties.strong_preparation.") >= 2, "strong preparation missing");
  o.expect(count("properties.duality.") >= 2, "duality tables missing");
  o.expect(count("properties.duality_calibration.") >= 1, "duality calibration missing");
  o.expect(count("properties.addition_deletion.boolean") >= 1, "Boolean deletion chain missing");
  o.expect(count("properties.addition_deletion.braid") >= 1, "braid deletion chain missing");
  o.expect(json(inv.report)["summary"]["fail"] == 0 && json(inv.report)["summary"]["uncertified"] == 0, "fail or uncertified");
  return o;
}

// 7. Identical flags, identical bytes.
Outcome criterion7() {
  Outcome o;
  const std::vector<std::string> cmds{"verify-paper --only criticality,nine4d",
                                      "generic-cut @ziegler22 --field Fp:1000003 --seed 2", "lattice @braid:4",
                                      "free @ziegler22 --primes 1000003,1000033"};
  for (std::size_t i = 0; i < cmds.size(); ++i) {
    const auto a = run_tool(cmds[i], "c7_" + std::to_string(i) + "a");
    const auto b = run_tool(cmds[i], "c7_" + std::to_string(i) + "b");
    o.seconds += a.seconds + b.seconds;
    o.expect(!a.raw.empty() && a.raw == b.raw, "'" + cmds[i] + "' reports differ");
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <arrlog> [workdir]\n", argv[0]);
    return 2;
  }
  g_tool = argv[1];
  g_work = argc > 2 ? fs::path(argv[2]) : fs::temp_directory_path() / "arrlog_acceptance";
  fs::create_directories(g_work);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 ziegler22 free, exponents (1,5,7,9)", criterion1},
      {"2 restriction to x1+x2+x3: free (1,10,11), 2- not 3-generic", criterion2},
      {"3 nine4d generator degrees, res_H not surjective", criterion3},
      {"4 G(r,r,3) critical counterexample, r = 3,4,5", criterion4},
      {"5 generic cut bundle on 3 seeds", criterion5},
      {"6 property suites", criterion6},
      {"7 byte-identical reports", criterion7},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    std::printf("%s  %-62s %7.2fs\n", o.ok ? "PASS" : "FAIL", name.c_str(), o.seconds);
    for (const auto& f : o.failures) std::printf("      - %s\n", f.c_str());
    if (!o.ok) ++failed;
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
