#include <chrono>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "excverify/harness.hpp"

using namespace excv;

namespace {

std::map<std::string, CheckResult> by_id;
int failures = 0;

void report(int n, bool ok, const std::string& what, const std::vector<std::string>& why) {
  std::printf("criterion %d: %s - %s (tolerance 0)\n", n, ok ? "PASS" : "FAIL", what.c_str());
  for (const auto& w : why) std::printf("    %s\n", w.c_str());
  failures += !ok;
}

// check `id` passed and its actual equals `want`
void expect(std::vector<std::string>& why, const std::string& id, const Json& want) {
  auto it = by_id.find(id);
  if (it == by_id.end()) {
    why.push_back(id + ": missing");
    return;
  }
  const CheckResult& r = it->second;
  if (r.status != Status::pass) why.push_back(id + ": " + status_name(r.status) + " " + r.notes);
  if (!want.is_null() && r.actual != want) why.push_back(id + ": got " + r.actual.dump() + ", want " + want.dump());
}

std::vector<const CheckResult*> with_prefix(const std::string& p) {
  std::vector<const CheckResult*> out;
  for (const auto& [id, r] : by_id)
    if (id.rfind(p, 0) == 0) out.push_back(&r);
  return out;
}

}  // namespace

int main() {
  BasisStore store;
  std::vector<std::string> why;

  struct Budget {
    AlgebraId id;
    int dim;
    double seconds;
  };
  const Budget budgets[] = {{AlgebraId::g2, 14, 10},
                            {AlgebraId::f4, 52, 10},
                            {AlgebraId::e6, 78, 300},
                            {AlgebraId::e7, 133, 900},
                            {AlgebraId::e8, 248, 2700}};
  std::string timing;
  for (const auto& b : budgets) {
    auto t0 = std::chrono::steady_clock::now();
    const LieBasis& l = store.get(b.id);
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s %d in %.1fs", algebra_name(b.id).c_str(), l.dim(), s);
    timing += (timing.empty() ? "" : ", ") + std::string(buf);
    if (l.dim() != b.dim) why.push_back(algebra_name(b.id) + ": dim " + std::to_string(l.dim()));
    if (s >= b.seconds) why.push_back(algebra_name(b.id) + ": over budget");
  }

  RunOptions opts;
  opts.sample = 500;
  for (auto& r : run_suite(Suite::all, opts, store)) by_id[r.id] = r;

  for (const auto& b : budgets) {
    std::string a = algebra_name(b.id);
    expect(why, "bases/" + a + "/dim", b.dim);
    expect(why, "bases/" + a + "/closure", {{"bracket_closed", true}, {"compact_form", true}});
  }
  report(1, why.empty(), "basis dimensions 14/52/78/133/248, closure residual 0, budgets (" + timing + ")", why);

  why.clear();
  expect(why, "lemmas/f4-sigma-sigma-prime", 28);
  expect(why, "lemmas/e6-e1-stabilizer-sigma-prime", {{"dim", 29}, {"stabilizer_dim", 45}});
  expect(why, "lemmas/e8-sigma", 120);
  expect(why, "lemmas/e8-lambda-omega-gamma", 120);
  expect(why, "lemmas/e8-upsilon", 136);
  expect(why, "lemmas/e8-upsilon-sigma", 136);
  expect(why, "lemmas/e8-iota-omega", 136);
  expect(why, "lemmas/e8-upsilon-iota-omega", 136);
  report(2, why.empty(), "fixed-subalgebra dimensions 28, 29, 120, 120, 136, 136, 136, 136", why);

  why.clear();
  const std::map<std::string, int> t2 = {{"G", 6},     {"FI", 24},   {"FII", 36},  {"EI", 36},
                                         {"EII", 38},  {"EIII", 46}, {"EIV", 52},  {"EV", 63},
                                         {"EVI", 69},  {"EVII", 79}, {"EVIII", 120}, {"EIX", 136}};
  for (const auto& [row, d] : t2) expect(why, "table2/" + row + "/dim_k", d);
  if (with_prefix("table2/").size() != t2.size()) why.push_back("unexpected table2 row count");
  report(3, why.empty(), "single-involution fixed dimensions for all Table 2 rows", why);

  why.clear();
  const std::vector<std::pair<std::string, int>> t1 = {
      {"G-G-G", 2},           {"FI-I-I", 10},           {"FI-I-II", 16},          {"FII-II-II", 28},
      {"EI-I-II", 16},        {"EI-I-III", 20},         {"EI-II-IV", 24},         {"EII-II-II", 18},
      {"EII-II-III", 22},     {"EII-III-III", 26},      {"EIII-III-III", 30},     {"EIII-IV-IV", 36},
      {"EV-V-V", 28},         {"EV-V-VI", 31},          {"EV-V-VII", 36},         {"EV-VI-VII", 39},
      {"EVI-VI-VI(a)", 37},   {"EVI-VI-VI(b)", 37},     {"EVI-VII-VII", 47},      {"EVII-VII-VII", 52},
      {"EVIII-VIII-VIII", 56}, {"EVIII-VIII-IX", 64},   {"EVIII-IX-IX", 72},      {"EIX-IX-IX", 80}};
  for (const auto& [row, d] : t1) {
    expect(why, "table1/" + row + "/dim_k", d);
    expect(why, "table1/" + row + "/invariants", nullptr);
    auto it = by_id.find("table1/" + row + "/invariants");
    if (it == by_id.end()) continue;
    const Json& a = it->second.actual;
    if (d <= 80 && a.value("killing_negdef", Json()) != Json(true)) why.push_back(row + ": Killing form not negative definite");
    if (a.value("center_dim", -1) + a.value("derived_dim", -1) != d) why.push_back(row + ": center + derived != dim");
  }
  if (with_prefix("table1/").size() != 2 * t1.size()) why.push_back("unexpected table1 check count");
  report(4, why.empty(), "24 pair intersections with center, derived, Killing and type-triple corroboration", why);

  why.clear();
  int identities = 0;
  for (const auto* r : with_prefix("identities/")) {
    if (r->kind != "identity") continue;
    ++identities;
    if (r->status != Status::pass) why.push_back(r->id + ": " + status_name(r->status));
  }
  for (const char* id :
       {"oct/delta1-gamma", "oct/delta2-gamma", "oct/delta3-gamma", "oct/delta4-gamma", "jordan/sigma-sigma_prime-commute",
        "jordan/rho2-squared", "jordan/delta9-squared", "jordan/delta9-transpose", "freudenthal/delta_lambda-iota",
        "freudenthal/delta_lambda-gamma", "freudenthal/delta_lambda-gamma_C", "e8/delta_upsilon-squared",
        "e8/delta_upsilon-lambda_omega-gamma-upsilon", "e8/delta_upsilon-lambda", "e8/iota_omega-squared",
        "e8/upsilon_iota_omega-squared"})
    expect(why, std::string("identities/") + id, {{"equal", true}});
  for (const auto& [row, d] : t1) {
    auto it = by_id.find("table1/" + row + "/invariants");
    if (it == by_id.end()) continue;
    const Json& a = it->second.actual;
    if (a.value("commutes_ad", false) != true || a.value("involutive", Json()) != Json({true, true}))
      why.push_back(row + ": pair not commuting involutions");
  }
  report(5, why.empty(), std::to_string(identities) + " exact operator identities; all Table 1 pairs commute and are involutive",
         why);

  why.clear();
  const std::map<std::string, std::vector<std::string>> members = {
      {"g2", {"gamma", "gamma_H", "gamma_C", "delta1", "delta2", "delta3", "delta4", "w"}},
      {"f4", {"sigma", "sigma_prime", "delta5", "delta6", "delta7"}},
      {"e6", {"delta9", "rho2", "phi1(3)", "phi2(6)"}},
      {"e7", {"lambda", "iota", "phi(3)", "delta_lambda", "delta_iota", "delta10"}},
      {"e8", {"lambda_omega", "upsilon", "iota_omega", "sigma", "sigma_prime", "gamma", "delta_upsilon"}}};
  for (const auto& [g, maps] : members)
    for (const auto& m : maps) {
      std::string id = "identities/membership/" + g + "/" + m;
      expect(why, id, {{"member", true}});
      auto it = by_id.find(id);
      if (g == "e8" && it != by_id.end() && it->second.inputs.value("sample", 0) < 500)
        why.push_back(id + ": fewer than 500 sampled pairs");
    }
  for (const auto* r : with_prefix("identities/membership/"))
    if (r->status != Status::pass) why.push_back(r->id + ": " + status_name(r->status));
  report(6, why.empty(), "named maps lie in G2, F4, E6, E7, E8 (e8 with 500 sampled pairs)", why);

  why.clear();
  expect(why, "identities/property/oct-alternativity", {{"holds", true}, {"count", 500}});
  expect(why, "identities/property/oct-moufang", {{"holds", true}, {"count", 500}});
  expect(why, "identities/property/e8-jacobi", {{"holds", true}, {"count", 200}});
  expect(why, "identities/property/jordan-trilinear-symmetry", {{"holds", true}, {"count", 200}});
  expect(why, "identities/property/e8-antisymmetry", {{"holds", true}, {"count", 200}});
  report(7, why.empty(), "alternativity and Moufang 500, Jacobi 200, trilinear symmetry 200, antisymmetry 200", why);

  why.clear();
  auto gaps = with_prefix("lemmas/");
  int evidence = 0;
  for (const auto* r : gaps) {
    if (r->inputs.value("computation", "") != "equal_dim") continue;
    ++evidence;
    if (r->status != Status::pass) why.push_back(r->id + ": " + status_name(r->status));
    if (r->notes.find("no conjugating element is claimed") == std::string::npos)
      why.push_back(r->id + ": missing evidence-only note");
  }
  if (evidence == 0) why.push_back("no equal-dimension evidence checks");
  for (const auto& [id, r] : by_id)
    if (r.kind == "conjugacy" || id.find("conjugacy") != std::string::npos || id.find("conjugate") != std::string::npos) why.push_back(id + ": conjugacy claim");
  report(8, why.empty(), std::to_string(evidence) + " E8 gaps recorded as equal-dimension evidence only", why);

  int bad = 0;
  for (const auto& [id, r] : by_id) bad += r.status != Status::pass;
  std::printf("%zu checks, %d not passing\n", by_id.size(), bad);
  return failures == 0 && bad == 0 ? 0 : 1;
}
