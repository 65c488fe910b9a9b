#include <gtest/gtest.h>

#include <fstream>
#include <set>

#include "excverify/harness.hpp"

using namespace excv;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("excverify-test-" + name);
  fs::remove_all(d);
  return d;
}

const CheckResult& find(const std::vector<CheckResult>& rs, const std::string& id) {
  for (const auto& r : rs)
    if (r.id == id) return r;
  throw std::out_of_range(id);
}

}  // namespace

TEST(Harness, SuiteNames) {
  EXPECT_EQ(parse_suite("table1"), Suite::table1);
  EXPECT_FALSE(parse_suite("table3"));
  EXPECT_EQ(status_name(Status::error), "error");
}

TEST(Harness, CycNumSerialization) {
  CycNum z = CycNum::zeta(5) * CycNum(-7, 3) + CycNum::sqrt2();
  Json j = cyc_to_json(z);
  ASSERT_EQ(j.size(), 8u);
  EXPECT_EQ(cyc_from_json(j), z);
  EXPECT_EQ(cyc_to_json(CycNum(1, 2))[0], "1/2");
  SparseVec v = {{0, CycNum(3)}, {17, CycNum::imag_unit()}};
  EXPECT_EQ(sparse_from_json(sparse_to_json(v)), v);
  EXPECT_THROW(sparse_from_json(Json::parse(R"([[3, ["1/1","0/1","0/1","0/1","0/1","0/1","0/1","0/1"]], [1, ["1/1","0/1","0/1","0/1","0/1","0/1","0/1","0/1"]]])")),
               std::invalid_argument);
}

TEST(Harness, Fingerprint) {
  std::string f = convention_fingerprint();
  EXPECT_EQ(f.size(), 16u);
  EXPECT_EQ(f, convention_fingerprint());
}

TEST(Harness, CatalogShape) {
  const Json& c = expected_catalog();
  EXPECT_EQ(c.at("table1").size(), 24u);
  EXPECT_EQ(c.at("table2").size(), 12u);
  std::set<std::string> ids;
  for (const auto& e : c.at("identities")) {
    EXPECT_TRUE(ids.insert(e.at("id").get<std::string>()).second) << e.at("id");
    std::string p = e.at("provenance");
    EXPECT_TRUE(p == "paper" || p == "trivial" || p == "derived");
  }
}

TEST(Harness, CacheRoundTrip) {
  fs::path dir = temp_dir("roundtrip");
  LieBasis b = compute_basis(AlgebraId::g2);
  store_basis(b, dir);
  std::string why;
  auto l = load_basis(AlgebraId::g2, dir, &why);
  ASSERT_TRUE(l) << why;
  EXPECT_EQ(l->vectors, b.vectors);
  EXPECT_EQ(l->free, b.free);
  EXPECT_EQ(l->table, b.table);
  EXPECT_FALSE(load_basis(AlgebraId::f4, dir, &why));
  EXPECT_EQ(why, "absent");
  fs::remove_all(dir);
}

TEST(Harness, StaleAndCorruptCachesAreRecomputed) {
  fs::path dir = temp_dir("stale");
  store_basis(compute_basis(AlgebraId::g2), dir);
  fs::path f = cache_file(dir, AlgebraId::g2);
  Json j;
  std::ifstream(f) >> j;
  j["convention_fingerprint"] = "0000000000000000";
  std::ofstream(f) << j.dump();
  std::string why;
  EXPECT_FALSE(load_basis(AlgebraId::g2, dir, &why));
  EXPECT_EQ(why, "convention fingerprint mismatch");
  {
    BasisStore s(dir);
    EXPECT_EQ(s.get(AlgebraId::g2).dim(), 14);
    EXPECT_FALSE(s.loaded_from_cache(AlgebraId::g2));
    ASSERT_EQ(s.warnings().size(), 1u);
  }
  {
    BasisStore s(dir);
    EXPECT_EQ(s.get(AlgebraId::g2).dim(), 14);
    EXPECT_TRUE(s.loaded_from_cache(AlgebraId::g2));
  }
  std::ofstream(f) << "{ not json";
  EXPECT_FALSE(load_basis(AlgebraId::g2, dir, &why));
  EXPECT_NE(why.find("parse error"), std::string::npos);
  BasisStore s(dir);
  EXPECT_EQ(s.get(AlgebraId::g2).dim(), 14);
  EXPECT_EQ(s.warnings().size(), 1u);
  fs::remove_all(dir);
}

TEST(Harness, OperatorExpressions) {
  EXPECT_EQ(resolve_operator("oct", "gamma^2"), SemilinearOp::identity(8));
  EXPECT_EQ(resolve_operator("oct", "(gamma*gamma_H)^2"), SemilinearOp::identity(8));
  EXPECT_EQ(resolve_operator("jordan", "t(delta9)"), transpose_op(named_jordan_map("delta9")));
  EXPECT_EQ(resolve_operator("jordan", "phi1(3)"), phi1(CycNum::zeta(3)));
  EXPECT_EQ(resolve_operator("freudenthal", "-id"), -SemilinearOp::identity(kFDim));
  EXPECT_EQ(resolve_operator("freudenthal", "phi(-3)"), phi_theta(CycNum::zeta(21)));
  EXPECT_EQ(resolve_operator("e8", "lift(sigma)"), named_e8_map("sigma"));
  for (const char* bad : {"", "gamma*", "gamma^", "(gamma", "phi(3)", "gamma)", "t(gamma"})
    EXPECT_THROW(resolve_operator("oct", bad), std::invalid_argument) << bad;
  EXPECT_THROW(resolve_operator("oct", "kappa"), std::invalid_argument);
  EXPECT_THROW(resolve_operator("quaternion", "id"), std::invalid_argument);
}

TEST(Harness, Filters) {
  EXPECT_TRUE(filter_matches({}, "anything"));
  EXPECT_TRUE(filter_matches({"G-G-G"}, "table1/G-G-G/dim_k"));
  EXPECT_FALSE(filter_matches({"EI-I-I"}, "table1/EI-I-II/dim_k"));
  EXPECT_TRUE(filter_matches({"delta6"}, "identities/jordan/delta6-sigma"));
  EXPECT_FALSE(filter_matches({"delta6"}, "identities/jordan/delta5-gamma"));
  EXPECT_TRUE(filter_matches({"lemmas/e8"}, "lemmas/e8-sigma"));
}

TEST(Harness, IdentityCheckFailureCarriesCounterexample) {
  CheckResult ok = check_identity("x", "jordan", "delta6*sigma", "sigma_prime*delta6");
  EXPECT_EQ(ok.status, Status::pass);
  EXPECT_TRUE(ok.counterexample.is_null());
  CheckResult bad = check_identity("y", "oct", "delta1*gamma", "gamma*delta1");
  EXPECT_EQ(bad.status, Status::fail);
  ASSERT_TRUE(bad.counterexample.is_object());
  EXPECT_TRUE(bad.counterexample.contains("basis_index"));
  CheckResult err = check_identity("z", "oct", "nope", "id");
  EXPECT_EQ(err.status, Status::error);
  Json rep = report_json({bad}, RunOptions{}, Suite::identities);
  EXPECT_EQ(rep["checks"][0]["status"], "fail");
  EXPECT_FALSE(rep["checks"][0]["counterexample"].is_null());
  EXPECT_EQ(exit_code({ok}), 0);
  EXPECT_EQ(exit_code({ok, bad}), 1);
  EXPECT_EQ(exit_code({ok, bad, err}), 2);
}

TEST(Harness, MembershipChecks) {
  RunOptions o;
  EXPECT_EQ(check_membership("a", "g2", "delta1", true, o).status, Status::pass);
  CheckResult swap = check_membership("b", "g2", "swap-e1-e2", false, o);
  EXPECT_EQ(swap.status, Status::pass);
  EXPECT_FALSE(swap.actual["member"].get<bool>());
  CheckResult wrong = check_membership("c", "f4", "scale-e1", true, o);
  EXPECT_EQ(wrong.status, Status::fail);
  EXPECT_TRUE(wrong.counterexample.contains("basis"));
  o.sample = 20;
  CheckResult r = check_membership("d", "e8", "negate-r", false, o);
  EXPECT_EQ(r.status, Status::pass);
}

TEST(Harness, EmptyReport) {
  RunOptions o;
  Json j = report_json({}, o, Suite::all);
  EXPECT_EQ(j["schema_version"], kReportSchemaVersion);
  EXPECT_TRUE(j["checks"].empty());
  EXPECT_EQ(j["run_meta"]["seed"], o.seed);
  EXPECT_EQ(j["run_meta"]["fingerprint"], convention_fingerprint());
  EXPECT_EQ(j["run_meta"]["version"], kVersion);
  EXPECT_NE(report_markdown({}, o, Suite::all).find("0 of 0"), std::string::npos);
}

TEST(Harness, SuiteExamples) {
  BasisStore store;
  RunOptions o;
  o.filter = {"f4-sigma-sigma-prime"};
  auto lem = run_suite(Suite::lemmas, o, store);
  ASSERT_EQ(lem.size(), 1u);
  EXPECT_EQ(lem[0].status, Status::pass);
  EXPECT_EQ(lem[0].actual, 28);
  EXPECT_EQ(lem[0].provenance, "paper");
  o.filter = {"G-G-G"};
  auto t1 = run_suite(Suite::table1, o, store);
  ASSERT_EQ(t1.size(), 2u);
  EXPECT_EQ(find(t1, "table1/G-G-G/dim_k").actual, 2);
  for (const auto& r : t1) EXPECT_EQ(r.status, Status::pass) << r.id;
  o.filter = {"delta6"};
  auto ids = run_suite(Suite::identities, o, store);
  EXPECT_EQ(find(ids, "identities/jordan/delta6-sigma").status, Status::pass);
  o.filter = {};
  o.algebras = {AlgebraId::g2};
  auto bases = run_suite(Suite::bases, o, store);
  ASSERT_EQ(bases.size(), 2u);
  EXPECT_EQ(find(bases, "bases/g2/dim").actual, 14);
}

TEST(Harness, Table1MarkdownAndDeterminism) {
  BasisStore store;
  RunOptions o;
  auto a = run_suite(Suite::table1, o, store);
  ASSERT_EQ(a.size(), 48u);
  for (const auto& r : a) EXPECT_EQ(r.status, Status::pass) << r.id << " " << r.notes;
  std::string md = report_markdown(a, o, Suite::table1);
  EXPECT_NE(md.find("| row id | pair | expected dim | computed dim | center | derived | status |"), std::string::npos);
  int rows = 0;
  for (std::size_t p = 0; (p = md.find("\n| E", p)) != std::string::npos; ++p) ++rows;
  for (std::size_t p = 0; (p = md.find("\n| F", p)) != std::string::npos; ++p) ++rows;
  for (std::size_t p = 0; (p = md.find("\n| G-", p)) != std::string::npos; ++p) ++rows;
  EXPECT_EQ(rows, 24);
  o.jobs = 2;
  auto b = run_suite(Suite::table1, o, store);
  Json ja = report_json(a, o, Suite::table1), jb = report_json(b, o, Suite::table1);
  for (auto* j : {&ja, &jb})
    for (auto& c : (*j)["checks"]) c.erase("millis");
  EXPECT_EQ(ja, jb);
}
