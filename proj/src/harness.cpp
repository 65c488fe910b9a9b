#include "excverify/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "excverify/expected_data.hpp"

namespace excv {

namespace fs = std::filesystem;

std::string suite_name(Suite s) {
  switch (s) {
    case Suite::bases: return "bases";
    case Suite::table1: return "table1";
    case Suite::table2: return "table2";
    case Suite::lemmas: return "lemmas";
    case Suite::identities: return "identities";
    case Suite::all: return "all";
  }
  return "";
}

std::optional<Suite> parse_suite(const std::string& s) {
  for (Suite x : {Suite::bases, Suite::table1, Suite::table2, Suite::lemmas, Suite::identities, Suite::all})
    if (suite_name(x) == s) return x;
  return std::nullopt;
}

std::string status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::error: return "error";
    case Status::skipped: return "skipped";
  }
  return "";
}

std::string convention_fingerprint() {
  std::ostringstream os;
  os << "cache-schema:" << kCacheSchemaVersion << ";bracket-rows:by_input;oct:";
  for (const auto& row : oct_table())
    for (const auto& p : row) os << p.sign * (p.index + 1) << ',';
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : os.str()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

const Json& expected_catalog() {
  static const Json j = Json::parse(data::kExpectedJson);
  return j;
}

Json cyc_to_json(const CycNum& c) { return c.serialize(); }

CycNum cyc_from_json(const Json& j) { return CycNum::deserialize(j.get<std::array<std::string, CycNum::kDegree>>()); }

Json sparse_to_json(const SparseVec& v) {
  Json a = Json::array();
  for (const auto& [k, c] : v) a.push_back({k, cyc_to_json(c)});
  return a;
}

SparseVec sparse_from_json(const Json& j) {
  SparseVec v;
  for (const auto& e : j) {
    int k = e.at(0).get<int>();
    if (!v.empty() && v.back().first >= k) throw std::invalid_argument("unsorted sparse vector");
    CycNum c = cyc_from_json(e.at(1));
    if (c.is_zero()) throw std::invalid_argument("stored zero coefficient");
    v.emplace_back(k, c);
  }
  return v;
}

// ---------------------------------------------------------------- cache

Json basis_to_json(const LieBasis& b) {
  Json j;
  j["schema_version"] = kCacheSchemaVersion;
  j["convention_fingerprint"] = convention_fingerprint();
  j["algebra_id"] = algebra_name(b.id);
  j["vectors"] = Json::array();
  for (const auto& v : b.vectors) j["vectors"].push_back(sparse_to_json(v));
  j["free"] = b.free;
  Json t = Json::array();
  int n = b.dim();
  if (b.has_table())
    for (int i = 0; i < n; ++i)
      for (int k = i + 1; k < n; ++k) t.push_back(sparse_to_json(b.table[i * n + k]));
  j["bracket_table"] = t;
  return j;
}

std::optional<LieBasis> basis_from_json(const Json& j, std::string* why) {
  auto fail = [&](const std::string& s) -> std::optional<LieBasis> {
    if (why) *why = s;
    return std::nullopt;
  };
  try {
    if (j.at("schema_version").get<int>() != kCacheSchemaVersion) return fail("schema version mismatch");
    if (j.at("convention_fingerprint").get<std::string>() != convention_fingerprint())
      return fail("convention fingerprint mismatch");
    auto id = parse_algebra(j.at("algebra_id").get<std::string>());
    if (!id) return fail("unknown algebra");
    LieBasis b;
    b.id = *id;
    for (const auto& v : j.at("vectors")) b.vectors.push_back(sparse_from_json(v));
    b.free = j.at("free").get<std::vector<int>>();
    int n = b.dim();
    if (n != algebra_dim(*id) || static_cast<int>(b.free.size()) != n) return fail("dimension mismatch");
    SemilinearOp c = compact_conjugation(*id);
    for (const auto& v : b.vectors)
      if (c.apply(v) != v) return fail("basis vector outside the compact form");
    const Json& t = j.at("bracket_table");
    if (!t.empty()) {
      if (static_cast<int>(t.size()) != n * (n - 1) / 2) return fail("bracket table size mismatch");
      b.table.assign(static_cast<std::size_t>(n) * n, {});
      std::size_t e = 0;
      for (int i = 0; i < n; ++i)
        for (int k = i + 1; k < n; ++k) b.table[i * n + k] = sparse_from_json(t[e++]);
    }
    return b;
  } catch (const std::exception& e) {
    return fail(std::string("parse error: ") + e.what());
  }
}

fs::path cache_file(const fs::path& dir, AlgebraId id) { return dir / ("basis-" + algebra_name(id) + ".json"); }

void store_basis(const LieBasis& b, const fs::path& dir) {
  fs::create_directories(dir);
  fs::path target = cache_file(dir, b.id);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    out << basis_to_json(b).dump();
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::optional<LieBasis> load_basis(AlgebraId id, const fs::path& dir, std::string* why) {
  fs::path f = cache_file(dir, id);
  std::ifstream in(f);
  if (!in) {
    if (why) *why = "absent";
    return std::nullopt;
  }
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    if (why) *why = std::string("parse error: ") + e.what();
    return std::nullopt;
  }
  auto b = basis_from_json(j, why);
  if (b && b->id != id) {
    if (why) *why = "algebra mismatch";
    return std::nullopt;
  }
  return b;
}

BasisStore::BasisStore(std::optional<fs::path> dir) : dir_(std::move(dir)) {}

const LieBasis& BasisStore::get(AlgebraId id) {
  int k = static_cast<int>(id);
  std::lock_guard<std::mutex> g(locks_[k]);
  if (bases_[k]) return *bases_[k];
  if (dir_) {
    std::string why;
    if (auto b = load_basis(id, *dir_, &why); b && b->has_table()) {
      bases_[k] = std::move(*b);
      cached_[k] = true;
      return *bases_[k];
    }
    if (why != "absent") {
      std::lock_guard<std::mutex> w(warn_lock_);
      warnings_.push_back("cache for " + algebra_name(id) + " ignored (" + why + "), recomputing");
    }
  }
  bases_[k] = compute_basis(id);
  if (dir_) {
    try {
      store_basis(*bases_[k], *dir_);
    } catch (const std::exception& e) {
      std::lock_guard<std::mutex> w(warn_lock_);
      warnings_.push_back(std::string("cache write failed: ") + e.what());
    }
  }
  return *bases_[k];
}

bool BasisStore::loaded_from_cache(AlgebraId id) const { return cached_[static_cast<int>(id)]; }

std::vector<std::string> BasisStore::warnings() const {
  std::lock_guard<std::mutex> w(warn_lock_);
  return warnings_;
}

// ---------------------------------------------------------------- operators

namespace {

int space_dim(const std::string& space) {
  if (space == "oct") return 8;
  if (space == "jordan") return kJordanDim;
  if (space == "freudenthal") return kFDim;
  if (space == "e8") return kE8Dim;
  throw std::invalid_argument("unknown space: " + space);
}

class OpParser {
 public:
  OpParser(const std::string& space, const std::string& text) : space_(space), s_(text) {}

  SemilinearOp parse() {
    SemilinearOp r = expr();
    if (p_ != s_.size()) error();
    return r;
  }

 private:
  [[noreturn]] void error() const { throw std::invalid_argument("malformed operator expression: " + s_); }
  bool eat(char c) {
    if (p_ < s_.size() && s_[p_] == c) {
      ++p_;
      return true;
    }
    return false;
  }
  std::string word() {
    std::size_t b = p_;
    while (p_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[p_])) || s_[p_] == '_')) ++p_;
    if (b == p_) error();
    return s_.substr(b, p_ - b);
  }
  int integer() {
    bool neg = eat('-');
    std::size_t b = p_;
    while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
    if (b == p_) error();
    int v = std::stoi(s_.substr(b, p_ - b));
    return neg ? -v : v;
  }
  SemilinearOp expr() {
    SemilinearOp r = factor();
    while (eat('*')) r = r * factor();
    return r;
  }
  SemilinearOp factor() {
    bool neg = eat('-');
    SemilinearOp a = atom();
    if (eat('^')) {
      int n = integer();
      if (n < 0) error();
      a = a.pow(n);
    }
    return neg ? -a : a;
  }
  SemilinearOp atom() {
    if (eat('(')) {
      SemilinearOp r = expr();
      if (!eat(')')) error();
      return r;
    }
    std::string w = word();
    if (w == "id") return SemilinearOp::identity(space_dim(space_));
    if (w == "phi1" || w == "phi2" || w == "phi") {
      if (!eat('(')) error();
      CycNum z = CycNum::zeta(integer());
      if (!eat(')')) error();
      if (w == "phi") {
        if (space_ != "freudenthal") error();
        return phi_theta(z);
      }
      if (space_ != "jordan") error();
      return w == "phi1" ? phi1(z) : phi2(z);
    }
    if (w == "t" || w == "lift") {
      if (!eat('(')) error();
      std::string inner = word();
      if (!eat(')')) error();
      if (w == "t") {
        if (space_ != "jordan") error();
        return transpose_op(named_jordan_map(inner));
      }
      if (space_ != "e8") error();
      return lift_e7(named_f_map(inner));
    }
    if (space_ == "oct") return named_oct_map(w);
    if (space_ == "jordan") return named_jordan_map(w);
    if (space_ == "freudenthal") return named_f_map(w);
    if (space_ == "e8") return named_e8_map(w);
    error();
  }

  std::string space_;
  std::string s_;
  std::size_t p_ = 0;
};

}  // namespace

SemilinearOp resolve_operator(const std::string& space, const std::string& expr) {
  space_dim(space);
  return OpParser(space, expr).parse();
}

bool filter_matches(const std::vector<std::string>& filter, const std::string& id) {
  if (filter.empty()) return true;
  std::vector<std::string> segments;
  std::stringstream ss(id);
  for (std::string s; std::getline(ss, s, '/');) segments.push_back(s);
  for (const auto& f : filter) {
    if (f.find('/') != std::string::npos && id.rfind(f, 0) == 0) return true;
    for (const auto& seg : segments) {
      if (seg == f) return true;
      std::stringstream ts(seg);
      for (std::string t; std::getline(ts, t, '-');)
        if (t == f) return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------- checks

namespace {

struct Task {
  std::string id;
  std::optional<AlgebraId> algebra;
  std::function<void(CheckResult&)> run;
  CheckResult proto;
};

AlgebraId algebra_of(const Json& j) {
  auto id = parse_algebra(j.get<std::string>());
  if (!id) throw std::invalid_argument("unknown algebra in catalog");
  return *id;
}

void set_status(CheckResult& r, bool ok) { r.status = ok ? Status::pass : Status::fail; }

InvolutionAction action(BasisStore& store, AlgebraId id, const std::string& expr) {
  return act_in_basis(store.get(id), expr, resolve_map(id, expr));
}

std::vector<InvolutionAction> actions(BasisStore& store, AlgebraId id, const Json& maps) {
  std::vector<InvolutionAction> a;
  for (const auto& m : maps) a.push_back(action(store, id, m.get<std::string>()));
  return a;
}

int fixed_dim(BasisStore& store, AlgebraId id, const std::vector<InvolutionAction>& acts) {
  return static_cast<int>(joint_eigenspace(store.get(id), acts, std::vector<int>(acts.size(), 1)).size());
}

std::map<std::string, int> table2_dims() {
  std::map<std::string, int> d;
  for (const auto& r : expected_catalog().at("table2")) d[r.at("row").get<std::string>()] = r.at("dim").get<int>();
  return d;
}

void base_tasks(std::vector<Task>& out) {
  for (const auto& e : expected_catalog().at("bases")) {
    AlgebraId id = algebra_of(e.at("algebra"));
    std::string name = algebra_name(id);
    Task t;
    t.id = "bases/" + name + "/dim";
    t.algebra = id;
    t.proto.kind = "basis_dim";
    t.proto.inputs = {{"algebra", name}};
    t.proto.expected = e.at("dim");
    t.proto.provenance = e.at("provenance");
    t.proto.notes = e.value("note", "");
    out.push_back(t);
    Task c = t;
    c.id = "bases/" + name + "/closure";
    c.proto.kind = "invariant";
    c.proto.expected = {{"bracket_closed", true}, {"compact_form", true}};
    c.proto.provenance = "derived";
    c.proto.notes = "every bracket of basis vectors re-expressed with zero residual";
    out.push_back(c);
  }
}

void table2_tasks(std::vector<Task>& out) {
  for (const auto& e : expected_catalog().at("table2")) {
    Task t;
    std::string row = e.at("row");
    AlgebraId id = algebra_of(e.at("algebra"));
    t.id = "table2/" + row + "/dim_k";
    t.algebra = id;
    t.proto.kind = "fixed_dim";
    t.proto.inputs = {{"algebra", algebra_name(id)}, {"map", e.at("map")}, {"k", e.at("k")}};
    t.proto.expected = e.at("dim");
    t.proto.provenance = e.at("provenance");
    t.proto.notes = e.at("k").get<std::string>() + ": " + e.at("arithmetic").get<std::string>();
    out.push_back(t);
  }
}

void table1_tasks(std::vector<Task>& out) {
  for (const auto& e : expected_catalog().at("table1")) {
    std::string row = e.at("row");
    AlgebraId id = algebra_of(e.at("algebra"));
    Json inputs = {{"algebra", algebra_name(id)}, {"pair", e.at("pair")}, {"k", e.at("k")}, {"row", row}};
    Task t;
    t.id = "table1/" + row + "/dim_k";
    t.algebra = id;
    t.proto.kind = "fixed_dim";
    t.proto.inputs = inputs;
    t.proto.expected = e.at("dim");
    t.proto.provenance = e.at("provenance");
    out.push_back(t);
    Task v = t;
    v.id = "table1/" + row + "/invariants";
    v.proto.kind = "invariant";
    std::map<std::string, int> t2 = table2_dims();
    std::vector<int> types;
    for (const auto& ty : e.at("types")) types.push_back(t2.at(ty.get<std::string>()));
    std::sort(types.begin(), types.end());
    v.proto.expected = {{"center_dim", e.at("center_dim")},
                        {"derived_dim", e.at("derived_dim")},
                        {"killing_negdef", e.at("killing_negdef")},
                        {"involutive", {true, true}},
                        {"commutes_ad", true},
                        {"type_dims", types}};
    v.proto.provenance = e.at("invariants_provenance");
    v.proto.notes = "type dims compared as a multiset of dim g^s, dim g^t, dim g^st";
    out.push_back(v);
  }
}

void lemma_tasks(std::vector<Task>& out) {
  for (const auto& e : expected_catalog().at("lemmas")) {
    Task t;
    t.id = "lemmas/" + e.at("id").get<std::string>();
    t.algebra = algebra_of(e.at("algebra"));
    std::string kind = e.at("kind");
    t.proto.kind = kind == "equal_dim" ? "invariant" : "fixed_dim";
    t.proto.inputs = {{"algebra", e.at("algebra")}, {"maps", e.at("maps")}, {"computation", kind}};
    if (kind == "fixed_dim") t.proto.expected = e.at("dim");
    if (kind == "eigenspaces") t.proto.expected = e.at("dims");
    if (kind == "stabilizer_fixed")
      t.proto.expected = {{"dim", e.at("dim")}, {"stabilizer_dim", e.at("stabilizer_dim")}};
    if (kind == "equal_dim") t.proto.expected = {{"equal", true}};
    t.proto.provenance = e.at("provenance");
    t.proto.notes = e.value("note", "");
    out.push_back(t);
  }
}

void identity_tasks(std::vector<Task>& out) {
  for (const auto& e : expected_catalog().at("identities")) {
    Task t;
    t.id = "identities/" + e.at("id").get<std::string>();
    std::string kind = e.at("kind");
    t.proto.provenance = e.at("provenance");
    t.proto.notes = e.value("note", "");
    if (kind == "identity") {
      t.proto.kind = "identity";
      t.proto.inputs = {{"space", e.at("space")}, {"lhs", e.at("lhs")}, {"rhs", e.at("rhs")}};
      t.proto.expected = {{"equal", true}};
    } else if (kind == "membership") {
      t.proto.kind = "membership";
      t.algebra = algebra_of(e.at("space"));
      t.proto.inputs = {{"group", e.at("space")}, {"map", e.at("map")}};
      t.proto.expected = {{"member", e.at("expected_member")}};
    } else {
      t.proto.kind = e.at("property") == "e8-jacobi" ? "jacobi" : "invariant";
      t.proto.inputs = {{"property", e.at("property")}, {"count", e.at("count")}};
      t.proto.expected = {{"holds", true}, {"count", e.at("count")}};
      if (e.at("property").get<std::string>().rfind("e8", 0) == 0) t.algebra = AlgebraId::e8;
    }
    out.push_back(t);
  }
}

// ------------------------------------------------------------ evaluation

Json first_difference(const SemilinearOp& a, const SemilinearOp& b) {
  if (a.dim() != b.dim()) return {{"dims", {a.dim(), b.dim()}}};
  if (a.conjugates_scalars() != b.conjugates_scalars())
    return {{"conjugates_scalars", {a.conjugates_scalars(), b.conjugates_scalars()}}};
  for (int k = 0; k < a.dim(); ++k) {
    SparseVec x = a.apply(sv_unit(k)), y = b.apply(sv_unit(k));
    if (x != y) return {{"basis_index", k}, {"lhs_image", sparse_to_json(x)}, {"rhs_image", sparse_to_json(y)}};
  }
  return nullptr;
}

const char* group_space(const std::string& g) {
  if (g == "g2") return "oct";
  if (g == "f4" || g == "e6") return "jordan";
  if (g == "e7") return "freudenthal";
  return "e8";
}

// maps outside the groups, used as negative controls
std::optional<SemilinearOp> control_map(const std::string& g, const std::string& name) {
  if (g == "g2" && name == "swap-e1-e2") {
    ExactMatrix m = ExactMatrix::identity(8);
    m.set(1, 1, CycNum());
    m.set(2, 2, CycNum());
    m.set(1, 2, CycNum(1));
    m.set(2, 1, CycNum(1));
    return SemilinearOp(m);
  }
  if (g == "f4" && name == "scale-e1") {
    ExactMatrix m = ExactMatrix::identity(kJordanDim);
    m.set(0, 0, CycNum(2));
    return SemilinearOp(m);
  }
  if (g == "e6" && name == "scale-all") return SemilinearOp(ExactMatrix::identity(kJordanDim)).scaled(CycNum(2));
  if (g == "e7" && name == "swap-x-y") {
    ExactMatrix m(kFDim, kFDim);
    for (int k = 0; k < kJordanDim; ++k) {
      m.set(k + kJordanDim, k, CycNum(1));
      m.set(k, k + kJordanDim, CycNum(1));
    }
    m.set(54, 54, CycNum(1));
    m.set(55, 55, CycNum(1));
    return SemilinearOp(m);
  }
  if (g == "e8" && name == "negate-r") {
    ExactMatrix m = ExactMatrix::identity(kE8Dim);
    m.set(e8slot::kR, e8slot::kR, CycNum(-1));
    return SemilinearOp(m);
  }
  return std::nullopt;
}

void run_identity(CheckResult& r) {
  std::string space = r.inputs.at("space");
  SemilinearOp l = resolve_operator(space, r.inputs.at("lhs")), rr = resolve_operator(space, r.inputs.at("rhs"));
  Json diff = first_difference(l, rr);
  r.actual = {{"equal", diff.is_null()}};
  r.counterexample = diff;
  set_status(r, diff.is_null());
}

void run_membership(CheckResult& r, const RunOptions& opts) {
  std::string g = r.inputs.at("group"), name = r.inputs.at("map");
  auto ctl = control_map(g, name);
  SemilinearOp l = ctl ? *ctl : resolve_operator(group_space(g), name);
  bool member = false;
  Json cx;
  if (g == "g2") {
    G2Violation v{};
    member = is_g2_automorphism(l, &v);
    if (!member) cx = {{"pair", {v.i, v.j}}};
  } else if (g == "f4" || g == "e6") {
    JordanViolation v;
    member = g == "f4" ? is_f4_elem(l, &v) : is_e6_elem(l, &v);
    if (!member) cx = {{"basis", {v.i, v.j, v.k}}};
  } else if (g == "e7") {
    E7Violation v;
    member = is_e7_group_elem(l, 0, opts.seed, &v);
    if (!member) cx = {{"basis", {v.p, v.q, v.r}}};
  } else {
    E8Violation v;
    member = is_e8_automorphism(l, opts.sample, opts.seed, &v);
    if (!member) cx = {{"a", sparse_to_json(v.a)}, {"b", sparse_to_json(v.b)}};
    r.inputs["sample"] = opts.sample;
  }
  r.actual = {{"member", member}};
  r.counterexample = cx;
  set_status(r, member == r.expected.at("member").get<bool>());
  if (r.status == Status::pass) r.counterexample = nullptr;
}

CycNum random_scalar(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-3, 3), pick(0, 2);
  int p = pick(rng);
  if (p == 0) return CycNum(d(rng));
  if (p == 1) return CycNum(d(rng)) * CycNum::imag_unit() + CycNum(d(rng), 2);
  return CycNum(d(rng)) * CycNum::zeta(d(rng));
}

Octonion random_oct(std::mt19937_64& rng) {
  Octonion o;
  for (auto& x : o.c) x = random_scalar(rng);
  return o;
}

JordanElem random_jordan(std::mt19937_64& rng) {
  JordanElem j;
  for (auto& x : j.xi) x = random_scalar(rng);
  for (auto& o : j.x) o = random_oct(rng);
  return j;
}

void run_property(CheckResult& r, const RunOptions& opts) {
  std::string p = r.inputs.at("property");
  int n = r.inputs.at("count");
  std::mt19937_64 rng(opts.seed);
  int done = 0;
  Json cx;
  for (; done < n && cx.is_null(); ++done) {
    if (p == "oct-alternativity") {
      Octonion x = random_oct(rng), y = random_oct(rng);
      Octonion xx = oct_mul(x, x);
      if (oct_mul(xx, y) != oct_mul(x, oct_mul(x, y)) || oct_mul(y, xx) != oct_mul(oct_mul(y, x), x))
        cx = {{"trial", done}};
    } else if (p == "oct-moufang") {
      Octonion x = random_oct(rng), y = random_oct(rng), z = random_oct(rng);
      if (oct_mul(oct_mul(x, y), oct_mul(z, x)) != oct_mul(x, oct_mul(oct_mul(y, z), x))) cx = {{"trial", done}};
    } else if (p == "jordan-trilinear-symmetry") {
      JordanElem a = random_jordan(rng), b = random_jordan(rng), c = random_jordan(rng);
      CycNum v = trilinear(a, b, c);
      if (trilinear(b, a, c) != v || trilinear(a, c, b) != v || trilinear(c, b, a) != v || trilinear(b, c, a) != v ||
          trilinear(c, a, b) != v)
        cx = {{"trial", done}};
    } else if (p == "e8-jacobi") {
      int region = done % 4;
      int lo = region == 1 ? e8slot::kP : 0;
      int hi = region == 0 ? e8slot::kP : region == 1 ? e8slot::kR : kE8Dim;
      SparseVec a = random_e8_coords(rng, lo, hi, 3), b = random_e8_coords(rng, 0, kE8Dim, 3),
                c = random_e8_coords(rng, e8slot::kP, kE8Dim, 3);
      if (!jacobi_check(a, b, c))
        cx = {{"trial", done}, {"a", sparse_to_json(a)}, {"b", sparse_to_json(b)}, {"c", sparse_to_json(c)}};
    } else if (p == "e8-antisymmetry") {
      SparseVec a = random_e8_coords(rng, 0, kE8Dim, 4), b = random_e8_coords(rng, 0, kE8Dim, 4);
      if (bracket(a, b) != sv_scale(bracket(b, a), CycNum(-1)))
        cx = {{"trial", done}, {"a", sparse_to_json(a)}, {"b", sparse_to_json(b)}};
    } else {
      throw std::invalid_argument("unknown property: " + p);
    }
  }
  r.actual = {{"holds", cx.is_null()}, {"count", done}};
  r.counterexample = cx;
  set_status(r, cx.is_null() && done == n);
}

void evaluate(Task& t, CheckResult& r, const RunOptions& opts, BasisStore& store) {
  const std::string& id = t.id;
  if (id.rfind("bases/", 0) == 0) {
    const LieBasis& b = store.get(*t.algebra);
    if (r.kind == "basis_dim") {
      r.actual = b.dim();
      set_status(r, r.actual == r.expected);
    } else {
      SemilinearOp c = compact_conjugation(b.id);
      bool real = std::all_of(b.vectors.begin(), b.vectors.end(), [&](const SparseVec& v) { return c.apply(v) == v; });
      r.actual = {{"bracket_closed", verify_table(b)}, {"compact_form", real}};
      set_status(r, r.actual == r.expected);
    }
    if (store.loaded_from_cache(b.id)) r.notes += r.notes.empty() ? "basis loaded from cache" : "; basis loaded from cache";
    return;
  }
  if (id.rfind("table2/", 0) == 0) {
    AlgebraId a = *t.algebra;
    r.actual = fixed_dim(store, a, {action(store, a, r.inputs.at("map"))});
    set_status(r, r.actual == r.expected);
    return;
  }
  if (id.rfind("table1/", 0) == 0) {
    AlgebraId a = *t.algebra;
    const LieBasis& b = store.get(a);
    std::vector<InvolutionAction> acts = actions(store, a, r.inputs.at("pair"));
    if (r.kind == "fixed_dim") {
      r.actual = fixed_dim(store, a, acts);
      set_status(r, r.actual == r.expected);
      return;
    }
    bool inv = acts[0].involutive && acts[1].involutive;
    bool comm = pair_commutes_ad(acts[0], acts[1]);
    Json actual = {{"involutive", {acts[0].involutive, acts[1].involutive}}, {"commutes_ad", comm}};
    if (inv) {
      SubalgebraReport k = fixed_subalgebra(b, acts);
      actual["center_dim"] = k.center_dim;
      actual["derived_dim"] = k.derived_dim;
      actual["killing_negdef"] = k.killing_negdef ? Json(*k.killing_negdef) : Json(nullptr);
      InvolutionAction st{"product", acts[0].matrix * acts[1].matrix, comm};
      std::vector<int> dims = {fixed_dim(store, a, {acts[0]}), fixed_dim(store, a, {acts[1]})};
      if (comm) dims.push_back(fixed_dim(store, a, {st}));
      std::sort(dims.begin(), dims.end());
      actual["type_dims"] = dims;
    }
    r.actual = actual;
    set_status(r, r.actual == r.expected);
    return;
  }
  if (id.rfind("lemmas/", 0) == 0) {
    AlgebraId a = *t.algebra;
    const LieBasis& b = store.get(a);
    std::string kind = r.inputs.at("computation");
    std::vector<InvolutionAction> acts = actions(store, a, r.inputs.at("maps"));
    if (kind == "fixed_dim") {
      r.actual = fixed_dim(store, a, acts);
    } else if (kind == "eigenspaces") {
      Json d;
      for (int s0 : {1, -1})
        for (int s1 : {1, -1})
          d[std::string(s0 > 0 ? "+" : "-") + (s1 > 0 ? "+" : "-")] = joint_eigenspace(b, acts, {s0, s1}).size();
      r.actual = d;
    } else if (kind == "stabilizer_fixed") {
      SparseVec e1 = JordanElem::E(1).to_sparse();
      std::vector<SparseVec> images;
      for (const auto& v : b.vectors) images.push_back(coords_to_matrix(a, v).apply(e1));
      std::vector<SparseVec> stab = annihilator(b, images, kJordanDim);
      std::vector<SparseVec> both = intersect(stab, joint_eigenspace(b, acts, {1}), b.dim());
      r.actual = {{"dim", both.size()}, {"stabilizer_dim", stab.size()}};
    } else {
      int d0 = fixed_dim(store, a, {acts[0]}), d1 = fixed_dim(store, a, {acts[1]});
      r.actual = {{"equal", d0 == d1}, {"dims", {d0, d1}}};
      set_status(r, d0 == d1);
      return;
    }
    set_status(r, r.actual == r.expected);
    return;
  }
  if (r.kind == "identity") return run_identity(r);
  if (r.kind == "membership") return run_membership(r, opts);
  run_property(r, opts);
}

std::vector<Task> tasks_for(Suite s) {
  std::vector<Task> t;
  if (s == Suite::bases || s == Suite::all) base_tasks(t);
  if (s == Suite::table2 || s == Suite::all) table2_tasks(t);
  if (s == Suite::table1 || s == Suite::all) table1_tasks(t);
  if (s == Suite::lemmas || s == Suite::all) lemma_tasks(t);
  if (s == Suite::identities || s == Suite::all) identity_tasks(t);
  return t;
}

}  // namespace

namespace {

template <class F>
CheckResult timed(CheckResult r, F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  try {
    f(r);
  } catch (const std::exception& e) {
    r.status = Status::error;
    r.notes = e.what();
  }
  r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace

CheckResult check_identity(const std::string& id, const std::string& space, const std::string& lhs,
                           const std::string& rhs) {
  CheckResult r;
  r.id = id;
  r.kind = "identity";
  r.inputs = {{"space", space}, {"lhs", lhs}, {"rhs", rhs}};
  r.expected = {{"equal", true}};
  return timed(r, [](CheckResult& x) { run_identity(x); });
}

CheckResult check_membership(const std::string& id, const std::string& group, const std::string& map,
                             bool expected_member, const RunOptions& opts) {
  CheckResult r;
  r.id = id;
  r.kind = "membership";
  r.inputs = {{"group", group}, {"map", map}};
  r.expected = {{"member", expected_member}};
  return timed(r, [&](CheckResult& x) { run_membership(x, opts); });
}

std::vector<CheckResult> run_suite(Suite suite, const RunOptions& opts, BasisStore& store) {
  std::vector<Task> all = tasks_for(suite), tasks;
  for (auto& t : all) {
    if (!filter_matches(opts.filter, t.id)) continue;
    if (!opts.algebras.empty() && t.algebra &&
        std::find(opts.algebras.begin(), opts.algebras.end(), *t.algebra) == opts.algebras.end())
      continue;
    if (!opts.algebras.empty() && !t.algebra && t.proto.kind == "identity") {
      std::string space = t.proto.inputs.at("space");
      bool keep = false;
      for (AlgebraId a : opts.algebras) {
        std::string g = algebra_name(a);
        keep = keep || group_space(g) == space || (space == "oct" && a == AlgebraId::g2);
      }
      if (!keep) continue;
    }
    tasks.push_back(std::move(t));
  }
  std::vector<CheckResult> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next++) < tasks.size();) {
      CheckResult proto = tasks[k].proto;
      proto.id = tasks[k].id;
      results[k] = timed(proto, [&](CheckResult& r) { evaluate(tasks[k], r, opts, store); });
    }
  };
  int jobs = std::max(1, opts.jobs);
  std::vector<std::thread> pool;
  for (int k = 1; k < jobs; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  std::sort(results.begin(), results.end(), [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; });
  return results;
}

// ---------------------------------------------------------------- reports

Json report_json(const std::vector<CheckResult>& results, const RunOptions& opts, Suite suite) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["run_meta"] = {{"fingerprint", convention_fingerprint()},
                   {"seed", opts.seed},
                   {"version", kVersion},
                   {"suite", suite_name(suite)},
                   {"sample", opts.sample},
                   {"bracket_rows", "by_input"}};
  j["checks"] = Json::array();
  std::map<std::string, int> counts = {{"pass", 0}, {"fail", 0}, {"error", 0}, {"skipped", 0}};
  for (const auto& r : results) {
    Json c = {{"id", r.id},
              {"kind", r.kind},
              {"status", status_name(r.status)},
              {"inputs", r.inputs},
              {"expected", {{"value", r.expected}, {"provenance", r.provenance}}},
              {"actual", r.actual},
              {"millis", r.millis},
              {"notes", r.notes},
              {"counterexample", r.counterexample}};
    j["checks"].push_back(c);
    ++counts[status_name(r.status)];
  }
  j["summary"] = counts;
  return j;
}

namespace {

std::string cell(const Json& j) {
  if (j.is_null()) return "-";
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

std::string pair_text(const Json& pair) {
  std::string s;
  for (const auto& p : pair) s += (s.empty() ? "" : ", ") + p.get<std::string>();
  return s;
}

}  // namespace

std::string report_markdown(const std::vector<CheckResult>& results, const RunOptions& opts, Suite suite) {
  std::ostringstream os;
  os << "# excverify " << suite_name(suite) << "\n\n";
  os << "fingerprint `" << convention_fingerprint() << "`, seed " << opts.seed << ", version " << kVersion << "\n\n";
  std::map<std::string, std::pair<const CheckResult*, const CheckResult*>> rows;
  std::vector<std::string> order;
  for (const auto& e : expected_catalog().at("table1")) order.push_back(e.at("row"));
  for (const auto& r : results) {
    if (r.id.rfind("table1/", 0) != 0) continue;
    std::string row = r.inputs.at("row");
    (r.kind == "fixed_dim" ? rows[row].first : rows[row].second) = &r;
  }
  if (!rows.empty()) {
    os << "## Z2 x Z2 fixed subalgebras\n\n";
    os << "| row id | pair | expected dim | computed dim | center | derived | status |\n";
    os << "|---|---|---|---|---|---|---|\n";
    for (const auto& row : order) {
      auto it = rows.find(row);
      if (it == rows.end()) continue;
      const CheckResult* d = it->second.first;
      const CheckResult* v = it->second.second;
      const CheckResult* any = d ? d : v;
      Json center = v && v->actual.is_object() ? v->actual.value("center_dim", Json()) : Json();
      Json derived = v && v->actual.is_object() ? v->actual.value("derived_dim", Json()) : Json();
      bool pass = (!d || d->status == Status::pass) && (!v || v->status == Status::pass);
      os << "| " << row << " | " << pair_text(any->inputs.at("pair")) << " | " << (d ? cell(d->expected) : "-")
         << " | " << (d ? cell(d->actual) : "-") << " | " << cell(center) << " | " << cell(derived) << " | "
         << (pass ? "pass" : "FAIL") << " |\n";
    }
    os << "\n";
  }
  bool header = false;
  for (const auto& r : results) {
    if (r.id.rfind("table1/", 0) == 0) continue;
    if (!header) {
      os << "## Checks\n\n| id | status | expected | actual | provenance |\n|---|---|---|---|---|\n";
      header = true;
    }
    os << "| " << r.id << " | " << status_name(r.status) << " | " << cell(r.expected) << " | "
       << (r.status == Status::error ? "error: " + r.notes : cell(r.actual)) << " | " << r.provenance << " |\n";
  }
  int fails = 0;
  for (const auto& r : results) fails += r.status != Status::pass;
  os << "\n" << results.size() - fails << " of " << results.size() << " checks pass\n";
  return os.str();
}

int exit_code(const std::vector<CheckResult>& results) {
  bool fail = false;
  for (const auto& r : results) {
    if (r.status == Status::error) return 2;
    fail = fail || r.status == Status::fail;
  }
  return fail ? 1 : 0;
}

}  // namespace excv
