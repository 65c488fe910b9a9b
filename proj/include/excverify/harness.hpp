#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "excverify/liealg.hpp"

namespace excv {

using Json = nlohmann::json;

inline constexpr int kReportSchemaVersion = 1;
inline constexpr int kCacheSchemaVersion = 1;
inline constexpr const char* kVersion = "0.1.0";
inline constexpr std::uint64_t kDefaultSeed = 20240229;

enum class Suite { bases, table1, table2, lemmas, identities, all };
std::string suite_name(Suite s);
std::optional<Suite> parse_suite(const std::string& s);

enum class Status { pass, fail, error, skipped };
std::string status_name(Status s);

struct CheckResult {
  std::string id;
  // basis_dim, fixed_dim, identity, jacobi, membership, invariant
  std::string kind;
  Status status = Status::skipped;
  Json inputs = Json::object();
  Json expected;
  Json actual;
  std::string provenance;
  double millis = 0;
  std::string notes;
  // violated pair / basis index for failing identity and membership checks
  Json counterexample;
};

struct RunOptions {
  std::vector<AlgebraId> algebras;  // empty: all
  std::vector<std::string> filter;  // row names or id tokens; empty: all
  std::optional<std::filesystem::path> cache_dir;
  int jobs = 1;
  std::uint64_t seed = kDefaultSeed;
  int sample = 500;
};

// hash of the octonion table, the bracket-row resolution and the cache schema
std::string convention_fingerprint();

// the parsed data/expected.json
const Json& expected_catalog();

// CycNum <-> array of 8 "num/den" strings
Json cyc_to_json(const CycNum& c);
CycNum cyc_from_json(const Json& j);
Json sparse_to_json(const SparseVec& v);
SparseVec sparse_from_json(const Json& j);

Json basis_to_json(const LieBasis& b);
// nullopt with a reason on schema, fingerprint or parse problems
std::optional<LieBasis> basis_from_json(const Json& j, std::string* why = nullptr);
std::filesystem::path cache_file(const std::filesystem::path& dir, AlgebraId id);
void store_basis(const LieBasis& b, const std::filesystem::path& dir);
std::optional<LieBasis> load_basis(AlgebraId id, const std::filesystem::path& dir, std::string* why = nullptr);

// bases with structure constants, loaded from the cache directory when the
// fingerprint matches and computed (then stored) otherwise; thread-safe
class BasisStore {
 public:
  explicit BasisStore(std::optional<std::filesystem::path> dir = std::nullopt);
  const LieBasis& get(AlgebraId id);
  bool loaded_from_cache(AlgebraId id) const;
  std::vector<std::string> warnings() const;

 private:
  std::optional<std::filesystem::path> dir_;
  std::array<std::mutex, 5> locks_;
  std::array<std::optional<LieBasis>, 5> bases_;
  std::array<bool, 5> cached_{};
  mutable std::mutex warn_lock_;
  std::vector<std::string> warnings_;
};

// Operators on the defining spaces: space is oct (8), jordan (27),
// freudenthal (56) or e8 (248). Grammar:
//   expr   := factor ('*' factor)*
//   factor := ['-'] atom ['^' n]
//   atom   := '(' expr ')' | name | phi1(k) | phi2(k) | phi(k) | t(name) | lift(name) | id
// phi1(k), phi2(k), phi(k) take zeta24^k; t is the transpose on jordan; lift
// is the e7 map acting on e8.
SemilinearOp resolve_operator(const std::string& space, const std::string& expr);

// single checks as run by the identities suite
CheckResult check_identity(const std::string& id, const std::string& space, const std::string& lhs,
                           const std::string& rhs);
// group is g2, f4, e6, e7 or e8; map is an operator expression or a control
// map (swap-e1-e2, scale-e1, scale-all, swap-x-y, negate-r)
CheckResult check_membership(const std::string& id, const std::string& group, const std::string& map,
                             bool expected_member, const RunOptions& opts);

bool filter_matches(const std::vector<std::string>& filter, const std::string& id);

std::vector<CheckResult> run_suite(Suite suite, const RunOptions& opts, BasisStore& store);

Json report_json(const std::vector<CheckResult>& results, const RunOptions& opts, Suite suite);
std::string report_markdown(const std::vector<CheckResult>& results, const RunOptions& opts, Suite suite);
// 0 all pass, 1 any fail, 2 any error
int exit_code(const std::vector<CheckResult>& results);

}  // namespace excv
