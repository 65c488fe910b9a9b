#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "excverify/harness.hpp"

using namespace excv;

int main(int argc, char** argv) {
  CLI::App app{"Exact verifier for the exceptional Lie algebra constructions"};
  app.require_subcommand(1);
  app.fallthrough();

  RunOptions opts;
  std::string format = "json", cache_dir, out;
  std::vector<std::string> algebras;
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "md"}));
  app.add_option("--cache-dir", cache_dir, "basis cache directory (default: $EXCVERIFY_CACHE)");
  app.add_option("--jobs", opts.jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", opts.seed, "seed for randomized checks");
  app.add_option("--sample", opts.sample, "random pairs per e8 automorphism check")->check(CLI::NonNegativeNumber);
  app.add_option("--rows,--filter", opts.filter, "row names or id tokens to run");
  app.add_option("--algebra", algebras, "restrict to algebras")->check(CLI::IsMember({"g2", "f4", "e6", "e7", "e8"}));
  app.add_option("-o,--output", out, "write the report to a file instead of stdout");

  Suite suite = Suite::all;
  const std::pair<Suite, const char*> subs[] = {
      {Suite::bases, "compact bases: dimension and bracket closure"},
      {Suite::table1, "fixed subalgebras of commuting involution pairs"},
      {Suite::table2, "fixed subalgebras of single involutions"},
      {Suite::lemmas, "fixed-dimension and eigenspace checks"},
      {Suite::identities, "operator identities, group membership and property suites"},
      {Suite::all, "every suite"}};
  for (const auto& [s, help] : subs) app.add_subcommand(suite_name(s), help)->callback([&suite, s = s] { suite = s; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  for (const auto& a : algebras) opts.algebras.push_back(*parse_algebra(a));
  if (cache_dir.empty())
    if (const char* env = std::getenv("EXCVERIFY_CACHE")) cache_dir = env;

  try {
    BasisStore store(cache_dir.empty() ? std::nullopt : std::optional<std::filesystem::path>(cache_dir));
    std::vector<CheckResult> results = run_suite(suite, opts, store);
    for (const auto& w : store.warnings()) std::cerr << "warning: " << w << "\n";
    std::string doc = format == "md" ? report_markdown(results, opts, suite) : report_json(results, opts, suite).dump(1) + "\n";
    if (out.empty()) {
      std::cout << doc;
    } else {
      std::ofstream f(out);
      f << doc;
    }
    return exit_code(results);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
