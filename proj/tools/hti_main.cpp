// hti: batch front end for the interval type theory kernel.
//
//   hti check FILES...            type check .hti files
//   hti norm FILE --def NAME      print a definition's normal form
//   hti oracle FILE [--count N]   finite-model agreement report
//   hti props --suite NAME        property suites
//
// Exit codes: 0 clean, 1 check/property failures, 2 usage or IO errors.
// Reports go to stdout, diagnostics to stderr.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hti/hti.hpp"
#include "prelude_text.hpp"

namespace {

constexpr int kExitClean = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct PreludeOptions {
  bool noPrelude = false;
};

std::string readFile(const std::string& path, bool& ok) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    ok = false;
    return {};
  }
  std::ostringstream os;
  os << in.rdbuf();
  ok = true;
  return os.str();
}

// Returns false (with a message on stderr) when the prelude fails to load.
bool loadPrelude(hti::Session& session, const PreludeOptions& opts) {
  if (opts.noPrelude) return true;
  std::string source = hti::kEmbeddedPrelude;
  std::string name = "<prelude>";
  if (const char* env = std::getenv("HTI_PRELUDE")) {
    bool ok = false;
    source = readFile(env, ok);
    if (!ok) {
      std::cerr << env << ": error[" << hti::code::Io << "]: cannot read prelude file\n";
      return false;
    }
    name = env;
  }
  try {
    auto decls = hti::parse(source);
    auto outcome = hti::checkDecls(session, decls, name);
    for (const auto& d : outcome.diagnostics) std::cerr << d.render() << "\n";
    return outcome.clean();
  } catch (hti::TypeError& e) {
    e.diagnostic.file = name;
    std::cerr << e.diagnostic.render() << "\n";
    return false;
  }
}

// Parse + elaborate + check one file into the session; diagnostics printed.
// Returns the number of diagnostics, or -1 on IO failure.
int processFile(hti::Session& session, const std::string& path) {
  bool ok = false;
  std::string source = readFile(path, ok);
  if (!ok) {
    std::cerr << path << ": error[" << hti::code::Io << "]: cannot read file\n";
    return -1;
  }
  try {
    auto decls = hti::parse(source);
    auto outcome = hti::checkDecls(session, decls, path);
    for (const auto& d : outcome.diagnostics) std::cerr << d.render() << "\n";
    return static_cast<int>(outcome.diagnostics.size());
  } catch (hti::TypeError& e) {
    // Parse errors abort the whole file.
    e.diagnostic.file = path;
    std::cerr << e.diagnostic.render() << "\n";
    return 1;
  }
}

int cmdCheck(const std::vector<std::string>& paths, const PreludeOptions& opts) {
  hti::Session session;
  if (!loadPrelude(session, opts)) return kExitUsage;
  int total = 0;
  for (const auto& p : paths) {
    int n = processFile(session, p);
    if (n < 0) return kExitUsage;
    total += n;
  }
  return total == 0 ? kExitClean : kExitCheckFailed;
}

int cmdNorm(const std::string& path, const std::string& defName, const PreludeOptions& opts) {
  hti::Session session;
  if (!loadPrelude(session, opts)) return kExitUsage;
  int n = processFile(session, path);
  if (n < 0) return kExitUsage;
  if (n > 0) return kExitCheckFailed;
  const hti::GlobalDef* def = session.find(defName);
  if (!def) {
    std::cerr << path << ": error[" << hti::code::Scope << "]: no definition named '" << defName
              << "'\n";
    return kExitCheckFailed;
  }
  std::cout << hti::showClosed(hti::normalizeClosed(def->body)) << "\n";
  return kExitClean;
}

int cmdOracle(const std::string& path, uint32_t count, uint64_t seed,
              const PreludeOptions& opts) {
  hti::Session session;
  if (!loadPrelude(session, opts)) return kExitUsage;
  int n = processFile(session, path);
  if (n < 0) return kExitUsage;
  if (n > 0) return kExitCheckFailed;

  std::vector<hti::OraclePair> pairs;
  for (const auto& name : session.order()) {
    const hti::GlobalDef* def = session.find(name);
    pairs.push_back(hti::OraclePair{def->raw, def->body, def->type});
  }
  hti::GenConfig cfg;
  cfg.seed = seed;
  cfg.maxTerms = count;
  cfg.isoEnabled = false;
  hti::TermGen gen(cfg);
  hti::Context empty;
  uint32_t made = 0, attempts = 0;
  while (made < count && attempts < count * 64 + 64) {
    ++attempts;
    hti::Term target = gen.pickTarget();
    auto t = gen.genAt(empty, target);
    if (!t) continue;
    pairs.push_back(
        hti::OraclePair{*t, hti::normalizeClosed(*t), hti::normalize(empty, target)});
    ++made;
  }
  hti::OracleReport report = hti::oracleCheck(pairs);
  std::cout << report.text();
  return report.sound() ? kExitClean : kExitCheckFailed;
}

int cmdProps(const std::string& suite, uint64_t seed, uint32_t jobs) {
  hti::GenConfig cfg;
  cfg.seed = seed;
  bool all = suite == "all";
  bool any = false;
  bool okAll = true;
  auto run = [&](const char* name, auto fn, uint32_t cases) {
    if (!all && suite != name) return;
    any = true;
    hti::GenConfig c = cfg;
    c.maxTerms = cases;
    hti::SuiteReport r = hti::shardedSuite(fn, c, jobs);
    std::cout << r.text();
    okAll = okAll && r.passed();
  };
  run("overlap", [](const hti::GenConfig& c) { return hti::overlapSuite(c); }, 200);
  run("subject-reduction",
      [](const hti::GenConfig& c) { return hti::subjectReductionSuite(c); }, 500);
  run("idempotence", [](const hti::GenConfig& c) { return hti::idempotenceSuite(c); }, 500);
  if (!any) {
    std::cerr << "error: unknown suite '" << suite
              << "' (expected overlap, subject-reduction, idempotence or all)\n";
    return kExitUsage;
  }
  return okAll ? kExitClean : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"interval type theory kernel"};
  app.require_subcommand(1);

  PreludeOptions prelude;

  auto* check = app.add_subcommand("check", "type check .hti files");
  std::vector<std::string> checkPaths;
  check->add_option("files", checkPaths, "files to check")->required();
  check->add_flag("--no-prelude", prelude.noPrelude, "do not preload the prelude");

  auto* norm = app.add_subcommand("norm", "print a definition's normal form");
  std::string normPath, normDef;
  norm->add_option("file", normPath, "file to check")->required();
  norm->add_option("--def", normDef, "definition name")->required();
  norm->add_flag("--no-prelude", prelude.noPrelude, "do not preload the prelude");

  auto* oracle = app.add_subcommand("oracle", "finite-model agreement report");
  std::string oraclePath;
  uint32_t oracleCount = 0;
  uint64_t oracleSeed = 1;
  oracle->add_option("file", oraclePath, "file to draw definitions from")->required();
  oracle->add_option("--count", oracleCount, "number of generated terms");
  oracle->add_option("--seed", oracleSeed, "generator seed");
  oracle->add_flag("--no-prelude", prelude.noPrelude, "do not preload the prelude");

  auto* props = app.add_subcommand("props", "run property suites");
  std::string suite = "all";
  uint64_t propsSeed = 1;
  uint32_t jobs = 1;
  props->add_option("--suite", suite, "overlap, subject-reduction, idempotence or all");
  props->add_option("--seed", propsSeed, "generator seed");
  props->add_option("--jobs", jobs, "worker shards");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (check->parsed()) return cmdCheck(checkPaths, prelude);
    if (norm->parsed()) return cmdNorm(normPath, normDef, prelude);
    if (oracle->parsed()) return cmdOracle(oraclePath, oracleCount, oracleSeed, prelude);
    if (props->parsed()) return cmdProps(suite, propsSeed, jobs);
  } catch (const hti::KernelBug& bug) {
    std::cerr << "internal error: " << bug.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
