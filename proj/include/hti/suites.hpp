#pragma once

// Property suites: overlap coherence of the coe rules, subject reduction,
// idempotent normalization and oracle agreement. Reports are deterministic
// for a fixed configuration and merge by shard in index order.

#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "hti/conversion.hpp"
#include "hti/generate.hpp"
#include "hti/oracle.hpp"
#include "hti/pretty.hpp"

namespace hti {

struct SuiteReport {
  std::string property;
  uint32_t cases = 0;
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }

  std::string text() const {
    std::ostringstream os;
    for (const auto& f : failures) os << "FAIL " << property << " " << f << "\n";
    if (failures.empty()) os << "PASS " << property << " " << cases << " cases\n";
    return os.str();
  }
};

inline const char* coeRuleName(CoeRule r) {
  switch (r) {
    case CoeRule::LeftEndpoint: return "left";
    case CoeRule::ConstantFamily: return "constant";
    case CoeRule::IsoForward: return "iso";
    case CoeRule::Stuck: return "stuck";
  }
  return "?";
}

// Generates coe redexes on which at least two rules match (in this theory:
// a left target over a constant family) and fires every matching rule
// independently; all results must be convertible. Every tenth case probes a
// single-rule redex and records that no spurious overlap is reported.
inline SuiteReport overlapSuite(const GenConfig& cfg) {
  SuiteReport report;
  report.property = "overlap";
  TermGen gen(cfg);
  Context empty;
  uint32_t made = 0;
  uint32_t caseIndex = 0;
  const uint32_t attemptCap = cfg.maxTerms * 64 + 64;
  while (made < cfg.maxTerms) {
    if (++caseIndex > attemptCap) {
      report.failures.push_back("generator exhausted before " + std::to_string(cfg.maxTerms) +
                                " cases");
      break;
    }
    bool probeSingle = (caseIndex % 10 == 0);
    const Term& target = gen.pickTarget();
    auto baseTerm = gen.genAt(empty, target);
    if (!baseTerm) continue;
    Closure fam;
    Value base = eval({}, *baseTerm);
    Value i = vLeft();
    if (probeSingle) {
      // iso family at a left target: only the left-endpoint rule matches.
      if (cfg.isoEnabled) {
        auto b = gen.genAt(empty, boolType());
        if (!b) continue;
        fam = Closure{{}, isoNot(var(0)), "x"};
        base = eval({}, *b);
      } else {
        fam = Closure{{}, shift(normalize(empty, target), 0, 1), "_"};
        i = vRight();
      }
      auto matches = coeMatches(fam, base, i);
      if (matches.size() != 1)
        report.failures.push_back("case " + std::to_string(caseIndex) +
                                  ": expected a single matching rule, got " +
                                  std::to_string(matches.size()));
      continue;
    }
    fam = Closure{{}, shift(normalize(empty, target), 0, 1), "_"};
    auto matches = coeMatches(fam, base, i);
    if (matches.size() < 2) {
      report.failures.push_back("case " + std::to_string(caseIndex) +
                                ": expected a multi-rule redex, got " +
                                std::to_string(matches.size()) + " matches");
      ++made;
      continue;
    }
    for (size_t a = 0; a < matches.size(); ++a)
      for (size_t b = a + 1; b < matches.size(); ++b) {
        Value ra = coeFire(matches[a], fam, base, i);
        Value rb = coeFire(matches[b], fam, base, i);
        if (!convert(0, ra, rb))
          report.failures.push_back(
              "case " + std::to_string(caseIndex) + ": rules " + coeRuleName(matches[a]) +
              " and " + coeRuleName(matches[b]) + " disagree on " + showClosed(*baseTerm));
      }
    ++made;
  }
  report.cases = made;
  return report;
}

// Small nonempty context exercising neutrals.
inline Context harnessContext() {
  Context ctx;
  ctx = ctx.extend(boolType(), "b0");
  ctx = ctx.extend(interval(), "i0");
  ctx = ctx.extend(path(boolType(), trueTerm(), trueTerm(), "_"), "p0");
  return ctx;
}

// Type preservation under normalization. Unannotated introduction forms are
// not inferable in a bidirectional kernel, so every case checks the normal
// form against the generation target, and the inferred types are compared
// whenever both sides synthesize.
inline SuiteReport subjectReductionSuite(const GenConfig& cfg) {
  SuiteReport report;
  report.property = "subject-reduction";
  TermGen gen(cfg);
  Context empty;
  Context rich = harnessContext();
  uint32_t made = 0;
  uint32_t caseIndex = 0;
  const uint32_t attemptCap = cfg.maxTerms * 64 + 64;
  auto tryInfer = [](const Context& ctx, const Term& t) -> std::optional<Term> {
    try {
      return infer(ctx, t);
    } catch (const TypeError&) {
      return std::nullopt;
    }
  };
  while (made < cfg.maxTerms) {
    if (++caseIndex > attemptCap) {
      report.failures.push_back("generator exhausted before " + std::to_string(cfg.maxTerms) +
                                " cases");
      break;
    }
    const Context& ctx = (caseIndex % 2 == 0) ? rich : empty;
    Term target = normalize(ctx, gen.pickTarget());
    auto t = gen.genAt(ctx, target);
    if (!t) continue;
    ++made;
    Term nf = normalize(ctx, *t);
    try {
      check(ctx, nf, target);
    } catch (const TypeError& e) {
      report.failures.push_back("case " + std::to_string(made) + ": normal form " +
                                showTerm(ctx, nf) + " no longer checks at " +
                                showTerm(ctx, target) + ": " + e.diagnostic.message);
      continue;
    }
    std::optional<Term> before = tryInfer(ctx, *t);
    std::optional<Term> after = before ? tryInfer(ctx, nf) : std::nullopt;
    if (before && after && !convertTerms(ctx, *before, *after))
      report.failures.push_back("case " + std::to_string(made) + ": " + showTerm(ctx, *t) +
                                " : " + showTerm(ctx, *before) + " but its normal form " +
                                showTerm(ctx, nf) + " : " + showTerm(ctx, *after));
  }
  report.cases = made;
  return report;
}

inline SuiteReport idempotenceSuite(const GenConfig& cfg) {
  SuiteReport report;
  report.property = "idempotence";
  TermGen gen(cfg);
  Context empty;
  Context rich = harnessContext();
  uint32_t made = 0;
  uint32_t caseIndex = 0;
  const uint32_t attemptCap = cfg.maxTerms * 64 + 64;
  while (made < cfg.maxTerms) {
    if (++caseIndex > attemptCap) {
      report.failures.push_back("generator exhausted before " + std::to_string(cfg.maxTerms) +
                                " cases");
      break;
    }
    const Context& ctx = (caseIndex % 2 == 0) ? rich : empty;
    auto t = gen.genAt(ctx, gen.pickTarget());
    if (!t) continue;
    ++made;
    Term once = normalize(ctx, *t);
    Term twice = normalize(ctx, once);
    if (!alphaEq(once, twice))
      report.failures.push_back("case " + std::to_string(made) + ": normalize is not idempotent on " +
                                showTerm(ctx, *t));
  }
  report.cases = made;
  return report;
}

// Closed iso-free terms paired with their normal forms; the finite model
// must agree on every pair.
inline SuiteReport oracleAgreementSuite(const GenConfig& cfgIn,
                                        OracleReport* oracleReport = nullptr) {
  SuiteReport report;
  report.property = "oracle-agreement";
  GenConfig cfg = cfgIn;
  cfg.isoEnabled = false;
  TermGen gen(cfg);
  Context empty;
  std::vector<OraclePair> pairs;
  std::vector<Term> sources;
  uint32_t attempts = 0;
  const uint32_t attemptCap = cfg.maxTerms * 64 + 64;
  while (pairs.size() < cfg.maxTerms) {
    if (++attempts > attemptCap) {
      report.failures.push_back("generator exhausted before " + std::to_string(cfg.maxTerms) +
                                " cases");
      break;
    }
    const Term& target = gen.pickTarget();
    auto t = gen.genAt(empty, target);
    if (!t) continue;
    pairs.push_back(OraclePair{*t, normalizeClosed(*t), normalize(empty, target)});
    sources.push_back(*t);
  }
  OracleReport r = oracleCheck(pairs);
  for (size_t i = 0; i < r.outcomes.size(); ++i)
    if (r.outcomes[i] == PairOutcome::Disagree)
      report.failures.push_back("case " + std::to_string(i) + ": model disagreement on " +
                                showClosed(sources[i]));
  report.cases = static_cast<uint32_t>(pairs.size());
  if (oracleReport) *oracleReport = std::move(r);
  return report;
}

// Runs a suite sharded over `jobs` workers, seeds seed, seed+1, ...; the
// merged report is deterministic for fixed (seed, jobs, total).
template <typename SuiteFn>
inline SuiteReport shardedSuite(SuiteFn fn, const GenConfig& cfg, uint32_t jobs) {
  if (jobs <= 1) return fn(cfg);
  std::vector<GenConfig> shardCfgs;
  uint32_t per = cfg.maxTerms / jobs;
  uint32_t extra = cfg.maxTerms % jobs;
  for (uint32_t j = 0; j < jobs; ++j) {
    GenConfig c = cfg;
    c.seed = cfg.seed + j;
    c.maxTerms = per + (j < extra ? 1 : 0);
    shardCfgs.push_back(c);
  }
  std::vector<SuiteReport> parts(jobs);
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (uint32_t j = 0; j < jobs; ++j)
    workers.emplace_back([&, j] { parts[j] = fn(shardCfgs[j]); });
  for (auto& w : workers) w.join();
  SuiteReport merged;
  merged.property = parts[0].property;
  for (const auto& p : parts) {
    merged.cases += p.cases;
    for (const auto& f : p.failures) merged.failures.push_back(f);
  }
  return merged;
}

}  // namespace hti
