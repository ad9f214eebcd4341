// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion enforces its own wall-clock budget.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hti/hti.hpp"

using namespace hti;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void criterion(int number, const std::string& label, double budgetSeconds,
               const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  auto start = std::chrono::steady_clock::now();
  try {
    ok = body(detail);
  } catch (const TypeError& e) {
    detail = "diagnostic: " + e.diagnostic.render();
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (ok && budgetSeconds > 0 && elapsed > budgetSeconds) {
    ok = false;
    detail = "over time budget";
  }
  std::ostringstream line;
  line << (ok ? "PASS" : "FAIL") << " criterion " << number << " (" << label << ", "
       << static_cast<int>(elapsed * 1000) << " ms)";
  if (!ok && !detail.empty()) line << ": " << detail;
  std::cout << line.str() << "\n";
  if (!ok) ++failures;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path corpusDir() { return fs::path(HTI_CORPUS_DIR); }

Session corpusSession(const std::vector<const char*>& files, std::string& err) {
  Session s;
  for (const char* f : files) {
    auto outcome = checkDecls(s, parse(slurp(corpusDir() / f)), f);
    if (!outcome.clean()) {
      err += std::string(f) + ": " + outcome.diagnostics[0].render();
      break;
    }
  }
  return s;
}

// A fully concrete iso over Unit, for the Unit-typed rule instances.
Term isoUnit(Term arg) {
  return iso(unitType(), unitType(), var(0), var(0), pathLam(var(1), "_"),
             pathLam(var(1), "_"), std::move(arg), {"x", "y", "x", "y"});
}

bool ruleMatrix(std::string& detail) {
  Context empty;
  Context ctxI = Context().extend(interval(), "i");
  Context ctxBoolPath =
      Context().extend(path(boolType(), trueTerm(), falseTerm(), "_"), "p");
  Context ctxUnitPath =
      Context().extend(path(unitType(), unitVal(), unitVal(), "_"), "q");

  struct Case {
    const char* rule;
    const Context* ctx;
    Term lhs, rhs;
  };
  Term nonConstFam = pi(path(interval(), var(0), rightTerm(), "_"), boolType(), "p");
  std::vector<Case> cases = {
      // coe-left: coe(x. A, a, left) = a, including a non-constant family
      {"coe-left", &empty, coe(nonConstFam, lam(trueTerm(), "p"), leftTerm(), "x"),
       lam(trueTerm(), "p")},
      {"coe-left", &empty, coe(unitType(), unitVal(), leftTerm(), "x"), unitVal()},
      // coe-constant: coe(x. A, a, i) = a when x not in A
      {"coe-constant", &ctxI, coe(boolType(), trueTerm(), var(0), "x"), trueTerm()},
      {"coe-constant", &empty, coe(unitType(), unitVal(), rightTerm(), "x"), unitVal()},
      // path beta: path(x. t) @ i = t[x := i]
      {"path-beta", &ctxI,
       at(pathLam(var(0), "x"), var(0), leftTerm(), rightTerm()), var(0)},
      {"path-beta", &empty,
       at(pathLam(trueTerm(), "x"), rightTerm(), trueTerm(), trueTerm()), trueTerm()},
      // path eta: path(x. p @ x) = p
      {"path-eta", &ctxBoolPath,
       pathLam(at(var(1), var(0), trueTerm(), falseTerm()), "x"), var(0)},
      {"path-eta", &ctxUnitPath,
       pathLam(at(var(1), var(0), unitVal(), unitVal()), "x"), var(0)},
      // @-left and @-right on a neutral path
      {"at-left", &ctxBoolPath, at(var(0), leftTerm(), trueTerm(), falseTerm()), trueTerm()},
      {"at-left", &ctxUnitPath, at(var(0), leftTerm(), unitVal(), unitVal()), unitVal()},
      {"at-right", &ctxBoolPath, at(var(0), rightTerm(), trueTerm(), falseTerm()),
       falseTerm()},
      {"at-right", &ctxUnitPath, at(var(0), rightTerm(), unitVal(), unitVal()), unitVal()},
      // iso-left / iso-right collapse to the endpoint types
      {"iso-left", &empty, isoNot(leftTerm()), boolType()},
      {"iso-left", &empty, isoUnit(leftTerm()), unitType()},
      {"iso-right", &empty, isoNot(rightTerm()), boolType()},
      {"iso-right", &empty, isoUnit(rightTerm()), unitType()},
      // iso-coe: coe along the iso line applies the forward map
      {"iso-coe", &empty, coe(isoNot(var(0)), trueTerm(), rightTerm(), "x"), falseTerm()},
      {"iso-coe", &empty, coe(isoUnit(var(0)), unitVal(), rightTerm(), "x"), unitVal()},
  };
  for (const auto& c : cases) {
    if (!convertTerms(*c.ctx, c.lhs, c.rhs)) {
      detail = std::string("rule ") + c.rule + " failed on " + showTerm(*c.ctx, c.lhs);
      return false;
    }
  }
  return true;
}

bool jComputes(std::string& detail) {
  Session s = corpusSession({"prelude.hti", "jrule.hti"}, detail);
  if (!detail.empty()) return false;
  const GlobalDef* J = s.find("J");
  if (!J) {
    detail = "no definition named J";
    return false;
  }
  // Concrete: J Bool true (\_ _ => Bool) false true refl = false.
  Term motive = lam(lam(boolType(), "p"), "a'");
  Term refl = pathLam(trueTerm(), "_");
  Term applied = app(
      app(app(app(app(app(J->body, boolType()), trueTerm()), motive), falseTerm()), trueTerm()),
      refl);
  Context empty;
  if (!convertTerms(empty, applied, falseTerm())) {
    detail = "J Bool true C d true refl is not definitionally d";
    return false;
  }
  // Schematic: over neutral A, a, C, d.
  Context ctx;
  ctx = ctx.extend(universe(0), "A");
  ctx = ctx.extend(var(0), "a");
  ctx = ctx.extend(pi(var(1), pi(path(var(3), var(1), var(0), "_"), universe(0), "p"), "a'"),
                   "C");
  ctx = ctx.extend(app(app(var(0), var(1)), pathLam(var(2), "_")), "d");
  Term reflA = pathLam(var(3), "_");
  Term schematic =
      app(app(app(app(app(app(J->body, var(3)), var(2)), var(1)), var(0)), var(2)), reflA);
  if (!convertTerms(ctx, schematic, var(0))) {
    detail = "schematic J C d refl is not definitionally d";
    return false;
  }
  return true;
}

bool univalenceComputes(std::string& detail) {
  Session s = corpusSession({"prelude.hti", "univalence.hti"}, detail);
  if (!detail.empty()) return false;
  const GlobalDef* composite = s.find("composite");
  if (!composite) {
    detail = "no definition named composite";
    return false;
  }
  Term nf = normalizeClosed(composite->body);
  Term expected = lam(lam(lam(lam(app(proj1(var(1)), var(0)), "x"), "e"), "B"), "A");
  if (!alphaEq(nf, expected)) {
    detail = "composite normalizes to " + showClosed(nf);
    return false;
  }
  const GlobalDef* flip = s.find("flipTrue");
  if (!flip || normalizeClosed(flip->body) != falseTerm()) {
    detail = "transport along ua notEquiv did not flip true";
    return false;
  }
  return true;
}

bool nonCanonicity(std::string& detail) {
  Term witness = stuckBoolTerm(trueTerm());
  Context empty;
  check(empty, witness, boolType());
  Term nf = normalizeClosed(witness);
  // Exact stuck shape: the coe survives as the head with its application.
  Term expectedFam = pi(path(interval(), var(0), rightTerm(), "_"), boolType(), "p");
  Term expected =
      app(coe(expectedFam, lam(trueTerm(), "p"), rightTerm(), "x"), pathLam(rightTerm(), "i"));
  if (!alphaEq(nf, expected)) {
    detail = "unexpected normal form " + showClosed(nf);
    return false;
  }
  if (nf == trueTerm() || nf == falseTerm()) {
    detail = "witness reduced to a boolean constructor";
    return false;
  }
  return true;
}

bool oracleSoundness(std::string& detail) {
  GenConfig cfg;
  cfg.seed = 2024;
  cfg.maxTerms = 500;
  OracleReport oracle;
  SuiteReport r = oracleAgreementSuite(cfg, &oracle);
  if (!r.passed() || r.cases != 500) {
    detail = r.failures.empty() ? "generator exhausted" : r.failures[0];
    return false;
  }
  if (oracle.disagreeCount != 0) {
    detail = "model disagreements: " + std::to_string(oracle.disagreeCount);
    return false;
  }
  if (oracle.okCount != 500) {
    detail = "expected 500 compared pairs, got " + std::to_string(oracle.okCount) + " ok / " +
             std::to_string(oracle.skipCount) + " skipped";
    return false;
  }
  // Negative control: the degenerate model conflates the endpoints that the
  // kernel keeps apart.
  FiniteModel m;
  Context empty;
  if (!denEq(m.denote({}, leftTerm()), m.denote({}, rightTerm()))) {
    detail = "model failed to conflate the interval endpoints";
    return false;
  }
  if (convertTerms(empty, leftTerm(), rightTerm())) {
    detail = "kernel identified left and right";
    return false;
  }
  return true;
}

bool overlapCoherence(std::string& detail) {
  GenConfig cfg;
  cfg.seed = 99;
  cfg.maxTerms = 200;
  SuiteReport r = overlapSuite(cfg);
  if (!r.passed() || r.cases != 200) {
    detail = r.failures.empty() ? "generator exhausted" : r.failures[0];
    return false;
  }
  return true;
}

bool subjectReductionAndIdempotence(std::string& detail) {
  GenConfig cfg;
  cfg.seed = 4096;
  cfg.maxTerms = 500;
  SuiteReport sr = subjectReductionSuite(cfg);
  if (!sr.passed() || sr.cases != 500) {
    detail = sr.failures.empty() ? "generator exhausted" : sr.failures[0];
    return false;
  }
  SuiteReport idem = idempotenceSuite(cfg);
  if (!idem.passed() || idem.cases != 500) {
    detail = idem.failures.empty() ? "generator exhausted" : idem.failures[0];
    return false;
  }
  return true;
}

bool negativeCorpus(std::string& detail) {
  size_t count = 0;
  for (const auto& entry : fs::directory_iterator(corpusDir() / "negative")) {
    if (entry.path().extension() != ".hti") continue;
    ++count;
    std::string src = slurp(entry.path());
    const std::string tag = "-- expect: ";
    size_t atPos = src.find(tag);
    if (atPos == std::string::npos) {
      detail = entry.path().filename().string() + " lacks an expect header";
      return false;
    }
    std::string expect =
        src.substr(atPos + tag.size(), src.find('\n', atPos) - atPos - tag.size());
    std::string got;
    try {
      Session s;
      auto pre = checkDecls(s, parse(slurp(corpusDir() / "prelude.hti")), "prelude.hti");
      if (!pre.clean()) {
        detail = "prelude failed";
        return false;
      }
      auto outcome = checkDecls(s, parse(src), entry.path().filename().string());
      if (outcome.diagnostics.empty()) {
        detail = entry.path().filename().string() + " unexpectedly checked";
        return false;
      }
      got = outcome.diagnostics[0].code;
    } catch (const TypeError& e) {
      got = e.diagnostic.code;
    }
    if (got != expect) {
      detail = entry.path().filename().string() + " failed with " + got + " instead of " + expect;
      return false;
    }
  }
  if (count != 9) {
    detail = "expected 9 negative files, found " + std::to_string(count);
    return false;
  }
  // Iso premise mutation suite: each of the seven premises is necessary.
  Context empty;
  Term good = isoNot(leftTerm());
  std::vector<Term> mutations = {
      trueTerm(),                // 0: A not a type
      universe(0),               // 1: level mismatch
      unitVal(),                 // 2: forward map into the wrong type
      unitVal(),                 // 3: backward map into the wrong type
      pathLam(trueTerm(), "_"),  // 4: wrong left section
      pathLam(falseTerm(), "_"), // 5: wrong right section
      trueTerm(),                // 6: non-interval argument
  };
  for (size_t slot = 0; slot < 7; ++slot) {
    std::vector<Term> kids;
    for (size_t i = 0; i < 7; ++i) kids.push_back(good.kid(i));
    kids[slot] = mutations[slot];
    Term bad = Term::make(TermTag::Iso, 0, std::move(kids), good.hints());
    std::string got;
    try {
      infer(empty, bad);
    } catch (const TypeError& e) {
      got = e.diagnostic.code;
    }
    if (got != code::IsoPremise) {
      detail = "mutated premise " + std::to_string(slot) + " produced '" + got + "'";
      return false;
    }
  }
  return true;
}

}  // namespace

int main() {
  criterion(1, "rule matrix", 1.0, ruleMatrix);
  criterion(2, "J computes on refl", 1.0, jComputes);
  criterion(3, "definitional univalence", 1.0, univalenceComputes);
  criterion(4, "non-canonicity witness", 0.0, nonCanonicity);
  criterion(5, "oracle soundness, 500 terms", 30.0, oracleSoundness);
  criterion(6, "overlap coherence, 200 redexes", 10.0, overlapCoherence);
  criterion(7, "subject reduction + idempotence, 500 terms", 30.0,
            subjectReductionAndIdempotence);
  criterion(8, "negative corpus + iso premise mutations", 0.0, negativeCorpus);
  if (failures != 0) std::cout << failures << " criterion(s) failed\n";
  return failures == 0 ? 0 : 1;
}
