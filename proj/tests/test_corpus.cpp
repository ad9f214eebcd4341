// Corpus driver: every positive file checks cleanly (with the prelude
// preloaded), every negative file fails with exactly its annotated code.

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hti/elaborate.hpp"

using namespace hti;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::filesystem::path corpusDir() { return std::filesystem::path(HTI_CORPUS_DIR); }

Session preludeSession() {
  Session s;
  auto outcome = checkDecls(s, parse(slurp(corpusDir() / "prelude.hti")), "prelude.hti");
  REQUIRE(outcome.clean());
  return s;
}

// Negative files carry "-- expect: E-CODE" in their header.
std::string expectedCode(const std::string& src) {
  const std::string tag = "-- expect: ";
  size_t at = src.find(tag);
  REQUIRE(at != std::string::npos);
  size_t end = src.find('\n', at);
  return src.substr(at + tag.size(), end - at - tag.size());
}

}  // namespace

TEST_CASE("positive corpus files check with zero diagnostics") {
  for (const char* name : {"prelude.hti", "paths.hti", "jrule.hti", "univalence.hti"}) {
    Session s = preludeSession();
    std::string src = slurp(corpusDir() / name);
    if (std::string(name) == "prelude.hti") continue;  // already loaded
    auto outcome = checkDecls(s, parse(src), name);
    for (const auto& d : outcome.diagnostics) UNSCOPED_INFO(d.render());
    CHECK(outcome.clean());
  }
}

TEST_CASE("negative corpus files fail with their annotated codes") {
  size_t count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(corpusDir() / "negative")) {
    if (entry.path().extension() != ".hti") continue;
    ++count;
    std::string src = slurp(entry.path());
    std::string expect = expectedCode(src);
    UNSCOPED_INFO(entry.path().filename().string() << " expects " << expect);
    Session s = preludeSession();
    try {
      auto outcome = checkDecls(s, parse(src), entry.path().filename().string());
      REQUIRE_FALSE(outcome.diagnostics.empty());
      for (const auto& d : outcome.diagnostics) CHECK(d.code == expect);
    } catch (const TypeError& e) {
      // parse-stage failures (syntax, duplicates)
      CHECK(e.diagnostic.code == expect);
    }
  }
  CHECK(count == 9);
}

TEST_CASE("the J derivation computes definitionally on refl") {
  Session s = preludeSession();
  auto outcome = checkDecls(s, parse(slurp(corpusDir() / "jrule.hti")), "jrule.hti");
  REQUIRE(outcome.clean());

  // Concrete instance over Bool: J Bool true C d true refl = d.
  const GlobalDef* J = s.find("J");
  REQUIRE(J != nullptr);
  Term motive = lam(lam(boolType(), "p"), "a'");  // constant motive
  Term applied = app(app(app(app(app(app(J->body, boolType()), trueTerm()), motive), falseTerm()),
                         trueTerm()),
                     pathLam(trueTerm(), "_"));
  Context empty;
  CHECK(convertTerms(empty, applied, falseTerm()));

  // Schematic instance: variables for the motive and the base case.
  // In [A, a]: C : (a' : A) -> Path(_. A, a, a') -> Type0.
  Context ctx;
  ctx = ctx.extend(universe(0), "A");
  ctx = ctx.extend(var(0), "a");
  ctx = ctx.extend(
      pi(var(1), pi(path(var(3), var(1), var(0), "_"), universe(0), "p"), "a'"), "C");
  ctx = ctx.extend(app(app(var(0), var(1)), pathLam(shift(var(1), 0, 1), "_")), "d");
  Term refl = pathLam(shift(var(2), 0, 1), "_");
  Term schematic =
      app(app(app(app(app(app(J->body, var(3)), var(2)), var(1)), var(0)), var(2)), refl);
  CHECK(convertTerms(ctx, schematic, var(0)));
}

TEST_CASE("transport after ua is the forward projection, definitionally") {
  Session s = preludeSession();
  auto outcome = checkDecls(s, parse(slurp(corpusDir() / "univalence.hti")), "univalence.hti");
  REQUIRE(outcome.clean());

  const GlobalDef* composite = s.find("composite");
  REQUIRE(composite != nullptr);
  Term nf = normalizeClosed(composite->body);
  // \A => \B => \e => \x => proj1 e x
  Term expected =
      lam(lam(lam(lam(app(proj1(var(1)), var(0)), "x"), "e"), "B"), "A");
  CHECK(alphaEq(nf, expected));

  const GlobalDef* flip = s.find("flipTrue");
  REQUIRE(flip != nullptr);
  CHECK(normalizeClosed(flip->body) == falseTerm());
}

TEST_CASE("corpus definitions survive the kernel re-check") {
  Session s = preludeSession();
  for (const char* name : {"paths.hti", "jrule.hti", "univalence.hti"}) {
    auto outcome = checkDecls(s, parse(slurp(corpusDir() / name)), name);
    REQUIRE(outcome.clean());
    Context empty;
    for (const auto& d : outcome.decls) {
      checkIsType(empty, d.type);
      check(empty, d.body, d.type);
    }
  }
}
