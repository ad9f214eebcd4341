// Core syntax: shift, subst, free variables, alpha equivalence. The
// reference oracle is the named-variable implementation in named_ref.hpp.

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hti/term.hpp"
#include "named_ref.hpp"

using namespace hti;

namespace {

// Random well-scoped term over `scope` free variables. Syntax only; not
// necessarily well-typed.
Term randomTerm(std::mt19937_64& rng, uint32_t scope, uint32_t depth) {
  auto roll = [&rng](uint64_t n) { return rng() % n; };
  if (depth == 0 || roll(3) == 0) {
    if (scope > 0 && roll(2) == 0) return var(static_cast<uint32_t>(roll(scope)));
    switch (roll(6)) {
      case 0: return trueTerm();
      case 1: return falseTerm();
      case 2: return leftTerm();
      case 3: return rightTerm();
      case 4: return unitVal();
      default: return boolType();
    }
  }
  switch (roll(10)) {
    case 0: return lam(randomTerm(rng, scope + 1, depth - 1), "x");
    case 1: return app(randomTerm(rng, scope, depth - 1), randomTerm(rng, scope, depth - 1));
    case 2: return pi(randomTerm(rng, scope, depth - 1), randomTerm(rng, scope + 1, depth - 1), "x");
    case 3:
      return coe(randomTerm(rng, scope + 1, depth - 1), randomTerm(rng, scope, depth - 1),
                 randomTerm(rng, scope, depth - 1), "i");
    case 4:
      return path(randomTerm(rng, scope + 1, depth - 1), randomTerm(rng, scope, depth - 1),
                  randomTerm(rng, scope, depth - 1), "i");
    case 5: return pathLam(randomTerm(rng, scope + 1, depth - 1), "i");
    case 6:
      return at(randomTerm(rng, scope, depth - 1), randomTerm(rng, scope, depth - 1),
                randomTerm(rng, scope, depth - 1), randomTerm(rng, scope, depth - 1));
    case 7:
      return pairTerm(randomTerm(rng, scope, depth - 1), randomTerm(rng, scope, depth - 1));
    case 8:
      return iso(randomTerm(rng, scope, depth - 1), randomTerm(rng, scope, depth - 1),
                 randomTerm(rng, scope + 1, depth - 1), randomTerm(rng, scope + 1, depth - 1),
                 randomTerm(rng, scope + 1, depth - 1), randomTerm(rng, scope + 1, depth - 1),
                 randomTerm(rng, scope, depth - 1), {"x", "y", "x", "y"});
    default:
      return boolElim(randomTerm(rng, scope + 1, depth - 1), randomTerm(rng, scope, depth - 1),
                      randomTerm(rng, scope, depth - 1), randomTerm(rng, scope, depth - 1), "b");
  }
}

}  // namespace

TEST_CASE("shift basics") {
  CHECK(shift(var(0), 0, 1) == var(1));
  CHECK(shift(lam(var(0), "x"), 0, 5) == lam(var(0), "x"));
  CHECK(shift(lam(var(1), "x"), 0, 2) == lam(var(3), "x"));
  CHECK_THROWS_AS(shift(var(0), 0, -1), KernelBug);
}

TEST_CASE("subst basics") {
  CHECK(subst(var(0), 0, leftTerm()) == leftTerm());
  CHECK(subst(pathLam(var(1), "i"), 0, rightTerm()) == pathLam(rightTerm(), "i"));
}

TEST_CASE("subst under the coe family binder, against the named oracle") {
  // coe(x. v0, v0, left) with v0 := true. In named form: coe(x. z, z, left)
  // becomes coe(x. true, true, left) — the family occurrence is hit too.
  Term t = coe(var(1), var(0), leftTerm(), "x");
  Term r = subst(t, 0, trueTerm());
  CHECK(r == coe(trueTerm(), trueTerm(), leftTerm(), "x"));

  int counter = 0;
  std::vector<std::string> env = {"z"};
  named::NPtr nt = named::fromCore(t, env, counter);
  named::NPtr ns = named::substNamed(nt, "z", named::mk(TermTag::True, 0, "", {}, {}), counter);
  named::NPtr nr = named::fromCoreAmbient(r, 0, counter);
  CHECK(named::alphaEqNamed(ns, nr));
}

TEST_CASE("freeVarOccurs basics") {
  CHECK(freeVarOccurs(var(0), 0));
  CHECK_FALSE(freeVarOccurs(lam(var(0), "x"), 0));
  Term t = iso(var(3), var(4), var(0), var(0), var(0), var(0), var(2), {"x", "y", "x", "y"});
  CHECK(freeVarOccurs(t, 2));
  CHECK(freeVarOccurs(t, 3));
  CHECK(freeVarOccurs(t, 4));
  CHECK_FALSE(freeVarOccurs(t, 0));
  CHECK_FALSE(freeVarOccurs(t, 1));

  // Occurrences under the binders come out shifted by one.
  Term u = iso(unitType(), unitType(), var(3), var(0), var(0), var(0), leftTerm(),
               {"x", "y", "x", "y"});
  CHECK(freeVarOccurs(u, 2));
}

TEST_CASE("alphaEq basics") {
  CHECK(alphaEq(lam(var(0), "x"), lam(var(0), "y")));  // hints ignored
  CHECK_FALSE(alphaEq(leftTerm(), rightTerm()));
}

TEST_CASE("shift/subst cancellation and oracle agreement on random terms") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 300; ++i) {
    Term t = randomTerm(rng, 2, 4);

    // subst(shift(t,0,1), 0, s) == t; s lives in t's own context here.
    Term sFull = randomTerm(rng, 2, 3);
    CHECK(subst(shift(t, 0, 1), 0, sFull) == t);

    // de Bruijn subst agrees with named-variable subst at index 0 (named v1,
    // the innermost of the two ambient variables). The replacement is scoped
    // in the remaining context [v0].
    Term s = randomTerm(rng, 1, 3);
    Term viaCore = subst(t, 0, s);
    int counter = 0;
    named::NPtr nt = named::fromCoreAmbient(t, 2, counter);
    named::NPtr nsArg = named::fromCoreAmbient(s, 1, counter);
    named::NPtr nsubst = named::substNamed(nt, "v1", nsArg, counter);
    named::NPtr nres = named::fromCoreAmbient(viaCore, 1, counter);
    CHECK(named::alphaEqNamed(nsubst, nres));

    // freeVarOccurs agrees with the named FV set.
    for (uint32_t j = 0; j < 2; ++j) {
      bool core = freeVarOccurs(t, j);
      bool named = named::freeVars(nt).count("v" + std::to_string(1 - j)) > 0;
      CHECK(core == named);
    }
  }
}

TEST_CASE("substitution introduces no occurrences of its own index") {
  // If s does not mention any variable mapping onto j, then j does not occur
  // free in subst(t, j, s).
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    Term t = randomTerm(rng, 3, 3);
    Term s = trueTerm();  // closed
    Term r = subst(t, 1, s);
    // Index 1 disappears: everything above shifts down, s brings nothing in.
    // The old index 2 becomes 1, so only check when 2 was absent too.
    if (!freeVarOccurs(t, 2)) CHECK_FALSE(freeVarOccurs(r, 1));
  }
}

TEST_CASE("alphaEq is an equivalence relation on a random sample") {
  std::mt19937_64 rng(11);
  std::vector<Term> sample;
  for (int i = 0; i < 40; ++i) sample.push_back(randomTerm(rng, 2, 3));
  for (const auto& a : sample) CHECK(alphaEq(a, a));
  for (const auto& a : sample)
    for (const auto& b : sample) CHECK(alphaEq(a, b) == alphaEq(b, a));
  for (const auto& a : sample)
    for (const auto& b : sample)
      for (const auto& c : sample)
        if (alphaEq(a, b) && alphaEq(b, c)) CHECK(alphaEq(a, c));
}

TEST_CASE("context lookup shifts into the full context") {
  Context ctx;
  ctx = ctx.extend(boolType(), "b");
  ctx = ctx.extend(path(boolType(), var(0), var(0), "_"), "p");
  CHECK(ctx.lookup(1) == boolType());
  // Entry for p mentions b as Var 0; one binder crossing later it is Var 1.
  CHECK(ctx.lookup(0) == path(boolType(), var(1), var(1), "_"));
  CHECK_THROWS_AS(ctx.lookup(2), KernelBug);
}
