#pragma once

// Randomized well-typed term generation. Generation is type-directed: pick
// an introduction form matching the target's head, an elimination producing
// the target, or a context variable. Every candidate is re-verified by the
// checker before it is handed out, so the generator's own typing logic is
// never trusted.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "hti/eval.hpp"
#include "hti/typecheck.hpp"

namespace hti {

// -- canned combinators used by the harness and tests --------------------------

// Negation written as a direct eliminator application, so that it stays
// inferable wherever it lands.
inline Term notOf(Term t) {
  return boolElim(boolType(), falseTerm(), trueTerm(), std::move(t), "_");
}

inline Term notFn() { return lam(notOf(var(0)), "b"); }

// Proof term of Path(_. Bool, not (not t), t) by elimBool with a constant
// path in each branch.
inline Term notNotOf(Term t) {
  Term motive = path(boolType(), notOf(notOf(var(0))), var(0), "_");
  return boolElim(motive, pathLam(trueTerm(), "_"), pathLam(falseTerm(), "_"), std::move(t),
                  "c");
}

inline Term notNotProof() { return lam(notNotOf(var(0)), "b"); }

// iso(Bool, Bool, x. not x, y. not y, x. notnot x, y. notnot y, arg)
inline Term isoNot(Term arg) {
  return iso(boolType(), boolType(), notOf(var(0)), notOf(var(0)), notNotOf(var(0)),
             notNotOf(var(0)), std::move(arg), {"x", "y", "x", "y"});
}

// A closed Bool-typed term whose head coe is over a genuinely non-constant,
// non-iso family (a Pi whose domain moves with the interval variable). No
// computation rule applies, so it normalizes to a coe-headed neutral: the
// standard non-canonicity witness.
inline Term stuckBoolTerm(Term boolBody) {
  Term family = pi(path(interval(), var(0), rightTerm(), "_"), boolType(), "p");
  Term base = lam(shift(boolBody, 0, 1), "p");
  return app(coe(family, base, rightTerm(), "x"), pathLam(rightTerm(), "i"));
}

// -- generator -------------------------------------------------------------------

struct GenConfig {
  uint64_t seed = 1;
  uint32_t maxDepth = 4;
  uint32_t maxTerms = 100;
  std::vector<Term> typeTargets;  // empty: use defaultTargets()
  bool isoEnabled = true;
};

inline std::vector<Term> defaultTargets() {
  return {
      boolType(),
      interval(),
      unitType(),
      path(boolType(), trueTerm(), trueTerm(), "_"),
      pi(boolType(), boolType(), "b"),
      sigma(boolType(), interval(), "b"),
  };
}

class TermGen {
 public:
  explicit TermGen(GenConfig cfg) : cfg_(std::move(cfg)), rng_(cfg_.seed) {
    if (cfg_.typeTargets.empty()) cfg_.typeTargets = defaultTargets();
  }

  const GenConfig& config() const { return cfg_; }

  uint64_t roll(uint64_t n) { return n == 0 ? 0 : rng_() % n; }

  const Term& pickTarget() { return cfg_.typeTargets[roll(cfg_.typeTargets.size())]; }

  // A term that checks at `type` in `ctx`, or nothing after bounded retries.
  std::optional<Term> genAt(const Context& ctx, const Term& type, uint32_t retries = 16) {
    Term goal = normalize(ctx, type);
    for (uint32_t i = 0; i < retries; ++i) {
      std::optional<Term> t = tryBuild(ctx, goal, cfg_.maxDepth);
      if (!t) continue;
      try {
        check(ctx, *t, goal);
        return t;
      } catch (const TypeError&) {
        continue;  // generator produced junk; never trusted
      }
    }
    return std::nullopt;
  }

 private:
  std::optional<Term> tryBuild(const Context& ctx, const Term& goal, uint32_t depth) {
    // Context variables of the right type are always candidates.
    std::vector<Term> candidates;
    for (uint32_t k = 0; k < ctx.size(); ++k)
      if (convertTerms(ctx, ctx.lookup(k), goal)) candidates.push_back(var(k));
    if (!candidates.empty() && roll(4) == 0) return candidates[roll(candidates.size())];

    if (depth > 1 && roll(3) == 0)
      if (auto t = buildElim(ctx, goal, depth - 1)) return t;
    if (auto t = buildIntro(ctx, goal, depth)) return t;
    if (depth > 1)
      if (auto t = buildElim(ctx, goal, depth - 1)) return t;
    if (!candidates.empty()) return candidates[roll(candidates.size())];
    return std::nullopt;
  }

  std::optional<Term> buildIntro(const Context& ctx, const Term& goal, uint32_t depth) {
    switch (goal.tag()) {
      case TermTag::BoolType: return roll(2) ? trueTerm() : falseTerm();
      case TermTag::Interval: return roll(2) ? leftTerm() : rightTerm();
      case TermTag::UnitType: return unitVal();
      case TermTag::Universe: {
        switch (roll(4)) {
          case 0: return boolType();
          case 1: return unitType();
          case 2: return interval();
          default: return pi(boolType(), boolType(), "b");
        }
      }
      case TermTag::Pi: {
        if (depth == 0) return std::nullopt;
        Context inner = ctx.extend(goal.kid(0), goal.hint(0));
        auto body = tryBuild(inner, normalize(inner, goal.kid(1)), depth - 1);
        if (!body) return std::nullopt;
        return lam(*body, goal.hint(0));
      }
      case TermTag::Sigma: {
        if (depth == 0) return std::nullopt;
        auto fst = tryBuild(ctx, normalize(ctx, goal.kid(0)), depth - 1);
        if (!fst) return std::nullopt;
        auto snd = tryBuild(ctx, normalize(ctx, instantiate(goal.kid(1), *fst)), depth - 1);
        if (!snd) return std::nullopt;
        return pairTerm(*fst, *snd);
      }
      case TermTag::Path: {
        // Reflexivity-shaped inhabitant: constant family, equal endpoints.
        if (freeVarOccurs(goal.kid(0), 0)) return std::nullopt;
        if (!convertTerms(ctx, goal.kid(1), goal.kid(2))) return std::nullopt;
        return pathLam(shift(goal.kid(1), 0, 1), "_");
      }
      default:
        return std::nullopt;
    }
  }

  std::optional<Term> buildElim(const Context& ctx, const Term& goal, uint32_t depth) {
    switch (roll(6)) {
      case 0: {  // coe along the constant family
        auto base = tryBuild(ctx, goal, depth);
        if (!base) return std::nullopt;
        Term target = roll(2) ? leftTerm() : rightTerm();
        return coe(shift(goal, 0, 1), *base, target, "_");
      }
      case 1: {  // application of an eliminator-headed function
        Term dom = smallDomain();
        Context inner = ctx.extend(dom, "a");
        auto bodyT = tryBuild(inner, normalize(inner, shift(goal, 0, 1)), depth);
        auto bodyF = tryBuild(inner, normalize(inner, shift(goal, 0, 1)), depth);
        auto scrut = tryBuild(ctx, boolType(), depth);
        auto arg = tryBuild(ctx, dom, depth);
        if (!bodyT || !bodyF || !scrut || !arg) return std::nullopt;
        Term motive = pi(shift(dom, 0, 1), shift(goal, 0, 2), "a");
        Term fn = boolElim(motive, lam(*bodyT, "a"), lam(*bodyF, "a"), *scrut, "_");
        return app(fn, *arg);
      }
      case 2: {  // elimBool with a constant motive
        auto onTrue = tryBuild(ctx, goal, depth);
        auto onFalse = tryBuild(ctx, goal, depth);
        auto scrut = tryBuild(ctx, boolType(), depth);
        if (!onTrue || !onFalse || !scrut) return std::nullopt;
        return boolElim(shift(goal, 0, 1), *onTrue, *onFalse, *scrut, "_");
      }
      case 3: {  // path application: a context path when one fits, else refl
        std::vector<Term> fits;
        for (uint32_t k = 0; k < ctx.size(); ++k) {
          Term ty = normalize(ctx, ctx.lookup(k));
          if (ty.tag() != TermTag::Path) continue;
          // Constant family landing at the goal type.
          if (freeVarOccurs(ty.kid(0), 0)) continue;
          if (!convertTerms(ctx, shift(ty.kid(0), 1, -1), goal)) continue;
          auto i = tryBuild(ctx, interval(), depth);
          if (!i) continue;
          fits.push_back(at(var(k), *i, ty.kid(1), ty.kid(2)));
        }
        if (!fits.empty()) return fits[roll(fits.size())];
        auto a = tryBuild(ctx, goal, depth);
        if (!a) return std::nullopt;
        Term p = pathLam(shift(*a, 0, 1), "_");
        Term i = roll(2) ? leftTerm() : rightTerm();
        return at(p, i, *a, *a);
      }
      case 4: {  // coe over the Bool negation iso
        if (!cfg_.isoEnabled || goal.tag() != TermTag::BoolType) return std::nullopt;
        auto base = tryBuild(ctx, goal, depth);
        if (!base) return std::nullopt;
        Term target = roll(2) ? leftTerm() : rightTerm();
        return coe(isoNot(var(0)), *base, target, "x");
      }
      default: {  // stuck coe applied to a path argument
        if (goal.tag() != TermTag::BoolType || depth == 0) return std::nullopt;
        auto b = tryBuild(ctx, boolType(), depth - 1);
        if (!b) return std::nullopt;
        return stuckBoolTerm(*b);
      }
    }
  }

  Term smallDomain() {
    switch (roll(3)) {
      case 0: return boolType();
      case 1: return interval();
      default: return unitType();
    }
  }

  GenConfig cfg_;
  std::mt19937_64 rng_;
};

}  // namespace hti
