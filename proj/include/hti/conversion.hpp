#pragma once

// Definitional equality on values. Untyped structural comparison with eta
// triggers: when a constructor form meets a neutral, the neutral side is
// eta-expanded (functions by application, pairs by projection, paths by
// interval application with the endpoints as annotations). This recovers the
// path eta law  path(x. p @ x) = p  without type-directed conversion.

#include <string>

#include "hti/eval.hpp"

namespace hti {

// Optional mismatch localization for diagnostics: records the first
// differing position, never affects the verdict.
struct ConvTrace {
  std::string where;

  void note(const std::string& w) {
    if (where.empty()) where = w;
  }
};

bool convert(uint64_t depth, const Value& a, const Value& b, ConvTrace* trace = nullptr);

inline bool convertClosure(uint64_t depth, const Closure& a, const Closure& b,
                           ConvTrace* trace) {
  Value fresh = Value::makeVar(depth);
  return convert(depth + 1, applyClosure(a, fresh), applyClosure(b, fresh), trace);
}

inline bool convertSpine(uint64_t depth, const Value& a, const Value& b, ConvTrace* trace) {
  if (a.isVarHead() != b.isVarHead()) {
    if (trace) trace->note("neutral heads differ");
    return false;
  }
  if (a.isVarHead()) {
    if (a.varLevel() != b.varLevel()) {
      if (trace) trace->note("variables differ");
      return false;
    }
  } else {
    const CoeHead& ha = a.coeHead();
    const CoeHead& hb = b.coeHead();
    if (!convertClosure(depth, ha.family, hb.family, trace) ||
        !convert(depth, ha.baseAndTarget[0], hb.baseAndTarget[0], trace) ||
        !convert(depth, ha.baseAndTarget[1], hb.baseAndTarget[1], trace)) {
      if (trace) trace->note("stuck coe heads differ");
      return false;
    }
  }
  if (a.spine().size() != b.spine().size()) {
    if (trace) trace->note("spine lengths differ");
    return false;
  }
  for (size_t i = 0; i < a.spine().size(); ++i) {
    const Elim& ea = a.spine()[i];
    const Elim& eb = b.spine()[i];
    if (ea.kind != eb.kind) {
      if (trace) trace->note("elimination " + std::to_string(i) + " differs");
      return false;
    }
    if (ea.kind == ElimKind::BoolElim &&
        !convertClosure(depth, *ea.motive, *eb.motive, trace))
      return false;
    for (size_t j = 0; j < ea.vals.size(); ++j)
      if (!convert(depth, ea.vals[j], eb.vals[j], trace)) return false;
  }
  return true;
}

// Eta-expand a neutral against a path abstraction: apply both to a fresh
// interval variable, annotations drawn from the abstraction's endpoints.
inline bool convertPathEta(uint64_t depth, const Value& abs, const Value& neu,
                           ConvTrace* trace) {
  Value fresh = Value::makeVar(depth);
  Value annL = applyClosure(abs.pathLamBody(), vLeft());
  Value annR = applyClosure(abs.pathLamBody(), vRight());
  Value lhs = applyClosure(abs.pathLamBody(), fresh);
  Value rhs = applyPath(neu, fresh, annL, annR);
  return convert(depth + 1, lhs, rhs, trace);
}

inline bool convert(uint64_t depth, const Value& a, const Value& b, ConvTrace* trace) {
  ValTag ta = a.tag();
  ValTag tb = b.tag();

  if (ta != tb) {
    // Constructor vs neutral: eta triggers.
    if (ta == ValTag::Lam && tb == ValTag::Neutral) {
      Value fresh = Value::makeVar(depth);
      return convert(depth + 1, applyClosure(a.lamBody(), fresh), applyValue(b, fresh), trace);
    }
    if (tb == ValTag::Lam && ta == ValTag::Neutral) {
      Value fresh = Value::makeVar(depth);
      return convert(depth + 1, applyValue(a, fresh), applyClosure(b.lamBody(), fresh), trace);
    }
    if (ta == ValTag::Pair && tb == ValTag::Neutral)
      return convert(depth, a.pairFst(), projValue(b, true), trace) &&
             convert(depth, a.pairSnd(), projValue(b, false), trace);
    if (tb == ValTag::Pair && ta == ValTag::Neutral)
      return convert(depth, projValue(a, true), b.pairFst(), trace) &&
             convert(depth, projValue(a, false), b.pairSnd(), trace);
    if (ta == ValTag::PathLam && tb == ValTag::Neutral)
      return convertPathEta(depth, a, b, trace);
    if (tb == ValTag::PathLam && ta == ValTag::Neutral)
      return convertPathEta(depth, b, a, trace);
    if (trace) trace->note("head constructors differ");
    return false;
  }

  switch (ta) {
    case ValTag::Universe:
      if (a.level() == b.level()) return true;
      if (trace) trace->note("universe levels differ");
      return false;
    case ValTag::Pi:
    case ValTag::Sigma:
      return convert(depth, a.val(0), b.val(0), trace) &&
             convertClosure(depth, a.clo(0), b.clo(0), trace);
    case ValTag::Lam:
      return convertClosure(depth, a.lamBody(), b.lamBody(), trace);
    case ValTag::Pair:
      return convert(depth, a.pairFst(), b.pairFst(), trace) &&
             convert(depth, a.pairSnd(), b.pairSnd(), trace);
    case ValTag::UnitType:
    case ValTag::UnitVal:
    case ValTag::BoolType:
    case ValTag::True:
    case ValTag::False:
    case ValTag::Interval:
    case ValTag::Left:
    case ValTag::Right:
      return true;
    case ValTag::Path:
      return convertClosure(depth, a.pathFam(), b.pathFam(), trace) &&
             convert(depth, a.pathLeft(), b.pathLeft(), trace) &&
             convert(depth, a.pathRight(), b.pathRight(), trace);
    case ValTag::PathLam:
      return convertClosure(depth, a.pathLamBody(), b.pathLamBody(), trace);
    case ValTag::Iso:
      return convert(depth, a.isoA(), b.isoA(), trace) &&
             convert(depth, a.isoB(), b.isoB(), trace) &&
             convertClosure(depth, a.isoFwd(), b.isoFwd(), trace) &&
             convertClosure(depth, a.isoBwd(), b.isoBwd(), trace) &&
             convertClosure(depth, a.isoSectL(), b.isoSectL(), trace) &&
             convertClosure(depth, a.isoSectR(), b.isoSectR(), trace) &&
             convert(depth, a.isoArg(), b.isoArg(), trace);
    case ValTag::Neutral:
      return convertSpine(depth, a, b, trace);
  }
  throw KernelBug("unhandled value tag in convert");
}

// Definitional equality of two terms in a context, by evaluating both in the
// identity environment and comparing values.
inline bool convertTerms(const Context& ctx, const Term& t, const Term& u,
                         ConvTrace* trace = nullptr) {
  std::vector<Value> env = identityEnv(ctx.size());
  return convert(ctx.size(), eval(env, t), eval(env, u), trace);
}

}  // namespace hti
