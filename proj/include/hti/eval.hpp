#pragma once

// Normalization by evaluation. eval sends terms into the value domain,
// applying every computation rule; quote reads beta-normal terms back.
//
// coe computes by three rules, tried in a fixed order:
//   1. coe(x. A, a, left)  = a
//   2. coe(x. A, a, i)     = a                    when x does not occur in A
//   3. coe(x. iso(A, B, x.b, y.a, p, q, x), a0, right) = b[x := a0]
//                                                 when x occurs only as the
//                                                 interval argument
// Freshness is decided on the readback of the instantiated family, so a
// family that mentions its variable only in a subterm that reduces away
// still counts as constant. When no rule fires the coe is a legal neutral:
// the theory has no canonicity.

#include <cstdint>
#include <vector>

#include "hti/term.hpp"
#include "hti/value.hpp"

namespace hti {

Value eval(const std::vector<Value>& env, const Term& t);
Term quote(uint64_t depth, const Value& v);

inline Value applyClosure(const Closure& c, const Value& arg) {
  std::vector<Value> env = c.env;
  env.push_back(arg);
  return eval(env, c.body);
}

// -- fresh levels -----------------------------------------------------------

// Smallest level strictly above every neutral variable reachable from v.
inline uint64_t levelBound(const Value& v);

inline uint64_t levelBound(const Closure& c) {
  uint64_t m = 0;
  for (const auto& e : c.env) {
    uint64_t b = levelBound(e);
    if (b > m) m = b;
  }
  return m;
}

inline uint64_t levelBound(const Value& v) {
  uint64_t m = 0;
  auto bump = [&m](uint64_t b) { if (b > m) m = b; };
  if (v.tag() == ValTag::Neutral) {
    if (v.isVarHead()) {
      bump(v.varLevel() + 1);
    } else {
      bump(levelBound(v.coeHead().family));
      for (const auto& w : v.coeHead().baseAndTarget) bump(levelBound(w));
    }
    for (const auto& e : v.spine()) {
      for (const auto& w : e.vals) bump(levelBound(w));
      if (e.motive) bump(levelBound(*e.motive));
    }
    return m;
  }
  for (const auto& w : v.vals()) bump(levelBound(w));
  for (const auto& c : v.clos()) bump(levelBound(c));
  return m;
}

// -- readback-based occurrence checks ---------------------------------------

// Does the variable at `fresh` occur in the normal form of v? All levels in
// v must be <= fresh. Quoting at depth fresh+1 turns an occurrence of the
// fresh variable under b binders into index b, i.e. free index 0.
inline bool mentionsLevel(const Value& v, uint64_t fresh) {
  return freeVarOccurs(quote(fresh + 1, v), 0);
}

inline bool mentionsLevel(const Closure& c, uint64_t fresh) {
  Value inst = applyClosure(c, Value::makeVar(fresh + 1));
  return freeVarOccurs(quote(fresh + 2, inst), 1);
}

// -- eliminations -----------------------------------------------------------

inline Value applyValue(const Value& fn, const Value& arg) {
  switch (fn.tag()) {
    case ValTag::Lam:
      return applyClosure(fn.lamBody(), arg);
    case ValTag::Neutral:
      return fn.extend(Elim{ElimKind::App, {arg}, nullptr});
    default:
      throw KernelBug("application of a non-function value");
  }
}

inline Value projValue(const Value& p, bool first) {
  switch (p.tag()) {
    case ValTag::Pair:
      return first ? p.pairFst() : p.pairSnd();
    case ValTag::Neutral:
      return p.extend(Elim{first ? ElimKind::Proj1 : ElimKind::Proj2, {}, nullptr});
    default:
      throw KernelBug("projection from a non-pair value");
  }
}

inline Value boolElimValue(const Closure& motive, const Value& onTrue, const Value& onFalse,
                           const Value& scrut) {
  switch (scrut.tag()) {
    case ValTag::True:
      return onTrue;
    case ValTag::False:
      return onFalse;
    case ValTag::Neutral:
      return scrut.extend(
          Elim{ElimKind::BoolElim, {onTrue, onFalse}, std::make_shared<Closure>(motive)});
    default:
      throw KernelBug("elimBool on a non-boolean value");
  }
}

// Path application: beta first, then the endpoint rules, else stuck.
inline Value applyPath(const Value& p, const Value& i, const Value& annL, const Value& annR) {
  if (p.tag() == ValTag::PathLam) return applyClosure(p.pathLamBody(), i);
  if (p.tag() != ValTag::Neutral) throw KernelBug("@ on a non-path value");
  if (i.tag() == ValTag::Left) return annL;
  if (i.tag() == ValTag::Right) return annR;
  return p.extend(Elim{ElimKind::At, {i, annL, annR}, nullptr});
}

// -- coe dispatch ------------------------------------------------------------

enum class CoeRule : uint8_t { LeftEndpoint, ConstantFamily, IsoForward, Stuck };

inline bool coeGuardLeft(const Closure&, const Value&, const Value& target) {
  return target.tag() == ValTag::Left;
}

inline bool coeGuardConstant(const Closure& fam, const Value&, const Value&) {
  uint64_t fresh = levelBound(fam);
  Value inst = applyClosure(fam, Value::makeVar(fresh));
  return !mentionsLevel(inst, fresh);
}

inline bool coeGuardIso(const Closure& fam, const Value&, const Value& target) {
  if (target.tag() != ValTag::Right) return false;
  uint64_t fresh = levelBound(fam);
  Value inst = applyClosure(fam, Value::makeVar(fresh));
  if (inst.tag() != ValTag::Iso) return false;
  const Value& arg = inst.isoArg();
  // The interval argument must be literally the coe binder variable.
  if (arg.tag() != ValTag::Neutral || !arg.isVarHead() || arg.varLevel() != fresh ||
      !arg.spine().empty())
    return false;
  return !mentionsLevel(inst.isoA(), fresh) && !mentionsLevel(inst.isoB(), fresh) &&
         !mentionsLevel(inst.isoFwd(), fresh) && !mentionsLevel(inst.isoBwd(), fresh) &&
         !mentionsLevel(inst.isoSectL(), fresh) && !mentionsLevel(inst.isoSectR(), fresh);
}

// All rules whose guard holds, in dispatch order. The overlap suite drives
// exactly these guards, so it tests the evaluator's own dispatch.
inline std::vector<CoeRule> coeMatches(const Closure& fam, const Value& base, const Value& i) {
  std::vector<CoeRule> out;
  if (coeGuardLeft(fam, base, i)) out.push_back(CoeRule::LeftEndpoint);
  if (coeGuardConstant(fam, base, i)) out.push_back(CoeRule::ConstantFamily);
  if (coeGuardIso(fam, base, i)) out.push_back(CoeRule::IsoForward);
  return out;
}

inline Value coeFire(CoeRule rule, const Closure& fam, const Value& base, const Value& i) {
  switch (rule) {
    case CoeRule::LeftEndpoint:
    case CoeRule::ConstantFamily:
      return base;
    case CoeRule::IsoForward: {
      uint64_t fresh = levelBound(fam);
      Value inst = applyClosure(fam, Value::makeVar(fresh));
      return applyClosure(inst.isoFwd(), base);
    }
    case CoeRule::Stuck:
      return Value::makeCoeNeutral(fam, base, i);
  }
  throw KernelBug("unknown coe rule");
}

inline Value coeStep(const Closure& fam, const Value& base, const Value& i) {
  if (!isIntervalValue(i)) throw KernelBug("coe target is not an interval value");
  if (coeGuardLeft(fam, base, i)) return coeFire(CoeRule::LeftEndpoint, fam, base, i);
  if (coeGuardConstant(fam, base, i)) return coeFire(CoeRule::ConstantFamily, fam, base, i);
  if (coeGuardIso(fam, base, i)) return coeFire(CoeRule::IsoForward, fam, base, i);
  return coeFire(CoeRule::Stuck, fam, base, i);
}

// iso collapses at the endpoints and is otherwise a stuck type.
inline Value isoForm(Value a, Value b, Closure fwd, Closure bwd, Closure sl, Closure sr,
                     Value arg) {
  switch (arg.tag()) {
    case ValTag::Left:
      return a;
    case ValTag::Right:
      return b;
    case ValTag::Neutral:
      return vIso(std::move(a), std::move(b), std::move(fwd), std::move(bwd), std::move(sl),
                  std::move(sr), std::move(arg));
    default:
      throw KernelBug("iso argument is not an interval value");
  }
}

// -- evaluation ---------------------------------------------------------------

inline Value eval(const std::vector<Value>& env, const Term& t) {
  auto closure = [&env, &t](size_t kidIndex, size_t hintIndex) {
    return Closure{env, t.kid(kidIndex), t.hint(hintIndex)};
  };
  switch (t.tag()) {
    case TermTag::Var: {
      uint32_t k = t.index();
      if (k >= env.size()) throw KernelBug("unbound variable during evaluation");
      return env[env.size() - 1 - k];
    }
    case TermTag::Universe: return vUniverse(t.level());
    case TermTag::Pi: return vPi(eval(env, t.kid(0)), closure(1, 0));
    case TermTag::Lam: return vLam(closure(0, 0));
    case TermTag::App: return applyValue(eval(env, t.kid(0)), eval(env, t.kid(1)));
    case TermTag::Sigma: return vSigma(eval(env, t.kid(0)), closure(1, 0));
    case TermTag::Pair: return vPair(eval(env, t.kid(0)), eval(env, t.kid(1)));
    case TermTag::Proj1: return projValue(eval(env, t.kid(0)), true);
    case TermTag::Proj2: return projValue(eval(env, t.kid(0)), false);
    case TermTag::UnitType: return vUnitType();
    case TermTag::UnitVal: return vUnitVal();
    case TermTag::BoolType: return vBoolType();
    case TermTag::True: return vTrue();
    case TermTag::False: return vFalse();
    case TermTag::BoolElim:
      return boolElimValue(closure(0, 0), eval(env, t.kid(1)), eval(env, t.kid(2)),
                           eval(env, t.kid(3)));
    case TermTag::Interval: return vInterval();
    case TermTag::Left: return vLeft();
    case TermTag::Right: return vRight();
    case TermTag::Coe:
      return coeStep(closure(0, 0), eval(env, t.kid(1)), eval(env, t.kid(2)));
    case TermTag::Path:
      return vPath(closure(0, 0), eval(env, t.kid(1)), eval(env, t.kid(2)));
    case TermTag::PathLam: return vPathLam(closure(0, 0));
    case TermTag::At:
      return applyPath(eval(env, t.kid(0)), eval(env, t.kid(1)), eval(env, t.kid(2)),
                       eval(env, t.kid(3)));
    case TermTag::Iso:
      return isoForm(eval(env, t.kid(0)), eval(env, t.kid(1)), closure(2, 0), closure(3, 1),
                     closure(4, 2), closure(5, 3), eval(env, t.kid(6)));
  }
  throw KernelBug("unhandled term tag in eval");
}

// -- readback -----------------------------------------------------------------

inline Term quoteClosure(uint64_t depth, const Closure& c) {
  return quote(depth + 1, applyClosure(c, Value::makeVar(depth)));
}

inline Term quote(uint64_t depth, const Value& v) {
  switch (v.tag()) {
    case ValTag::Universe: return universe(v.level());
    case ValTag::Pi:
      return pi(quote(depth, v.piDom()), quoteClosure(depth, v.piCod()), v.piCod().hint);
    case ValTag::Lam:
      return lam(quoteClosure(depth, v.lamBody()), v.lamBody().hint);
    case ValTag::Sigma:
      return sigma(quote(depth, v.val(0)), quoteClosure(depth, v.clo(0)), v.clo(0).hint);
    case ValTag::Pair: return pairTerm(quote(depth, v.pairFst()), quote(depth, v.pairSnd()));
    case ValTag::UnitType: return unitType();
    case ValTag::UnitVal: return unitVal();
    case ValTag::BoolType: return boolType();
    case ValTag::True: return trueTerm();
    case ValTag::False: return falseTerm();
    case ValTag::Interval: return interval();
    case ValTag::Left: return leftTerm();
    case ValTag::Right: return rightTerm();
    case ValTag::Path:
      return path(quoteClosure(depth, v.pathFam()), quote(depth, v.pathLeft()),
                  quote(depth, v.pathRight()), v.pathFam().hint);
    case ValTag::PathLam:
      return pathLam(quoteClosure(depth, v.pathLamBody()), v.pathLamBody().hint);
    case ValTag::Iso:
      return iso(quote(depth, v.isoA()), quote(depth, v.isoB()), quoteClosure(depth, v.isoFwd()),
                 quoteClosure(depth, v.isoBwd()), quoteClosure(depth, v.isoSectL()),
                 quoteClosure(depth, v.isoSectR()), quote(depth, v.isoArg()),
                 {v.isoFwd().hint, v.isoBwd().hint, v.isoSectL().hint, v.isoSectR().hint});
    case ValTag::Neutral: {
      Term acc;
      if (v.isVarHead()) {
        if (v.varLevel() >= depth) throw KernelBug("neutral level escapes readback depth");
        acc = var(static_cast<uint32_t>(depth - 1 - v.varLevel()));
      } else {
        const CoeHead& h = v.coeHead();
        acc = coe(quoteClosure(depth, h.family), quote(depth, h.baseAndTarget[0]),
                  quote(depth, h.baseAndTarget[1]), h.family.hint);
      }
      for (const auto& e : v.spine()) {
        switch (e.kind) {
          case ElimKind::App: acc = app(acc, quote(depth, e.vals[0])); break;
          case ElimKind::Proj1: acc = proj1(acc); break;
          case ElimKind::Proj2: acc = proj2(acc); break;
          case ElimKind::BoolElim:
            acc = boolElim(quoteClosure(depth, *e.motive), quote(depth, e.vals[0]),
                           quote(depth, e.vals[1]), acc, e.motive->hint);
            break;
          case ElimKind::At:
            acc = at(acc, quote(depth, e.vals[0]), quote(depth, e.vals[1]),
                     quote(depth, e.vals[2]));
            break;
        }
      }
      return acc;
    }
  }
  throw KernelBug("unhandled value tag in quote");
}

// -- normalization -------------------------------------------------------------

// Environment mapping every context entry to itself as a neutral variable.
inline std::vector<Value> identityEnv(size_t n) {
  std::vector<Value> env;
  env.reserve(n);
  for (size_t i = 0; i < n; ++i) env.push_back(Value::makeVar(i));
  return env;
}

inline Term normalize(const Context& ctx, const Term& t) {
  return quote(ctx.size(), eval(identityEnv(ctx.size()), t));
}

inline Term normalizeClosed(const Term& t) { return quote(0, eval({}, t)); }

}  // namespace hti
