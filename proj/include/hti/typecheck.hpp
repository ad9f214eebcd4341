#pragma once

// Bidirectional type checking over core terms. infer synthesizes a type,
// check switches modes at the unannotated introduction forms (lambda, pair,
// path abstraction). Types are terms; head scrutiny happens on normal forms.
//
// The universe tower is Type0 : Type1 : Type2, Russell style, with no
// cumulativity. Type2 can classify but has no type itself.

#include <string>

#include "hti/conversion.hpp"
#include "hti/diagnostics.hpp"
#include "hti/eval.hpp"
#include "hti/term.hpp"

namespace hti {

Term infer(const Context& ctx, const Term& t);
void check(const Context& ctx, const Term& t, const Term& type);

namespace detail {

// Rendering hook: the pretty printer module installs a real renderer so
// diagnostics can show surface syntax; the fallback is the raw dump.
inline std::string (*&termRenderer())(const Context&, const Term&) {
  static std::string (*fn)(const Context&, const Term&) = nullptr;
  return fn;
}

inline std::string show(const Context& ctx, const Term& t) {
  if (auto* fn = termRenderer()) return fn(ctx, t);
  (void)ctx;
  return rawString(t);
}

[[noreturn]] inline void failConv(const Context& ctx, const Term& expected, const Term& actual,
                                  const std::string& where, const ConvTrace& trace) {
  Diagnostic d;
  d.code = code::Conv;
  d.message = where;
  if (!trace.where.empty()) d.message += " (" + trace.where + ")";
  d.expected = show(ctx, normalize(ctx, expected));
  d.actual = show(ctx, normalize(ctx, actual));
  throw TypeError{std::move(d)};
}

}  // namespace detail

// The inferred type of t must be a universe; returns its level.
inline uint32_t inferTypeLevel(const Context& ctx, const Term& t) {
  Term ty = normalize(ctx, infer(ctx, t));
  if (ty.tag() != TermTag::Universe)
    fail(code::NotType, "expected a type, but the term's type is " + detail::show(ctx, ty));
  return ty.level();
}

// Well-formedness of a stated type. Type2 is allowed here even though it has
// no type of its own.
inline void checkIsType(const Context& ctx, const Term& t) {
  if (t.tag() == TermTag::Universe) return;
  inferTypeLevel(ctx, t);
}

// Premise names for iso, in rule order.
inline constexpr const char* isoPremiseNames[7] = {
    "typeA", "typeB", "forward", "backward", "sectionLeft", "sectionRight", "intervalArg"};

// Expected type of the left section component: in context extended by x : A,
//   Path(_. A, a[y := b], x)
inline Term isoSectLeftType(const Term& tyA, const Term& fwdBody, const Term& bwdBody) {
  Term roundTrip = subst(shift(bwdBody, 1, 1), 0, fwdBody);
  return path(shift(tyA, 0, 2), roundTrip, var(0));
}

// Symmetric right section component: in context extended by y : B,
//   Path(_. B, b[x := a], y)
inline Term isoSectRightType(const Term& tyB, const Term& fwdBody, const Term& bwdBody) {
  Term roundTrip = subst(shift(fwdBody, 1, 1), 0, bwdBody);
  return path(shift(tyB, 0, 2), roundTrip, var(0));
}

// Checks the seven iso premises; returns the universe the iso inhabits.
// A and B must live in one universe level, which is also the result level.
inline Term checkIso(const Context& ctx, const Term& t) {
  const Term& tyA = t.kid(0);
  const Term& tyB = t.kid(1);
  const Term& fwd = t.kid(2);
  const Term& bwd = t.kid(3);
  const Term& sectL = t.kid(4);
  const Term& sectR = t.kid(5);
  const Term& arg = t.kid(6);

  size_t premise = 0;
  try {
    premise = 0;
    uint32_t levelA = inferTypeLevel(ctx, tyA);
    premise = 1;
    uint32_t levelB = inferTypeLevel(ctx, tyB);
    if (levelA != levelB)
      fail(code::Level, "iso endpoints live in different universes: Type" +
                            std::to_string(levelA) + " vs Type" + std::to_string(levelB));
    Context ctxA = ctx.extend(tyA, t.hint(0));
    Context ctxB = ctx.extend(tyB, t.hint(1));
    premise = 2;
    check(ctxA, fwd, shift(tyB, 0, 1));
    premise = 3;
    check(ctxB, bwd, shift(tyA, 0, 1));
    premise = 4;
    check(ctxA, sectL, isoSectLeftType(tyA, fwd, bwd));
    premise = 5;
    check(ctxB, sectR, isoSectRightType(tyB, fwd, bwd));
    premise = 6;
    check(ctx, arg, interval());
    return universe(levelA);
  } catch (TypeError& e) {
    Diagnostic d = std::move(e.diagnostic);
    Diagnostic wrapped;
    wrapped.code = code::IsoPremise;
    wrapped.message = std::string("iso premise '") + isoPremiseNames[premise] +
                      "' failed: " + d.message;
    wrapped.span = d.span;
    wrapped.expected = std::move(d.expected);
    wrapped.actual = std::move(d.actual);
    throw TypeError{std::move(wrapped)};
  }
}

inline Term infer(const Context& ctx, const Term& t) {
  switch (t.tag()) {
    case TermTag::Var: {
      if (t.index() >= ctx.size())
        fail(code::Scope, "unbound variable index " + std::to_string(t.index()));
      return ctx.lookup(t.index());
    }
    case TermTag::Universe: {
      if (t.level() + 1 > 2)
        fail(code::Level, "Type2 has no type (the tower stops at Type2)");
      return universe(t.level() + 1);
    }
    case TermTag::Pi:
    case TermTag::Sigma: {
      uint32_t l1 = inferTypeLevel(ctx, t.kid(0));
      uint32_t l2 = inferTypeLevel(ctx.extend(t.kid(0), t.hint(0)), t.kid(1));
      return universe(l1 > l2 ? l1 : l2);
    }
    case TermTag::Lam:
      fail(code::Infer, "cannot infer the type of an unannotated lambda");
    case TermTag::App: {
      Term fnTy = normalize(ctx, infer(ctx, t.kid(0)));
      if (fnTy.tag() != TermTag::Pi)
        fail(code::NotFun, "application of a non-function: the head has type " +
                               detail::show(ctx, fnTy));
      check(ctx, t.kid(1), fnTy.kid(0));
      return instantiate(fnTy.kid(1), t.kid(1));
    }
    case TermTag::Pair:
      fail(code::Infer, "cannot infer the type of a bare pair");
    case TermTag::Proj1:
    case TermTag::Proj2: {
      Term pTy = normalize(ctx, infer(ctx, t.kid(0)));
      if (pTy.tag() != TermTag::Sigma)
        fail(code::NotPair, "projection from a non-pair: the subject has type " +
                                detail::show(ctx, pTy));
      if (t.tag() == TermTag::Proj1) return pTy.kid(0);
      return instantiate(pTy.kid(1), proj1(t.kid(0)));
    }
    case TermTag::UnitType: return universe(0);
    case TermTag::UnitVal: return unitType();
    case TermTag::BoolType: return universe(0);
    case TermTag::True:
    case TermTag::False: return boolType();
    case TermTag::BoolElim: {
      check(ctx, t.kid(3), boolType());
      Context ctxB = ctx.extend(boolType(), t.hint(0));
      inferTypeLevel(ctxB, t.kid(0));
      check(ctx, t.kid(1), instantiate(t.kid(0), trueTerm()));
      check(ctx, t.kid(2), instantiate(t.kid(0), falseTerm()));
      return instantiate(t.kid(0), t.kid(3));
    }
    case TermTag::Interval: return universe(0);
    case TermTag::Left:
    case TermTag::Right: return interval();
    case TermTag::Coe: {
      Context ctxI = ctx.extend(interval(), t.hint(0));
      inferTypeLevel(ctxI, t.kid(0));
      check(ctx, t.kid(1), instantiate(t.kid(0), leftTerm()));
      check(ctx, t.kid(2), interval());
      return instantiate(t.kid(0), t.kid(2));
    }
    case TermTag::Path: {
      Context ctxI = ctx.extend(interval(), t.hint(0));
      uint32_t l = inferTypeLevel(ctxI, t.kid(0));
      check(ctx, t.kid(1), instantiate(t.kid(0), leftTerm()));
      check(ctx, t.kid(2), instantiate(t.kid(0), rightTerm()));
      return universe(l);
    }
    case TermTag::PathLam: {
      Context ctxI = ctx.extend(interval(), t.hint(0));
      Term bodyTy = infer(ctxI, t.kid(0));
      return path(bodyTy, instantiate(t.kid(0), leftTerm()),
                  instantiate(t.kid(0), rightTerm()), t.hint(0));
    }
    case TermTag::At: {
      Term pTy = normalize(ctx, infer(ctx, t.kid(0)));
      if (pTy.tag() != TermTag::Path)
        fail(code::NotPath,
             "@ applied to a non-path: the subject has type " + detail::show(ctx, pTy));
      check(ctx, t.kid(1), interval());
      ConvTrace trace;
      if (!convertTerms(ctx, t.kid(2), pTy.kid(1), &trace))
        detail::failConv(ctx, pTy.kid(1), t.kid(2), "left endpoint annotation mismatch", trace);
      if (!convertTerms(ctx, t.kid(3), pTy.kid(2), &trace))
        detail::failConv(ctx, pTy.kid(2), t.kid(3), "right endpoint annotation mismatch", trace);
      return instantiate(pTy.kid(0), t.kid(1));
    }
    case TermTag::Iso:
      return checkIso(ctx, t);
  }
  throw KernelBug("unhandled term tag in infer");
}

inline void check(const Context& ctx, const Term& t, const Term& type) {
  switch (t.tag()) {
    case TermTag::Lam: {
      Term ty = normalize(ctx, type);
      if (ty.tag() != TermTag::Pi) {
        Diagnostic d;
        d.code = code::Conv;
        d.message = "lambda checked against a non-function type";
        d.expected = detail::show(ctx, ty);
        d.actual = "a function";
        throw TypeError{std::move(d)};
      }
      check(ctx.extend(ty.kid(0), t.hint(0)), t.kid(0), ty.kid(1));
      return;
    }
    case TermTag::Pair: {
      Term ty = normalize(ctx, type);
      if (ty.tag() != TermTag::Sigma) {
        Diagnostic d;
        d.code = code::Conv;
        d.message = "pair checked against a non-pair type";
        d.expected = detail::show(ctx, ty);
        d.actual = "a pair";
        throw TypeError{std::move(d)};
      }
      check(ctx, t.kid(0), ty.kid(0));
      check(ctx, t.kid(1), instantiate(ty.kid(1), t.kid(0)));
      return;
    }
    case TermTag::PathLam: {
      Term ty = normalize(ctx, type);
      if (ty.tag() != TermTag::Path) {
        Diagnostic d;
        d.code = code::Conv;
        d.message = "path abstraction checked against a non-path type";
        d.expected = detail::show(ctx, ty);
        d.actual = "a path";
        throw TypeError{std::move(d)};
      }
      check(ctx.extend(interval(), t.hint(0)), t.kid(0), ty.kid(0));
      ConvTrace trace;
      Term atLeft = instantiate(t.kid(0), leftTerm());
      if (!convertTerms(ctx, atLeft, ty.kid(1), &trace))
        detail::failConv(ctx, ty.kid(1), atLeft, "left endpoint of path abstraction", trace);
      Term atRight = instantiate(t.kid(0), rightTerm());
      if (!convertTerms(ctx, atRight, ty.kid(2), &trace))
        detail::failConv(ctx, ty.kid(2), atRight, "right endpoint of path abstraction", trace);
      return;
    }
    default: {
      Term inferred = infer(ctx, t);
      ConvTrace trace;
      if (!convertTerms(ctx, inferred, type, &trace))
        detail::failConv(ctx, type, inferred, "type mismatch", trace);
      return;
    }
  }
}

}  // namespace hti
