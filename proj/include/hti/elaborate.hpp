#pragma once

// Elaboration: surface syntax to fully annotated core. Sugar is expanded
// here — `a = a'` becomes a constant-family Path, `refl` a path abstraction
// over a weakened endpoint, and unannotated `p @ i` receives the endpoint
// annotations read off p's inferred path type.
//
// Global definitions are closed core terms and are inlined at each use, so
// they unfold transparently everywhere downstream.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hti/pretty.hpp"
#include "hti/surface.hpp"
#include "hti/typecheck.hpp"

namespace hti {

struct GlobalDef {
  Term type;  // closed, beta-normal
  Term body;  // closed, fully inlined, beta-normal
  Term raw;   // the body as elaborated, before normalization
};

struct ElabDecl {
  std::string name;
  Term type;
  Term body;
};

class Session {
 public:
  // Elaborates and registers one declaration. Throws TypeError.
  //
  // Since uses of earlier definitions are inlined, the stored type and body
  // are kept beta-normal: the raw inlining would leave redex heads that the
  // bidirectional checker cannot re-infer, while normal forms always
  // re-check. Unfolding therefore happens up front, once.
  ElabDecl process(const Declaration& d) {
    Context empty;
    Term type = elabType(empty, d.statedType).first;
    Term raw = elabCheck(empty, d.body, type);
    type = normalize(empty, type);
    Term body = normalize(empty, raw);
    if (auto it = globals_.find(d.name); it != globals_.end()) {
      // Re-stating an identical definition is a no-op (this happens when the
      // prelude file itself is checked with the prelude preloaded); anything
      // else is a duplicate.
      if (alphaEq(it->second.type, type) && alphaEq(it->second.body, body))
        return ElabDecl{d.name, type, body};
      fail(code::Duplicate, "duplicate definition of '" + d.name + "'", d.span);
    }
    globals_[d.name] = GlobalDef{type, body, raw};
    order_.push_back(d.name);
    return ElabDecl{d.name, type, body};
  }

  const std::map<std::string, GlobalDef>& globals() const { return globals_; }
  const std::vector<std::string>& order() const { return order_; }

  const GlobalDef* find(const std::string& name) const {
    auto it = globals_.find(name);
    return it == globals_.end() ? nullptr : &it->second;
  }

  // -- elaboration ------------------------------------------------------------

  // Core term together with its type.
  using Typed = std::pair<Term, Term>;

  Typed elabInfer(const Context& ctx, const SPtr& s) {
    switch (s->kind) {
      case SKind::Var: {
        const std::string& name = s->names[0];
        const auto& names = ctx.names();
        for (size_t k = 0; k < names.size(); ++k) {
          size_t fromBack = names.size() - 1 - k;
          if (names[fromBack] == name) {
            uint32_t idx = static_cast<uint32_t>(k);
            return {var(idx), ctx.lookup(idx)};
          }
        }
        if (const GlobalDef* g = find(name)) return {g->body, g->type};
        fail(code::Scope, "unresolved identifier '" + name + "'", s->span);
      }
      case SKind::Type:
        if (s->nat + 1 > 2)
          fail(code::Level, "Type2 has no type (the tower stops at Type2)", s->span);
        return {universe(s->nat), universe(s->nat + 1)};
      case SKind::UnitT: return {unitType(), universe(0)};
      case SKind::UnitV: return {unitVal(), unitType()};
      case SKind::BoolT: return {boolType(), universe(0)};
      case SKind::TrueS: return {trueTerm(), boolType()};
      case SKind::FalseS: return {falseTerm(), boolType()};
      case SKind::IntervalS: return {interval(), universe(0)};
      case SKind::LeftS: return {leftTerm(), interval()};
      case SKind::RightS: return {rightTerm(), interval()};
      case SKind::Refl:
        fail(code::Infer, "refl needs an expected path type", s->span);
      case SKind::Lam:
        fail(code::Infer, "cannot infer the type of an unannotated lambda", s->span);
      case SKind::PairS:
        fail(code::Infer, "cannot infer the type of a bare pair", s->span);
      case SKind::PiB:
      case SKind::ArrowS:
      case SKind::SigmaB:
      case SKind::ProdS: {
        bool dependent = s->kind == SKind::PiB || s->kind == SKind::SigmaB;
        bool isPi = s->kind == SKind::PiB || s->kind == SKind::ArrowS;
        std::string binder = dependent ? s->names[0] : "_";
        auto [dom, levelDom] = elabType(ctx, s->kids[0]);
        Context inner = ctx.extend(dom, binder);
        Term codSurfaceCore;
        uint32_t levelCod;
        if (dependent) {
          auto [cod, lc] = elabType(inner, s->kids[1]);
          codSurfaceCore = cod;
          levelCod = lc;
        } else {
          auto [cod, lc] = elabType(ctx, s->kids[1]);
          codSurfaceCore = shift(cod, 0, 1);
          levelCod = lc;
        }
        uint32_t level = levelDom > levelCod ? levelDom : levelCod;
        if (level > 2)
          fail(code::Level, "type former exceeds the universe tower", s->span);
        Term core = isPi ? pi(dom, codSurfaceCore, binder) : sigma(dom, codSurfaceCore, binder);
        return {core, universe(level)};
      }
      case SKind::AppS: {
        auto [fn, fnTyRaw] = elabInfer(ctx, s->kids[0]);
        Term fnTy = normalize(ctx, fnTyRaw);
        if (fnTy.tag() != TermTag::Pi)
          fail(code::NotFun,
               "application of a non-function (head has type " + showTerm(ctx, fnTy) + ")",
               s->kids[0]->span);
        Term arg = elabCheck(ctx, s->kids[1], fnTy.kid(0));
        return {app(fn, arg), instantiate(fnTy.kid(1), arg)};
      }
      case SKind::Proj1S:
      case SKind::Proj2S: {
        auto [p, pTyRaw] = elabInfer(ctx, s->kids[0]);
        Term pTy = normalize(ctx, pTyRaw);
        if (pTy.tag() != TermTag::Sigma)
          fail(code::NotPair,
               "projection from a non-pair (subject has type " + showTerm(ctx, pTy) + ")",
               s->kids[0]->span);
        if (s->kind == SKind::Proj1S) return {proj1(p), pTy.kid(0)};
        return {proj2(p), instantiate(pTy.kid(1), proj1(p))};
      }
      case SKind::ElimBoolS: {
        Term scrut = elabCheck(ctx, s->kids[3], boolType());
        Context inner = ctx.extend(boolType(), s->names[0]);
        Term motive = elabType(inner, s->kids[0]).first;
        Term onTrue = elabCheck(ctx, s->kids[1], instantiate(motive, trueTerm()));
        Term onFalse = elabCheck(ctx, s->kids[2], instantiate(motive, falseTerm()));
        return {boolElim(motive, onTrue, onFalse, scrut, s->names[0]),
                instantiate(motive, scrut)};
      }
      case SKind::CoeS: {
        Context inner = ctx.extend(interval(), s->names[0]);
        Term fam = elabType(inner, s->kids[0]).first;
        Term base = elabCheck(ctx, s->kids[1], instantiate(fam, leftTerm()));
        Term target = elabCheck(ctx, s->kids[2], interval());
        return {coe(fam, base, target, s->names[0]), instantiate(fam, target)};
      }
      case SKind::PathTS: {
        Context inner = ctx.extend(interval(), s->names[0]);
        auto [fam, level] = elabType(inner, s->kids[0]);
        if (level > 2) fail(code::Level, "path family exceeds the universe tower", s->span);
        Term l = elabCheck(ctx, s->kids[1], instantiate(fam, leftTerm()));
        Term r = elabCheck(ctx, s->kids[2], instantiate(fam, rightTerm()));
        return {path(fam, l, r, s->names[0]), universe(level)};
      }
      case SKind::PathAbsS: {
        Context inner = ctx.extend(interval(), s->names[0]);
        auto [body, bodyTy] = elabInfer(inner, s->kids[0]);
        return {pathLam(body, s->names[0]),
                path(bodyTy, instantiate(body, leftTerm()), instantiate(body, rightTerm()),
                     s->names[0])};
      }
      case SKind::AtS: {
        auto [p, pTyRaw] = elabInfer(ctx, s->kids[0]);
        Term pTy = normalize(ctx, pTyRaw);
        if (pTy.tag() != TermTag::Path)
          fail(code::NotPath,
               "@ applied to a non-path (subject has type " + showTerm(ctx, pTy) + ")",
               s->kids[0]->span);
        Term arg = elabCheck(ctx, s->kids[1], interval());
        return {at(p, arg, pTy.kid(1), pTy.kid(2)), instantiate(pTy.kid(0), arg)};
      }
      case SKind::EqS: {
        auto [lhs, lhsTy] = elabInfer(ctx, s->kids[0]);
        Term rhs = elabCheck(ctx, s->kids[1], lhsTy);
        uint32_t level = inferTypeLevel(ctx, lhsTy);
        return {path(shift(lhsTy, 0, 1), lhs, rhs, "_"), universe(level)};
      }
      case SKind::IsoS: {
        auto premise = [&s](size_t i, auto fn) -> Term {
          try {
            return fn();
          } catch (TypeError& e) {
            if (e.diagnostic.code == code::IsoPremise) throw;
            Diagnostic d = std::move(e.diagnostic);
            Diagnostic wrapped;
            wrapped.code = code::IsoPremise;
            wrapped.message = std::string("iso premise '") + isoPremiseNames[i] +
                              "' failed: " + d.message;
            wrapped.span = d.span.known() ? d.span : s->span;
            wrapped.expected = std::move(d.expected);
            wrapped.actual = std::move(d.actual);
            throw TypeError{std::move(wrapped)};
          }
        };
        uint32_t levelA = 0, levelB = 0;
        Term tyA = premise(0, [&] {
          auto [t, l] = elabType(ctx, s->kids[0]);
          levelA = l;
          return t;
        });
        Term tyB = premise(1, [&] {
          auto [t, l] = elabType(ctx, s->kids[1]);
          levelB = l;
          if (levelA != levelB)
            fail(code::Level,
                 "iso endpoints live in different universes: Type" + std::to_string(levelA) +
                     " vs Type" + std::to_string(levelB),
                 s->span);
          return t;
        });
        Context ctxA = ctx.extend(tyA, s->names[0]);
        Context ctxB = ctx.extend(tyB, s->names[1]);
        Term fwd = premise(2, [&] { return elabCheck(ctxA, s->kids[2], shift(tyB, 0, 1)); });
        Term bwd = premise(3, [&] { return elabCheck(ctxB, s->kids[3], shift(tyA, 0, 1)); });
        Term sectL =
            premise(4, [&] { return elabCheck(ctxA, s->kids[4], isoSectLeftType(tyA, fwd, bwd)); });
        Term sectR = premise(
            5, [&] { return elabCheck(ctxB, s->kids[5], isoSectRightType(tyB, fwd, bwd)); });
        Term arg = premise(6, [&] { return elabCheck(ctx, s->kids[6], interval()); });
        return {iso(tyA, tyB, fwd, bwd, sectL, sectR, arg,
                    {s->names[0], s->names[1], s->names[2], s->names[3]}),
                universe(levelA)};
      }
    }
    throw KernelBug("unhandled surface kind in elabInfer");
  }

  // The elaborated term together with the universe level it inhabits.
  std::pair<Term, uint32_t> elabType(const Context& ctx, const SPtr& s) {
    if (s->kind == SKind::Type) return {universe(s->nat), s->nat + 1};
    auto [core, ty] = elabInfer(ctx, s);
    Term tyN = normalize(ctx, ty);
    if (tyN.tag() != TermTag::Universe)
      fail(code::NotType, "expected a type, but found a term of type " + showTerm(ctx, tyN),
           s->span);
    return {core, tyN.level()};
  }

  Term elabCheck(const Context& ctx, const SPtr& s, const Term& type) {
    switch (s->kind) {
      case SKind::Lam: {
        Term ty = normalize(ctx, type);
        if (ty.tag() != TermTag::Pi) {
          Diagnostic d;
          d.code = code::Conv;
          d.message = "lambda checked against a non-function type";
          d.span = s->span;
          d.expected = showTerm(ctx, ty);
          d.actual = "a function";
          throw TypeError{std::move(d)};
        }
        Context inner = ctx.extend(ty.kid(0), s->names[0]);
        Term body = elabCheck(inner, s->kids[0], ty.kid(1));
        return lam(body, s->names[0]);
      }
      case SKind::PairS: {
        Term ty = normalize(ctx, type);
        if (ty.tag() != TermTag::Sigma) {
          Diagnostic d;
          d.code = code::Conv;
          d.message = "pair checked against a non-pair type";
          d.span = s->span;
          d.expected = showTerm(ctx, ty);
          d.actual = "a pair";
          throw TypeError{std::move(d)};
        }
        Term fst = elabCheck(ctx, s->kids[0], ty.kid(0));
        Term snd = elabCheck(ctx, s->kids[1], instantiate(ty.kid(1), fst));
        return pairTerm(fst, snd);
      }
      case SKind::PathAbsS: {
        Term ty = normalize(ctx, type);
        if (ty.tag() != TermTag::Path) {
          Diagnostic d;
          d.code = code::Conv;
          d.message = "path abstraction checked against a non-path type";
          d.span = s->span;
          d.expected = showTerm(ctx, ty);
          d.actual = "a path";
          throw TypeError{std::move(d)};
        }
        Context inner = ctx.extend(interval(), s->names[0]);
        Term body = elabCheck(inner, s->kids[0], ty.kid(0));
        ConvTrace trace;
        Term atLeft = instantiate(body, leftTerm());
        if (!convertTerms(ctx, atLeft, ty.kid(1), &trace))
          failEndpoint(ctx, s->span, "left", ty.kid(1), atLeft, trace);
        Term atRight = instantiate(body, rightTerm());
        if (!convertTerms(ctx, atRight, ty.kid(2), &trace))
          failEndpoint(ctx, s->span, "right", ty.kid(2), atRight, trace);
        return pathLam(body, s->names[0]);
      }
      case SKind::Refl: {
        Term ty = normalize(ctx, type);
        if (ty.tag() != TermTag::Path) {
          Diagnostic d;
          d.code = code::Conv;
          d.message = "refl checked against a non-path type";
          d.span = s->span;
          d.expected = showTerm(ctx, ty);
          d.actual = "a reflexivity path";
          throw TypeError{std::move(d)};
        }
        ConvTrace trace;
        if (!convertTerms(ctx, ty.kid(1), ty.kid(2), &trace)) {
          Diagnostic d;
          d.code = code::Conv;
          d.message = "refl requires definitionally equal endpoints";
          if (!trace.where.empty()) d.message += " (" + trace.where + ")";
          d.span = s->span;
          d.expected = showTerm(ctx, normalize(ctx, ty.kid(1)));
          d.actual = showTerm(ctx, normalize(ctx, ty.kid(2)));
          throw TypeError{std::move(d)};
        }
        Term candidate = pathLam(shift(ty.kid(1), 0, 1), "_");
        try {
          check(ctx, candidate, ty);
        } catch (TypeError& e) {
          if (!e.diagnostic.span.known()) e.diagnostic.span = s->span;
          throw;
        }
        return candidate;
      }
      default: {
        auto [core, inferred] = elabInfer(ctx, s);
        ConvTrace trace;
        if (!convertTerms(ctx, inferred, type, &trace)) {
          Diagnostic d;
          d.code = code::Conv;
          d.message = "type mismatch";
          if (!trace.where.empty()) d.message += " (" + trace.where + ")";
          d.span = s->span;
          d.expected = showTerm(ctx, normalize(ctx, type));
          d.actual = showTerm(ctx, normalize(ctx, inferred));
          throw TypeError{std::move(d)};
        }
        return core;
      }
    }
  }

 private:
  [[noreturn]] static void failEndpoint(const Context& ctx, Span span, const char* side,
                                        const Term& expected, const Term& actual,
                                        const ConvTrace& trace) {
    Diagnostic d;
    d.code = code::Conv;
    d.message = std::string(side) + " endpoint of path abstraction disagrees with its type";
    if (!trace.where.empty()) d.message += " (" + trace.where + ")";
    d.span = span;
    d.expected = showTerm(ctx, normalize(ctx, expected));
    d.actual = showTerm(ctx, normalize(ctx, actual));
    throw TypeError{std::move(d)};
  }

  std::map<std::string, GlobalDef> globals_;
  std::vector<std::string> order_;
};

// Elaborates declarations in order against a running session. Failed
// declarations are reported and skipped; later declarations that do not
// depend on them still elaborate and check.
struct CheckOutcome {
  std::vector<ElabDecl> decls;
  std::vector<Diagnostic> diagnostics;

  bool clean() const { return diagnostics.empty(); }
};

inline CheckOutcome checkDecls(Session& session, const std::vector<Declaration>& decls,
                               const std::string& file = {}) {
  CheckOutcome out;
  for (const auto& d : decls) {
    try {
      out.decls.push_back(session.process(d));
    } catch (TypeError& e) {
      Diagnostic diag = std::move(e.diagnostic);
      diag.file = file;
      if (!diag.span.known()) diag.span = d.span;
      out.diagnostics.push_back(std::move(diag));
    }
  }
  return out;
}

inline CheckOutcome checkDecls(const std::vector<Declaration>& decls,
                               const std::string& file = {}) {
  Session session;
  return checkDecls(session, decls, file);
}

// Batch elaboration: name/type/body triples for a file.
inline std::vector<ElabDecl> elaborate(const std::vector<Declaration>& decls,
                                       std::vector<Diagnostic>* diagnostics = nullptr) {
  CheckOutcome out = checkDecls(decls);
  if (diagnostics) *diagnostics = out.diagnostics;
  return out.decls;
}

}  // namespace hti
