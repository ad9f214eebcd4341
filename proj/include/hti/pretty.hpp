#pragma once

// Printing: surface terms back to concrete syntax, and core terms via a
// surface conversion that elides @ annotations, reuses binder hints and
// shows constant-family paths with the `=` sugar. Printing a parsed file and
// reparsing it is a fixpoint on the surface tree.

#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hti/surface.hpp"
#include "hti/term.hpp"
#include "hti/typecheck.hpp"

namespace hti {

namespace prec {
inline constexpr int Term = 0;   // lambda
inline constexpr int Arrow = 1;
inline constexpr int Prod = 2;
inline constexpr int Eq = 3;
inline constexpr int At = 4;
inline constexpr int App = 5;
inline constexpr int Atom = 6;
}  // namespace prec

inline void printSurface(std::ostream& os, const SPtr& t, int needed);

inline std::string printSurface(const SPtr& t, int needed = prec::Term) {
  std::ostringstream os;
  printSurface(os, t, needed);
  return os.str();
}

inline void printSurface(std::ostream& os, const SPtr& t, int needed) {
  auto wrap = [&os, needed](int mine, auto body) {
    if (mine < needed) os << "(";
    body();
    if (mine < needed) os << ")";
  };
  auto bindDot = [&os](const std::string& x, const SPtr& body) {
    os << "(" << x << ". ";
    printSurface(os, body, prec::Term);
    os << ")";
  };
  switch (t->kind) {
    case SKind::Var: os << t->names[0]; return;
    case SKind::Type: os << "Type" << t->nat; return;
    case SKind::UnitT: os << "Unit"; return;
    case SKind::UnitV: os << "unit"; return;
    case SKind::BoolT: os << "Bool"; return;
    case SKind::TrueS: os << "true"; return;
    case SKind::FalseS: os << "false"; return;
    case SKind::IntervalS: os << "I"; return;
    case SKind::LeftS: os << "left"; return;
    case SKind::RightS: os << "right"; return;
    case SKind::Refl: os << "refl"; return;
    case SKind::Lam:
      wrap(prec::Term, [&] {
        os << "\\" << t->names[0] << " => ";
        printSurface(os, t->kids[0], prec::Term);
      });
      return;
    case SKind::PiB:
      wrap(prec::Arrow, [&] {
        os << "(" << t->names[0] << " : ";
        printSurface(os, t->kids[0], prec::Term);
        os << ") -> ";
        printSurface(os, t->kids[1], prec::Arrow);
      });
      return;
    case SKind::ArrowS:
      wrap(prec::Arrow, [&] {
        printSurface(os, t->kids[0], prec::Prod);
        os << " -> ";
        printSurface(os, t->kids[1], prec::Arrow);
      });
      return;
    case SKind::SigmaB:
      wrap(prec::Prod, [&] {
        os << "(" << t->names[0] << " : ";
        printSurface(os, t->kids[0], prec::Term);
        os << ") * ";
        printSurface(os, t->kids[1], prec::Prod);
      });
      return;
    case SKind::ProdS:
      wrap(prec::Prod, [&] {
        printSurface(os, t->kids[0], prec::Eq);
        os << " * ";
        printSurface(os, t->kids[1], prec::Prod);
      });
      return;
    case SKind::EqS:
      wrap(prec::Eq, [&] {
        printSurface(os, t->kids[0], prec::At);
        os << " = ";
        printSurface(os, t->kids[1], prec::At);
      });
      return;
    case SKind::AtS:
      wrap(prec::At, [&] {
        printSurface(os, t->kids[0], prec::At);
        os << " @ ";
        printSurface(os, t->kids[1], prec::Atom);
      });
      return;
    case SKind::AppS:
      wrap(prec::App, [&] {
        printSurface(os, t->kids[0], prec::App);
        os << " ";
        printSurface(os, t->kids[1], prec::Atom);
      });
      return;
    case SKind::PairS:
      os << "(";
      printSurface(os, t->kids[0], prec::Term);
      os << ", ";
      printSurface(os, t->kids[1], prec::Term);
      os << ")";
      return;
    case SKind::Proj1S:
    case SKind::Proj2S:
      wrap(prec::App, [&] {
        os << (t->kind == SKind::Proj1S ? "proj1 " : "proj2 ");
        printSurface(os, t->kids[0], prec::Atom);
      });
      return;
    case SKind::ElimBoolS:
      wrap(prec::App, [&] {
        os << "elimBool ";
        bindDot(t->names[0], t->kids[0]);
        os << " ";
        printSurface(os, t->kids[1], prec::Atom);
        os << " ";
        printSurface(os, t->kids[2], prec::Atom);
        os << " ";
        printSurface(os, t->kids[3], prec::Atom);
      });
      return;
    case SKind::CoeS:
      wrap(prec::App, [&] {
        os << "coe ";
        bindDot(t->names[0], t->kids[0]);
        os << " ";
        printSurface(os, t->kids[1], prec::Atom);
        os << " ";
        printSurface(os, t->kids[2], prec::Atom);
      });
      return;
    case SKind::PathTS:
      wrap(prec::App, [&] {
        os << "Path ";
        bindDot(t->names[0], t->kids[0]);
        os << " ";
        printSurface(os, t->kids[1], prec::Atom);
        os << " ";
        printSurface(os, t->kids[2], prec::Atom);
      });
      return;
    case SKind::PathAbsS:
      wrap(prec::App, [&] {
        os << "path ";
        bindDot(t->names[0], t->kids[0]);
      });
      return;
    case SKind::IsoS:
      wrap(prec::App, [&] {
        os << "iso ";
        printSurface(os, t->kids[0], prec::Atom);
        os << " ";
        printSurface(os, t->kids[1], prec::Atom);
        os << " ";
        bindDot(t->names[0], t->kids[2]);
        os << " ";
        bindDot(t->names[1], t->kids[3]);
        os << " ";
        bindDot(t->names[2], t->kids[4]);
        os << " ";
        bindDot(t->names[3], t->kids[5]);
        os << " ";
        printSurface(os, t->kids[6], prec::Atom);
      });
      return;
  }
}

inline std::string printDecl(const Declaration& d) {
  return "def " + d.name + " : " + printSurface(d.statedType) + " => " + printSurface(d.body);
}

// -- core to surface ------------------------------------------------------------

namespace detail {

inline std::string pickName(const std::string& hint, std::vector<std::string>& names) {
  std::string base = hint.empty() || hint == "_" ? "x" : hint;
  std::string candidate = base;
  auto used = [&names](const std::string& n) {
    for (const auto& m : names)
      if (m == n) return true;
    return false;
  };
  int suffix = 0;
  while (used(candidate)) {
    ++suffix;
    candidate = base + std::to_string(suffix);
  }
  return candidate;
}

}  // namespace detail

// Converts a core term to surface syntax. `names` holds the ambient binder
// names, innermost last; it is extended temporarily under binders.
inline SPtr surfaceOfCore(const Term& t, std::vector<std::string>& names) {
  Span none{};
  auto under = [&names](const std::string& hint, const Term& body, auto&& fn) {
    std::string n = detail::pickName(hint, names);
    names.push_back(n);
    SPtr s = fn(n, body);
    names.pop_back();
    return s;
  };
  switch (t.tag()) {
    case TermTag::Var: {
      uint32_t k = t.index();
      if (k >= names.size()) return mkS(SKind::Var, none, {"?v" + std::to_string(k)});
      return mkS(SKind::Var, none, {names[names.size() - 1 - k]});
    }
    case TermTag::Universe: return mkS(SKind::Type, none, {}, {}, t.level());
    case TermTag::UnitType: return mkS(SKind::UnitT, none);
    case TermTag::UnitVal: return mkS(SKind::UnitV, none);
    case TermTag::BoolType: return mkS(SKind::BoolT, none);
    case TermTag::True: return mkS(SKind::TrueS, none);
    case TermTag::False: return mkS(SKind::FalseS, none);
    case TermTag::Interval: return mkS(SKind::IntervalS, none);
    case TermTag::Left: return mkS(SKind::LeftS, none);
    case TermTag::Right: return mkS(SKind::RightS, none);
    case TermTag::Pi: {
      SPtr dom = surfaceOfCore(t.kid(0), names);
      if (!freeVarOccurs(t.kid(1), 0)) {
        SPtr cod = surfaceOfCore(shift(t.kid(1), 1, -1), names);
        return mkS(SKind::ArrowS, none, {}, {dom, cod});
      }
      return under(t.hint(0), t.kid(1), [&](const std::string& n, const Term& b) {
        return mkS(SKind::PiB, none, {n}, {dom, surfaceOfCore(b, names)});
      });
    }
    case TermTag::Sigma: {
      SPtr dom = surfaceOfCore(t.kid(0), names);
      if (!freeVarOccurs(t.kid(1), 0)) {
        SPtr snd = surfaceOfCore(shift(t.kid(1), 1, -1), names);
        return mkS(SKind::ProdS, none, {}, {dom, snd});
      }
      return under(t.hint(0), t.kid(1), [&](const std::string& n, const Term& b) {
        return mkS(SKind::SigmaB, none, {n}, {dom, surfaceOfCore(b, names)});
      });
    }
    case TermTag::Lam:
      return under(t.hint(0), t.kid(0), [&](const std::string& n, const Term& b) {
        return mkS(SKind::Lam, none, {n}, {surfaceOfCore(b, names)});
      });
    case TermTag::App:
      return mkS(SKind::AppS, none, {},
                 {surfaceOfCore(t.kid(0), names), surfaceOfCore(t.kid(1), names)});
    case TermTag::Pair:
      return mkS(SKind::PairS, none, {},
                 {surfaceOfCore(t.kid(0), names), surfaceOfCore(t.kid(1), names)});
    case TermTag::Proj1:
      return mkS(SKind::Proj1S, none, {}, {surfaceOfCore(t.kid(0), names)});
    case TermTag::Proj2:
      return mkS(SKind::Proj2S, none, {}, {surfaceOfCore(t.kid(0), names)});
    case TermTag::BoolElim: {
      SPtr onT = surfaceOfCore(t.kid(1), names);
      SPtr onF = surfaceOfCore(t.kid(2), names);
      SPtr scrut = surfaceOfCore(t.kid(3), names);
      return under(t.hint(0), t.kid(0), [&](const std::string& n, const Term& b) {
        return mkS(SKind::ElimBoolS, none, {n}, {surfaceOfCore(b, names), onT, onF, scrut});
      });
    }
    case TermTag::Coe: {
      SPtr base = surfaceOfCore(t.kid(1), names);
      SPtr target = surfaceOfCore(t.kid(2), names);
      return under(t.hint(0).empty() ? "i" : t.hint(0), t.kid(0),
                   [&](const std::string& n, const Term& b) {
                     return mkS(SKind::CoeS, none, {n}, {surfaceOfCore(b, names), base, target});
                   });
    }
    case TermTag::Path: {
      SPtr l = surfaceOfCore(t.kid(1), names);
      SPtr r = surfaceOfCore(t.kid(2), names);
      if (!freeVarOccurs(t.kid(0), 0)) return mkS(SKind::EqS, none, {}, {l, r});
      return under(t.hint(0).empty() ? "i" : t.hint(0), t.kid(0),
                   [&](const std::string& n, const Term& b) {
                     return mkS(SKind::PathTS, none, {n}, {surfaceOfCore(b, names), l, r});
                   });
    }
    case TermTag::PathLam:
      return under(t.hint(0).empty() ? "i" : t.hint(0), t.kid(0),
                   [&](const std::string& n, const Term& b) {
                     return mkS(SKind::PathAbsS, none, {n}, {surfaceOfCore(b, names)});
                   });
    case TermTag::At:
      // Endpoint annotations are core bookkeeping; the surface elides them.
      return mkS(SKind::AtS, none, {},
                 {surfaceOfCore(t.kid(0), names), surfaceOfCore(t.kid(1), names)});
    case TermTag::Iso: {
      SPtr a = surfaceOfCore(t.kid(0), names);
      SPtr b = surfaceOfCore(t.kid(1), names);
      SPtr arg = surfaceOfCore(t.kid(6), names);
      std::vector<std::string> binders;
      std::vector<SPtr> comps;
      static constexpr const char* defaults[4] = {"x", "y", "x", "y"};
      for (size_t i = 0; i < 4; ++i) {
        std::string hint = t.hint(i).empty() ? defaults[i] : t.hint(i);
        std::string n = detail::pickName(hint, names);
        names.push_back(n);
        comps.push_back(surfaceOfCore(t.kid(2 + i), names));
        names.pop_back();
        binders.push_back(n);
      }
      return mkS(SKind::IsoS, none, binders,
                 {a, b, comps[0], comps[1], comps[2], comps[3], arg});
    }
  }
  throw KernelBug("unhandled term tag in surfaceOfCore");
}

inline std::string showTerm(const Context& ctx, const Term& t) {
  std::vector<std::string> names;
  std::set<std::string> taken;
  for (size_t i = 0; i < ctx.names().size(); ++i) {
    std::string n = ctx.names()[i];
    if (n.empty() || n == "_") n = "v" + std::to_string(i);
    while (taken.count(n)) n += "'";
    taken.insert(n);
    names.push_back(n);
  }
  return printSurface(surfaceOfCore(t, names));
}

inline std::string showClosed(const Term& t) {
  std::vector<std::string> names;
  return printSurface(surfaceOfCore(t, names));
}

// Install the surface renderer for checker diagnostics.
inline const bool prettyRendererInstalled = [] {
  detail::termRenderer() = &showTerm;
  return true;
}();

}  // namespace hti
