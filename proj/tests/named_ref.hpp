#pragma once

// Test-only reference implementation of binding with named variables.
// Substitution renames on capture; free variables are collected into a set.
// Used as the independent oracle for shift/subst/freeVarOccurs on the de
// Bruijn core: convert, operate, compare.

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "hti/term.hpp"

namespace named {

struct NTerm;
using NPtr = std::shared_ptr<const NTerm>;

struct NTerm {
  hti::TermTag tag;
  uint32_t nat = 0;                 // Var: unused; Universe: level
  std::string name;                 // free/bound variable name (Var) only
  std::vector<std::string> binders; // one entry per binder child slot
  std::vector<NPtr> kids;
};

inline NPtr mk(hti::TermTag tag, uint32_t nat, std::string name,
               std::vector<std::string> binders, std::vector<NPtr> kids) {
  auto n = std::make_shared<NTerm>();
  n->tag = tag;
  n->nat = nat;
  n->name = std::move(name);
  n->binders = std::move(binders);
  n->kids = std::move(kids);
  return n;
}

// Converts a de Bruijn term to named form. `env` maps indices to names,
// innermost last.
inline NPtr fromCore(const hti::Term& t, std::vector<std::string>& env, int& counter) {
  using hti::TermTag;
  if (t.tag() == TermTag::Var) {
    uint32_t k = t.index();
    std::string n =
        k < env.size() ? env[env.size() - 1 - k] : "!free" + std::to_string(k - env.size());
    return mk(TermTag::Var, 0, n, {}, {});
  }
  auto binders = hti::childBinders(t.tag());
  std::vector<NPtr> kids;
  std::vector<std::string> names;
  size_t binderSlot = 0;
  for (size_t i = 0; i < t.arity(); ++i) {
    if (binders[i] == 1) {
      std::string fresh = "b" + std::to_string(counter++);
      names.push_back(fresh);
      (void)binderSlot;
      env.push_back(fresh);
      kids.push_back(fromCore(t.kid(i), env, counter));
      env.pop_back();
    } else {
      kids.push_back(fromCore(t.kid(i), env, counter));
    }
  }
  return mk(t.tag(), t.index(), "", std::move(names), std::move(kids));
}

inline std::set<std::string> freeVars(const NPtr& t) {
  if (t->tag == hti::TermTag::Var) return {t->name};
  std::set<std::string> out;
  auto binders = hti::childBinders(t->tag);
  size_t slot = 0;
  for (size_t i = 0; i < t->kids.size(); ++i) {
    std::set<std::string> inner = freeVars(t->kids[i]);
    if (binders[i] == 1) inner.erase(t->binders[slot++]);
    for (const auto& v : inner) out.insert(v);
  }
  return out;
}

// Capture-avoiding substitution with renaming.
inline NPtr substNamed(const NPtr& t, const std::string& x, const NPtr& s, int& counter) {
  if (t->tag == hti::TermTag::Var) return t->name == x ? s : t;
  std::set<std::string> fvS = freeVars(s);
  auto binders = hti::childBinders(t->tag);
  std::vector<NPtr> kids;
  std::vector<std::string> names;
  size_t slot = 0;
  for (size_t i = 0; i < t->kids.size(); ++i) {
    if (binders[i] == 1) {
      std::string b = t->binders[slot++];
      NPtr kid = t->kids[i];
      if (b == x) {  // shadowed: substitution stops
        names.push_back(b);
        kids.push_back(kid);
        continue;
      }
      if (fvS.count(b)) {  // rename to avoid capture
        std::string fresh = "r" + std::to_string(counter++);
        NPtr freshVar = mk(hti::TermTag::Var, 0, fresh, {}, {});
        kid = substNamed(kid, b, freshVar, counter);
        b = fresh;
      }
      names.push_back(b);
      kids.push_back(substNamed(kid, x, s, counter));
    } else {
      kids.push_back(substNamed(t->kids[i], x, s, counter));
    }
  }
  return mk(t->tag, t->nat, "", std::move(names), std::move(kids));
}

// Alpha-equivalence of named terms via paired binder maps.
inline bool alphaEqNamed(const NPtr& a, const NPtr& b, std::map<std::string, std::string>& ab,
                         std::map<std::string, std::string>& ba) {
  if (a->tag != b->tag || a->nat != b->nat) return false;
  if (a->tag == hti::TermTag::Var) {
    auto ita = ab.find(a->name);
    auto itb = ba.find(b->name);
    if (ita == ab.end() && itb == ba.end()) return a->name == b->name;
    return ita != ab.end() && itb != ba.end() && ita->second == b->name &&
           itb->second == a->name;
  }
  if (a->kids.size() != b->kids.size()) return false;
  auto binders = hti::childBinders(a->tag);
  size_t slot = 0;
  for (size_t i = 0; i < a->kids.size(); ++i) {
    if (binders[i] == 1) {
      std::string xa = a->binders[slot];
      std::string xb = b->binders[slot];
      ++slot;
      auto savedA = ab.find(xa) != ab.end() ? std::optional(ab[xa]) : std::nullopt;
      auto savedB = ba.find(xb) != ba.end() ? std::optional(ba[xb]) : std::nullopt;
      ab[xa] = xb;
      ba[xb] = xa;
      bool ok = alphaEqNamed(a->kids[i], b->kids[i], ab, ba);
      if (savedA) ab[xa] = *savedA; else ab.erase(xa);
      if (savedB) ba[xb] = *savedB; else ba.erase(xb);
      if (!ok) return false;
    } else {
      if (!alphaEqNamed(a->kids[i], b->kids[i], ab, ba)) return false;
    }
  }
  return true;
}

inline bool alphaEqNamed(const NPtr& a, const NPtr& b) {
  std::map<std::string, std::string> ab, ba;
  return alphaEqNamed(a, b, ab, ba);
}

// Conversion helpers pinning the ambient context names v0, v1, ... (v0 is
// the outermost entry, so de Bruijn index k maps to v{n-1-k}).
inline NPtr fromCoreAmbient(const hti::Term& t, size_t ambient, int& counter) {
  std::vector<std::string> env;
  for (size_t i = 0; i < ambient; ++i) env.push_back("v" + std::to_string(i));
  return fromCore(t, env, counter);
}

}  // namespace named
