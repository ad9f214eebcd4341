#pragma once

// Core term language: de Bruijn syntax tree, shifting, substitution and
// free-variable analysis. Everything here is immutable; terms share subtrees.

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hti {

// Internal invariant violation (ill-scoped input, broken kernel state).
// Never raised on user input that got past the checker.
struct KernelBug : std::logic_error {
  explicit KernelBug(const std::string& what) : std::logic_error("kernel bug: " + what) {}
};

enum class TermTag : uint8_t {
  Var,       // de Bruijn index
  Universe,  // level 0..2
  Pi, Lam, App,
  Sigma, Pair, Proj1, Proj2,
  UnitType, UnitVal,
  BoolType, True, False, BoolElim,
  Interval, Left, Right,
  Coe,      // family (binds 1), base, target
  Path,     // family (binds 1), left end, right end
  PathLam,  // body (binds 1)
  At,       // path, interval arg, left annotation, right annotation
  Iso,      // tyA, tyB, fwd (binds 1), bwd (binds 1), sectL (binds 1), sectR (binds 1), arg
};

// For each child slot: how many binders the child sits under.
inline std::span<const uint8_t> childBinders(TermTag tag) {
  static constexpr uint8_t none[] = {0};
  static constexpr uint8_t pi[] = {0, 1};
  static constexpr uint8_t lam[] = {1};
  static constexpr uint8_t app[] = {0, 0};
  static constexpr uint8_t sigma[] = {0, 1};
  static constexpr uint8_t pair[] = {0, 0};
  static constexpr uint8_t proj[] = {0};
  static constexpr uint8_t boolElim[] = {1, 0, 0, 0};
  static constexpr uint8_t coe[] = {1, 0, 0};
  static constexpr uint8_t path[] = {1, 0, 0};
  static constexpr uint8_t pathLam[] = {1};
  static constexpr uint8_t at[] = {0, 0, 0, 0};
  static constexpr uint8_t iso[] = {0, 0, 1, 1, 1, 1, 0};
  switch (tag) {
    case TermTag::Pi: return {pi, 2};
    case TermTag::Lam: return {lam, 1};
    case TermTag::App: return {app, 2};
    case TermTag::Sigma: return {sigma, 2};
    case TermTag::Pair: return {pair, 2};
    case TermTag::Proj1:
    case TermTag::Proj2: return {proj, 1};
    case TermTag::BoolElim: return {boolElim, 4};
    case TermTag::Coe: return {coe, 3};
    case TermTag::Path: return {path, 3};
    case TermTag::PathLam: return {pathLam, 1};
    case TermTag::At: return {at, 4};
    case TermTag::Iso: return {iso, 7};
    default: return {none, 0};
  }
}

class Term {
 public:
  Term() = default;

  bool empty() const { return p_ == nullptr; }

  TermTag tag() const { return node().tag; }
  uint32_t index() const { return node().nat; }  // Var
  uint32_t level() const { return node().nat; }  // Universe
  size_t arity() const { return node().kids.size(); }
  const Term& kid(size_t i) const { return node().kids.at(i); }
  const std::vector<Term>& kids() const { return node().kids; }

  // Display hints for binder slots; never affect equality.
  const std::vector<std::string>& hints() const { return node().hints; }
  std::string hint(size_t i) const {
    const auto& hs = node().hints;
    return i < hs.size() ? hs[i] : std::string{};
  }

  static Term make(TermTag tag, uint32_t nat, std::vector<Term> kids,
                   std::vector<std::string> hints = {}) {
    auto n = std::make_shared<Node>();
    n->tag = tag;
    n->nat = nat;
    n->kids = std::move(kids);
    n->hints = std::move(hints);
    return Term(std::move(n));
  }

 private:
  struct Node {
    TermTag tag = TermTag::Var;
    uint32_t nat = 0;
    std::vector<Term> kids;
    std::vector<std::string> hints;
  };

  explicit Term(std::shared_ptr<const Node> p) : p_(std::move(p)) {}

  const Node& node() const {
    if (!p_) throw KernelBug("null term");
    return *p_;
  }

  std::shared_ptr<const Node> p_;
};

// -- constructors -----------------------------------------------------------

inline Term var(uint32_t k) { return Term::make(TermTag::Var, k, {}); }
inline Term universe(uint32_t l) {
  if (l > 2) throw KernelBug("universe level out of range");
  return Term::make(TermTag::Universe, l, {});
}
inline Term pi(Term dom, Term cod, std::string hint = {}) {
  return Term::make(TermTag::Pi, 0, {std::move(dom), std::move(cod)}, {std::move(hint)});
}
inline Term lam(Term body, std::string hint = {}) {
  return Term::make(TermTag::Lam, 0, {std::move(body)}, {std::move(hint)});
}
inline Term app(Term fn, Term arg) {
  return Term::make(TermTag::App, 0, {std::move(fn), std::move(arg)});
}
inline Term sigma(Term fst, Term snd, std::string hint = {}) {
  return Term::make(TermTag::Sigma, 0, {std::move(fst), std::move(snd)}, {std::move(hint)});
}
inline Term pairTerm(Term fst, Term snd) {
  return Term::make(TermTag::Pair, 0, {std::move(fst), std::move(snd)});
}
inline Term proj1(Term p) { return Term::make(TermTag::Proj1, 0, {std::move(p)}); }
inline Term proj2(Term p) { return Term::make(TermTag::Proj2, 0, {std::move(p)}); }
inline Term unitType() { return Term::make(TermTag::UnitType, 0, {}); }
inline Term unitVal() { return Term::make(TermTag::UnitVal, 0, {}); }
inline Term boolType() { return Term::make(TermTag::BoolType, 0, {}); }
inline Term trueTerm() { return Term::make(TermTag::True, 0, {}); }
inline Term falseTerm() { return Term::make(TermTag::False, 0, {}); }
inline Term boolElim(Term motive, Term onTrue, Term onFalse, Term scrut, std::string hint = {}) {
  return Term::make(TermTag::BoolElim, 0,
                    {std::move(motive), std::move(onTrue), std::move(onFalse), std::move(scrut)},
                    {std::move(hint)});
}
inline Term interval() { return Term::make(TermTag::Interval, 0, {}); }
inline Term leftTerm() { return Term::make(TermTag::Left, 0, {}); }
inline Term rightTerm() { return Term::make(TermTag::Right, 0, {}); }
inline Term coe(Term family, Term base, Term target, std::string hint = {}) {
  return Term::make(TermTag::Coe, 0, {std::move(family), std::move(base), std::move(target)},
                    {std::move(hint)});
}
inline Term path(Term family, Term endLeft, Term endRight, std::string hint = {}) {
  return Term::make(TermTag::Path, 0, {std::move(family), std::move(endLeft), std::move(endRight)},
                    {std::move(hint)});
}
inline Term pathLam(Term body, std::string hint = {}) {
  return Term::make(TermTag::PathLam, 0, {std::move(body)}, {std::move(hint)});
}
inline Term at(Term p, Term arg, Term annotLeft, Term annotRight) {
  return Term::make(TermTag::At, 0,
                    {std::move(p), std::move(arg), std::move(annotLeft), std::move(annotRight)});
}
inline Term iso(Term tyA, Term tyB, Term fwd, Term bwd, Term sectLeft, Term sectRight, Term arg,
                std::vector<std::string> hints = {}) {
  return Term::make(TermTag::Iso, 0,
                    {std::move(tyA), std::move(tyB), std::move(fwd), std::move(bwd),
                     std::move(sectLeft), std::move(sectRight), std::move(arg)},
                    std::move(hints));
}

// -- binding operations -----------------------------------------------------

// Standard de Bruijn shift: indices >= cutoff adjusted by amount.
inline Term shift(const Term& t, uint32_t cutoff, int64_t amount) {
  if (amount == 0) return t;
  switch (t.tag()) {
    case TermTag::Var: {
      uint32_t k = t.index();
      if (k < cutoff) return t;
      int64_t nk = static_cast<int64_t>(k) + amount;
      if (nk < 0) throw KernelBug("shift underflow");
      return var(static_cast<uint32_t>(nk));
    }
    default: {
      if (t.arity() == 0) return t;
      auto binders = childBinders(t.tag());
      std::vector<Term> kids;
      kids.reserve(t.arity());
      for (size_t i = 0; i < t.arity(); ++i)
        kids.push_back(shift(t.kid(i), cutoff + binders[i], amount));
      return Term::make(t.tag(), t.index(), std::move(kids), t.hints());
    }
  }
}

// Capture-avoiding substitution of s for index j.
// The binder being instantiated disappears: indices above j shift down.
inline Term subst(const Term& t, uint32_t j, const Term& s) {
  switch (t.tag()) {
    case TermTag::Var: {
      uint32_t k = t.index();
      if (k == j) return shift(s, 0, static_cast<int64_t>(j));
      if (k > j) return var(k - 1);
      return t;
    }
    default: {
      if (t.arity() == 0) return t;
      auto binders = childBinders(t.tag());
      std::vector<Term> kids;
      kids.reserve(t.arity());
      for (size_t i = 0; i < t.arity(); ++i)
        kids.push_back(subst(t.kid(i), j + binders[i], s));
      return Term::make(t.tag(), t.index(), std::move(kids), t.hints());
    }
  }
}

// Instantiate the bound variable of a one-binder body.
inline Term instantiate(const Term& body, const Term& s) { return subst(body, 0, s); }

inline bool freeVarOccurs(const Term& t, uint32_t j) {
  switch (t.tag()) {
    case TermTag::Var:
      return t.index() == j;
    default: {
      auto binders = childBinders(t.tag());
      for (size_t i = 0; i < t.arity(); ++i)
        if (freeVarOccurs(t.kid(i), j + binders[i])) return true;
      return false;
    }
  }
}

// Structural equality; display hints are ignored. With de Bruijn indices this
// is exactly alpha-equivalence.
inline bool alphaEq(const Term& a, const Term& b) {
  if (a.tag() != b.tag()) return false;
  if (a.tag() == TermTag::Var || a.tag() == TermTag::Universe)
    return a.index() == b.index();
  if (a.arity() != b.arity()) return false;
  for (size_t i = 0; i < a.arity(); ++i)
    if (!alphaEq(a.kid(i), b.kid(i))) return false;
  return true;
}

inline bool operator==(const Term& a, const Term& b) { return alphaEq(a, b); }
inline bool operator!=(const Term& a, const Term& b) { return !alphaEq(a, b); }

// Raw s-expression dump, for test failure messages and internal errors.
inline std::string rawString(const Term& t) {
  static constexpr const char* names[] = {
      "Var", "Universe", "Pi", "Lam", "App", "Sigma", "Pair", "Proj1", "Proj2",
      "UnitType", "unit", "Bool", "true", "false", "elimBool", "I", "left", "right",
      "coe", "Path", "path", "At", "iso"};
  std::string out = names[static_cast<size_t>(t.tag())];
  if (t.tag() == TermTag::Var || t.tag() == TermTag::Universe)
    return out + " " + std::to_string(t.index());
  if (t.arity() == 0) return out;
  std::string s = "(" + out;
  for (size_t i = 0; i < t.arity(); ++i) s += " " + rawString(t.kid(i));
  return s + ")";
}

// Typing context: a telescope of types plus display names. Entry k is
// well-scoped in the first k entries; the back entry is Var 0.
class Context {
 public:
  Context() = default;

  size_t size() const { return types_.size(); }

  // Type of Var(k), shifted into the full context.
  Term lookup(uint32_t k) const {
    if (k >= types_.size()) throw KernelBug("context lookup out of range");
    return shift(types_[types_.size() - 1 - k], 0, static_cast<int64_t>(k) + 1);
  }

  const std::string& name(uint32_t k) const {
    return names_[names_.size() - 1 - k];
  }

  const std::vector<Term>& telescope() const { return types_; }
  const std::vector<std::string>& names() const { return names_; }

  Context extend(Term type, std::string name = {}) const {
    Context c = *this;
    c.types_.push_back(std::move(type));
    c.names_.push_back(std::move(name));
    return c;
  }

 private:
  std::vector<Term> types_;
  std::vector<std::string> names_;
};

}  // namespace hti
