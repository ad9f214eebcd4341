#pragma once

// Semantic domain for normalization by evaluation: canonical forms, closures
// and neutral spines. Neutral variables carry de Bruijn levels (index 0 is
// the outermost fresh variable), terms carry indices.

#include <cstdint>
#include <memory>
#include <vector>

#include "hti/term.hpp"

namespace hti {

enum class ValTag : uint8_t {
  Universe,
  Pi, Lam,
  Sigma, Pair,
  UnitType, UnitVal,
  BoolType, True, False,
  Interval, Left, Right,
  Path, PathLam,
  Iso,      // stuck type: interval argument is neutral
  Neutral,  // variable or stuck coe head, with a spine of eliminations
};

class Value;

// A term with one free binder, paired with the environment it was built in.
struct Closure {
  std::vector<Value> env;
  Term body;
  std::string hint;
};

enum class ElimKind : uint8_t { App, Proj1, Proj2, BoolElim, At };

// One elimination frame on a neutral spine.
//   App:      vals = {arg}
//   BoolElim: motive set, vals = {onTrue, onFalse}
//   At:       vals = {arg, annotLeft, annotRight}
struct Elim {
  ElimKind kind = ElimKind::App;
  std::vector<Value> vals;
  std::shared_ptr<const Closure> motive;
};

// Head of a stuck coe: none of the three computation rules fired.
struct CoeHead {
  Closure family;
  std::vector<Value> baseAndTarget;  // {base, target}
};

class Value {
 public:
  Value() = default;

  bool empty() const { return p_ == nullptr; }
  ValTag tag() const { return node().tag; }

  uint32_t level() const { return node().level; }  // Universe

  const Value& val(size_t i) const { return node().vals.at(i); }
  const std::vector<Value>& vals() const { return node().vals; }
  const Closure& clo(size_t i) const { return node().clos.at(i); }
  const std::vector<Closure>& clos() const { return node().clos; }

  // Neutral accessors.
  bool isVarHead() const { return node().coe == nullptr; }
  uint64_t varLevel() const { return node().var; }
  const CoeHead& coeHead() const {
    if (!node().coe) throw KernelBug("neutral has no coe head");
    return *node().coe;
  }
  const std::vector<Elim>& spine() const { return node().spine; }

  // Named accessors for readability at call sites.
  const Value& piDom() const { return val(0); }
  const Closure& piCod() const { return clo(0); }
  const Closure& lamBody() const { return clo(0); }
  const Value& pairFst() const { return val(0); }
  const Value& pairSnd() const { return val(1); }
  const Closure& pathFam() const { return clo(0); }
  const Value& pathLeft() const { return val(0); }
  const Value& pathRight() const { return val(1); }
  const Closure& pathLamBody() const { return clo(0); }
  const Value& isoA() const { return val(0); }
  const Value& isoB() const { return val(1); }
  const Value& isoArg() const { return val(2); }
  const Closure& isoFwd() const { return clo(0); }
  const Closure& isoBwd() const { return clo(1); }
  const Closure& isoSectL() const { return clo(2); }
  const Closure& isoSectR() const { return clo(3); }

  static Value make(ValTag tag, uint32_t level, std::vector<Value> vals,
                    std::vector<Closure> clos) {
    auto n = std::make_shared<Node>();
    n->tag = tag;
    n->level = level;
    n->vals = std::move(vals);
    n->clos = std::move(clos);
    return Value(std::move(n));
  }

  static Value makeVar(uint64_t level) {
    auto n = std::make_shared<Node>();
    n->tag = ValTag::Neutral;
    n->var = level;
    return Value(std::move(n));
  }

  static Value makeCoeNeutral(Closure family, Value base, Value target) {
    auto n = std::make_shared<Node>();
    n->tag = ValTag::Neutral;
    n->coe = std::make_shared<CoeHead>();
    n->coe->family = std::move(family);
    n->coe->baseAndTarget = {std::move(base), std::move(target)};
    return Value(std::move(n));
  }

  // Neutral extended by one more elimination.
  Value extend(Elim e) const {
    if (tag() != ValTag::Neutral) throw KernelBug("extend on non-neutral");
    auto n = std::make_shared<Node>(node());
    n->spine.push_back(std::move(e));
    return Value(std::move(n));
  }

 private:
  struct Node {
    ValTag tag = ValTag::Neutral;
    uint32_t level = 0;
    uint64_t var = 0;
    std::shared_ptr<CoeHead> coe;
    std::vector<Value> vals;
    std::vector<Closure> clos;
    std::vector<Elim> spine;
  };

  explicit Value(std::shared_ptr<const Node> p) : p_(std::move(p)) {}

  const Node& node() const {
    if (!p_) throw KernelBug("null value");
    return *p_;
  }

  std::shared_ptr<const Node> p_;
};

inline Value vUniverse(uint32_t l) { return Value::make(ValTag::Universe, l, {}, {}); }
inline Value vPi(Value dom, Closure cod) {
  return Value::make(ValTag::Pi, 0, {std::move(dom)}, {std::move(cod)});
}
inline Value vLam(Closure body) { return Value::make(ValTag::Lam, 0, {}, {std::move(body)}); }
inline Value vSigma(Value dom, Closure cod) {
  return Value::make(ValTag::Sigma, 0, {std::move(dom)}, {std::move(cod)});
}
inline Value vPair(Value fst, Value snd) {
  return Value::make(ValTag::Pair, 0, {std::move(fst), std::move(snd)}, {});
}
inline Value vUnitType() { return Value::make(ValTag::UnitType, 0, {}, {}); }
inline Value vUnitVal() { return Value::make(ValTag::UnitVal, 0, {}, {}); }
inline Value vBoolType() { return Value::make(ValTag::BoolType, 0, {}, {}); }
inline Value vTrue() { return Value::make(ValTag::True, 0, {}, {}); }
inline Value vFalse() { return Value::make(ValTag::False, 0, {}, {}); }
inline Value vInterval() { return Value::make(ValTag::Interval, 0, {}, {}); }
inline Value vLeft() { return Value::make(ValTag::Left, 0, {}, {}); }
inline Value vRight() { return Value::make(ValTag::Right, 0, {}, {}); }
inline Value vPath(Closure fam, Value l, Value r) {
  return Value::make(ValTag::Path, 0, {std::move(l), std::move(r)}, {std::move(fam)});
}
inline Value vPathLam(Closure body) {
  return Value::make(ValTag::PathLam, 0, {}, {std::move(body)});
}
inline Value vIso(Value a, Value b, Closure fwd, Closure bwd, Closure sl, Closure sr, Value arg) {
  return Value::make(ValTag::Iso, 0, {std::move(a), std::move(b), std::move(arg)},
                     {std::move(fwd), std::move(bwd), std::move(sl), std::move(sr)});
}

// True for the only values that may appear in interval position.
inline bool isIntervalValue(const Value& v) {
  return v.tag() == ValTag::Left || v.tag() == ValTag::Right || v.tag() == ValTag::Neutral;
}

}  // namespace hti
