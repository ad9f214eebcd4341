#pragma once

// Independent finite-set semantics on the iso-free fragment: the degenerate
// model where the interval is a one-point type. Both endpoints denote the
// same point, so the model validates the K axiom; it is a soundness check
// for definitional equality, never a completeness one.
//
// This module deliberately depends only on the core syntax — not on the
// evaluator, conversion or checker it is used to audit.
//
//   types  |->  finite sets (lists of canonical denotations)
//   coe(x. A, a, i)   |->  denotation of a
//   p @ i             |->  denotation of the left endpoint annotation
//   Path(x. A, a, a') |->  one point if a and a' denote equally, else empty
//
// Functions denote as closures and are canonicalized into finite tables
// against their (syntactic) type before comparison. Pairs are tables on a
// two-point domain. Universes enumerate codes over Unit/Bool/I up to a
// bounded former depth; a work budget aborts oversized enumerations.

#include <cstdint>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hti/term.hpp"

namespace hti {

struct OracleIso {  // an iso node is outside the fragment
  static constexpr const char* code = "E-ORACLE-ISO";
};
struct OracleBound {  // enumeration exceeded the configured budget
  static constexpr const char* code = "E-ORACLE-BOUND";
  std::string what;
};

enum class DenKind : uint8_t { Star, Elem, Fun, Set };

class Den {
 public:
  Den() = default;

  DenKind kind() const { return node().kind; }
  uint32_t elem() const { return node().elem; }
  const std::vector<Den>& elems() const { return node().elems; }
  const std::vector<std::pair<Den, Den>>& table() const { return node().table; }
  bool closureBacked() const { return node().closure; }
  const Term& body() const { return node().body; }
  const std::vector<Den>& env() const { return node().env; }

  static Den star() {
    static Den d = make(DenKind::Star);
    return d;
  }
  static Den elemAt(uint32_t i) {
    Den d = make(DenKind::Elem);
    d.mut().elem = i;
    return d;
  }
  static Den set(std::vector<Den> elems) {
    Den d = make(DenKind::Set);
    d.mut().elems = std::move(elems);
    return d;
  }
  static Den table(std::vector<std::pair<Den, Den>> entries) {
    Den d = make(DenKind::Fun);
    d.mut().table = std::move(entries);
    return d;
  }
  static Den closure(Term body, std::vector<Den> env) {
    Den d = make(DenKind::Fun);
    d.mut().closure = true;
    d.mut().body = std::move(body);
    d.mut().env = std::move(env);
    return d;
  }

 private:
  struct Node {
    DenKind kind = DenKind::Star;
    uint32_t elem = 0;
    std::vector<Den> elems;
    std::vector<std::pair<Den, Den>> table;
    bool closure = false;
    Term body;
    std::vector<Den> env;
  };

  static Den make(DenKind k) {
    Den d;
    d.p_ = std::make_shared<Node>();
    d.p_->kind = k;
    return d;
  }
  Node& mut() { return *p_; }
  const Node& node() const {
    if (!p_) throw KernelBug("null denotation");
    return *p_;
  }

  std::shared_ptr<Node> p_;
};

// Structural equality of canonical denotations. Closure-backed functions are
// not comparable; canonicalize through reify first.
inline bool denEq(const Den& a, const Den& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case DenKind::Star: return true;
    case DenKind::Elem: return a.elem() == b.elem();
    case DenKind::Set: {
      if (a.elems().size() != b.elems().size()) return false;
      for (size_t i = 0; i < a.elems().size(); ++i)
        if (!denEq(a.elems()[i], b.elems()[i])) return false;
      return true;
    }
    case DenKind::Fun: {
      if (a.closureBacked() || b.closureBacked())
        throw OracleBound{"function denotation compared without a type"};
      if (a.table().size() != b.table().size()) return false;
      for (size_t i = 0; i < a.table().size(); ++i)
        if (!denEq(a.table()[i].first, b.table()[i].first) ||
            !denEq(a.table()[i].second, b.table()[i].second))
          return false;
      return true;
    }
  }
  return false;
}

struct OracleLimits {
  uint32_t universeDepth = 2;   // former nesting in universe code enumeration
  uint64_t workBudget = 200000; // total construction steps per operation
};

class FiniteModel {
 public:
  explicit FiniteModel(OracleLimits limits = {}) : limits_(limits) {}

  void resetBudget() { work_ = 0; }

  Den denote(const std::vector<Den>& env, const Term& t) {
    spend(1);
    switch (t.tag()) {
      case TermTag::Var: {
        if (t.index() >= env.size()) throw KernelBug("oracle: unbound variable");
        return env[env.size() - 1 - t.index()];
      }
      case TermTag::UnitVal: return Den::star();
      case TermTag::Left:
      case TermTag::Right: return Den::star();
      case TermTag::True: return Den::elemAt(1);
      case TermTag::False: return Den::elemAt(0);
      case TermTag::Lam: return Den::closure(t.kid(0), env);
      case TermTag::App:
        return applyDen(denote(env, t.kid(0)), denote(env, t.kid(1)));
      case TermTag::Pair:
        return Den::table({{Den::elemAt(0), denote(env, t.kid(0))},
                           {Den::elemAt(1), denote(env, t.kid(1))}});
      case TermTag::Proj1: return applyDen(denote(env, t.kid(0)), Den::elemAt(0));
      case TermTag::Proj2: return applyDen(denote(env, t.kid(0)), Den::elemAt(1));
      case TermTag::BoolElim: {
        Den scrut = denote(env, t.kid(3));
        if (scrut.kind() != DenKind::Elem) throw KernelBug("oracle: elimBool scrutinee");
        return scrut.elem() == 1 ? denote(env, t.kid(1)) : denote(env, t.kid(2));
      }
      case TermTag::Coe: return denote(env, t.kid(1));
      case TermTag::PathLam: return Den::star();
      case TermTag::At: return denote(env, t.kid(2));  // left annotation
      case TermTag::Iso: throw OracleIso{};
      // Types as terms denote as their sets.
      case TermTag::UnitType:
      case TermTag::BoolType:
      case TermTag::Interval:
      case TermTag::Universe:
      case TermTag::Pi:
      case TermTag::Sigma:
      case TermTag::Path:
        return denoteType(env, t);
    }
    throw KernelBug("oracle: unhandled term tag in denote");
  }

  Den denoteType(const std::vector<Den>& env, const Term& T) {
    spend(1);
    switch (T.tag()) {
      case TermTag::UnitType:
      case TermTag::Interval:
        return Den::set({Den::star()});
      case TermTag::BoolType:
        return Den::set({Den::elemAt(0), Den::elemAt(1)});
      case TermTag::Path: {
        Den l = reify(env, instantiate(T.kid(0), leftTerm()), denote(env, T.kid(1)));
        Den r = reify(env, instantiate(T.kid(0), rightTerm()), denote(env, T.kid(2)));
        if (denEq(l, r)) return Den::set({Den::star()});
        return Den::set({});
      }
      case TermTag::Pi: {
        Den dom = denoteType(env, T.kid(0));
        std::vector<std::vector<Den>> outs;
        uint64_t total = 1;
        for (const Den& a : dom.elems()) {
          std::vector<Den> envB = env;
          envB.push_back(a);
          Den cod = denoteType(envB, T.kid(1));
          total = checkedMul(total, cod.elems().size());
          outs.push_back(cod.elems());
        }
        spend(total);
        std::vector<Den> space;
        std::vector<std::pair<Den, Den>> current;
        buildTables(dom.elems(), outs, 0, current, space);
        return Den::set(std::move(space));
      }
      case TermTag::Sigma: {
        Den dom = denoteType(env, T.kid(0));
        std::vector<Den> space;
        for (const Den& a : dom.elems()) {
          std::vector<Den> envB = env;
          envB.push_back(a);
          Den cod = denoteType(envB, T.kid(1));
          for (const Den& b : cod.elems()) {
            spend(1);
            space.push_back(Den::table({{Den::elemAt(0), a}, {Den::elemAt(1), b}}));
          }
        }
        return Den::set(std::move(space));
      }
      case TermTag::Universe:
        return universeSet(T.level());
      case TermTag::Iso:
        throw OracleIso{};
      default: {
        Den d = denote(env, T);
        if (d.kind() != DenKind::Set)
          throw KernelBug("oracle: denotation of a type is not a set");
        return d;
      }
    }
  }

  // Canonicalize a denotation against its syntactic type: closures become
  // finite tables, keyed by the canonical domain enumeration.
  Den reify(const std::vector<Den>& env, const Term& T, const Den& d) {
    spend(1);
    switch (T.tag()) {
      case TermTag::UnitType:
      case TermTag::Interval:
      case TermTag::Path:
      case TermTag::BoolType:
        return d;  // already scalar
      case TermTag::Pi: {
        Den dom = denoteType(env, T.kid(0));
        std::vector<std::pair<Den, Den>> entries;
        for (const Den& a : dom.elems()) {
          std::vector<Den> envB = env;
          envB.push_back(a);
          entries.emplace_back(a, reify(envB, T.kid(1), applyDen(d, a)));
        }
        return Den::table(std::move(entries));
      }
      case TermTag::Sigma: {
        Den fst = reify(env, T.kid(0), applyDen(d, Den::elemAt(0)));
        std::vector<Den> envB = env;
        envB.push_back(fst);
        Den snd = reify(envB, T.kid(1), applyDen(d, Den::elemAt(1)));
        return Den::table({{Den::elemAt(0), fst}, {Den::elemAt(1), snd}});
      }
      case TermTag::Universe:
        return d;  // sets are canonical by construction
      case TermTag::Iso:
        throw OracleIso{};
      default: {
        // Opaque type expression: scalars pass through, canonical tables
        // pass through, unreified closures cannot be canonicalized.
        if (d.kind() == DenKind::Fun && d.closureBacked())
          throw OracleBound{"cannot canonicalize a function at an opaque type"};
        return d;
      }
    }
  }

  Den applyDen(const Den& fn, const Den& arg) {
    spend(1);
    if (fn.kind() != DenKind::Fun) throw KernelBug("oracle: application of a non-function");
    if (fn.closureBacked()) {
      std::vector<Den> env = fn.env();
      env.push_back(arg);
      return denote(env, fn.body());
    }
    for (const auto& [k, v] : fn.table())
      if (denEq(k, arg)) return v;
    throw OracleBound{"table lookup failed (argument not in canonical form)"};
  }

 private:
  void spend(uint64_t n) {
    work_ += n;
    if (work_ > limits_.workBudget) throw OracleBound{"work budget exceeded"};
  }

  uint64_t checkedMul(uint64_t a, uint64_t b) {
    if (b != 0 && a > limits_.workBudget / b)
      throw OracleBound{"function space too large"};
    return a * b;
  }

  void buildTables(const std::vector<Den>& inputs, const std::vector<std::vector<Den>>& outs,
                   size_t i, std::vector<std::pair<Den, Den>>& current,
                   std::vector<Den>& space) {
    if (i == inputs.size()) {
      space.push_back(Den::table(current));
      return;
    }
    for (const Den& out : outs[i]) {
      current.emplace_back(inputs[i], out);
      buildTables(inputs, outs, i + 1, current, space);
      current.pop_back();
    }
  }

  // All type codes reachable with the bounded formers; codes are the sets
  // themselves, deduplicated. Level 1 and 2 add the lower universe as one
  // more element, with no formers over it.
  Den universeSet(uint32_t level) {
    std::vector<Den> codes;
    auto add = [&codes, this](const Den& s) {
      for (const auto& c : codes)
        if (denEq(c, s)) return;
      spend(1);
      codes.push_back(s);
    };
    add(Den::set({Den::star()}));                       // Unit and I, conflated
    add(Den::set({Den::elemAt(0), Den::elemAt(1)}));    // Bool
    for (uint32_t d = 0; d < limits_.universeDepth; ++d) {
      std::vector<Den> prev = codes;
      add(Den::set({}));  // empty path spaces
      for (const Den& a : prev) {
        for (const Den& b : prev) {
          // Non-dependent function space a -> b.
          std::vector<std::vector<Den>> outs(a.elems().size(), b.elems());
          uint64_t total = 1;
          for (size_t i = 0; i < a.elems().size(); ++i)
            total = checkedMul(total, b.elems().size());
          spend(total);
          std::vector<Den> space;
          std::vector<std::pair<Den, Den>> current;
          buildTables(a.elems(), outs, 0, current, space);
          add(Den::set(std::move(space)));
          // Pair space a * b.
          std::vector<Den> pairs;
          for (const Den& x : a.elems())
            for (const Den& y : b.elems()) {
              spend(1);
              pairs.push_back(Den::table({{Den::elemAt(0), x}, {Den::elemAt(1), y}}));
            }
          add(Den::set(std::move(pairs)));
        }
      }
    }
    if (level >= 1) {
      Den lower = universeSet(level - 1);
      bool dup = false;
      for (const auto& c : codes) dup = dup || denEq(c, lower);
      if (!dup) codes.push_back(lower);
    }
    return Den::set(std::move(codes));
  }

  OracleLimits limits_;
  uint64_t work_ = 0;
};

// -- the soundness harness ------------------------------------------------------

struct OraclePair {
  Term lhs;
  Term rhs;
  Term type;  // closed type shared by both sides
};

enum class PairOutcome : uint8_t { Ok, Disagree, SkipIso, SkipBound };

struct OracleReport {
  std::vector<PairOutcome> outcomes;

  size_t okCount = 0, disagreeCount = 0, skipCount = 0;

  bool sound() const { return disagreeCount == 0; }

  std::string text() const {
    std::ostringstream os;
    for (size_t i = 0; i < outcomes.size(); ++i) {
      switch (outcomes[i]) {
        case PairOutcome::Ok: os << "OK\n"; break;
        case PairOutcome::Disagree: os << "DISAGREE " << i << "\n"; break;
        case PairOutcome::SkipIso: os << "SKIP-ISO " << i << "\n"; break;
        case PairOutcome::SkipBound: os << "SKIP-BOUND " << i << "\n"; break;
      }
    }
    os << "oracle: " << okCount << " ok, " << disagreeCount << " disagree, " << skipCount
       << " skipped\n";
    return os.str();
  }
};

inline PairOutcome oracleCheckPair(const OraclePair& p, const OracleLimits& limits = {}) {
  FiniteModel model(limits);
  try {
    Den lhs = model.reify({}, p.type, model.denote({}, p.lhs));
    Den rhs = model.reify({}, p.type, model.denote({}, p.rhs));
    return denEq(lhs, rhs) ? PairOutcome::Ok : PairOutcome::Disagree;
  } catch (const OracleIso&) {
    return PairOutcome::SkipIso;
  } catch (const OracleBound&) {
    return PairOutcome::SkipBound;
  }
}

inline OracleReport oracleCheck(const std::vector<OraclePair>& pairs,
                                const OracleLimits& limits = {}) {
  OracleReport report;
  for (const auto& p : pairs) {
    PairOutcome o = oracleCheckPair(p, limits);
    report.outcomes.push_back(o);
    switch (o) {
      case PairOutcome::Ok: ++report.okCount; break;
      case PairOutcome::Disagree: ++report.disagreeCount; break;
      default: ++report.skipCount; break;
    }
  }
  return report;
}

}  // namespace hti
