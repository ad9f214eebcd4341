#pragma once

// Shared test helpers.

#include <optional>

#include "hti/term.hpp"
#include "hti/typecheck.hpp"

namespace testutil {

// Strips elimination frames off a beta-normal term and returns the head.
inline hti::Term neutralHead(hti::Term t) {
  using hti::TermTag;
  for (;;) {
    switch (t.tag()) {
      case TermTag::App:
      case TermTag::At:
      case TermTag::Proj1:
      case TermTag::Proj2:
        t = t.kid(0);
        break;
      case TermTag::BoolElim:
        t = t.kid(3);
        break;
      default:
        return t;
    }
  }
}

inline bool stuckOnCoeOrVar(const hti::Term& nf) {
  hti::Term head = neutralHead(nf);
  return head.tag() == hti::TermTag::Coe || head.tag() == hti::TermTag::Var;
}

inline std::optional<hti::Term> tryInfer(const hti::Context& ctx, const hti::Term& t) {
  try {
    return hti::infer(ctx, t);
  } catch (const hti::TypeError&) {
    return std::nullopt;
  }
}

}  // namespace testutil
