#pragma once

// Surface syntax for .hti files: named variables plus the sugar forms
// (identity type `a = a'`, `refl`, unannotated `@`, arrow, product).
// Hand-rolled lexer and recursive-descent parser with source spans.
//
// Precedence, loosest to tightest:
//   \x => t     (body extends as far as possible)
//   ->          (right associative)
//   *           (right associative)
//   =           (non associative)
//   @           (left associative, right operand is an atom)
//   application (juxtaposition, left associative)

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hti/diagnostics.hpp"

namespace hti {

enum class SKind : uint8_t {
  Var, Type,
  UnitT, UnitV, BoolT, TrueS, FalseS, IntervalS, LeftS, RightS, Refl,
  Lam, PiB, ArrowS, SigmaB, ProdS, AppS, PairS, Proj1S, Proj2S,
  ElimBoolS, CoeS, PathTS, PathAbsS, AtS, EqS, IsoS,
};

struct SurfaceTerm;
using SPtr = std::shared_ptr<const SurfaceTerm>;

// kids/names layout:
//   Var: names={ident}            Type: nat=level
//   Lam: names={x}, kids={body}   PiB/SigmaB: names={x}, kids={dom, cod}
//   ArrowS/ProdS/AppS/PairS/EqS/AtS: kids={a, b}
//   Proj1S/Proj2S: kids={p}
//   ElimBoolS: names={x}, kids={motive, onTrue, onFalse, scrut}
//   CoeS: names={x}, kids={family, base, target}
//   PathTS: names={x}, kids={family, l, r}
//   PathAbsS: names={x}, kids={body}
//   IsoS: names={x,y,x',y'}, kids={A, B, fwd, bwd, sectL, sectR, arg}
struct SurfaceTerm {
  SKind kind;
  Span span;
  uint32_t nat = 0;
  std::vector<std::string> names;
  std::vector<SPtr> kids;
};

inline SPtr mkS(SKind kind, Span span, std::vector<std::string> names = {},
                std::vector<SPtr> kids = {}, uint32_t nat = 0) {
  auto s = std::make_shared<SurfaceTerm>();
  s->kind = kind;
  s->span = span;
  s->nat = nat;
  s->names = std::move(names);
  s->kids = std::move(kids);
  return s;
}

struct Declaration {
  std::string name;
  SPtr statedType;
  SPtr body;
  Span span;
};

// Structural comparison ignoring spans; used by the round-trip tests.
inline bool surfaceEq(const SPtr& a, const SPtr& b) {
  if (a->kind != b->kind || a->nat != b->nat) return false;
  if (a->names != b->names) return false;
  if (a->kids.size() != b->kids.size()) return false;
  for (size_t i = 0; i < a->kids.size(); ++i)
    if (!surfaceEq(a->kids[i], b->kids[i])) return false;
  return true;
}

// -- lexer --------------------------------------------------------------------

namespace lex {

enum class Tok : uint8_t {
  Ident, KwDef,
  KwPathT, KwPathAbs, KwCoe, KwIso, KwProj1, KwProj2, KwElimBool,
  KwI, KwLeft, KwRight, KwType0, KwType1, KwType2,
  KwUnitT, KwUnitV, KwBoolT, KwTrue, KwFalse, KwRefl,
  Backslash, FatArrow, Arrow, Colon, Dot, Star, At, Equal,
  LParen, RParen, Comma, Eof,
};

struct Token {
  Tok kind = Tok::Eof;
  std::string text;
  Span span;
};

inline bool identStart(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
inline bool identChar(char c) {
  return identStart(c) || (c >= '0' && c <= '9') || c == '\'';
}

inline std::vector<Token> tokenize(const std::string& src) {
  std::vector<Token> out;
  uint32_t line = 1, col = 1;
  size_t i = 0;
  auto spanHere = [&] { return Span{line, col}; };
  auto err = [&](const std::string& msg) { fail(code::Parse, msg, spanHere()); };
  while (i < src.size()) {
    char c = src[i];
    if (c == '\n') { ++i; ++line; col = 1; continue; }
    if (c == ' ' || c == '\t' || c == '\r') { ++i; ++col; continue; }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    Span sp = spanHere();
    auto push = [&](Tok k, size_t len) {
      out.push_back(Token{k, src.substr(i, len), sp});
      i += len;
      col += static_cast<uint32_t>(len);
    };
    if (c == '-') {
      if (i + 1 < src.size() && src[i + 1] == '>') { push(Tok::Arrow, 2); continue; }
      err("stray '-' (did you mean '->' or a '--' comment?)");
    }
    if (c == '=') {
      if (i + 1 < src.size() && src[i + 1] == '>') { push(Tok::FatArrow, 2); continue; }
      push(Tok::Equal, 1); continue;
    }
    switch (c) {
      case '\\': push(Tok::Backslash, 1); continue;
      case ':': push(Tok::Colon, 1); continue;
      case '.': push(Tok::Dot, 1); continue;
      case '*': push(Tok::Star, 1); continue;
      case '@': push(Tok::At, 1); continue;
      case '(': push(Tok::LParen, 1); continue;
      case ')': push(Tok::RParen, 1); continue;
      case ',': push(Tok::Comma, 1); continue;
      default: break;
    }
    if (identStart(c)) {
      size_t j = i;
      while (j < src.size() && identChar(src[j])) ++j;
      std::string word = src.substr(i, j - i);
      Tok k = Tok::Ident;
      if (word == "def") k = Tok::KwDef;
      else if (word == "Path") k = Tok::KwPathT;
      else if (word == "path") k = Tok::KwPathAbs;
      else if (word == "coe") k = Tok::KwCoe;
      else if (word == "iso") k = Tok::KwIso;
      else if (word == "proj1") k = Tok::KwProj1;
      else if (word == "proj2") k = Tok::KwProj2;
      else if (word == "elimBool") k = Tok::KwElimBool;
      else if (word == "I") k = Tok::KwI;
      else if (word == "left") k = Tok::KwLeft;
      else if (word == "right") k = Tok::KwRight;
      else if (word == "Type0") k = Tok::KwType0;
      else if (word == "Type1") k = Tok::KwType1;
      else if (word == "Type2") k = Tok::KwType2;
      else if (word == "Unit") k = Tok::KwUnitT;
      else if (word == "unit") k = Tok::KwUnitV;
      else if (word == "Bool") k = Tok::KwBoolT;
      else if (word == "true") k = Tok::KwTrue;
      else if (word == "false") k = Tok::KwFalse;
      else if (word == "refl") k = Tok::KwRefl;
      push(k, j - i);
      continue;
    }
    err(std::string("unexpected character '") + c + "'");
  }
  out.push_back(Token{Tok::Eof, "", spanHere()});
  return out;
}

}  // namespace lex

// -- parser -------------------------------------------------------------------

class Parser {
 public:
  explicit Parser(const std::string& src) : toks_(lex::tokenize(src)) {}

  std::vector<Declaration> parseFile() {
    std::vector<Declaration> decls;
    std::set<std::string> seen;
    while (peek().kind != lex::Tok::Eof) {
      expect(lex::Tok::KwDef, "expected 'def'");
      lex::Token nameTok = expect(lex::Tok::Ident, "expected a declaration name");
      if (!seen.insert(nameTok.text).second)
        fail(code::Duplicate, "duplicate declaration name '" + nameTok.text + "'", nameTok.span);
      expect(lex::Tok::Colon, "expected ':' after the declaration name");
      SPtr type = parseTerm();
      expect(lex::Tok::FatArrow, "expected '=>' between type and body");
      SPtr body = parseTerm();
      decls.push_back(Declaration{nameTok.text, type, body, nameTok.span});
    }
    return decls;
  }

  SPtr parseTerm() {
    if (peek().kind == lex::Tok::Backslash) return parseLam();
    return parseArrowLevel();
  }

 private:
  const lex::Token& peek(size_t ahead = 0) const {
    size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  lex::Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool accept(lex::Tok k) {
    if (peek().kind == k) { next(); return true; }
    return false;
  }
  lex::Token expect(lex::Tok k, const std::string& msg) {
    if (peek().kind != k)
      fail(code::Parse, msg + " (found '" + describe(peek()) + "')", peek().span);
    return next();
  }
  static std::string describe(const lex::Token& t) {
    return t.kind == lex::Tok::Eof ? "end of file" : t.text;
  }

  SPtr parseLam() {
    Span sp = peek().span;
    expect(lex::Tok::Backslash, "expected '\\'");
    lex::Token x = expect(lex::Tok::Ident, "expected a binder name after '\\'");
    expect(lex::Tok::FatArrow, "expected '=>' after the lambda binder");
    SPtr body = parseTerm();
    return mkS(SKind::Lam, sp, {x.text}, {body});
  }

  bool binderGroupAhead() const {
    return peek().kind == lex::Tok::LParen && peek(1).kind == lex::Tok::Ident &&
           peek(2).kind == lex::Tok::Colon;
  }

  // "(" IDENT ":" term ")"
  std::pair<std::string, SPtr> parseBinderGroup() {
    expect(lex::Tok::LParen, "expected '('");
    lex::Token x = expect(lex::Tok::Ident, "expected a binder name");
    expect(lex::Tok::Colon, "expected ':' in binder group");
    SPtr ty = parseTerm();
    expect(lex::Tok::RParen, "expected ')' after binder group");
    return {x.text, ty};
  }

  SPtr parseArrowLevel() {
    if (binderGroupAhead()) {
      Span sp = peek().span;
      auto [x, dom] = parseBinderGroup();
      if (accept(lex::Tok::Arrow)) {
        SPtr cod = parseTerm();
        return mkS(SKind::PiB, sp, {x}, {dom, cod});
      }
      if (accept(lex::Tok::Star)) {
        SPtr snd = parseProdLevel();
        SPtr sig = mkS(SKind::SigmaB, sp, {x}, {dom, snd});
        if (accept(lex::Tok::Arrow)) {
          SPtr cod = parseTerm();
          return mkS(SKind::ArrowS, sp, {}, {sig, cod});
        }
        return sig;
      }
      fail(code::Parse, "expected '->' or '*' after binder group", peek().span);
    }
    SPtr t = parseProdLevel();
    if (accept(lex::Tok::Arrow)) {
      SPtr cod = parseTerm();
      return mkS(SKind::ArrowS, t->span, {}, {t, cod});
    }
    return t;
  }

  SPtr parseProdLevel() {
    if (binderGroupAhead()) {
      Span sp = peek().span;
      auto [x, dom] = parseBinderGroup();
      expect(lex::Tok::Star, "expected '*' after binder group");
      SPtr snd = parseProdLevel();
      return mkS(SKind::SigmaB, sp, {x}, {dom, snd});
    }
    SPtr t = parseEqLevel();
    if (accept(lex::Tok::Star)) {
      SPtr snd = parseProdLevel();
      return mkS(SKind::ProdS, t->span, {}, {t, snd});
    }
    return t;
  }

  SPtr parseEqLevel() {
    SPtr t = parseAtLevel();
    if (accept(lex::Tok::Equal)) {
      SPtr rhs = parseAtLevel();
      return mkS(SKind::EqS, t->span, {}, {t, rhs});
    }
    return t;
  }

  SPtr parseAtLevel() {
    SPtr t = parseAppLevel();
    while (accept(lex::Tok::At)) {
      SPtr arg = parseAtom();
      t = mkS(SKind::AtS, t->span, {}, {t, arg});
    }
    return t;
  }

  static bool atomStart(lex::Tok k) {
    using lex::Tok;
    switch (k) {
      case Tok::Ident: case Tok::KwI: case Tok::KwLeft: case Tok::KwRight:
      case Tok::KwType0: case Tok::KwType1: case Tok::KwType2:
      case Tok::KwUnitT: case Tok::KwUnitV: case Tok::KwBoolT:
      case Tok::KwTrue: case Tok::KwFalse: case Tok::KwRefl: case Tok::LParen:
        return true;
      default:
        return false;
    }
  }

  SPtr parseAppLevel() {
    SPtr head = parsePrimary();
    while (atomStart(peek().kind)) {
      SPtr arg = parseAtom();
      head = mkS(SKind::AppS, head->span, {}, {head, arg});
    }
    return head;
  }

  // "(" IDENT "." term ")"
  std::pair<std::string, SPtr> parseBindDot() {
    expect(lex::Tok::LParen, "expected '('");
    lex::Token x = expect(lex::Tok::Ident, "expected a binder name");
    expect(lex::Tok::Dot, "expected '.' after binder name");
    SPtr t = parseTerm();
    expect(lex::Tok::RParen, "expected ')' after binder body");
    return {x.text, t};
  }

  SPtr parsePrimary() {
    Span sp = peek().span;
    switch (peek().kind) {
      case lex::Tok::KwPathAbs: {
        next();
        auto [x, body] = parseBindDot();
        return mkS(SKind::PathAbsS, sp, {x}, {body});
      }
      case lex::Tok::KwCoe: {
        next();
        auto [x, fam] = parseBindDot();
        SPtr base = parseAtom();
        SPtr target = parseAtom();
        return mkS(SKind::CoeS, sp, {x}, {fam, base, target});
      }
      case lex::Tok::KwPathT: {
        next();
        auto [x, fam] = parseBindDot();
        SPtr l = parseAtom();
        SPtr r = parseAtom();
        return mkS(SKind::PathTS, sp, {x}, {fam, l, r});
      }
      case lex::Tok::KwIso: {
        next();
        SPtr a = parseAtom();
        SPtr b = parseAtom();
        auto [x1, fwd] = parseBindDot();
        auto [x2, bwd] = parseBindDot();
        auto [x3, sl] = parseBindDot();
        auto [x4, sr] = parseBindDot();
        SPtr arg = parseAtom();
        return mkS(SKind::IsoS, sp, {x1, x2, x3, x4}, {a, b, fwd, bwd, sl, sr, arg});
      }
      case lex::Tok::KwProj1: {
        next();
        return mkS(SKind::Proj1S, sp, {}, {parseAtom()});
      }
      case lex::Tok::KwProj2: {
        next();
        return mkS(SKind::Proj2S, sp, {}, {parseAtom()});
      }
      case lex::Tok::KwElimBool: {
        next();
        auto [x, motive] = parseBindDot();
        SPtr onTrue = parseAtom();
        SPtr onFalse = parseAtom();
        SPtr scrut = parseAtom();
        return mkS(SKind::ElimBoolS, sp, {x}, {motive, onTrue, onFalse, scrut});
      }
      default:
        return parseAtom();
    }
  }

  SPtr parseAtom() {
    lex::Token t = peek();
    Span sp = t.span;
    switch (t.kind) {
      case lex::Tok::Ident: next(); return mkS(SKind::Var, sp, {t.text});
      case lex::Tok::KwI: next(); return mkS(SKind::IntervalS, sp);
      case lex::Tok::KwLeft: next(); return mkS(SKind::LeftS, sp);
      case lex::Tok::KwRight: next(); return mkS(SKind::RightS, sp);
      case lex::Tok::KwType0: next(); return mkS(SKind::Type, sp, {}, {}, 0);
      case lex::Tok::KwType1: next(); return mkS(SKind::Type, sp, {}, {}, 1);
      case lex::Tok::KwType2: next(); return mkS(SKind::Type, sp, {}, {}, 2);
      case lex::Tok::KwUnitT: next(); return mkS(SKind::UnitT, sp);
      case lex::Tok::KwUnitV: next(); return mkS(SKind::UnitV, sp);
      case lex::Tok::KwBoolT: next(); return mkS(SKind::BoolT, sp);
      case lex::Tok::KwTrue: next(); return mkS(SKind::TrueS, sp);
      case lex::Tok::KwFalse: next(); return mkS(SKind::FalseS, sp);
      case lex::Tok::KwRefl: next(); return mkS(SKind::Refl, sp);
      case lex::Tok::LParen: {
        next();
        SPtr inner = parseTerm();
        if (accept(lex::Tok::Comma)) {
          SPtr snd = parseTerm();
          expect(lex::Tok::RParen, "expected ')' after pair");
          return mkS(SKind::PairS, sp, {}, {inner, snd});
        }
        expect(lex::Tok::RParen, "expected ')'");
        return inner;
      }
      default:
        fail(code::Parse, "expected a term (found '" + describe(t) + "')", sp);
    }
  }

  std::vector<lex::Token> toks_;
  size_t pos_ = 0;
};

inline std::vector<Declaration> parse(const std::string& source) {
  Parser p(source);
  return p.parseFile();
}

}  // namespace hti
