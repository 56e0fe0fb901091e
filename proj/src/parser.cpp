#include "sparc/parser.hpp"

#include "sparc/lexer.hpp"

namespace sparc {

namespace {

class ParseError {}; // unwinds to the nearest statement boundary

class Parser {
public:
  explicit Parser(std::vector<Token> toks, std::vector<Diagnostic> diags)
      : toks_(std::move(toks)), diags_(std::move(diags)) {}

  ParseResult parseProgram() {
    expectKeywordPair("sorts", "definition");
    while (!atEnd() && !atKeywordPair("predicates", "declaration")) {
      if (atKeywordPair("program", "rules")) break;
      parseStatement([this] { parseSortRule(); });
    }
    expectKeywordPair("predicates", "declaration");
    while (!atEnd() && !atKeywordPair("program", "rules"))
      parseStatement([this] { parseDeclaration(); });
    expectKeywordPair("program", "rules");
    while (!atEnd())
      parseStatement([this] { parseRule(); });
    ParseResult r;
    r.program = std::move(program_);
    r.diagnostics = std::move(diags_);
    r.ok = !hasErrors(r.diagnostics);
    return r;
  }

  TermParseResult parseSingleTerm() {
    TermParseResult r;
    try {
      r.term = parseTerm();
      if (!atEnd()) errorHere("unexpected input after term");
      r.ok = true;
    } catch (ParseError&) {
    }
    r.diagnostics = std::move(diags_);
    if (hasErrors(r.diagnostics)) r.ok = false;
    return r;
  }

  LiteralParseResult parseSingleLiteral() {
    LiteralParseResult r;
    try {
      r.literal = parseLiteral();
      if (!atEnd()) errorHere("unexpected input after literal");
      r.ok = true;
    } catch (ParseError&) {
    }
    r.diagnostics = std::move(diags_);
    if (hasErrors(r.diagnostics)) r.ok = false;
    return r;
  }

  RuleParseResult parseSingleRule(bool allowWeak) {
    RuleParseResult r;
    try {
      if (allowWeak && tok().kind == TokKind::WeakArrow) {
        r.weak = true;
        r.rule.span.begin = tok().pos;
        next();
        r.rule.body = parseBody();
        Token dot = expect(TokKind::Dot, "'.'");
        r.rule.span.end = dot.pos;
      } else {
        r.rule = parseRuleCommon(/*inSorts=*/false);
      }
      if (!atEnd()) errorHere("unexpected input after rule");
      r.ok = true;
    } catch (ParseError&) {
    }
    r.diagnostics = std::move(diags_);
    if (hasErrors(r.diagnostics)) r.ok = false;
    return r;
  }

private:
  // --- statements with recovery ---

  template <typename F>
  void parseStatement(F f) {
    try {
      f();
    } catch (ParseError&) {
      synchronize();
    }
  }

  void synchronize() {
    while (!atEnd()) {
      if (tok().kind == TokKind::Dot) {
        next();
        return;
      }
      if (atKeywordPair("predicates", "declaration") || atKeywordPair("program", "rules")) return;
      next();
    }
  }

  // --- program parts ---

  void parseSortRule() {
    Rule r = parseRuleCommon(/*inSorts=*/true);
    r.sourceIndex = static_cast<int>(program_.sortRules.size());
    program_.sortRules.push_back(std::move(r));
  }

  void parseDeclaration() {
    Declaration d;
    Token name = expect(TokKind::Ident, "predicate name");
    d.pred = name.text;
    d.span = SourceSpan{name.pos, name.pos};
    if (!program_.declarations.empty() && lastDeclLine_ == name.pos.line)
      error(name.pos, "declaration must be alone on its line");
    expect(TokKind::LParen, "'('");
    if (tok().kind != TokKind::RParen) {
      for (;;) {
        Token s = expect(TokKind::Ident, "sort name");
        d.argSorts.push_back(s.text);
        if (tok().kind != TokKind::Comma) break;
        next();
      }
    }
    Token close = expect(TokKind::RParen, "')'");
    lastDeclLine_ = close.pos.line;
    if (tok().kind == TokKind::Dot) {
      lastDeclLine_ = tok().pos.line;
      next(); // trailing period is optional in declarations
    }
    program_.declarations.push_back(std::move(d));
  }

  void parseRule() {
    Rule r = parseRuleCommon(/*inSorts=*/false);
    r.sourceIndex = static_cast<int>(program_.rules.size());
    program_.rules.push_back(std::move(r));
  }

  // --- rules ---

  Rule parseRuleCommon(bool inSorts) {
    Rule r;
    r.span.begin = tok().pos;
    bool headless = tok().kind == TokKind::RuleArrow || tok().kind == TokKind::CrArrow ||
                    tok().kind == TokKind::WeakArrow;
    if (!headless) {
      for (;;) {
        r.head.push_back(parseLiteral());
        if (tok().kind == TokKind::Pipe || (tok().kind == TokKind::Ident && tok().text == "v")) {
          next();
          continue;
        }
        break;
      }
    }
    if (tok().kind == TokKind::WeakArrow)
      errorHereThrow("weak constraints are not part of the input language");
    if (tok().kind == TokKind::CrArrow) {
      r.kind = RuleKind::CR;
      next();
      r.body = parseBody();
    } else if (tok().kind == TokKind::RuleArrow) {
      next();
      r.body = parseBody();
    } else if (headless) {
      errorHereThrow("expected ':-' or ':+'");
    }
    Token dot = expect(TokKind::Dot, "'.'");
    r.span.end = dot.pos;
    checkRuleShape(r, inSorts);
    return r;
  }

  void checkRuleShape(const Rule& r, bool inSorts) {
    for (const auto& h : r.head)
      if (h.atom.kind != AtomKind::Pred)
        error(h.span.begin, "relation atom cannot appear in a rule head");
    if (r.kind == RuleKind::CR) {
      if (inSorts) error(r.span.begin, "cr-rule is not allowed in the sorts definition");
      if (r.head.size() != 1) error(r.span.begin, "cr-rule must have exactly one head literal");
    }
    if (!inSorts) return;
    if (r.head.empty())
      error(r.span.begin, "sorts definition rule must have a head");
    if (r.head.size() > 1)
      error(r.span.begin, "disjunction is not allowed in the sorts definition");
    for (const auto& h : r.head)
      if (h.negated) error(h.span.begin, "classical negation is not allowed in the sorts definition");
    for (const auto& e : r.body)
      if (e.lit.negated)
        error(e.lit.span.begin, "classical negation is not allowed in the sorts definition");
  }

  std::vector<BodyElem> parseBody() {
    std::vector<BodyElem> body;
    if (tok().kind == TokKind::Dot) return body;
    for (;;) {
      BodyElem e;
      if (tok().kind == TokKind::Ident && tok().text == "not") {
        next();
        e.naf = true;
      }
      e.lit = parseLiteral();
      if (e.naf && e.lit.atom.kind != AtomKind::Pred)
        error(e.lit.span.begin, "a relation atom cannot be negated with 'not'");
      body.push_back(std::move(e));
      if (tok().kind != TokKind::Comma) break;
      next();
    }
    return body;
  }

  // --- literals, atoms, terms ---

  Literal parseLiteral() {
    SourcePos start = tok().pos;
    bool neg = false;
    if (tok().kind == TokKind::Minus) {
      neg = true;
      next();
    }
    Atom a = parseAtom();
    if (neg && a.kind != AtomKind::Pred)
      error(start, "classical negation applies only to predicate atoms");
    Literal l = neg ? Literal::classicNeg(std::move(a)) : Literal::positive(std::move(a));
    l.span.begin = start;
    l.span.end = prevEnd_;
    return l;
  }

  Atom parseAtom() {
    SourcePos start = tok().pos;
    Term lhs = parseTerm();
    RelOp rel;
    if (relOpHere(rel)) {
      next();
      Term rhs = parseTerm();
      AtomKind kind = classifyRelation(rel, lhs, rhs, start);
      Atom a = Atom::relation(kind, rel, std::move(lhs), std::move(rhs));
      a.span = SourceSpan{start, prevEnd_};
      return a;
    }
    if (lhs.kind == TermKind::SymConst) {
      Atom a = Atom::predicate(lhs.name, {});
      a.span = SourceSpan{start, prevEnd_};
      return a;
    }
    if (lhs.kind == TermKind::Func) {
      Atom a = Atom::predicate(lhs.name, std::move(lhs.args));
      a.span = SourceSpan{start, prevEnd_};
      return a;
    }
    error(start, "expected an atom");
    throw ParseError{};
  }

  bool relOpHere(RelOp& out) const {
    switch (tok().kind) {
      case TokKind::Eq: out = RelOp::Eq; return true;
      case TokKind::Neq: out = RelOp::Neq; return true;
      case TokKind::Lt: out = RelOp::Lt; return true;
      case TokKind::Le: out = RelOp::Le; return true;
      case TokKind::Gt: out = RelOp::Gt; return true;
      case TokKind::Ge: out = RelOp::Ge; return true;
      default: return false;
    }
  }

  static bool syntacticallyArith(const Term& t) {
    return t.kind == TermKind::Nat || t.kind == TermKind::Arith;
  }
  static bool syntacticallySymbolic(const Term& t) {
    return t.kind == TermKind::SymConst || t.kind == TermKind::Func;
  }

  // Order relations take arithmetic terms. "=" and "!=" are arithmetic when a
  // side is visibly arithmetic, symbolic when a side is visibly symbolic, and
  // are identity on ground terms when both sides are variables.
  AtomKind classifyRelation(RelOp rel, const Term& lhs, const Term& rhs, SourcePos at) {
    bool ordered = rel != RelOp::Eq && rel != RelOp::Neq;
    bool anyArith = syntacticallyArith(lhs) || syntacticallyArith(rhs);
    bool anySym = syntacticallySymbolic(lhs) || syntacticallySymbolic(rhs);
    if (ordered) {
      if (anySym) error(at, "order relations apply only to arithmetic terms");
      return AtomKind::ArithRel;
    }
    if (anyArith && anySym) {
      error(at, "cannot relate a symbolic term and an arithmetic term");
      return AtomKind::ArithRel;
    }
    if (anyArith) return AtomKind::ArithRel;
    return AtomKind::SymRel;
  }

  Term parseTerm() { return parseAdditive(); }

  Term parseAdditive() {
    Term lhs = parseMultiplicative();
    while (tok().kind == TokKind::Plus || tok().kind == TokKind::Minus) {
      ArithOp op = tok().kind == TokKind::Plus ? ArithOp::Add : ArithOp::Sub;
      SourcePos at = tok().pos;
      next();
      Term rhs = parseMultiplicative();
      requireArithOperand(lhs, at);
      requireArithOperand(rhs, at);
      SourceSpan span{lhs.span.begin, rhs.span.end};
      lhs = Term::arith(op, std::move(lhs), std::move(rhs), span);
    }
    return lhs;
  }

  Term parseMultiplicative() {
    Term lhs = parsePrimary();
    while (tok().kind == TokKind::Star ||
           (tok().kind == TokKind::Ident && tok().text == "mod")) {
      ArithOp op = tok().kind == TokKind::Star ? ArithOp::Mul : ArithOp::Mod;
      SourcePos at = tok().pos;
      next();
      Term rhs = parsePrimary();
      requireArithOperand(lhs, at);
      requireArithOperand(rhs, at);
      SourceSpan span{lhs.span.begin, rhs.span.end};
      lhs = Term::arith(op, std::move(lhs), std::move(rhs), span);
    }
    return lhs;
  }

  void requireArithOperand(const Term& t, SourcePos at) {
    if (syntacticallySymbolic(t)) error(at, "arithmetic term expected");
  }

  Term parsePrimary() {
    Token t = tok();
    switch (t.kind) {
      case TokKind::Nat: {
        next();
        return Term::nat(std::stoll(t.text), SourceSpan{t.pos, t.pos});
      }
      case TokKind::Var: {
        next();
        return Term::variable(t.text, SourceSpan{t.pos, t.pos});
      }
      case TokKind::Ident: {
        next();
        if (tok().kind == TokKind::LParen) {
          next();
          std::vector<Term> args;
          if (tok().kind != TokKind::RParen) {
            for (;;) {
              args.push_back(parseTerm());
              if (tok().kind != TokKind::Comma) break;
              next();
            }
          }
          Token close = expect(TokKind::RParen, "')'");
          return Term::func(t.text, std::move(args), SourceSpan{t.pos, close.pos});
        }
        return Term::symConst(t.text, SourceSpan{t.pos, t.pos});
      }
      case TokKind::LParen: {
        next();
        Term inner = parseTerm();
        expect(TokKind::RParen, "')'");
        if (syntacticallySymbolic(inner))
          error(t.pos, "parentheses enclose arithmetic terms only");
        return inner;
      }
      default:
        errorHere("expected a term, found " + tokKindName(t.kind));
        throw ParseError{};
    }
  }

  // --- part keywords ---

  bool atKeywordPair(const char* a, const char* b) const {
    return tok().kind == TokKind::Ident && tok().text == a && peek(1).kind == TokKind::Ident &&
           peek(1).text == b;
  }

  void expectKeywordPair(const char* a, const char* b) {
    if (!atKeywordPair(a, b)) {
      error(tok().pos, std::string("expected '") + a + " " + b + "'");
      // skip ahead to the keyword if it appears later, otherwise give up here
      while (!atEnd() && !atKeywordPair(a, b)) next();
      if (atEnd()) return;
    }
    next();
    next();
  }

  // --- token plumbing ---

  const Token& tok() const { return toks_[i_]; }
  const Token& peek(size_t n) const {
    size_t j = i_ + n;
    return j < toks_.size() ? toks_[j] : toks_.back();
  }
  bool atEnd() const { return tok().kind == TokKind::End; }

  void next() {
    prevEnd_ = tok().pos;
    if (i_ + 1 < toks_.size()) ++i_;
  }

  Token expect(TokKind k, const char* what) {
    if (tok().kind != k) {
      errorHere(std::string("expected ") + what + ", found " + tokKindName(tok().kind));
      throw ParseError{};
    }
    Token t = tok();
    next();
    return t;
  }

  void error(SourcePos p, std::string msg) { diags_.push_back(makeError(p, std::move(msg))); }
  void errorHere(std::string msg) { error(tok().pos, std::move(msg)); }
  [[noreturn]] void errorHereThrow(std::string msg) {
    errorHere(std::move(msg));
    throw ParseError{};
  }

  std::vector<Token> toks_;
  std::vector<Diagnostic> diags_;
  size_t i_ = 0;
  SourcePos prevEnd_;
  int lastDeclLine_ = -1;
  Program program_;
};

} // namespace

ParseResult parseProgram(std::string_view source) {
  LexResult lexed = tokenize(source);
  if (!lexed.ok) {
    ParseResult r;
    r.diagnostics = std::move(lexed.diagnostics);
    return r;
  }
  return Parser(std::move(lexed.tokens), std::move(lexed.diagnostics)).parseProgram();
}

TermParseResult parseTermText(std::string_view source) {
  LexResult lexed = tokenize(source);
  if (!lexed.ok) {
    TermParseResult r;
    r.diagnostics = std::move(lexed.diagnostics);
    return r;
  }
  return Parser(std::move(lexed.tokens), std::move(lexed.diagnostics)).parseSingleTerm();
}

LiteralParseResult parseLiteralText(std::string_view source) {
  LexResult lexed = tokenize(source);
  if (!lexed.ok) {
    LiteralParseResult r;
    r.diagnostics = std::move(lexed.diagnostics);
    return r;
  }
  return Parser(std::move(lexed.tokens), std::move(lexed.diagnostics)).parseSingleLiteral();
}

RuleParseResult parseRuleText(std::string_view source, bool allowWeak) {
  LexResult lexed = tokenize(source);
  if (!lexed.ok) {
    RuleParseResult r;
    r.diagnostics = std::move(lexed.diagnostics);
    return r;
  }
  return Parser(std::move(lexed.tokens), std::move(lexed.diagnostics)).parseSingleRule(allowWeak);
}

} // namespace sparc
