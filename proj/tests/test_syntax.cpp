#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>

#include "corpus.hpp"
#include "doctest.h"
#include "sparc/lexer.hpp"
#include "sparc/parser.hpp"

using namespace sparc;

namespace {

std::string firstError(const std::vector<Diagnostic>& ds) {
  for (const auto& d : ds)
    if (d.severity == Severity::Error) return d.message;
  return "";
}

SourcePos firstErrorPos(const std::vector<Diagnostic>& ds) {
  for (const auto& d : ds)
    if (d.severity == Severity::Error) return d.pos;
  return {};
}

} // namespace

TEST_CASE("lexer: token stream of a small rule") {
  LexResult r = tokenize("q(X,Y) :- p(X), X != Y. % trailing comment");
  REQUIRE(r.ok);
  std::vector<TokKind> kinds;
  for (const auto& t : r.tokens) kinds.push_back(t.kind);
  CHECK(kinds == std::vector<TokKind>{TokKind::Ident, TokKind::LParen, TokKind::Var,
                                      TokKind::Comma, TokKind::Var, TokKind::RParen,
                                      TokKind::RuleArrow, TokKind::Ident, TokKind::LParen,
                                      TokKind::Var, TokKind::RParen, TokKind::Comma, TokKind::Var,
                                      TokKind::Neq, TokKind::Var, TokKind::Dot, TokKind::End});
}

TEST_CASE("lexer: positions are 1-based line and column") {
  LexResult r = tokenize("p(a).\n  q(b).");
  REQUIRE(r.ok);
  CHECK(r.tokens[0].pos.line == 1);
  CHECK(r.tokens[0].pos.column == 1);
  const Token& q = r.tokens[5];
  CHECK(q.text == "q");
  CHECK(q.pos.line == 2);
  CHECK(q.pos.column == 3);
}

TEST_CASE("lexer: unicode arrow and negation") {
  LexResult r = tokenize("¬p(X) ← q(X).");
  REQUIRE(r.ok);
  CHECK(r.tokens[0].kind == TokKind::Minus);
  bool sawArrow = false;
  for (const auto& t : r.tokens) sawArrow |= t.kind == TokKind::RuleArrow;
  CHECK(sawArrow);
}

TEST_CASE("lexer: weak arrow is a token, underscore is not") {
  LexResult weak = tokenize(":~ p(a).");
  REQUIRE(weak.ok);
  CHECK(weak.tokens[0].kind == TokKind::WeakArrow);

  LexResult under = tokenize("p_q(a).");
  CHECK_FALSE(under.ok);
}

TEST_CASE("lexer: no leading zeros in naturals") {
  CHECK(tokenize("p(0).").ok);
  CHECK_FALSE(tokenize("p(01).").ok);
}

TEST_CASE("parser: three-part structure of P1") {
  ParseResult r = parseProgram(corpus::kP1);
  REQUIRE(r.ok);
  CHECK(r.program.sortRules.size() == 4);
  CHECK(r.program.declarations.size() == 3);
  CHECK(r.program.rules.size() == 3);
  CHECK(r.program.declarations[1].pred == "q");
  CHECK(r.program.declarations[1].argSorts == std::vector<std::string>{"s1", "s3"});
  CHECK(r.program.rules[2].body.size() == 2);
}

TEST_CASE("parser: print-parse fixpoint on assorted rules") {
  const char* lines[] = {
      "p(X) v -q(Y) :- r(X,Y), not s(X).",
      "q(f(X,1)) :+ p(X), X + 1 != 4.",
      ":- p(a), not q(b).",
      "fact.",
      "p(X*2+1) :- q(X), X mod 2 = 1, X > 0.",
  };
  for (const char* line : lines) {
    RuleParseResult one = parseRuleText(line);
    REQUIRE_MESSAGE(one.ok, line);
    std::string printed = toString(one.rule);
    RuleParseResult again = parseRuleText(printed);
    REQUIRE_MESSAGE(again.ok, printed);
    CHECK(toString(again.rule) == printed);
  }
}

TEST_CASE("parser: disjunction via v and via pipe") {
  RuleParseResult a = parseRuleText("p(a) v q(b).");
  RuleParseResult b = parseRuleText("p(a) | q(b).");
  REQUIRE(a.ok);
  REQUIRE(b.ok);
  CHECK(toString(a.rule) == toString(b.rule));
  CHECK(a.rule.head.size() == 2);
}

TEST_CASE("parser: weak constraints rejected in source programs") {
  std::string text = "sorts definition\ns(a).\npredicates declaration\np(s)\n"
                     "program rules\n:~ p(a).\n";
  ParseResult r = parseProgram(text);
  CHECK_FALSE(r.ok);
  CHECK(firstError(r.diagnostics) == "weak constraints are not part of the input language");
}

TEST_CASE("parser: weak constraints allowed only when asked") {
  CHECK_FALSE(parseRuleText(":~ p(a).").ok);
  RuleParseResult r = parseRuleText(":~ p(a), not q(b).", /*allowWeak=*/true);
  REQUIRE(r.ok);
  CHECK(r.weak);
  CHECK(r.rule.head.empty());
  CHECK(r.rule.body.size() == 2);
}

TEST_CASE("parser: cr-rule shape") {
  RuleParseResult ok = parseRuleText("p(X) :+ q(X).");
  REQUIRE(ok.ok);
  CHECK(ok.rule.kind == RuleKind::CR);

  CHECK_FALSE(parseRuleText("p(X) v q(X) :+ r(X).").ok);
  CHECK_FALSE(parseRuleText(":+ q(X).").ok);

  RuleParseResult emptyBody = parseRuleText("p(a) :+ .");
  REQUIRE(emptyBody.ok);
  CHECK(emptyBody.rule.body.empty());
  CHECK(toString(emptyBody.rule) == "p(a) :+ .");
}

TEST_CASE("parser: relations cannot head rules or sit under not") {
  CHECK_FALSE(parseRuleText("X = Y :- p(X), q(Y).").ok);
  RuleParseResult r = parseRuleText("p(X) :- q(X), not X != 2.");
  CHECK_FALSE(r.ok);
  CHECK(firstError(r.diagnostics) == "a relation atom cannot be negated with 'not'");
}

TEST_CASE("parser: arithmetic restricted to arithmetic operands") {
  CHECK(parseRuleText("p(X+1*2) :- q(X).").ok);
  CHECK_FALSE(parseRuleText("p(a+1) :- q(a).").ok);
  CHECK_FALSE(parseRuleText("p(X) :- q(X), X < f(X).").ok);
  CHECK_FALSE(parseRuleText("p((a)).").ok);
}

TEST_CASE("parser: mixed symbolic and arithmetic equality is a type error") {
  CHECK_FALSE(parseRuleText("p(X) :- q(X), X + 1 = a.").ok);
  CHECK(parseRuleText("p(X) :- q(X), X = a.").ok);
}

TEST_CASE("parser: error positions point at the offending token") {
  ParseResult r = parseProgram("sorts definition\ns(a)\npredicates declaration\np(s)\n"
                               "program rules\np(a).\n");
  CHECK_FALSE(r.ok);
  SourcePos pos = firstErrorPos(r.diagnostics);
  CHECK(pos.line == 3);
  CHECK(pos.column == 1);
}

TEST_CASE("parser: recovery continues past a bad statement") {
  ParseResult r = parseProgram("sorts definition\ns(a).\ns(b c).\ns(d).\n"
                               "predicates declaration\np(s)\nprogram rules\np(a).\n");
  CHECK_FALSE(r.ok);
  CHECK(r.program.sortRules.size() >= 2); // s(a). and s(d). both survive
}

TEST_CASE("parser: declarations sit one per line, trailing dot optional") {
  ParseResult bad = parseProgram("sorts definition\ns(a).\npredicates declaration\n"
                                 "p(s) q(s)\nprogram rules\np(a).\n");
  CHECK_FALSE(bad.ok);
  CHECK(firstError(bad.diagnostics) == "declaration must be alone on its line");

  ParseResult good = parseProgram("sorts definition\ns(a).\npredicates declaration\n"
                                  "p(s).\nq(s)\nprogram rules\np(a).\n");
  CHECK(good.ok);
  CHECK(good.program.declarations.size() == 2);
}

TEST_CASE("parser: cr-rules and disjunction banned from the sorts part") {
  ParseResult cr = parseProgram("sorts definition\ns(a) :+ .\npredicates declaration\np(s)\n"
                                "program rules\np(a).\n");
  CHECK_FALSE(cr.ok);

  ParseResult disj = parseProgram("sorts definition\ns(a) v s(b).\npredicates declaration\n"
                                  "p(s)\nprogram rules\np(a).\n");
  CHECK_FALSE(disj.ok);
}

TEST_CASE("parser: contextual keywords stay usable as identifiers") {
  RuleParseResult r = parseRuleText("p(v) :- q(v, mod).");
  REQUIRE(r.ok);
  CHECK(toString(r.rule) == "p(v) :- q(v,mod).");
}
