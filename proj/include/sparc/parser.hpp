#pragma once

#include <string_view>

#include "sparc/ast.hpp"

namespace sparc {

struct ParseResult {
  Program program;
  std::vector<Diagnostic> diagnostics;
  bool ok = false;
};

// Parses a full program: a "sorts definition" part, a "predicates
// declaration" part and a "program rules" part, in that order. On syntax
// errors parsing recovers at the next '.' or part keyword so several
// diagnostics can be reported in one run.
ParseResult parseProgram(std::string_view source);

struct TermParseResult {
  Term term;
  std::vector<Diagnostic> diagnostics;
  bool ok = false;
};

// Parses a single term (used by tests and by answer-set output parsing).
TermParseResult parseTermText(std::string_view source);

struct LiteralParseResult {
  Literal literal;
  std::vector<Diagnostic> diagnostics;
  bool ok = false;
};

// Parses a single literal, e.g. "-p(f(1,2))".
LiteralParseResult parseLiteralText(std::string_view source);

struct RuleParseResult {
  Rule rule;
  bool weak = false; // the rule began with ":~"
  std::vector<Diagnostic> diagnostics;
  bool ok = false;
};

// Parses one rule in program-rules syntax. With allowWeak set, a leading
// ":~" is accepted and reported through the weak flag; this is how emitted
// DLV text is read back.
RuleParseResult parseRuleText(std::string_view source, bool allowWeak = false);

} // namespace sparc
