#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sparc/diagnostics.hpp"

namespace sparc {

enum class TokKind {
  Ident,     // lowercase-initial identifier; also contextual keywords not/mod/v
  Var,       // uppercase-initial identifier
  Nat,       // natural number, no leading zeros
  LParen,
  RParen,
  Comma,
  Dot,
  RuleArrow, // ":-" or "<-" arrow character
  CrArrow,   // ":+"
  WeakArrow, // ":~" (accepted so counterpart text can be re-read)
  Pipe,      // "|", alternative disjunction separator
  Eq,
  Neq,
  Lt,
  Le,
  Gt,
  Ge,
  Plus,
  Minus,
  Star,
  End
};

struct Token {
  TokKind kind = TokKind::End;
  std::string text;
  SourcePos pos;
};

struct LexResult {
  std::vector<Token> tokens; // always terminated by an End token
  std::vector<Diagnostic> diagnostics;
  bool ok = true;
};

// Splits source text into tokens. "%" starts a comment running to end of line.
LexResult tokenize(std::string_view source);

std::string tokKindName(TokKind k);

} // namespace sparc
