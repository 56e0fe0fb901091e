#include "sparc/lexer.hpp"

#include <cctype>

namespace sparc {

namespace {

bool isIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) {}

  LexResult run() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\n') {
        advance();
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
        continue;
      }
      if (c == '%') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
        continue;
      }
      lexToken();
      if (!result_.ok) break;
    }
    emit(TokKind::End, "", here());
    return std::move(result_);
  }

private:
  void lexToken() {
    SourcePos start = here();
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t b = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
      std::string text(src_.substr(b, pos_ - b));
      if (text.size() > 1 && text[0] == '0') {
        error(start, "natural number with leading zero");
        return;
      }
      emit(TokKind::Nat, text, start);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t b = pos_;
      while (pos_ < src_.size() && isIdentChar(src_[pos_])) advance();
      std::string text(src_.substr(b, pos_ - b));
      emit(std::isupper(static_cast<unsigned char>(c)) ? TokKind::Var : TokKind::Ident, text, start);
      return;
    }
    switch (c) {
      case '(': advance(); emit(TokKind::LParen, "(", start); return;
      case ')': advance(); emit(TokKind::RParen, ")", start); return;
      case ',': advance(); emit(TokKind::Comma, ",", start); return;
      case '.': advance(); emit(TokKind::Dot, ".", start); return;
      case '|': advance(); emit(TokKind::Pipe, "|", start); return;
      case '+': advance(); emit(TokKind::Plus, "+", start); return;
      case '*': advance(); emit(TokKind::Star, "*", start); return;
      case '-': advance(); emit(TokKind::Minus, "-", start); return;
      case '=': advance(); emit(TokKind::Eq, "=", start); return;
      case '!':
        advance();
        if (peekIs('=')) {
          advance();
          emit(TokKind::Neq, "!=", start);
        } else {
          error(start, "expected '=' after '!'");
        }
        return;
      case '<':
        advance();
        if (peekIs('=')) {
          advance();
          emit(TokKind::Le, "<=", start);
        } else {
          emit(TokKind::Lt, "<", start);
        }
        return;
      case '>':
        advance();
        if (peekIs('=')) {
          advance();
          emit(TokKind::Ge, ">=", start);
        } else {
          emit(TokKind::Gt, ">", start);
        }
        return;
      case ':':
        advance();
        if (peekIs('-')) {
          advance();
          emit(TokKind::RuleArrow, ":-", start);
        } else if (peekIs('+')) {
          advance();
          emit(TokKind::CrArrow, ":+", start);
        } else if (peekIs('~')) {
          advance();
          emit(TokKind::WeakArrow, ":~", start);
        } else {
          error(start, "expected '-', '+' or '~' after ':'");
        }
        return;
      default: break;
    }
    // UTF-8 arrow and negation signs.
    if (startsWith("\xe2\x86\x90")) { // left arrow
      pos_ += 3;
      col_ += 1;
      emit(TokKind::RuleArrow, ":-", start);
      return;
    }
    if (startsWith("\xc2\xac")) { // negation sign
      pos_ += 2;
      col_ += 1;
      emit(TokKind::Minus, "-", start);
      return;
    }
    error(start, std::string("invalid character '") + c + "'");
  }

  bool startsWith(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }
  bool peekIs(char c) const { return pos_ < src_.size() && src_[pos_] == c; }

  SourcePos here() const { return SourcePos{line_, col_}; }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void emit(TokKind k, std::string text, SourcePos p) {
    result_.tokens.push_back(Token{k, std::move(text), p});
  }

  void error(SourcePos p, std::string msg) {
    result_.diagnostics.push_back(makeError(p, std::move(msg)));
    result_.ok = false;
  }

  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  LexResult result_;
};

} // namespace

LexResult tokenize(std::string_view source) { return Lexer(source).run(); }

std::string tokKindName(TokKind k) {
  switch (k) {
    case TokKind::Ident: return "identifier";
    case TokKind::Var: return "variable";
    case TokKind::Nat: return "number";
    case TokKind::LParen: return "'('";
    case TokKind::RParen: return "')'";
    case TokKind::Comma: return "','";
    case TokKind::Dot: return "'.'";
    case TokKind::RuleArrow: return "':-'";
    case TokKind::CrArrow: return "':+'";
    case TokKind::WeakArrow: return "':~'";
    case TokKind::Pipe: return "'|'";
    case TokKind::Eq: return "'='";
    case TokKind::Neq: return "'!='";
    case TokKind::Lt: return "'<'";
    case TokKind::Le: return "'<='";
    case TokKind::Gt: return "'>'";
    case TokKind::Ge: return "'>='";
    case TokKind::Plus: return "'+'";
    case TokKind::Minus: return "'-'";
    case TokKind::Star: return "'*'";
    case TokKind::End: return "end of input";
  }
  return "?";
}

} // namespace sparc
