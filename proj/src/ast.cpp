#include "sparc/ast.hpp"

#include <algorithm>
#include <sstream>

namespace sparc {

std::string render(const Diagnostic& d, const std::string& file) {
  std::ostringstream os;
  if (!file.empty()) os << file << ":";
  if (d.pos.line > 0) os << d.pos.line << ":" << d.pos.column << ":";
  if (os.tellp() > 0) os << " ";
  os << (d.severity == Severity::Error ? "error: " : "warning: ") << d.message;
  return os.str();
}

Term Term::variable(std::string n, SourceSpan s) {
  Term t;
  t.kind = TermKind::Variable;
  t.name = std::move(n);
  t.span = s;
  return t;
}

Term Term::nat(long long v, SourceSpan s) {
  Term t;
  t.kind = TermKind::Nat;
  t.value = v;
  t.span = s;
  return t;
}

Term Term::symConst(std::string n, SourceSpan s) {
  Term t;
  t.kind = TermKind::SymConst;
  t.name = std::move(n);
  t.span = s;
  return t;
}

Term Term::func(std::string n, std::vector<Term> as, SourceSpan s) {
  Term t;
  t.kind = TermKind::Func;
  t.name = std::move(n);
  t.args = std::move(as);
  t.span = s;
  return t;
}

Term Term::arith(ArithOp o, Term lhs, Term rhs, SourceSpan s) {
  Term t;
  t.kind = TermKind::Arith;
  t.op = o;
  t.args.push_back(std::move(lhs));
  t.args.push_back(std::move(rhs));
  t.span = s;
  return t;
}

bool Term::isGround() const {
  if (kind == TermKind::Variable || kind == TermKind::Arith) return false;
  for (const auto& a : args)
    if (!a.isGround()) return false;
  return true;
}

Atom Atom::predicate(std::string p, std::vector<Term> as, SourceSpan s) {
  Atom a;
  a.kind = AtomKind::Pred;
  a.pred = std::move(p);
  a.args = std::move(as);
  a.span = s;
  return a;
}

Atom Atom::relation(AtomKind k, RelOp r, Term lhs, Term rhs, SourceSpan s) {
  Atom a;
  a.kind = k;
  a.rel = r;
  a.args.push_back(std::move(lhs));
  a.args.push_back(std::move(rhs));
  a.span = s;
  return a;
}

Literal Literal::positive(Atom a) {
  Literal l;
  l.span = a.span;
  l.atom = std::move(a);
  return l;
}

Literal Literal::classicNeg(Atom a) {
  Literal l;
  l.span = a.span;
  l.atom = std::move(a);
  l.negated = true;
  return l;
}

Literal Literal::complement() const {
  Literal l = *this;
  l.negated = !l.negated;
  return l;
}

std::vector<Literal> Rule::posBody() const {
  std::vector<Literal> out;
  for (const auto& e : body)
    if (!e.naf) out.push_back(e.lit);
  return out;
}

std::vector<Literal> Rule::negBody() const {
  std::vector<Literal> out;
  for (const auto& e : body)
    if (e.naf) out.push_back(e.lit);
  return out;
}

static int kindRank(TermKind k) {
  switch (k) {
    case TermKind::Nat: return 0;
    case TermKind::SymConst: return 1;
    case TermKind::Func: return 2;
    case TermKind::Variable: return 3;
    case TermKind::Arith: return 4;
  }
  return 5;
}

int compareTerms(const Term& a, const Term& b) {
  int ra = kindRank(a.kind), rb = kindRank(b.kind);
  if (ra != rb) return ra < rb ? -1 : 1;
  switch (a.kind) {
    case TermKind::Nat:
      if (a.value != b.value) return a.value < b.value ? -1 : 1;
      return 0;
    case TermKind::SymConst:
    case TermKind::Variable:
      return a.name.compare(b.name) < 0 ? -1 : (a.name == b.name ? 0 : 1);
    case TermKind::Func: {
      if (int c = a.name.compare(b.name)) return c < 0 ? -1 : 1;
      break;
    }
    case TermKind::Arith:
      if (a.op != b.op) return static_cast<int>(a.op) < static_cast<int>(b.op) ? -1 : 1;
      break;
  }
  if (a.args.size() != b.args.size()) return a.args.size() < b.args.size() ? -1 : 1;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (int c = compareTerms(a.args[i], b.args[i])) return c;
  return 0;
}

bool termEq(const Term& a, const Term& b) { return compareTerms(a, b) == 0; }
bool termLess(const Term& a, const Term& b) { return compareTerms(a, b) < 0; }

int compareAtoms(const Atom& a, const Atom& b) {
  if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind) ? -1 : 1;
  if (a.kind == AtomKind::Pred) {
    if (int c = a.pred.compare(b.pred)) return c < 0 ? -1 : 1;
  } else if (a.rel != b.rel) {
    return static_cast<int>(a.rel) < static_cast<int>(b.rel) ? -1 : 1;
  }
  if (a.args.size() != b.args.size()) return a.args.size() < b.args.size() ? -1 : 1;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (int c = compareTerms(a.args[i], b.args[i])) return c;
  return 0;
}

bool atomEq(const Atom& a, const Atom& b) { return compareAtoms(a, b) == 0; }

int compareLiterals(const Literal& a, const Literal& b) {
  if (int c = compareAtoms(a.atom, b.atom)) return c;
  if (a.negated != b.negated) return a.negated ? 1 : -1;
  return 0;
}

bool literalEq(const Literal& a, const Literal& b) { return compareLiterals(a, b) == 0; }

bool ruleEq(const Rule& a, const Rule& b) {
  if (a.kind != b.kind) return false;
  if (a.head.size() != b.head.size() || a.body.size() != b.body.size()) return false;
  for (size_t i = 0; i < a.head.size(); ++i)
    if (!literalEq(a.head[i], b.head[i])) return false;
  for (size_t i = 0; i < a.body.size(); ++i) {
    if (a.body[i].naf != b.body[i].naf) return false;
    if (!literalEq(a.body[i].lit, b.body[i].lit)) return false;
  }
  return true;
}

bool programEq(const Program& a, const Program& b) {
  if (a.sortRules.size() != b.sortRules.size() || a.rules.size() != b.rules.size() ||
      a.declarations.size() != b.declarations.size())
    return false;
  for (size_t i = 0; i < a.sortRules.size(); ++i)
    if (!ruleEq(a.sortRules[i], b.sortRules[i])) return false;
  for (size_t i = 0; i < a.declarations.size(); ++i) {
    if (a.declarations[i].pred != b.declarations[i].pred) return false;
    if (a.declarations[i].argSorts != b.declarations[i].argSorts) return false;
  }
  for (size_t i = 0; i < a.rules.size(); ++i)
    if (!ruleEq(a.rules[i], b.rules[i])) return false;
  return true;
}

static int precedence(ArithOp op) {
  return (op == ArithOp::Mul || op == ArithOp::Mod) ? 2 : 1;
}

static const char* opText(ArithOp op) {
  switch (op) {
    case ArithOp::Add: return "+";
    case ArithOp::Sub: return "-";
    case ArithOp::Mul: return "*";
    case ArithOp::Mod: return " mod ";
  }
  return "?";
}

static void printTerm(std::ostringstream& os, const Term& t, int parentPrec, bool rightChild) {
  switch (t.kind) {
    case TermKind::Variable:
    case TermKind::SymConst: os << t.name; return;
    case TermKind::Nat: os << t.value; return;
    case TermKind::Func: {
      os << t.name << "(";
      for (size_t i = 0; i < t.args.size(); ++i) {
        if (i) os << ",";
        printTerm(os, t.args[i], 0, false);
      }
      os << ")";
      return;
    }
    case TermKind::Arith: {
      int prec = precedence(t.op);
      bool parens = prec < parentPrec || (prec == parentPrec && rightChild);
      if (parens) os << "(";
      printTerm(os, t.args[0], prec, false);
      os << opText(t.op);
      printTerm(os, t.args[1], prec, true);
      if (parens) os << ")";
      return;
    }
  }
}

std::string toString(const Term& t) {
  std::ostringstream os;
  printTerm(os, t, 0, false);
  return os.str();
}

static const char* relText(RelOp r) {
  switch (r) {
    case RelOp::Eq: return "=";
    case RelOp::Neq: return "!=";
    case RelOp::Lt: return "<";
    case RelOp::Le: return "<=";
    case RelOp::Gt: return ">";
    case RelOp::Ge: return ">=";
  }
  return "?";
}

std::string toString(const Atom& a) {
  std::ostringstream os;
  if (a.kind == AtomKind::Pred) {
    os << a.pred;
    if (!a.args.empty()) {
      os << "(";
      for (size_t i = 0; i < a.args.size(); ++i) {
        if (i) os << ",";
        os << toString(a.args[i]);
      }
      os << ")";
    }
  } else {
    os << toString(a.args[0]) << " " << relText(a.rel) << " " << toString(a.args[1]);
  }
  return os.str();
}

std::string toString(const Literal& l) {
  return l.negated ? "-" + toString(l.atom) : toString(l.atom);
}

std::string toString(const Rule& r) {
  std::ostringstream os;
  for (size_t i = 0; i < r.head.size(); ++i) {
    if (i) os << " v ";
    os << toString(r.head[i]);
  }
  bool isCr = r.kind == RuleKind::CR;
  if (!r.body.empty() || r.head.empty() || isCr) {
    if (!r.head.empty()) os << " ";
    os << (isCr ? ":+ " : ":- ");
    for (size_t i = 0; i < r.body.size(); ++i) {
      if (i) os << ", ";
      if (r.body[i].naf) os << "not ";
      os << toString(r.body[i].lit);
    }
  }
  os << ".";
  return os.str();
}

std::string toString(const Declaration& d) {
  std::ostringstream os;
  os << d.pred << "(";
  for (size_t i = 0; i < d.argSorts.size(); ++i) {
    if (i) os << ",";
    os << d.argSorts[i];
  }
  os << ")";
  return os.str();
}

std::string toString(const Program& p) {
  std::ostringstream os;
  os << "sorts definition\n";
  for (const auto& r : p.sortRules) os << toString(r) << "\n";
  os << "predicates declaration\n";
  for (const auto& d : p.declarations) os << toString(d) << "\n";
  os << "program rules\n";
  for (const auto& r : p.rules) os << toString(r) << "\n";
  return os.str();
}

void collectVars(const Term& t, std::vector<std::string>& out) {
  if (t.kind == TermKind::Variable) {
    if (std::find(out.begin(), out.end(), t.name) == out.end()) out.push_back(t.name);
    return;
  }
  for (const auto& a : t.args) collectVars(a, out);
}

static void collectVars(const Literal& l, std::vector<std::string>& out) {
  for (const auto& t : l.atom.args) collectVars(t, out);
}

std::vector<std::string> ruleVars(const Rule& r) {
  std::vector<std::string> out;
  for (const auto& h : r.head) collectVars(h, out);
  for (const auto& e : r.body) collectVars(e.lit, out);
  return out;
}

Term substitute(const Term& t, const Substitution& s) {
  if (t.kind == TermKind::Variable) {
    auto it = s.find(t.name);
    return it == s.end() ? t : it->second;
  }
  Term out = t;
  for (auto& a : out.args) a = substitute(a, s);
  return out;
}

Atom substitute(const Atom& a, const Substitution& s) {
  Atom out = a;
  for (auto& t : out.args) t = substitute(t, s);
  return out;
}

Literal substitute(const Literal& l, const Substitution& s) {
  Literal out = l;
  out.atom = substitute(out.atom, s);
  return out;
}

std::optional<long long> evalInt(const Term& t) {
  switch (t.kind) {
    case TermKind::Nat: return t.value;
    case TermKind::Arith: {
      auto lhs = evalInt(t.args[0]);
      auto rhs = evalInt(t.args[1]);
      if (!lhs || !rhs) return std::nullopt;
      switch (t.op) {
        case ArithOp::Add: return *lhs + *rhs;
        case ArithOp::Sub: return *lhs - *rhs;
        case ArithOp::Mul: return *lhs * *rhs;
        case ArithOp::Mod:
          if (*rhs == 0) return std::nullopt;
          return ((*lhs % *rhs) + *rhs) % *rhs;
      }
      return std::nullopt;
    }
    default: return std::nullopt;
  }
}

std::optional<Term> foldArith(const Term& t) {
  if (t.kind == TermKind::Arith) {
    auto v = evalInt(t);
    if (!v || *v < 0) return std::nullopt;
    return Term::nat(*v, t.span);
  }
  Term out = t;
  for (auto& a : out.args) {
    auto folded = foldArith(a);
    if (!folded) return std::nullopt;
    a = *folded;
  }
  return out;
}

} // namespace sparc
