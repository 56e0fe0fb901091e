#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sparc/diagnostics.hpp"

namespace sparc {

enum class ArithOp { Add, Sub, Mul, Mod };
enum class TermKind { Variable, Nat, SymConst, Func, Arith };

// A term is a variable, a natural-number literal, a symbolic constant,
// a function term f(t1,...,tn), or a binary arithmetic expression.
struct Term {
  TermKind kind = TermKind::SymConst;
  std::string name;          // Variable, SymConst, Func functor
  long long value = 0;       // Nat
  ArithOp op = ArithOp::Add; // Arith
  std::vector<Term> args;    // Func arguments; Arith has args[0], args[1]
  SourceSpan span;

  static Term variable(std::string n, SourceSpan s = {});
  static Term nat(long long v, SourceSpan s = {});
  static Term symConst(std::string n, SourceSpan s = {});
  static Term func(std::string n, std::vector<Term> as, SourceSpan s = {});
  static Term arith(ArithOp o, Term lhs, Term rhs, SourceSpan s = {});

  bool isGround() const; // contains no variables and no arithmetic nodes
};

enum class RelOp { Eq, Neq, Lt, Le, Gt, Ge };
enum class AtomKind { Pred, ArithRel, SymRel };

struct Atom {
  AtomKind kind = AtomKind::Pred;
  std::string pred;       // Pred only
  RelOp rel = RelOp::Eq;  // ArithRel / SymRel
  std::vector<Term> args; // Pred arguments; relations have exactly two
  SourceSpan span;

  static Atom predicate(std::string p, std::vector<Term> as, SourceSpan s = {});
  static Atom relation(AtomKind k, RelOp r, Term lhs, Term rhs, SourceSpan s = {});
};

struct Literal {
  Atom atom;
  bool negated = false; // classical negation; only Pred atoms may carry it
  SourceSpan span;

  static Literal positive(Atom a);
  static Literal classicNeg(Atom a);
  Literal complement() const;
};

// One body member: a literal, optionally under default negation ("not").
struct BodyElem {
  Literal lit;
  bool naf = false;
};

enum class RuleKind { Regular, CR };

struct Rule {
  RuleKind kind = RuleKind::Regular;
  std::vector<Literal> head; // empty for constraints; exactly one for CR rules
  std::vector<BodyElem> body;
  int sourceIndex = 0; // position within its program part, 0-based
  SourceSpan span;

  std::vector<Literal> posBody() const;
  std::vector<Literal> negBody() const;
};

struct Declaration {
  std::string pred;
  std::vector<std::string> argSorts; // sort names; may be empty (0-ary)
  SourceSpan span;
};

struct Program {
  std::vector<Rule> sortRules;
  std::vector<Declaration> declarations;
  std::vector<Rule> rules;
};

// --- structural comparison (spans ignored) ---

int compareTerms(const Term& a, const Term& b);
bool termEq(const Term& a, const Term& b);
bool termLess(const Term& a, const Term& b);

int compareAtoms(const Atom& a, const Atom& b);
bool atomEq(const Atom& a, const Atom& b);

int compareLiterals(const Literal& a, const Literal& b);
bool literalEq(const Literal& a, const Literal& b);

bool ruleEq(const Rule& a, const Rule& b);
bool programEq(const Program& a, const Program& b);

// --- printing ---

std::string toString(const Term& t);
std::string toString(const Atom& a);
std::string toString(const Literal& l);
std::string toString(const Rule& r);
std::string toString(const Declaration& d);
std::string toString(const Program& p);

// --- variables and substitution ---

using Substitution = std::map<std::string, Term>;

void collectVars(const Term& t, std::vector<std::string>& out);
// Distinct variables in first-occurrence order, head first, then body in
// written order.
std::vector<std::string> ruleVars(const Rule& r);

Term substitute(const Term& t, const Substitution& s);
Atom substitute(const Atom& a, const Substitution& s);
Literal substitute(const Literal& l, const Substitution& s);

// --- arithmetic evaluation ---

// Integer value of a ground term built from naturals and arithmetic ops.
// nullopt if the term contains a symbolic constant, function, or variable.
// Negative intermediate and final values are representable here; callers
// decide what a negative final value means.
std::optional<long long> evalInt(const Term& t);

// Folds every arithmetic subterm of a ground term to a Nat. nullopt when an
// arithmetic subterm has a symbolic operand or yields a negative value (no
// such ground term exists in the language).
std::optional<Term> foldArith(const Term& t);

} // namespace sparc
