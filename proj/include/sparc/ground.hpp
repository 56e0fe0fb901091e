#pragma once

#include <optional>
#include <set>

#include "sparc/sortcheck.hpp"

namespace sparc {

struct GroundRule {
  RuleKind kind = RuleKind::Regular;
  std::vector<Literal> head;
  std::vector<Literal> posBody;
  std::vector<Literal> negBody;
  int origin = 0;            // index of the source rule
  std::optional<Term> name;  // rn(i,...) for cr-rule instances
};

std::string toString(const GroundRule& r);
bool groundRuleEq(const GroundRule& a, const GroundRule& b);

struct GroundProgram {
  std::vector<GroundRule> rules; // grounding order: source rule, then substitution
  std::vector<Atom> sortFacts;   // every atom of the sort interpretation
  std::vector<Atom> usedSortAtoms; // sort atoms kept in rule bodies, deduplicated
  std::set<std::string> definedSortNames;

  std::vector<GroundRule> regular() const;
  std::vector<GroundRule> crRules() const;
};

struct GroundResult {
  GroundProgram program;
  std::vector<Diagnostic> diagnostics;
  bool ok = false;
};

inline constexpr std::uint64_t kGroundInstanceCap = 1u << 20;

// All ground instances of one rule that respect the declared sorts. Variable
// substitutions range over the intersection of the sorts of the positions
// each variable occupies; instances with a failing sort membership or an
// unsatisfiable evaluated condition are dropped, and evaluated conditions
// that hold are simplified away except for positive sort-predicate atoms,
// which stay in the body (their atoms are later supplied as facts).
// crIndex is the 1-based position among cr-rules, 0 for regular rules.
// Exceeding instanceCap kept instances throws CapacityError.
std::vector<GroundRule> groundRule(const Rule& r, const CheckedProgram& cp, int crIndex,
                                   std::vector<Diagnostic>& diags,
                                   std::uint64_t instanceCap = kGroundInstanceCap);

GroundResult groundProgram(const CheckedProgram& cp,
                           std::uint64_t instanceCap = kGroundInstanceCap);

} // namespace sparc
