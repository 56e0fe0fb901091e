#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sparc/ast.hpp"

namespace sparc {

// The unique answer set of the sorts definition, organized for lookups.
// Unary predicates are the defined sorts; "nat" is predefined and intensional
// (membership test only, it is never enumerated).
struct SortInterpretation {
  std::map<std::string, std::vector<Term>> defined;              // sort name -> sorted terms
  std::map<std::pair<std::string, int>, std::vector<std::vector<Term>>> relations;
  std::vector<Atom> sortAtoms;                                   // all of S, deterministic order
  std::vector<Term> groundTerms;                                 // union of defined sorts, sorted

  bool isSortName(const std::string& name) const; // defined sort or "nat"
  bool isDefinedSort(const std::string& name) const;
  bool isSortRulePred(const std::string& name) const; // any predicate occurring in the sorts part
  // Membership of a ground term in a named sort ("nat" admits naturals).
  bool inSort(const std::string& sortName, const Term& t) const;
  bool holds(const Atom& groundPredAtom) const; // atom is in S
  bool termHasSort(const Term& groundTerm) const;

  std::set<std::string> sortPartPreds; // every predicate symbol occurring in the sorts part
  std::set<std::pair<std::string, int>> sortPartPredArities;

private:
  std::set<std::string> atomKeys_;
  friend struct SortEvaluator;
};

struct DeclarationTable {
  std::map<std::pair<std::string, int>, std::vector<std::string>> bySignature;
  const std::vector<std::string>* lookup(const std::string& pred, int arity) const;
  bool declaresSymbol(const std::string& pred) const;
};

struct SortcheckOptions {
  std::uint64_t atomCap = 100000; // limit on derived sort atoms
};

// Structural conditions on the sorts definition: heads are relation-free
// atoms (re-checked defensively; the parser enforces it too), every variable
// of a rule is bound by a positive body predicate atom, and negation is
// stratified. Returns diagnostics; empty means valid.
std::vector<Diagnostic> validateSortRules(const std::vector<Rule>& sortRules);

struct SortEvalResult {
  SortInterpretation interp;
  std::vector<Diagnostic> diagnostics;
  bool ok = false;
};

// Bottom-up evaluation of a validated sorts definition, stratum by stratum.
// A derived negative head argument is reported as a diagnostic; exceeding
// the atom cap throws CapacityError.
SortEvalResult evaluateSorts(const std::vector<Rule>& sortRules,
                             const SortcheckOptions& opts = {});

// Declaration-table construction plus the checks that need the sort
// interpretation: disjointness of declared and sort predicates, known sort
// names, declared use of every program-rule predicate, no sort predicate in
// a program-rule head, sort membership of ground arguments, and a defined
// sort for every ground symbolic term occurring anywhere in the program.
std::vector<Diagnostic> validateDeclarations(const Program& p, const SortInterpretation& s,
                                             DeclarationTable& out);

struct Language {
  std::vector<Term> terms;              // ground terms defined by the sorts part
  std::vector<std::string> predicates;  // sort-part and declared predicate symbols
};

Language extractLanguage(const Program& p, const SortInterpretation& s);

struct CheckedProgram {
  Program program;
  SortInterpretation sorts;
  DeclarationTable decls;
};

struct CheckResult {
  std::optional<CheckedProgram> checked;
  std::vector<Diagnostic> diagnostics;
};

// Runs the full validation pipeline on a parsed program.
CheckResult checkProgram(Program p, const SortcheckOptions& opts = {});

} // namespace sparc
