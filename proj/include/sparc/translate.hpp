#pragma once

#include "sparc/aspcore.hpp"

namespace sparc {

// The name term rn(i, X_1, ..., X_n) of the i-th cr-rule; the variables are
// the rule's distinct variables in first-occurrence order, head first.
struct RuleName {
  int index = 0;
  std::vector<std::string> vars;

  Term toTerm() const;
};

RuleName nameCrRule(const Rule& r, int index);

struct CounterpartEntry {
  Rule rule;
  bool weak = false; // emitted as ":~ body." instead of a rule
};

// The weak-constraint program a source program compiles to: the sorts
// definition copied verbatim, then per source rule either the rule with its
// sort atoms appended or, for a cr-rule, the applicability triple.
struct CounterpartProgram {
  std::vector<Rule> sortRules;
  std::vector<CounterpartEntry> entries;
};

struct TranslateResult {
  CounterpartProgram counterpart;
  std::vector<Diagnostic> diagnostics;
  bool ok = false;
};

// Appends the sort atom s_j(t_j) for every argument of every declared-atom
// occurrence (the predefined sort nat contributes none, duplicates are kept
// once) and rewrites each cr-rule into a choice rule over its appl atom, a
// weak constraint against applying it, and the guarded original rule.
// Rejects programs that already use the reserved symbols appl or rn.
TranslateResult translateProgram(const CheckedProgram& cp);

// One rule per line, ' v ' between head literals, ':-' and ':~' arrows.
std::string emitDlvText(const CounterpartProgram& p);

// Reads back the DLV subset produced by emitDlvText; every line becomes an
// entry (the sorts-definition split is not recoverable from plain text).
struct DlvParseResult {
  CounterpartProgram program;
  std::vector<Diagnostic> diagnostics;
  bool ok = false;
};

DlvParseResult parseDlvText(std::string_view text);

// Drops appl literals of either sign.
AnswerSet stripAppl(const AnswerSet& a);

// Ground image of a counterpart program for the internal engine: the copied
// sorts definition contributes its answer set as facts, the entries are
// instantiated with variable domains read off their positive sort atoms.
struct GroundCounterpart {
  std::vector<GroundRule> rules;
  std::vector<WeakConstraint> weaks;
  std::vector<Diagnostic> diagnostics;
  bool ok = false;
};

GroundCounterpart groundCounterpart(const CounterpartProgram& p, const CheckedProgram& cp);

// Weak-minimal answer sets of the counterpart, computed internally.
std::vector<AnswerSet> solveCounterpart(const CounterpartProgram& p, const CheckedProgram& cp,
                                        const SolveOptions& opts = {});

// Runs an external solver on the emitted text and parses the answer sets it
// prints as "{l1, l2, ...}" lines. Throws SolverLaunchError when the process
// cannot be started, SolverExitError on a nonzero exit status, and
// SolverOutputError when a reported set does not parse.
std::vector<AnswerSet> runExternalSolver(const std::string& text, const std::string& solverPath,
                                         const std::vector<std::string>& args);

} // namespace sparc
