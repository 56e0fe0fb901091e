#pragma once

#include <cstddef>

#include "sparc/ground.hpp"

namespace sparc {

// A consistent set of ground literals, ordered by printed form.
struct AnswerSet {
  std::vector<Literal> literals;

  bool contains(const Literal& l) const;
};

AnswerSet makeAnswerSet(std::vector<Literal> lits);
std::string toString(const AnswerSet& a);
bool answerSetEq(const AnswerSet& a, const AnswerSet& b);

// Orders by cardinality first, then by the printed literals.
bool answerSetLess(const AnswerSet& a, const AnswerSet& b);

// Headless rule that answer sets should violate as rarely as possible.
// Violated by A when posBody is contained in A and negBody misses A.
struct WeakConstraint {
  std::vector<Literal> posBody;
  std::vector<Literal> negBody;
};

bool violates(const AnswerSet& a, const WeakConstraint& w);

// Counts distinct violated constraints; duplicates in weaks count once.
std::size_t violatedCount(const AnswerSet& a, const std::vector<WeakConstraint>& weaks);

struct SolveOptions {
  std::size_t candidateCap = std::size_t(1) << 22; // explored candidates before CapacityError
  std::size_t limit = 0;                           // 0 keeps every answer set
};

// Reduct relative to a candidate: rules whose negative body meets the
// candidate are deleted, the negative bodies of the remaining rules are removed.
std::vector<GroundRule> reduct(const std::vector<GroundRule>& rules,
                               const std::vector<Literal>& candidate);

// True iff candidate is consistent, closed under its reduct, and no proper
// subset of it is closed under that reduct.
bool isAnswerSet(const std::vector<GroundRule>& rules, const std::vector<Literal>& candidate);

// Every answer set of a ground regular program, ordered by answerSetLess.
// Throws CapacityError when the search exceeds opts.candidateCap.
std::vector<AnswerSet> answerSets(const std::vector<GroundRule>& rules,
                                  const SolveOptions& opts = {});

// Existence check that stops at the first answer set found.
bool hasAnswerSet(const std::vector<GroundRule>& rules, const SolveOptions& opts = {});

// The answer sets violating the minimum number of weak constraints.
std::vector<AnswerSet> answerSetsWeak(const std::vector<GroundRule>& rules,
                                      const std::vector<WeakConstraint>& weaks,
                                      const SolveOptions& opts = {});

} // namespace sparc
