#pragma once

#include "sparc/aspcore.hpp"

namespace sparc {

// A minimal-cardinality set of ground cr-rule instances whose alpha
// transforms restore consistency of the regular part.
struct AbductiveSupport {
  std::vector<Term> names;          // rn(i,...) terms, one per chosen instance
  std::vector<std::size_t> indices; // positions within GroundProgram::crRules()
};

std::string toString(const AbductiveSupport& s);
bool supportEq(const AbductiveSupport& a, const AbductiveSupport& b);

// Turns :+ into :- ; the rule is otherwise unchanged.
GroundRule alpha(const GroundRule& r);

// The regular ground rules together with facts for the sort atoms their
// bodies mention.
std::vector<GroundRule> regularPart(const GroundProgram& g);

// Enumerates subsets of the ground cr-rules by growing cardinality and
// returns every consistent subset of the first level that has one, ordered
// by name terms. Empty result means no subset restores consistency.
std::vector<AbductiveSupport> findSupports(const GroundProgram& g, const SolveOptions& opts = {});

struct SparcAnswer {
  AnswerSet set; // includes the sort atoms the rules use as facts
  AbductiveSupport support;
};

// Answer sets of R extended by each abductive support, deduplicated across
// supports (the first witnessing support is kept), ordered by answerSetLess.
std::vector<SparcAnswer> sparcAnswerSets(const GroundProgram& g, const SolveOptions& opts = {});

// Reporting filter: unary sort atoms are dropped, as are sort atoms that no
// ground rule mentions; showSorts keeps the set as is.
AnswerSet visibleLiterals(const AnswerSet& a, const GroundProgram& g, bool showSorts);

} // namespace sparc
