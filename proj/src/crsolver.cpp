#include "sparc/crsolver.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace sparc {

namespace {

Term instanceName(const GroundRule& cr, std::size_t index) {
  if (cr.name) return *cr.name;
  // Hand-built ground programs may omit names; fall back to the position.
  return Term::func("rn", {Term::nat(static_cast<long long>(index + 1))});
}

// k-subsets of {0..n-1} in colexicographic order: the largest element grows
// last, so {0,1} precedes {0,2} precedes {1,2}.
template <typename F>
void colexRec(std::size_t limit, std::size_t k, std::vector<std::size_t>& chosen, const F& emit) {
  if (k == 0) {
    std::vector<std::size_t> combo(chosen.rbegin(), chosen.rend());
    emit(combo);
    return;
  }
  for (std::size_t t = k - 1; t < limit; ++t) {
    chosen.push_back(t);
    colexRec(t, k - 1, chosen, emit);
    chosen.pop_back();
  }
}

int compareNameVectors(const std::vector<Term>& a, const std::vector<Term>& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    int c = compareTerms(a[i], b[i]);
    if (c != 0) return c;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

} // namespace

std::string toString(const AbductiveSupport& s) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < s.names.size(); ++i) {
    if (i) os << ", ";
    os << toString(s.names[i]);
  }
  os << "}";
  return os.str();
}

bool supportEq(const AbductiveSupport& a, const AbductiveSupport& b) {
  return a.indices == b.indices;
}

GroundRule alpha(const GroundRule& r) {
  GroundRule out = r;
  out.kind = RuleKind::Regular;
  return out;
}

std::vector<GroundRule> regularPart(const GroundProgram& g) {
  std::vector<GroundRule> rules = g.regular();
  for (const auto& atom : g.usedSortAtoms) {
    GroundRule fact;
    fact.head.push_back(Literal::positive(atom));
    fact.origin = -1;
    rules.push_back(std::move(fact));
  }
  return rules;
}

std::vector<AbductiveSupport> findSupports(const GroundProgram& g, const SolveOptions& opts) {
  const std::vector<GroundRule> base = regularPart(g);
  const std::vector<GroundRule> cr = g.crRules();

  for (std::size_t k = 0; k <= cr.size(); ++k) {
    std::vector<AbductiveSupport> level;
    std::vector<std::size_t> chosen;
    colexRec(cr.size(), k, chosen, [&](const std::vector<std::size_t>& combo) {
      std::vector<GroundRule> rules = base;
      for (std::size_t i : combo) rules.push_back(alpha(cr[i]));
      if (!hasAnswerSet(rules, opts)) return;
      AbductiveSupport s;
      for (std::size_t i : combo) {
        s.names.push_back(instanceName(cr[i], i));
        s.indices.push_back(i);
      }
      // Keep names and indices aligned while ordering by name term.
      std::vector<std::size_t> order(combo.size());
      for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
      std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return compareTerms(s.names[x], s.names[y]) < 0;
      });
      AbductiveSupport sorted;
      for (std::size_t j : order) {
        sorted.names.push_back(s.names[j]);
        sorted.indices.push_back(s.indices[j]);
      }
      level.push_back(std::move(sorted));
    });
    if (!level.empty()) {
      std::sort(level.begin(), level.end(), [](const AbductiveSupport& a, const AbductiveSupport& b) {
        return compareNameVectors(a.names, b.names) < 0;
      });
      return level;
    }
  }
  return {};
}

std::vector<SparcAnswer> sparcAnswerSets(const GroundProgram& g, const SolveOptions& opts) {
  const std::vector<GroundRule> base = regularPart(g);
  const std::vector<GroundRule> cr = g.crRules();

  SolveOptions full = opts;
  full.limit = 0; // deduplication needs the complete enumeration per support

  std::vector<SparcAnswer> out;
  std::set<std::string> seen;
  for (const auto& support : findSupports(g, opts)) {
    std::vector<GroundRule> rules = base;
    for (std::size_t i : support.indices) rules.push_back(alpha(cr[i]));
    for (auto& a : answerSets(rules, full)) {
      if (!seen.insert(toString(a)).second) continue;
      out.push_back(SparcAnswer{std::move(a), support});
    }
  }
  std::sort(out.begin(), out.end(), [](const SparcAnswer& a, const SparcAnswer& b) {
    return answerSetLess(a.set, b.set);
  });
  if (opts.limit > 0 && out.size() > opts.limit) out.resize(opts.limit);
  return out;
}

AnswerSet visibleLiterals(const AnswerSet& a, const GroundProgram& g, bool showSorts) {
  if (showSorts) return a;
  std::set<std::string> sortAtoms;
  for (const auto& atom : g.sortFacts) sortAtoms.insert(toString(atom));
  std::set<std::string> used;
  for (const auto& atom : g.usedSortAtoms) used.insert(toString(atom));

  std::vector<Literal> kept;
  for (const auto& l : a.literals) {
    if (!l.negated) {
      std::string key = toString(l.atom);
      if (sortAtoms.count(key) && (l.atom.args.size() == 1 || !used.count(key))) continue;
    }
    kept.push_back(l);
  }
  return makeAnswerSet(std::move(kept));
}

} // namespace sparc
