#pragma once

// Brute-force reference semantics for small ground programs. Candidates are
// bitmasks over the literals that occur in the rules, complements are paired
// at the string level, and minimality is checked by walking every proper
// submask, so none of the engine's shortcuts are shared here.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparc/aspcore.hpp"

namespace oracle {

inline std::string complementOf(const std::string& lit) {
  return lit.rfind('-', 0) == 0 ? lit.substr(1) : "-" + lit;
}

struct BitProgram {
  std::vector<std::string> names;
  std::map<std::string, int> index;
  struct BRule {
    unsigned head = 0, pos = 0, neg = 0;
  };
  std::vector<BRule> rules;
  std::vector<int> comp; // index of the complement literal, -1 if absent

  explicit BitProgram(const std::vector<sparc::GroundRule>& ground) {
    auto add = [&](const sparc::Literal& l) {
      std::string s = sparc::toString(l);
      if (!index.count(s)) {
        index[s] = static_cast<int>(names.size());
        names.push_back(s);
      }
      return index[s];
    };
    for (const auto& r : ground) {
      BRule b;
      for (const auto& l : r.head) b.head |= 1u << add(l);
      for (const auto& l : r.posBody) b.pos |= 1u << add(l);
      for (const auto& l : r.negBody) b.neg |= 1u << add(l);
      rules.push_back(b);
    }
    comp.assign(names.size(), -1);
    for (std::size_t i = 0; i < names.size(); ++i) {
      auto it = index.find(complementOf(names[i]));
      if (it != index.end()) comp[i] = it->second;
    }
  }

  int size() const { return static_cast<int>(names.size()); }

  bool consistent(unsigned m) const {
    for (std::size_t i = 0; i < comp.size(); ++i)
      if (comp[i] >= 0 && (m >> i & 1) && (m >> comp[i] & 1)) return false;
    return true;
  }

  // Rules of the reduct w.r.t. candidate, negative bodies removed.
  std::vector<BRule> reduct(unsigned candidate) const {
    std::vector<BRule> kept;
    for (const auto& r : rules)
      if ((r.neg & candidate) == 0) kept.push_back(BRule{r.head, r.pos, 0});
    return kept;
  }

  static bool closedUnder(unsigned m, const std::vector<BRule>& posRules) {
    for (const auto& r : posRules)
      if ((r.pos & m) == r.pos && (r.head & m) == 0 && r.head != 0) return false;
    for (const auto& r : posRules)
      if (r.head == 0 && (r.pos & m) == r.pos) return false; // violated constraint
    return true;
  }

  bool isAnswerSet(unsigned m) const {
    if (!consistent(m)) return false;
    std::vector<BRule> red = reduct(m);
    if (!closedUnder(m, red)) return false;
    if (m == 0) return true;
    for (unsigned sub = (m - 1) & m;; sub = (sub - 1) & m) {
      if (closedUnder(sub, red)) return false;
      if (sub == 0) break;
    }
    return true;
  }

  std::set<std::string> toSet(unsigned m) const {
    std::set<std::string> s;
    for (int i = 0; i < size(); ++i)
      if (m >> i & 1) s.insert(names[i]);
    return s;
  }
};

// All answer sets as sets of printed literals. The literal universe must stay
// small; callers are expected to keep it at or below 20.
inline std::vector<std::set<std::string>> answerSets(const std::vector<sparc::GroundRule>& ground) {
  BitProgram p(ground);
  if (p.size() > 22) throw std::runtime_error("oracle universe too large: " + std::to_string(p.size()));
  std::vector<std::set<std::string>> found;
  unsigned full = (1u << p.size()) - 1;
  for (unsigned m = 0;; ++m) {
    if (p.isAnswerSet(m)) found.push_back(p.toSet(m));
    if (m == full) break;
  }
  return found;
}

inline std::set<std::string> printedSet(const sparc::AnswerSet& a) {
  std::set<std::string> s;
  for (const auto& l : a.literals) s.insert(sparc::toString(l));
  return s;
}

inline bool violated(const std::set<std::string>& m, const sparc::WeakConstraint& w) {
  for (const auto& l : w.posBody)
    if (!m.count(sparc::toString(l))) return false;
  for (const auto& l : w.negBody)
    if (m.count(sparc::toString(l))) return false;
  return true;
}

// Distinct violated weak constraints, duplicates collapsing to one.
inline std::size_t violationCount(const std::set<std::string>& m,
                                  const std::vector<sparc::WeakConstraint>& weaks) {
  std::set<std::string> seen;
  for (const auto& w : weaks) {
    if (!violated(m, w)) continue;
    std::string key;
    for (const auto& l : w.posBody) key += sparc::toString(l) + ";";
    key += "|";
    for (const auto& l : w.negBody) key += sparc::toString(l) + ";";
    seen.insert(key);
  }
  return seen.size();
}

// Answer sets with the fewest violated weak constraints.
inline std::vector<std::set<std::string>> bestWeakSets(
    const std::vector<sparc::GroundRule>& ground, const std::vector<sparc::WeakConstraint>& weaks) {
  std::vector<std::set<std::string>> all = oracle::answerSets(ground);
  std::size_t best = SIZE_MAX;
  for (const auto& m : all) best = std::min(best, violationCount(m, weaks));
  std::vector<std::set<std::string>> out;
  for (const auto& m : all)
    if (violationCount(m, weaks) == best) out.push_back(m);
  return out;
}

// Independent CR semantics: try cr-rule subsets by growing cardinality and
// take every answer set produced at the first consistent level.
inline std::vector<std::set<std::string>> sparcSets(const sparc::GroundProgram& g) {
  std::vector<sparc::GroundRule> base;
  for (const auto& r : g.rules)
    if (r.kind == sparc::RuleKind::Regular) base.push_back(r);
  for (const auto& a : g.usedSortAtoms) {
    sparc::GroundRule fact;
    fact.head.push_back(sparc::Literal::positive(a));
    base.push_back(fact);
  }
  std::vector<sparc::GroundRule> crs;
  for (const auto& r : g.rules)
    if (r.kind == sparc::RuleKind::CR) crs.push_back(r);

  for (std::size_t k = 0; k <= crs.size(); ++k) {
    std::set<std::set<std::string>> level;
    std::vector<bool> pickMask(crs.size(), false);
    std::fill(pickMask.end() - static_cast<long>(k), pickMask.end(), true);
    do {
      std::vector<sparc::GroundRule> rules = base;
      for (std::size_t i = 0; i < crs.size(); ++i)
        if (pickMask[i]) {
          sparc::GroundRule r = crs[i];
          r.kind = sparc::RuleKind::Regular;
          rules.push_back(r);
        }
      for (const auto& m : oracle::answerSets(rules)) level.insert(m);
    } while (std::next_permutation(pickMask.begin(), pickMask.end()));
    if (!level.empty()) return {level.begin(), level.end()};
  }
  return {};
}

} // namespace oracle
