#include "sparc/aspcore.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace sparc {

namespace {

std::set<std::string> printedSet(const std::vector<Literal>& lits) {
  std::set<std::string> out;
  for (const auto& l : lits) out.insert(toString(l));
  return out;
}

// Closure test: every rule whose positive body is contained in the set must
// have a head literal in the set. Assumes negation-free rules.
bool closedUnder(const std::vector<GroundRule>& red, const std::set<std::string>& cand) {
  for (const auto& r : red) {
    bool fires = true;
    for (const auto& p : r.posBody)
      if (!cand.count(toString(p))) {
        fires = false;
        break;
      }
    if (!fires) continue;
    bool covered = false;
    for (const auto& h : r.head)
      if (cand.count(toString(h))) {
        covered = true;
        break;
      }
    if (!covered) return false;
  }
  return true;
}

bool allNormalHeads(const std::vector<GroundRule>& red) {
  for (const auto& r : red)
    if (r.head.size() > 1) return false;
  return true;
}

// Least fixpoint of a negation-free normal program, as printed literals.
std::set<std::string> leastModel(const std::vector<GroundRule>& red) {
  std::set<std::string> derived;
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& r : red) {
      if (r.head.empty()) continue;
      std::string h = toString(r.head[0]);
      if (derived.count(h)) continue;
      bool fires = true;
      for (const auto& p : r.posBody)
        if (!derived.count(toString(p))) {
          fires = false;
          break;
        }
      if (fires) {
        derived.insert(std::move(h));
        grew = true;
      }
    }
  }
  return derived;
}

// No proper subset of the candidate is closed under the reduct. The subsets
// are explored as bitmasks over the candidate's literals.
bool properSubsetsOpen(const std::vector<GroundRule>& red, const std::vector<Literal>& candidate,
                       std::size_t cap) {
  std::size_t m = candidate.size();
  if (m == 0) return true;
  if (m > 22 || (std::size_t(1) << m) > cap)
    throw CapacityError("minimality check needs " + std::to_string(m) +
                        " literals of subset space, beyond the candidate cap");
  std::map<std::string, int> bit;
  for (std::size_t i = 0; i < m; ++i) bit[toString(candidate[i])] = static_cast<int>(i);

  struct MaskRule {
    unsigned pos = 0, head = 0;
  };
  std::vector<MaskRule> mrules;
  for (const auto& r : red) {
    MaskRule mr;
    bool relevant = true;
    for (const auto& p : r.posBody) {
      auto it = bit.find(toString(p));
      if (it == bit.end()) {
        relevant = false; // body mentions a literal outside the candidate
        break;
      }
      mr.pos |= 1u << it->second;
    }
    if (!relevant) continue;
    for (const auto& h : r.head) {
      auto it = bit.find(toString(h));
      if (it != bit.end()) mr.head |= 1u << it->second;
    }
    mrules.push_back(mr);
  }

  unsigned full = (m == 32) ? ~0u : ((1u << m) - 1);
  for (unsigned mask = 0; mask < full; ++mask) {
    bool closed = true;
    for (const auto& mr : mrules)
      if ((mr.pos & ~mask) == 0 && (mr.head & mask) == 0) {
        closed = false;
        break;
      }
    if (closed) return false;
  }
  return true;
}

enum : char { kUnknown = 0, kTrue = 1, kFalse = 2 };

struct IRule {
  std::vector<int> head, pos, neg;
};

struct Engine {
  SolveOptions opts;
  std::vector<Literal> lits;
  std::vector<std::string> names;
  std::map<std::string, int> byName;
  std::vector<int> comp;     // complement literal, -1 when absent
  std::vector<char> isHead;  // occurs in some rule head
  std::vector<IRule> rules;
  std::vector<std::vector<int>> headRules; // literal -> rules with it in the head
  std::size_t explored = 0;
  std::vector<AnswerSet> found;
  bool stopAtFirst = false;
  bool foundAny = false;

  explicit Engine(const SolveOptions& o) : opts(o) {}

  int intern(const Literal& l) {
    std::string s = toString(l);
    auto it = byName.find(s);
    if (it != byName.end()) return it->second;
    int id = static_cast<int>(lits.size());
    lits.push_back(l);
    names.push_back(s);
    byName.emplace(std::move(s), id);
    comp.push_back(-1);
    isHead.push_back(0);
    auto ct = byName.find(toString(l.complement()));
    if (ct != byName.end()) {
      comp[id] = ct->second;
      comp[ct->second] = id;
    }
    return id;
  }

  static void pushUnique(std::vector<int>& list, int v) {
    if (std::find(list.begin(), list.end(), v) == list.end()) list.push_back(v);
  }

  void build(const std::vector<GroundRule>& in) {
    for (const auto& g : in) {
      IRule r;
      for (const auto& l : g.head) pushUnique(r.head, intern(l));
      for (const auto& l : g.posBody) pushUnique(r.pos, intern(l));
      for (const auto& l : g.negBody) pushUnique(r.neg, intern(l));
      bool contradictoryBody = false;
      for (int p : r.pos)
        if (std::find(r.neg.begin(), r.neg.end(), p) != r.neg.end()) contradictoryBody = true;
      if (contradictoryBody) continue;
      for (int h : r.head) isHead[h] = 1;
      rules.push_back(std::move(r));
    }
    headRules.assign(lits.size(), {});
    for (std::size_t i = 0; i < rules.size(); ++i)
      for (int h : rules[i].head) headRules[h].push_back(static_cast<int>(i));
  }

  bool normalProgram() const {
    for (const auto& r : rules)
      if (r.head.size() > 1) return false;
    return true;
  }

  // Perfect-model evaluation; nullopt when some literal depends on itself
  // through negation. The returned list holds zero or one answer sets.
  std::optional<std::vector<AnswerSet>> tryStratified() {
    int n = static_cast<int>(lits.size());
    std::vector<int> stratum(n, 0);
    bool changed = true;
    int pass = 0;
    while (changed) {
      if (++pass > n + 2) return std::nullopt;
      changed = false;
      for (const auto& r : rules) {
        if (r.head.empty()) continue;
        int h = r.head[0];
        for (int p : r.pos)
          if (stratum[h] < stratum[p]) {
            stratum[h] = stratum[p];
            changed = true;
          }
        for (int g : r.neg)
          if (stratum[h] < stratum[g] + 1) {
            stratum[h] = stratum[g] + 1;
            changed = true;
          }
      }
    }
    int maxStratum = 0;
    for (int s : stratum) maxStratum = std::max(maxStratum, s);

    std::vector<char> val(n, kFalse);
    for (int s = 0; s <= maxStratum; ++s) {
      bool grew = true;
      while (grew) {
        grew = false;
        for (const auto& r : rules) {
          if (r.head.empty()) continue;
          int h = r.head[0];
          if (stratum[h] != s || val[h] == kTrue) continue;
          bool fires = true;
          for (int p : r.pos)
            if (val[p] != kTrue) {
              fires = false;
              break;
            }
          if (fires)
            for (int g : r.neg)
              if (val[g] == kTrue) {
                fires = false;
                break;
              }
          if (fires) {
            val[h] = kTrue;
            grew = true;
          }
        }
      }
    }

    std::vector<AnswerSet> result;
    for (const auto& r : rules) {
      if (!r.head.empty()) continue;
      bool fires = true;
      for (int p : r.pos)
        if (val[p] != kTrue) {
          fires = false;
          break;
        }
      if (fires)
        for (int g : r.neg)
          if (val[g] == kTrue) {
            fires = false;
            break;
          }
      if (fires) return result; // violated constraint: no answer set
    }
    for (int l = 0; l < n; ++l)
      if (val[l] == kTrue && comp[l] != -1 && val[comp[l]] == kTrue)
        return result; // contradictory closure: no answer set

    std::vector<Literal> model;
    for (int l = 0; l < n; ++l)
      if (val[l] == kTrue) model.push_back(lits[l]);
    result.push_back(makeAnswerSet(std::move(model)));
    return result;
  }

  // Rewrites head-cycle-free disjunctions into normal rules by moving the
  // other head literals into the negative body; answer sets are preserved.
  bool shiftIfHeadCycleFree() {
    int n = static_cast<int>(lits.size());
    std::vector<std::vector<int>> adj(n);
    for (const auto& r : rules)
      for (int h : r.head)
        for (int p : r.pos) adj[h].push_back(p);

    // Iterative Tarjan strongly-connected components.
    std::vector<int> sccId(n, -1), low(n, 0), num(n, -1), stk;
    std::vector<char> onStk(n, 0);
    int counter = 0, sccCount = 0;
    struct Frame {
      int v;
      std::size_t edge;
    };
    for (int start = 0; start < n; ++start) {
      if (num[start] != -1) continue;
      std::vector<Frame> frames{{start, 0}};
      num[start] = low[start] = counter++;
      stk.push_back(start);
      onStk[start] = 1;
      while (!frames.empty()) {
        Frame& f = frames.back();
        if (f.edge < adj[f.v].size()) {
          int w = adj[f.v][f.edge++];
          if (num[w] == -1) {
            num[w] = low[w] = counter++;
            stk.push_back(w);
            onStk[w] = 1;
            frames.push_back({w, 0});
          } else if (onStk[w]) {
            low[f.v] = std::min(low[f.v], num[w]);
          }
        } else {
          if (low[f.v] == num[f.v]) {
            for (;;) {
              int w = stk.back();
              stk.pop_back();
              onStk[w] = 0;
              sccId[w] = sccCount;
              if (w == f.v) break;
            }
            ++sccCount;
          }
          int v = f.v;
          frames.pop_back();
          if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
        }
      }
    }

    for (const auto& r : rules)
      if (r.head.size() > 1)
        for (std::size_t i = 0; i < r.head.size(); ++i)
          for (std::size_t j = i + 1; j < r.head.size(); ++j)
            if (sccId[r.head[i]] == sccId[r.head[j]]) return false;

    std::vector<IRule> shifted;
    for (const auto& r : rules) {
      if (r.head.size() <= 1) {
        shifted.push_back(r);
        continue;
      }
      for (std::size_t i = 0; i < r.head.size(); ++i) {
        IRule s;
        s.head = {r.head[i]};
        s.pos = r.pos;
        s.neg = r.neg;
        for (std::size_t j = 0; j < r.head.size(); ++j)
          if (j != i) pushUnique(s.neg, r.head[j]);
        shifted.push_back(std::move(s));
      }
    }
    rules = std::move(shifted);
    headRules.assign(lits.size(), {});
    for (std::size_t i = 0; i < rules.size(); ++i)
      for (int h : rules[i].head) headRules[h].push_back(static_cast<int>(i));
    return true;
  }

  bool setVal(std::vector<char>& val, int l, char v) {
    if (val[l] == v) return true;
    if (val[l] != kUnknown) return false;
    val[l] = v;
    if (v == kTrue && comp[l] != -1) {
      if (val[comp[l]] == kTrue) return false;
      val[comp[l]] = kFalse;
    }
    return true;
  }

  bool bodyViolated(const IRule& r, const std::vector<char>& val) const {
    for (int p : r.pos)
      if (val[p] == kFalse) return true;
    for (int g : r.neg)
      if (val[g] == kTrue) return true;
    return false;
  }

  bool propagate(std::vector<char>& val) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& r : rules) {
        bool violated = false, satisfied = true;
        for (int p : r.pos) {
          if (val[p] == kFalse) {
            violated = true;
            break;
          }
          if (val[p] != kTrue) satisfied = false;
        }
        if (!violated)
          for (int g : r.neg) {
            if (val[g] == kTrue) {
              violated = true;
              break;
            }
            if (val[g] != kFalse) satisfied = false;
          }
        if (violated || !satisfied) continue;
        int open = -1, opens = 0;
        bool covered = false;
        for (int h : r.head) {
          if (val[h] == kTrue) {
            covered = true;
            break;
          }
          if (val[h] == kUnknown) {
            ++opens;
            open = h;
          }
        }
        if (covered) continue;
        if (opens == 0) return false; // satisfied body, fully refuted head
        if (opens == 1) {
          if (!setVal(val, open, kTrue)) return false;
          changed = true;
        }
      }
      for (int l = 0; l < static_cast<int>(lits.size()); ++l) {
        if (val[l] == kFalse) continue;
        bool supported = false;
        for (int ri : headRules[l])
          if (!bodyViolated(rules[ri], val)) {
            supported = true;
            break;
          }
        if (!supported) {
          if (val[l] == kTrue) return false;
          val[l] = kFalse;
          changed = true;
        }
      }
    }
    return true;
  }

  void verifyLeaf(const std::vector<char>& val) {
    std::vector<int> trueLits;
    for (int l = 0; l < static_cast<int>(lits.size()); ++l)
      if (val[l] == kTrue) trueLits.push_back(l);

    // Reduct of the interned rules; propagation already guarantees the
    // candidate is consistent and closed, minimality remains to check.
    std::vector<IRule> red;
    bool normal = true;
    for (const auto& r : rules) {
      bool deleted = false;
      for (int g : r.neg)
        if (val[g] == kTrue) {
          deleted = true;
          break;
        }
      if (deleted) continue;
      IRule nr;
      nr.head = r.head;
      nr.pos = r.pos;
      red.push_back(std::move(nr));
      if (r.head.size() > 1) normal = false;
    }

    bool minimal;
    if (normal) {
      std::vector<char> derived(lits.size(), 0);
      bool grew = true;
      while (grew) {
        grew = false;
        for (const auto& r : red) {
          if (r.head.empty() || derived[r.head[0]]) continue;
          bool fires = true;
          for (int p : r.pos)
            if (!derived[p]) {
              fires = false;
              break;
            }
          if (fires) {
            derived[r.head[0]] = 1;
            grew = true;
          }
        }
      }
      minimal = true;
      for (int l = 0; l < static_cast<int>(lits.size()); ++l)
        if ((val[l] == kTrue) != (derived[l] == 1)) {
          minimal = false;
          break;
        }
    } else {
      std::vector<GroundRule> redRules;
      for (const auto& r : red) {
        GroundRule g;
        for (int h : r.head) g.head.push_back(lits[h]);
        for (int p : r.pos) g.posBody.push_back(lits[p]);
        redRules.push_back(std::move(g));
      }
      std::vector<Literal> cand;
      for (int l : trueLits) cand.push_back(lits[l]);
      std::size_t budget =
          opts.candidateCap > explored ? opts.candidateCap - explored : 0;
      minimal = properSubsetsOpen(redRules, cand, budget);
      explored += std::size_t(1) << std::min<std::size_t>(cand.size(), 22);
    }
    if (!minimal) return;

    foundAny = true;
    if (stopAtFirst) return;
    std::vector<Literal> model;
    for (int l : trueLits) model.push_back(lits[l]);
    found.push_back(makeAnswerSet(std::move(model)));
  }

  void search(std::vector<char> val) {
    if (++explored > opts.candidateCap)
      throw CapacityError("candidate cap exceeded (" + std::to_string(opts.candidateCap) + ")");
    if (!propagate(val)) return;
    int pick = -1;
    for (int l = 0; l < static_cast<int>(lits.size()); ++l)
      if (val[l] == kUnknown) {
        pick = l;
        break;
      }
    if (pick == -1) {
      verifyLeaf(val);
      return;
    }
    {
      auto branch = val;
      branch[pick] = kFalse;
      search(std::move(branch));
    }
    if (stopAtFirst && foundAny) return;
    if (!setVal(val, pick, kTrue)) return;
    search(std::move(val));
  }

  std::vector<AnswerSet> run() {
    if (normalProgram()) {
      auto fast = tryStratified();
      if (fast) return *fast;
    } else if (shiftIfHeadCycleFree()) {
      auto fast = tryStratified();
      if (fast) return *fast;
    }
    std::vector<char> val(lits.size(), kUnknown);
    for (int l = 0; l < static_cast<int>(lits.size()); ++l)
      if (!isHead[l]) val[l] = kFalse;
    search(std::move(val));
    std::sort(found.begin(), found.end(), answerSetLess);
    return std::move(found);
  }
};

} // namespace

bool AnswerSet::contains(const Literal& l) const {
  std::string s = toString(l);
  auto it = std::lower_bound(literals.begin(), literals.end(), s,
                             [](const Literal& a, const std::string& key) {
                               return toString(a) < key;
                             });
  return it != literals.end() && toString(*it) == s;
}

AnswerSet makeAnswerSet(std::vector<Literal> lits) {
  std::sort(lits.begin(), lits.end(),
            [](const Literal& a, const Literal& b) { return toString(a) < toString(b); });
  lits.erase(std::unique(lits.begin(), lits.end(),
                         [](const Literal& a, const Literal& b) {
                           return toString(a) == toString(b);
                         }),
             lits.end());
  return AnswerSet{std::move(lits)};
}

std::string toString(const AnswerSet& a) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < a.literals.size(); ++i) {
    if (i) os << ", ";
    os << toString(a.literals[i]);
  }
  os << "}";
  return os.str();
}

bool answerSetEq(const AnswerSet& a, const AnswerSet& b) {
  if (a.literals.size() != b.literals.size()) return false;
  for (std::size_t i = 0; i < a.literals.size(); ++i)
    if (!literalEq(a.literals[i], b.literals[i])) return false;
  return true;
}

bool answerSetLess(const AnswerSet& a, const AnswerSet& b) {
  if (a.literals.size() != b.literals.size()) return a.literals.size() < b.literals.size();
  for (std::size_t i = 0; i < a.literals.size(); ++i) {
    std::string x = toString(a.literals[i]), y = toString(b.literals[i]);
    if (x != y) return x < y;
  }
  return false;
}

bool violates(const AnswerSet& a, const WeakConstraint& w) {
  for (const auto& p : w.posBody)
    if (!a.contains(p)) return false;
  for (const auto& n : w.negBody)
    if (a.contains(n)) return false;
  return true;
}

std::size_t violatedCount(const AnswerSet& a, const std::vector<WeakConstraint>& weaks) {
  std::set<std::string> counted;
  std::size_t count = 0;
  for (const auto& w : weaks) {
    if (!violates(a, w)) continue;
    std::ostringstream key;
    for (const auto& p : w.posBody) key << toString(p) << ";";
    key << "|";
    for (const auto& n : w.negBody) key << toString(n) << ";";
    if (counted.insert(key.str()).second) ++count;
  }
  return count;
}

std::vector<GroundRule> reduct(const std::vector<GroundRule>& rules,
                               const std::vector<Literal>& candidate) {
  auto cand = printedSet(candidate);
  std::vector<GroundRule> out;
  for (const auto& r : rules) {
    bool deleted = false;
    for (const auto& n : r.negBody)
      if (cand.count(toString(n))) {
        deleted = true;
        break;
      }
    if (deleted) continue;
    GroundRule g = r;
    g.negBody.clear();
    out.push_back(std::move(g));
  }
  return out;
}

bool isAnswerSet(const std::vector<GroundRule>& rules, const std::vector<Literal>& candidate) {
  auto cand = printedSet(candidate);
  for (const auto& l : candidate)
    if (cand.count(toString(l.complement()))) return false;

  auto red = reduct(rules, candidate);
  if (!closedUnder(red, cand)) return false;

  if (allNormalHeads(red)) {
    auto lfp = leastModel(red);
    return lfp == cand;
  }
  std::vector<Literal> lits(candidate);
  std::sort(lits.begin(), lits.end(),
            [](const Literal& a, const Literal& b) { return toString(a) < toString(b); });
  lits.erase(std::unique(lits.begin(), lits.end(),
                         [](const Literal& a, const Literal& b) {
                           return toString(a) == toString(b);
                         }),
             lits.end());
  return properSubsetsOpen(red, lits, SolveOptions{}.candidateCap);
}

std::vector<AnswerSet> answerSets(const std::vector<GroundRule>& rules, const SolveOptions& opts) {
  Engine e(opts);
  e.build(rules);
  auto all = e.run();
  if (opts.limit > 0 && all.size() > opts.limit) all.resize(opts.limit);
  return all;
}

bool hasAnswerSet(const std::vector<GroundRule>& rules, const SolveOptions& opts) {
  Engine e(opts);
  e.stopAtFirst = true;
  e.build(rules);
  auto fastHandled = [&]() -> std::optional<bool> {
    if (e.normalProgram()) {
      auto fast = e.tryStratified();
      if (fast) return !fast->empty();
    } else if (e.shiftIfHeadCycleFree()) {
      auto fast = e.tryStratified();
      if (fast) return !fast->empty();
    }
    return std::nullopt;
  }();
  if (fastHandled) return *fastHandled;
  std::vector<char> val(e.lits.size(), kUnknown);
  for (int l = 0; l < static_cast<int>(e.lits.size()); ++l)
    if (!e.isHead[l]) val[l] = kFalse;
  e.search(std::move(val));
  return e.foundAny;
}

std::vector<AnswerSet> answerSetsWeak(const std::vector<GroundRule>& rules,
                                      const std::vector<WeakConstraint>& weaks,
                                      const SolveOptions& opts) {
  SolveOptions full = opts;
  full.limit = 0; // the minimum is over every answer set
  auto all = answerSets(rules, full);
  if (all.empty()) return all;

  std::size_t best = violatedCount(all.front(), weaks);
  std::vector<std::size_t> counts;
  counts.reserve(all.size());
  for (const auto& a : all) {
    counts.push_back(violatedCount(a, weaks));
    best = std::min(best, counts.back());
  }
  std::vector<AnswerSet> kept;
  for (std::size_t i = 0; i < all.size(); ++i)
    if (counts[i] == best) kept.push_back(std::move(all[i]));
  if (opts.limit > 0 && kept.size() > opts.limit) kept.resize(opts.limit);
  return kept;
}

} // namespace sparc
