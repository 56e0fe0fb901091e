#include "sparc/ground.hpp"

#include <algorithm>
#include <sstream>

#include "sparc/translate.hpp"

namespace sparc {

namespace {

// Relations and arithmetic are evaluated over the integers; a negative final
// operand fails the range check, so the relation does not hold.
bool relationHolds(const Atom& a) {
  const Term& l = a.args[0];
  const Term& r = a.args[1];
  bool lArith = l.kind == TermKind::Nat || l.kind == TermKind::Arith;
  bool rArith = r.kind == TermKind::Nat || r.kind == TermKind::Arith;
  if (a.rel == RelOp::Eq || a.rel == RelOp::Neq) {
    if (lArith || rArith) {
      auto lv = evalInt(l);
      auto rv = evalInt(r);
      if (!lv || !rv || *lv < 0 || *rv < 0) return false;
      return a.rel == RelOp::Eq ? *lv == *rv : *lv != *rv;
    }
    bool eq = termEq(l, r);
    return a.rel == RelOp::Eq ? eq : !eq;
  }
  auto lv = evalInt(l);
  auto rv = evalInt(r);
  if (!lv || !rv || *lv < 0 || *rv < 0) return false;
  switch (a.rel) {
    case RelOp::Lt: return *lv < *rv;
    case RelOp::Le: return *lv <= *rv;
    case RelOp::Gt: return *lv > *rv;
    case RelOp::Ge: return *lv >= *rv;
    default: return false;
  }
}

void intersectInto(std::optional<std::vector<Term>>& acc, const std::vector<Term>& sorted) {
  if (!acc) {
    acc = sorted;
    return;
  }
  std::vector<Term> out;
  std::set_intersection(acc->begin(), acc->end(), sorted.begin(), sorted.end(),
                        std::back_inserter(out), termLess);
  *acc = std::move(out);
}

struct RuleGrounder {
  const CheckedProgram& cp;
  const Rule& rule;
  int crIndex;
  std::vector<Diagnostic>& diags;
  std::uint64_t cap;
  std::vector<std::string> vars;
  std::vector<std::vector<Term>> domains;
  std::vector<GroundRule> out;
  bool failed = false;

  RuleGrounder(const Rule& r, const CheckedProgram& c, int cr, std::vector<Diagnostic>& d,
               std::uint64_t instanceCap)
      : cp(c), rule(r), crIndex(cr), diags(d), cap(instanceCap) {}

  // Candidate values for a variable: intersect the sorts of every declared
  // argument position it occupies (anywhere in the rule) with the matching
  // columns of positive sort-predicate body atoms.
  bool computeDomains() {
    vars = ruleVars(rule);
    domains.resize(vars.size());
    for (size_t vi = 0; vi < vars.size(); ++vi) {
      const std::string& v = vars[vi];
      std::optional<std::vector<Term>> acc;
      bool natOnly = false;

      auto scanLiteral = [&](const Literal& l, bool positiveBody) {
        if (l.atom.kind != AtomKind::Pred) return;
        int arity = static_cast<int>(l.atom.args.size());
        const std::vector<std::string>* declSorts = cp.decls.lookup(l.atom.pred, arity);
        for (int j = 0; j < arity; ++j) {
          const Term& arg = l.atom.args[j];
          if (arg.kind != TermKind::Variable || arg.name != v) continue;
          if (declSorts) {
            const std::string& sortName = (*declSorts)[j];
            if (sortName == "nat") {
              natOnly = true;
              continue;
            }
            auto it = cp.sorts.defined.find(sortName);
            if (it != cp.sorts.defined.end()) intersectInto(acc, it->second);
          } else if (positiveBody && !l.negated &&
                     cp.sorts.sortPartPredArities.count({l.atom.pred, arity})) {
            auto rel = cp.sorts.relations.find({l.atom.pred, arity});
            std::vector<Term> column;
            if (rel != cp.sorts.relations.end())
              for (const auto& row : rel->second) column.push_back(row[j]);
            std::sort(column.begin(), column.end(), termLess);
            column.erase(std::unique(column.begin(), column.end(), termEq), column.end());
            intersectInto(acc, column);
          }
        }
      };

      for (const auto& h : rule.head) scanLiteral(h, false);
      for (const auto& e : rule.body) scanLiteral(e.lit, !e.naf);

      if (!acc) {
        std::ostringstream os;
        os << "variable " << v << " cannot be bounded by a defined sort";
        if (natOnly) os << " (nat positions alone do not bound a variable)";
        diags.push_back(makeError(rule.span.begin, os.str()));
        failed = true;
        return false;
      }
      domains[vi] = std::move(*acc);
    }
    return true;
  }

  // One candidate instance; keep it only if every condition can still hold.
  void emitInstance(const Substitution& env) {
    GroundRule g;
    g.kind = rule.kind;
    g.origin = rule.sourceIndex;

    auto foldedPredAtom = [&](const Atom& a, Atom& folded) -> bool {
      folded = substitute(a, env);
      for (auto& arg : folded.args) {
        auto f = foldArith(arg);
        if (!f) return false; // negative or valueless argument: no such term
        arg = *f;
      }
      return true;
    };

    auto respectsDeclaredSorts = [&](const Atom& a) -> bool {
      const std::vector<std::string>* sorts =
          cp.decls.lookup(a.pred, static_cast<int>(a.args.size()));
      if (!sorts) return true;
      for (size_t j = 0; j < a.args.size(); ++j)
        if (!cp.sorts.inSort((*sorts)[j], a.args[j])) return false;
      return true;
    };

    auto pushUnique = [](std::vector<Literal>& list, const Literal& l) {
      for (const auto& existing : list)
        if (literalEq(existing, l)) return;
      list.push_back(l);
    };

    for (const auto& h : rule.head) {
      Atom folded;
      if (!foldedPredAtom(h.atom, folded)) return;
      if (!respectsDeclaredSorts(folded)) return;
      Literal lit = h.negated ? Literal::classicNeg(folded) : Literal::positive(folded);
      pushUnique(g.head, lit);
    }

    for (const auto& e : rule.body) {
      if (e.lit.atom.kind != AtomKind::Pred) {
        Atom ground = substitute(e.lit.atom, env);
        if (!relationHolds(ground)) return;
        continue; // satisfied relation: simplified away
      }
      Atom folded;
      if (!foldedPredAtom(e.lit.atom, folded)) return;
      if (!respectsDeclaredSorts(folded)) return;
      bool isSortPred =
          cp.sorts.sortPartPredArities.count({folded.pred, static_cast<int>(folded.args.size())}) >
          0;
      if (isSortPred) {
        bool holds = !e.lit.negated && cp.sorts.holds(folded);
        if (!e.naf) {
          if (!holds) return;           // condition can never be satisfied
          pushUnique(g.posBody, Literal::positive(folded)); // kept; fact supplied later
        } else {
          if (holds) return;            // "not" condition can never be satisfied
          // unsatisfiable sort atom under "not": condition holds, drop it
        }
        continue;
      }
      Literal lit = e.lit.negated ? Literal::classicNeg(folded) : Literal::positive(folded);
      pushUnique(e.naf ? g.negBody : g.posBody, lit);
    }

    if (rule.kind == RuleKind::CR) {
      Term nameTerm = nameCrRule(rule, crIndex).toTerm();
      g.name = substitute(nameTerm, env);
    }
    out.push_back(std::move(g));
    if (out.size() > cap)
      throw CapacityError("grounding exceeded the instance cap (" + std::to_string(cap) + ")");
  }

  void run() {
    if (!computeDomains()) return;
    // Odometer over the variables, first variable varying fastest.
    for (const auto& d : domains)
      if (d.empty()) return;
    std::vector<size_t> idx(vars.size(), 0);
    for (;;) {
      Substitution env;
      for (size_t i = 0; i < vars.size(); ++i) env[vars[i]] = domains[i][idx[i]];
      emitInstance(env);
      size_t i = 0;
      while (i < vars.size()) {
        if (++idx[i] < domains[i].size()) break;
        idx[i] = 0;
        ++i;
      }
      if (i == vars.size()) break;
      if (vars.empty()) break;
    }
  }
};

} // namespace

std::string toString(const GroundRule& r) {
  std::ostringstream os;
  for (size_t i = 0; i < r.head.size(); ++i) {
    if (i) os << " v ";
    os << toString(r.head[i]);
  }
  bool isCr = r.kind == RuleKind::CR;
  bool hasBody = !r.posBody.empty() || !r.negBody.empty();
  if (hasBody || r.head.empty() || isCr) {
    if (!r.head.empty()) os << " ";
    os << (isCr ? ":+ " : ":- ");
    bool first = true;
    for (const auto& l : r.posBody) {
      if (!first) os << ", ";
      first = false;
      os << toString(l);
    }
    for (const auto& l : r.negBody) {
      if (!first) os << ", ";
      first = false;
      os << "not " << toString(l);
    }
  }
  os << ".";
  return os.str();
}

bool groundRuleEq(const GroundRule& a, const GroundRule& b) {
  auto listEq = [](const std::vector<Literal>& x, const std::vector<Literal>& y) {
    if (x.size() != y.size()) return false;
    for (size_t i = 0; i < x.size(); ++i)
      if (!literalEq(x[i], y[i])) return false;
    return true;
  };
  return a.kind == b.kind && listEq(a.head, b.head) && listEq(a.posBody, b.posBody) &&
         listEq(a.negBody, b.negBody);
}

std::vector<GroundRule> GroundProgram::regular() const {
  std::vector<GroundRule> out;
  for (const auto& r : rules)
    if (r.kind == RuleKind::Regular) out.push_back(r);
  return out;
}

std::vector<GroundRule> GroundProgram::crRules() const {
  std::vector<GroundRule> out;
  for (const auto& r : rules)
    if (r.kind == RuleKind::CR) out.push_back(r);
  return out;
}

std::vector<GroundRule> groundRule(const Rule& r, const CheckedProgram& cp, int crIndex,
                                   std::vector<Diagnostic>& diags, std::uint64_t instanceCap) {
  RuleGrounder g(r, cp, crIndex, diags, instanceCap);
  g.run();
  return std::move(g.out);
}

GroundResult groundProgram(const CheckedProgram& cp, std::uint64_t instanceCap) {
  GroundResult result;
  int crIndex = 0;
  std::uint64_t total = 0;
  for (const auto& r : cp.program.rules) {
    int thisCr = r.kind == RuleKind::CR ? ++crIndex : 0;
    auto instances = groundRule(r, cp, thisCr, result.diagnostics, instanceCap - total);
    total += instances.size();
    for (auto& g : instances) result.program.rules.push_back(std::move(g));
  }
  result.program.sortFacts = cp.sorts.sortAtoms;
  for (const auto& [name, ext] : cp.sorts.defined) result.program.definedSortNames.insert(name);

  // Sort atoms surviving in rule bodies become facts of the regular part.
  std::set<std::string> seen;
  for (const auto& g : result.program.rules)
    for (const auto& l : g.posBody) {
      if (l.negated) continue;
      if (!cp.sorts.sortPartPredArities.count(
              {l.atom.pred, static_cast<int>(l.atom.args.size())}))
        continue;
      if (seen.insert(toString(l.atom)).second) result.program.usedSortAtoms.push_back(l.atom);
    }
  std::sort(result.program.usedSortAtoms.begin(), result.program.usedSortAtoms.end(),
            [](const Atom& a, const Atom& b) { return compareAtoms(a, b) < 0; });

  result.ok = !hasErrors(result.diagnostics);
  return result;
}

} // namespace sparc
