#include "sparc/sortcheck.hpp"

#include <algorithm>
#include <sstream>

namespace sparc {

namespace {

bool isNatName(const std::string& s) { return s == "nat"; }

std::vector<std::string> predsOf(const std::vector<Rule>& rules) {
  std::vector<std::string> out;
  auto add = [&](const std::string& p) {
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  };
  for (const auto& r : rules) {
    for (const auto& h : r.head)
      if (h.atom.kind == AtomKind::Pred) add(h.atom.pred);
    for (const auto& e : r.body)
      if (e.lit.atom.kind == AtomKind::Pred) add(e.lit.atom.pred);
  }
  return out;
}

// Predicate stratum assignment; returns false when negation is cyclic.
bool computeStrata(const std::vector<Rule>& rules, std::map<std::string, int>& strata) {
  std::vector<std::string> preds = predsOf(rules);
  for (const auto& p : preds) strata[p] = 0;
  size_t bound = preds.size() + 2;
  for (size_t pass = 0; pass < bound; ++pass) {
    bool changed = false;
    for (const auto& r : rules) {
      if (r.head.empty()) continue;
      const std::string& h = r.head[0].atom.pred;
      for (const auto& e : r.body) {
        if (e.lit.atom.kind != AtomKind::Pred) continue;
        int need = strata[e.lit.atom.pred] + (e.naf ? 1 : 0);
        if (strata[h] < need) {
          strata[h] = need;
          changed = true;
        }
      }
    }
    if (!changed) return true;
  }
  return false;
}

void collectPredAtomVars(const Literal& l, std::vector<std::string>& out) {
  if (l.atom.kind != AtomKind::Pred) return;
  for (const auto& t : l.atom.args) collectVars(t, out);
}

} // namespace

bool SortInterpretation::isSortName(const std::string& name) const {
  return isNatName(name) || defined.count(name) > 0;
}

bool SortInterpretation::isDefinedSort(const std::string& name) const {
  return defined.count(name) > 0;
}

bool SortInterpretation::isSortRulePred(const std::string& name) const {
  return sortPartPreds.count(name) > 0;
}

bool SortInterpretation::inSort(const std::string& sortName, const Term& t) const {
  if (isNatName(sortName)) return t.kind == TermKind::Nat && t.value >= 0;
  auto it = defined.find(sortName);
  if (it == defined.end()) return false;
  return std::binary_search(it->second.begin(), it->second.end(), t, termLess);
}

bool SortInterpretation::holds(const Atom& a) const {
  return atomKeys_.count(toString(a)) > 0;
}

bool SortInterpretation::termHasSort(const Term& t) const {
  if (t.kind == TermKind::Nat) return t.value >= 0;
  for (const auto& [name, ext] : defined)
    if (std::binary_search(ext.begin(), ext.end(), t, termLess)) return true;
  return false;
}

const std::vector<std::string>* DeclarationTable::lookup(const std::string& pred,
                                                         int arity) const {
  auto it = bySignature.find({pred, arity});
  return it == bySignature.end() ? nullptr : &it->second;
}

bool DeclarationTable::declaresSymbol(const std::string& pred) const {
  for (const auto& [sig, sorts] : bySignature)
    if (sig.first == pred) return true;
  return false;
}

std::vector<Diagnostic> validateSortRules(const std::vector<Rule>& sortRules) {
  std::vector<Diagnostic> diags;
  for (const auto& r : sortRules) {
    for (const auto& h : r.head)
      if (h.atom.kind != AtomKind::Pred)
        diags.push_back(makeError(h.span.begin, "sort rule head must not be a relation atom"));

    std::vector<std::string> posAtomVars; // variables in any positive body atom
    std::vector<std::string> posPredVars; // variables in positive body predicate atoms
    for (const auto& e : r.body) {
      if (e.naf) continue;
      for (const auto& t : e.lit.atom.args) collectVars(t, posAtomVars);
      collectPredAtomVars(e.lit, posPredVars);
    }
    auto inList = [](const std::vector<std::string>& xs, const std::string& v) {
      return std::find(xs.begin(), xs.end(), v) != xs.end();
    };
    std::vector<std::string> negVars;
    for (const auto& e : r.body)
      if (e.naf) collectPredAtomVars(e.lit, negVars);
    std::vector<std::string> reported;
    for (const auto& v : negVars) {
      if (!inList(posAtomVars, v) && !inList(reported, v)) {
        diags.push_back(makeError(r.span.begin, "unsafe variable " + v +
                                                    ": occurs in the negative body only"));
        reported.push_back(v);
      }
    }
    for (const auto& v : ruleVars(r)) {
      if (!inList(posPredVars, v) && !inList(reported, v)) {
        diags.push_back(makeError(
            r.span.begin,
            "variable " + v + " is not bound by a positive body predicate atom"));
        reported.push_back(v);
      }
    }
  }

  std::map<std::string, int> strata;
  if (!computeStrata(sortRules, strata))
    diags.push_back(makeError(sortRules.empty() ? SourcePos{} : sortRules[0].span.begin,
                              "sorts definition is not stratified"));

  // The term universe always contains the naturals, so it cannot be empty;
  // nothing further to check here.
  return diags;
}

namespace {

// Incremental database of derived sort atoms.
struct Database {
  std::map<std::pair<std::string, int>, std::vector<std::vector<Term>>> rows;
  std::set<std::string> keys;
  std::uint64_t count = 0;

  bool contains(const Atom& a) const { return keys.count(toString(a)) > 0; }

  bool insert(const Atom& a) {
    if (!keys.insert(toString(a)).second) return false;
    rows[{a.pred, static_cast<int>(a.args.size())}].push_back(a.args);
    ++count;
    return true;
  }
};

enum class FoldStatus { Ok, Undefined, Negative };

// Folds arithmetic in a fully substituted term. Undefined marks a symbolic
// operand (no value exists); Negative marks a value below zero somewhere.
FoldStatus foldStrict(const Term& t, Term& out) {
  if (t.kind == TermKind::Arith) {
    auto v = evalInt(t);
    if (!v) return FoldStatus::Undefined;
    if (*v < 0) return FoldStatus::Negative;
    out = Term::nat(*v, t.span);
    return FoldStatus::Ok;
  }
  out = t;
  for (size_t i = 0; i < t.args.size(); ++i) {
    Term folded;
    FoldStatus st = foldStrict(t.args[i], folded);
    if (st != FoldStatus::Ok) return st;
    out.args[i] = folded;
  }
  return FoldStatus::Ok;
}

bool matchTerm(const Term& pattern, const Term& ground, Substitution& env);

bool matchArgs(const std::vector<Term>& pats, const std::vector<Term>& grounds,
               Substitution& env) {
  if (pats.size() != grounds.size()) return false;
  for (size_t i = 0; i < pats.size(); ++i)
    if (!matchTerm(pats[i], grounds[i], env)) return false;
  return true;
}

bool matchTerm(const Term& pattern, const Term& ground, Substitution& env) {
  switch (pattern.kind) {
    case TermKind::Variable: {
      auto it = env.find(pattern.name);
      if (it != env.end()) return termEq(it->second, ground);
      env[pattern.name] = ground;
      return true;
    }
    case TermKind::Nat:
      return ground.kind == TermKind::Nat && ground.value == pattern.value;
    case TermKind::SymConst:
      return ground.kind == TermKind::SymConst && ground.name == pattern.name;
    case TermKind::Func:
      return ground.kind == TermKind::Func && ground.name == pattern.name &&
             matchArgs(pattern.args, ground.args, env);
    case TermKind::Arith: {
      // scheduling guarantees the pattern is fully bound here
      auto v = evalInt(substitute(pattern, env));
      return v && ground.kind == TermKind::Nat && ground.value == *v;
    }
  }
  return false;
}

bool arithPartsBound(const Term& t, const std::set<std::string>& bound) {
  if (t.kind == TermKind::Arith) {
    std::vector<std::string> vs;
    collectVars(t, vs);
    for (const auto& v : vs)
      if (!bound.count(v)) return false;
    return true;
  }
  for (const auto& a : t.args)
    if (!arithPartsBound(a, bound)) return false;
  return true;
}

bool atomProcessable(const Atom& a, const std::set<std::string>& bound) {
  for (const auto& t : a.args)
    if (!arithPartsBound(t, bound)) return false;
  return true;
}

// Relations over integers; a negative operand fails the range check, so the
// relation does not hold.
bool evalRelation(const Atom& a, bool& ok) {
  ok = true;
  if (a.kind == AtomKind::ArithRel || a.kind == AtomKind::SymRel) {
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
      // identity on ground symbolic terms
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
  ok = false;
  return false;
}

} // namespace

// Named (not anonymous) so SortInterpretation can befriend it.
struct SortEvaluator {
  const std::vector<Rule>& rules;
  SortcheckOptions opts;
  Database db;
  std::vector<Diagnostic> diags;
  bool failed = false;

  SortEvaluator(const std::vector<Rule>& rs, const SortcheckOptions& o) : rules(rs), opts(o) {}

  // Positive body predicate atoms in an order where arithmetic arguments are
  // always bound before they are matched.
  bool scheduleBody(const Rule& r, std::vector<const Atom*>& out) {
    std::vector<const Atom*> pending;
    for (const auto& e : r.body)
      if (!e.naf && e.lit.atom.kind == AtomKind::Pred) pending.push_back(&e.lit.atom);
    std::set<std::string> bound;
    while (!pending.empty()) {
      bool advanced = false;
      for (size_t i = 0; i < pending.size(); ++i) {
        if (atomProcessable(*pending[i], bound)) {
          std::vector<std::string> vs;
          for (const auto& t : pending[i]->args) collectVars(t, vs);
          for (const auto& v : vs) bound.insert(v);
          out.push_back(pending[i]);
          pending.erase(pending.begin() + i);
          advanced = true;
          break;
        }
      }
      if (!advanced) {
        diags.push_back(makeError(r.span.begin,
                                  "cannot order body atoms: arithmetic argument depends on an "
                                  "unbound variable"));
        return false;
      }
    }
    return true;
  }

  bool deriveHead(const Rule& r, const Substitution& env, int stratum) {
    Atom head = substitute(r.head[0].atom, env);
    for (auto& arg : head.args) {
      Term folded;
      switch (foldStrict(arg, folded)) {
        case FoldStatus::Ok: arg = folded; break;
        case FoldStatus::Undefined: return false; // no such term; nothing derived
        case FoldStatus::Negative:
          diags.push_back(makeError(r.span.begin,
                                    "derived argument of " + head.pred +
                                        " evaluates to a negative integer"));
          failed = true;
          return false;
      }
    }
    if (db.insert(head)) {
      if (db.count > opts.atomCap) {
        std::ostringstream os;
        os << "sort derivation exceeded the atom cap (" << opts.atomCap << ") at stratum "
           << stratum;
        throw CapacityError(os.str());
      }
      return true;
    }
    return false;
  }

  bool bodyConditionsHold(const Rule& r, const Substitution& env) {
    for (const auto& e : r.body) {
      if (e.lit.atom.kind != AtomKind::Pred) {
        Atom ground = substitute(e.lit.atom, env);
        bool ok = true;
        if (!evalRelation(ground, ok)) return false;
        continue;
      }
      if (e.naf) {
        Atom ground = substitute(e.lit.atom, env);
        Term folded;
        Atom foldedAtom = ground;
        bool undefined = false;
        for (auto& arg : foldedAtom.args) {
          switch (foldStrict(arg, folded)) {
            case FoldStatus::Ok: arg = folded; break;
            default: undefined = true; break;
          }
          if (undefined) break;
        }
        if (undefined) continue; // no such atom exists, so "not" holds
        if (db.contains(foldedAtom)) return false;
      }
    }
    return true;
  }

  void joinAndFire(const Rule& r, const std::vector<const Atom*>& order, size_t idx,
                   Substitution& env, int stratum, bool& derivedAny) {
    if (failed) return;
    if (idx == order.size()) {
      if (bodyConditionsHold(r, env))
        if (deriveHead(r, env, stratum)) derivedAny = true;
      return;
    }
    const Atom& pat = *order[idx];
    auto key = std::make_pair(pat.pred, static_cast<int>(pat.args.size()));
    auto it = db.rows.find(key);
    if (it == db.rows.end()) return;
    // rows may grow while iterating; index-based loop keeps this safe
    for (size_t row = 0; row < it->second.size(); ++row) {
      Substitution saved = env;
      if (matchArgs(pat.args, it->second[row], env))
        joinAndFire(r, order, idx + 1, env, stratum, derivedAny);
      env = std::move(saved);
      if (failed) return;
    }
  }

  SortEvalResult run() {
    SortEvalResult result;
    std::map<std::string, int> strata;
    if (!computeStrata(rules, strata)) {
      result.diagnostics.push_back(
          makeError(rules.empty() ? SourcePos{} : rules[0].span.begin,
                    "sorts definition is not stratified"));
      return result;
    }
    int maxStratum = 0;
    for (const auto& [p, s] : strata) maxStratum = std::max(maxStratum, s);

    std::vector<std::vector<const Atom*>> orders(rules.size());
    for (size_t i = 0; i < rules.size(); ++i)
      if (!scheduleBody(rules[i], orders[i])) {
        result.diagnostics = std::move(diags);
        return result;
      }

    for (int s = 0; s <= maxStratum && !failed; ++s) {
      bool changed = true;
      while (changed && !failed) {
        changed = false;
        for (size_t i = 0; i < rules.size(); ++i) {
          const Rule& r = rules[i];
          if (r.head.empty() || strata[r.head[0].atom.pred] != s) continue;
          Substitution env;
          joinAndFire(r, orders[i], 0, env, s, changed);
          if (failed) break;
        }
      }
    }

    result.diagnostics = std::move(diags);
    if (failed) return result;

    SortInterpretation& interp = result.interp;
    for (auto& [key, rows] : db.rows) {
      std::sort(rows.begin(), rows.end(),
                [](const std::vector<Term>& a, const std::vector<Term>& b) {
                  for (size_t i = 0; i < a.size() && i < b.size(); ++i)
                    if (int c = compareTerms(a[i], b[i])) return c < 0;
                  return a.size() < b.size();
                });
      interp.relations[key] = rows;
      if (key.second == 1) {
        std::vector<Term>& ext = interp.defined[key.first];
        for (const auto& row : rows) ext.push_back(row[0]);
      }
      for (const auto& row : rows)
        interp.sortAtoms.push_back(Atom::predicate(key.first, row));
    }
    for (const auto& [name, ext] : interp.defined)
      for (const auto& t : ext) interp.groundTerms.push_back(t);
    std::sort(interp.groundTerms.begin(), interp.groundTerms.end(), termLess);
    interp.groundTerms.erase(
        std::unique(interp.groundTerms.begin(), interp.groundTerms.end(), termEq),
        interp.groundTerms.end());
    for (const auto& a : interp.sortAtoms) interp.atomKeys_.insert(toString(a));
    for (const auto& p : predsOf(rules)) interp.sortPartPreds.insert(p);
    for (const auto& r : rules) {
      for (const auto& h : r.head)
        if (h.atom.kind == AtomKind::Pred)
          interp.sortPartPredArities.insert({h.atom.pred, static_cast<int>(h.atom.args.size())});
      for (const auto& e : r.body)
        if (e.lit.atom.kind == AtomKind::Pred)
          interp.sortPartPredArities.insert(
              {e.lit.atom.pred, static_cast<int>(e.lit.atom.args.size())});
    }
    result.ok = true;
    return result;
  }
};

namespace {

void collectGroundSymbolicTerms(const Term& t, std::vector<Term>& out) {
  if (!t.isGround()) {
    for (const auto& a : t.args) collectGroundSymbolicTerms(a, out);
    return;
  }
  if (t.kind == TermKind::SymConst || t.kind == TermKind::Func) {
    out.push_back(t);
    for (const auto& a : t.args) collectGroundSymbolicTerms(a, out);
  }
}

} // namespace

SortEvalResult evaluateSorts(const std::vector<Rule>& sortRules, const SortcheckOptions& opts) {
  return SortEvaluator(sortRules, opts).run();
}

std::vector<Diagnostic> validateDeclarations(const Program& p, const SortInterpretation& s,
                                             DeclarationTable& out) {
  std::vector<Diagnostic> diags;
  out.bySignature.clear();

  for (const auto& d : p.declarations) {
    auto sig = std::make_pair(d.pred, static_cast<int>(d.argSorts.size()));
    if (s.isSortRulePred(d.pred)) {
      diags.push_back(makeError(d.span.begin, "predicate " + d.pred +
                                                  " already occurs in the sorts definition"));
      continue;
    }
    if (out.bySignature.count(sig)) {
      diags.push_back(makeError(d.span.begin, "duplicate declaration of " + d.pred + "/" +
                                                  std::to_string(sig.second)));
      continue;
    }
    for (const auto& sortName : d.argSorts)
      if (!s.isSortName(sortName))
        diags.push_back(makeError(d.span.begin, "unknown sort " + sortName));
    out.bySignature[sig] = d.argSorts;
  }

  auto checkAtomUse = [&](const Literal& l, bool inHead) {
    if (l.atom.kind != AtomKind::Pred) return;
    const std::string& pred = l.atom.pred;
    int arity = static_cast<int>(l.atom.args.size());
    if (inHead && s.isSortRulePred(pred)) {
      diags.push_back(
          makeError(l.span.begin, "sort predicate " + pred + " cannot occur in a rule head"));
      return;
    }
    const std::vector<std::string>* sorts = out.lookup(pred, arity);
    if (!sorts) {
      if (s.sortPartPredArities.count({pred, arity})) return; // sort predicate used in a body
      diags.push_back(makeError(l.span.begin, "undeclared predicate " + pred + "/" +
                                                  std::to_string(arity)));
      return;
    }
    for (size_t j = 0; j < l.atom.args.size(); ++j) {
      const Term& arg = l.atom.args[j];
      if (!arg.isGround() && arg.kind != TermKind::Arith) continue;
      Term value = arg;
      if (arg.kind == TermKind::Arith || arg.kind == TermKind::Func) {
        std::vector<std::string> vs;
        collectVars(arg, vs);
        if (!vs.empty()) continue; // instance checked at grounding time
        auto folded = foldArith(arg);
        if (!folded) {
          diags.push_back(makeError(l.span.begin, "argument " + std::to_string(j + 1) + " of " +
                                                      pred + " has no value"));
          continue;
        }
        value = *folded;
      }
      if (!s.inSort((*sorts)[j], value))
        diags.push_back(makeError(l.span.begin, "argument " + std::to_string(j + 1) + " of " +
                                                    pred + ": " + toString(value) +
                                                    " does not belong to sort " + (*sorts)[j]));
    }
  };

  for (const auto& r : p.rules) {
    for (const auto& h : r.head) checkAtomUse(h, true);
    for (const auto& e : r.body) checkAtomUse(e.lit, false);
  }

  // Every ground symbolic term mentioned anywhere must have a defined sort.
  auto checkTermsOf = [&](const std::vector<Rule>& rules) {
    for (const auto& r : rules) {
      std::vector<Term> groundTerms;
      for (const auto& h : r.head)
        for (const auto& t : h.atom.args) collectGroundSymbolicTerms(t, groundTerms);
      for (const auto& e : r.body)
        for (const auto& t : e.lit.atom.args) collectGroundSymbolicTerms(t, groundTerms);
      for (const auto& t : groundTerms)
        if (!s.termHasSort(t))
          diags.push_back(
              makeError(r.span.begin, "term " + toString(t) + " has no defined sort"));
    }
  };
  checkTermsOf(p.sortRules);
  checkTermsOf(p.rules);

  return diags;
}

Language extractLanguage(const Program& p, const SortInterpretation& s) {
  Language lang;
  lang.terms = s.groundTerms;
  std::set<std::string> preds = s.sortPartPreds;
  for (const auto& d : p.declarations) preds.insert(d.pred);
  lang.predicates.assign(preds.begin(), preds.end());
  return lang;
}

CheckResult checkProgram(Program p, const SortcheckOptions& opts) {
  CheckResult result;
  result.diagnostics = validateSortRules(p.sortRules);
  if (hasErrors(result.diagnostics)) return result;

  SortEvalResult eval = evaluateSorts(p.sortRules, opts);
  for (const auto& d : eval.diagnostics) result.diagnostics.push_back(d);
  if (!eval.ok) return result;

  DeclarationTable decls;
  auto declDiags = validateDeclarations(p, eval.interp, decls);
  for (const auto& d : declDiags) result.diagnostics.push_back(d);
  if (hasErrors(result.diagnostics)) return result;

  result.checked = CheckedProgram{std::move(p), std::move(eval.interp), std::move(decls)};
  return result;
}

} // namespace sparc
