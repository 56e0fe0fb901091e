#include "sparc/translate.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "sparc/parser.hpp"

namespace sparc {

namespace {

void collectReserved(const Term& t, std::vector<std::string>& hits) {
  if ((t.kind == TermKind::SymConst || t.kind == TermKind::Func) &&
      (t.name == "appl" || t.name == "rn"))
    hits.push_back(t.name);
  for (const auto& a : t.args) collectReserved(a, hits);
}

void collectReserved(const Rule& r, std::vector<std::string>& hits) {
  auto scanAtom = [&](const Atom& a) {
    if (a.kind == AtomKind::Pred && (a.pred == "appl" || a.pred == "rn")) hits.push_back(a.pred);
    for (const auto& t : a.args) collectReserved(t, hits);
  };
  for (const auto& h : r.head) scanAtom(h.atom);
  for (const auto& e : r.body) scanAtom(e.lit.atom);
}

std::string bodyText(const Rule& r) {
  std::ostringstream os;
  for (std::size_t i = 0; i < r.body.size(); ++i) {
    if (i) os << ", ";
    if (r.body[i].naf) os << "not ";
    os << toString(r.body[i].lit);
  }
  return os.str();
}

} // namespace

Term RuleName::toTerm() const {
  std::vector<Term> args{Term::nat(index)};
  for (const auto& v : vars) args.push_back(Term::variable(v));
  return Term::func("rn", std::move(args));
}

RuleName nameCrRule(const Rule& r, int index) {
  return RuleName{index, ruleVars(r)};
}

TranslateResult translateProgram(const CheckedProgram& cp) {
  TranslateResult result;

  std::vector<std::string> reserved;
  for (const auto& r : cp.program.sortRules) collectReserved(r, reserved);
  for (const auto& r : cp.program.rules) collectReserved(r, reserved);
  for (const auto& d : cp.program.declarations)
    if (d.pred == "appl" || d.pred == "rn") reserved.push_back(d.pred);
  if (!reserved.empty()) {
    result.diagnostics.push_back(
        makeError({}, "the symbol " + reserved.front() + " is reserved for the translation"));
    return result;
  }

  result.counterpart.sortRules = cp.program.sortRules;

  int crIndex = 0;
  for (const auto& r : cp.program.rules) {
    // Sort atoms for every declared-atom occurrence, head first, kept once.
    std::vector<BodyElem> appended;
    std::set<std::string> seen;
    auto addFor = [&](const Atom& a) {
      if (a.kind != AtomKind::Pred) return;
      const std::vector<std::string>* sorts =
          cp.decls.lookup(a.pred, static_cast<int>(a.args.size()));
      if (!sorts) return;
      for (std::size_t j = 0; j < a.args.size(); ++j) {
        if ((*sorts)[j] == "nat") continue; // no finite defining predicate
        Atom sa = Atom::predicate((*sorts)[j], {a.args[j]});
        if (seen.insert(toString(sa)).second)
          appended.push_back(BodyElem{Literal::positive(std::move(sa)), false});
      }
    };
    for (const auto& h : r.head) addFor(h.atom);
    for (const auto& e : r.body) addFor(e.lit.atom);

    Rule extended = r;
    extended.kind = RuleKind::Regular;
    for (auto& be : appended) extended.body.push_back(be);

    if (r.kind == RuleKind::Regular) {
      result.counterpart.entries.push_back(CounterpartEntry{std::move(extended), false});
      continue;
    }

    Term name = nameCrRule(r, ++crIndex).toTerm();
    Literal applPos = Literal::positive(Atom::predicate("appl", {name}));
    Literal applNeg = Literal::classicNeg(Atom::predicate("appl", {name}));

    Rule choice;
    choice.head = {applPos, applNeg};
    choice.body = extended.body;
    result.counterpart.entries.push_back(CounterpartEntry{std::move(choice), false});

    Rule weak;
    weak.body.push_back(BodyElem{applPos, false});
    for (const auto& be : extended.body) weak.body.push_back(be);
    result.counterpart.entries.push_back(CounterpartEntry{std::move(weak), true});

    Rule guarded;
    guarded.head = extended.head;
    guarded.body.push_back(BodyElem{applPos, false});
    for (const auto& be : extended.body) guarded.body.push_back(be);
    result.counterpart.entries.push_back(CounterpartEntry{std::move(guarded), false});
  }

  result.ok = true;
  return result;
}

std::string emitDlvText(const CounterpartProgram& p) {
  std::ostringstream os;
  for (const auto& r : p.sortRules) os << toString(r) << "\n";
  for (const auto& e : p.entries) {
    if (e.weak)
      os << ":~ " << bodyText(e.rule) << ".\n";
    else
      os << toString(e.rule) << "\n";
  }
  return os.str();
}

DlvParseResult parseDlvText(std::string_view text) {
  DlvParseResult result;
  int lineNo = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line =
        nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineNo;

    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;
    if (line[first] == '%') continue;

    RuleParseResult r = parseRuleText(line, /*allowWeak=*/true);
    for (auto d : r.diagnostics) {
      d.pos.line = lineNo; // sub-parser positions are relative to one line
      result.diagnostics.push_back(std::move(d));
    }
    if (!r.ok) continue;
    if (r.rule.kind == RuleKind::CR) {
      result.diagnostics.push_back(
          makeError({lineNo, 1}, "':+' does not occur in the DLV subset"));
      continue;
    }
    result.program.entries.push_back(CounterpartEntry{std::move(r.rule), r.weak});
  }
  result.ok = !hasErrors(result.diagnostics);
  return result;
}

AnswerSet stripAppl(const AnswerSet& a) {
  std::vector<Literal> kept;
  for (const auto& l : a.literals)
    if (!(l.atom.kind == AtomKind::Pred && l.atom.pred == "appl")) kept.push_back(l);
  return makeAnswerSet(std::move(kept));
}

GroundCounterpart groundCounterpart(const CounterpartProgram& p, const CheckedProgram& cp) {
  GroundCounterpart out;
  for (const auto& atom : cp.sorts.sortAtoms) {
    GroundRule fact;
    fact.head.push_back(Literal::positive(atom));
    fact.origin = -1;
    out.rules.push_back(std::move(fact));
  }
  for (const auto& e : p.entries) {
    auto instances = groundRule(e.rule, cp, 0, out.diagnostics);
    for (auto& g : instances) {
      if (e.weak)
        out.weaks.push_back(WeakConstraint{std::move(g.posBody), std::move(g.negBody)});
      else
        out.rules.push_back(std::move(g));
    }
  }
  out.ok = !hasErrors(out.diagnostics);
  return out;
}

std::vector<AnswerSet> solveCounterpart(const CounterpartProgram& p, const CheckedProgram& cp,
                                        const SolveOptions& opts) {
  GroundCounterpart gc = groundCounterpart(p, cp);
  if (!gc.ok)
    throw std::runtime_error("counterpart grounding failed: " + gc.diagnostics.front().message);
  return answerSetsWeak(gc.rules, gc.weaks, opts);
}

namespace {

std::string shellQuote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'')
      out += "'\\''";
    else
      out += c;
  }
  out += "'";
  return out;
}

std::vector<std::string> splitTopLevel(const std::string& s) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
      continue;
    }
    cur += c;
  }
  parts.push_back(cur);
  for (auto& p : parts) {
    std::size_t b = p.find_first_not_of(" \t");
    std::size_t e = p.find_last_not_of(" \t");
    p = b == std::string::npos ? std::string() : p.substr(b, e - b + 1);
  }
  return parts;
}

} // namespace

std::vector<AnswerSet> runExternalSolver(const std::string& text, const std::string& solverPath,
                                         const std::vector<std::string>& args) {
  namespace fs = std::filesystem;
  std::random_device rd;
  fs::path tmp =
      fs::temp_directory_path() /
      ("sparc-" + std::to_string(rd()) + "-" + std::to_string(::getpid()) + ".dlv");
  {
    std::ofstream f(tmp);
    f << text;
  }

  std::string cmd = shellQuote(solverPath);
  for (const auto& a : args) cmd += " " + shellQuote(a);
  cmd += " " + shellQuote(tmp.string());

  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) {
    fs::remove(tmp);
    throw SolverLaunchError("cannot start solver: " + solverPath);
  }
  std::string output;
  char buf[4096];
  std::size_t got;
  while ((got = ::fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, got);
  int status = ::pclose(pipe);
  fs::remove(tmp);

  if (!WIFEXITED(status)) throw SolverExitError("solver terminated abnormally", -1);
  int code = WEXITSTATUS(status);
  if (code == 127) throw SolverLaunchError("solver not found: " + solverPath);
  if (code != 0)
    throw SolverExitError("solver exited with status " + std::to_string(code), code);

  std::vector<AnswerSet> sets;
  std::istringstream lines(output);
  std::string line;
  while (std::getline(lines, line)) {
    std::size_t open = line.find('{');
    std::size_t close = line.rfind('}');
    if (open == std::string::npos || close == std::string::npos || close < open) continue;
    std::string inner = line.substr(open + 1, close - open - 1);
    std::vector<Literal> lits;
    if (inner.find_first_not_of(" \t") != std::string::npos) {
      for (const auto& piece : splitTopLevel(inner)) {
        LiteralParseResult lr = parseLiteralText(piece);
        if (!lr.ok)
          throw SolverOutputError("unparseable literal in solver output: " + piece);
        lits.push_back(std::move(lr.literal));
      }
    }
    sets.push_back(makeAnswerSet(std::move(lits)));
  }
  return sets;
}

} // namespace sparc
