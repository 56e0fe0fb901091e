#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sparc/bench.hpp"
#include "sparc/crsolver.hpp"
#include "sparc/parser.hpp"
#include "sparc/translate.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInconsistent = 1;
constexpr int kUsage = 2;
constexpr int kCapacity = 3;

bool readInput(const std::string& path, std::string& out) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    out = buf.str();
    return true;
  }
  std::ifstream f(path);
  if (!f) return false;
  std::ostringstream buf;
  buf << f.rdbuf();
  out = buf.str();
  return true;
}

// Writes to the -o file when given, to stdout otherwise.
class Sink {
public:
  explicit Sink(const std::string& path) {
    if (path.empty()) return;
    file_.open(path);
    if (!file_) throw std::runtime_error("cannot open output file: " + path);
    toFile_ = true;
  }
  std::ostream& stream() { return toFile_ ? file_ : std::cout; }

private:
  std::ofstream file_;
  bool toFile_ = false;
};

void renderAll(const std::vector<sparc::Diagnostic>& ds, const std::string& file) {
  for (const auto& d : ds) std::cerr << sparc::render(d, file) << "\n";
}

struct LoadedProgram {
  sparc::CheckedProgram checked;
};

// Parse and sort-check; on failure diagnostics have been printed and the
// process should exit with kUsage.
bool loadChecked(const std::string& path, std::uint64_t atomCap, LoadedProgram& out) {
  std::string text;
  if (!readInput(path, text)) {
    std::cerr << "error: cannot read " << path << "\n";
    return false;
  }
  sparc::ParseResult parsed = sparc::parseProgram(text);
  renderAll(parsed.diagnostics, path);
  if (!parsed.ok) return false;
  sparc::SortcheckOptions opts;
  opts.atomCap = atomCap;
  sparc::CheckResult checked = sparc::checkProgram(std::move(parsed.program), opts);
  renderAll(checked.diagnostics, path);
  if (!checked.checked) return false;
  out.checked = std::move(*checked.checked);
  return true;
}

std::string supportText(const std::vector<sparc::Term>& names) {
  std::string s = "{";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) s += ", ";
    s += sparc::toString(names[i]);
  }
  return s + "}";
}

// Answers carried to the printer, from either the internal or external path.
struct SolvedAnswer {
  sparc::AnswerSet set;
  std::vector<sparc::Term> supportNames;
};

std::vector<SolvedAnswer> solveInternal(const sparc::GroundProgram& g,
                                        const sparc::SolveOptions& opts) {
  std::vector<SolvedAnswer> out;
  for (auto& a : sparc::sparcAnswerSets(g, opts))
    out.push_back(SolvedAnswer{std::move(a.set), std::move(a.support.names)});
  return out;
}

// Runs the translated counterpart through an external DLV-style solver and
// maps its models back: appl(rn(...)) literals name the support, everything
// else is the answer set.
std::vector<SolvedAnswer> solveExternal(const sparc::CheckedProgram& cp,
                                        const std::string& solverPath, std::size_t limit) {
  sparc::TranslateResult tr = sparc::translateProgram(cp);
  renderAll(tr.diagnostics, "<translate>");
  if (!tr.ok) throw sparc::SolverOutputError("translation failed");
  std::string text = sparc::emitDlvText(tr.counterpart);
  std::vector<SolvedAnswer> out;
  for (const auto& model : sparc::runExternalSolver(text, solverPath, {})) {
    SolvedAnswer a;
    for (const auto& l : model.literals)
      if (!l.negated && l.atom.kind == sparc::AtomKind::Pred && l.atom.pred == "appl" &&
          l.atom.args.size() == 1)
        a.supportNames.push_back(l.atom.args[0]);
    a.set = sparc::stripAppl(model);
    out.push_back(std::move(a));
  }
  std::sort(out.begin(), out.end(), [](const SolvedAnswer& x, const SolvedAnswer& y) {
    return sparc::answerSetLess(x.set, y.set);
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const SolvedAnswer& x, const SolvedAnswer& y) {
                          return sparc::answerSetEq(x.set, y.set);
                        }),
            out.end());
  if (limit && out.size() > limit) out.resize(limit);
  return out;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"SPARC toolchain: sorted ASP with consistency-restoring rules"};
  app.require_subcommand(1);

  std::string inputPath;
  std::string outputPath;
  std::uint64_t atomCap = 100000;
  std::size_t candidateCap = std::size_t(1) << 22;
  std::size_t limit = 0;
  bool showSorts = false;
  bool showSupport = false;
  std::string solverPath;
  std::string format = "text";

  auto addCommon = [&](CLI::App* cmd, bool withOutput) {
    cmd->add_option("file", inputPath, "SPARC program file ('-' for stdin)")->required();
    cmd->add_option("--atom-cap", atomCap, "limit on derived sort atoms and ground instances")
        ->envname("SPARC_ATOM_CAP");
    if (withOutput) cmd->add_option("-o,--output", outputPath, "write output to this file");
  };

  CLI::App* check = app.add_subcommand("check", "parse, sort-check, and ground a program");
  addCommon(check, false);

  CLI::App* ground = app.add_subcommand("ground", "print the sort-respecting grounding");
  addCommon(ground, true);

  CLI::App* solve = app.add_subcommand("solve", "print the answer sets");
  addCommon(solve, true);
  solve->add_option("-n,--limit", limit, "print at most this many answer sets (0 = all)");
  solve->add_option("--candidate-cap", candidateCap, "search nodes before giving up")
      ->envname("SPARC_CANDIDATE_CAP");
  solve->add_flag("--show-sorts", showSorts, "keep sort atoms in the printed sets");
  solve->add_flag("--show-support", showSupport, "print the cr-rule support under each set");
  solve->add_option("--solver", solverPath,
                    "solve the translated counterpart with this external command");
  solve->add_option("--format", format, "text or records (JSON, one record per line)")
      ->check(CLI::IsMember({"text", "records"}));

  CLI::App* translate = app.add_subcommand("translate", "emit the weak-constraint counterpart");
  addCommon(translate, true);

  CLI::App* bench = app.add_subcommand("bench", "generate a shortest-path instance");
  int benchN = 0;
  double benchDensity = 0.0;
  std::uint64_t benchSeed = 0;
  bench->add_option("--vertices", benchN, "number of vertices (>= 2)")->required();
  bench->add_option("--density", benchDensity, "edge density e/(n*(n-1))")->required();
  bench->add_option("--seed", benchSeed, "random seed")->required();
  bench->add_option("-o,--output", outputPath, "write output to this file");
  bench->add_option("--format", format, "text or records (JSON, one record per line)")
      ->check(CLI::IsMember({"text", "records"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (bench->parsed()) {
      sparc::BenchInstance inst;
      try {
        inst = sparc::genShortestPath(benchN, benchDensity, benchSeed);
      } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
      }
      Sink sink(outputPath);
      if (format == "records") {
        nlohmann::json rec;
        rec["n"] = inst.n;
        rec["density"] = inst.density;
        rec["seed"] = inst.seed;
        rec["edges"] = inst.edges;
        rec["source"] = inst.source;
        rec["target"] = inst.target;
        rec["distance"] = inst.distance;
        rec["program"] = inst.programText;
        sink.stream() << rec.dump() << "\n";
      } else {
        sink.stream() << inst.programText;
      }
      return kOk;
    }

    LoadedProgram loaded;
    if (!loadChecked(inputPath, atomCap, loaded)) return kUsage;
    const sparc::CheckedProgram& cp = loaded.checked;

    if (translate->parsed()) {
      sparc::TranslateResult tr = sparc::translateProgram(cp);
      renderAll(tr.diagnostics, inputPath);
      if (!tr.ok) return kUsage;
      Sink sink(outputPath);
      sink.stream() << sparc::emitDlvText(tr.counterpart);
      return kOk;
    }

    sparc::GroundResult grounded = sparc::groundProgram(cp, atomCap);
    renderAll(grounded.diagnostics, inputPath);
    if (!grounded.ok) return kUsage;

    if (check->parsed()) return kOk;

    if (ground->parsed()) {
      Sink sink(outputPath);
      for (const auto& r : grounded.program.rules) sink.stream() << sparc::toString(r) << "\n";
      return kOk;
    }

    // solve
    auto started = std::chrono::steady_clock::now();
    std::vector<SolvedAnswer> answers;
    if (solverPath.empty()) {
      sparc::SolveOptions opts;
      opts.candidateCap = candidateCap;
      opts.limit = limit;
      answers = solveInternal(grounded.program, opts);
    } else {
      answers = solveExternal(cp, solverPath, limit);
    }
    double elapsedMs =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
            .count();

    Sink sink(outputPath);
    for (std::size_t i = 0; i < answers.size(); ++i) {
      sparc::AnswerSet visible =
          sparc::visibleLiterals(answers[i].set, grounded.program, showSorts);
      if (format == "records") {
        nlohmann::json rec;
        rec["index"] = i;
        std::vector<std::string> lits;
        for (const auto& l : visible.literals) lits.push_back(sparc::toString(l));
        rec["literals"] = lits;
        std::vector<std::string> names;
        for (const auto& t : answers[i].supportNames) names.push_back(sparc::toString(t));
        rec["support"] = names;
        rec["time_ms"] = elapsedMs;
        sink.stream() << rec.dump() << "\n";
      } else {
        sink.stream() << sparc::toString(visible) << "\n";
        if (showSupport) sink.stream() << "  support: " << supportText(answers[i].supportNames) << "\n";
      }
    }
    return answers.empty() ? kInconsistent : kOk;
  } catch (const sparc::CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCapacity;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
