#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>

#include "corpus.hpp"
#include "doctest.h"
#include "sparc/parser.hpp"
#include "sparc/sortcheck.hpp"

using namespace sparc;

namespace {

CheckResult checkText(const std::string& text, SortcheckOptions opts = {}) {
  ParseResult parsed = parseProgram(text);
  REQUIRE_MESSAGE(parsed.ok, text);
  return checkProgram(std::move(parsed.program), opts);
}

std::vector<std::string> sortTerms(const CheckedProgram& cp, const std::string& name) {
  std::vector<std::string> out;
  auto it = cp.sorts.defined.find(name);
  if (it == cp.sorts.defined.end()) return out;
  for (const auto& t : it->second) out.push_back(toString(t));
  return out;
}

bool hasErrorContaining(const std::vector<Diagnostic>& ds, const std::string& needle) {
  for (const auto& d : ds)
    if (d.severity == Severity::Error && d.message.find(needle) != std::string::npos) return true;
  return false;
}

} // namespace

TEST_CASE("sorts of P1: arithmetic heads and an inequality guard") {
  CheckResult r = checkText(corpus::kP1);
  REQUIRE(r.checked.has_value());
  CHECK(sortTerms(*r.checked, "s1") == std::vector<std::string>{"1", "2"});
  CHECK(sortTerms(*r.checked, "s2") == std::vector<std::string>{"2", "3"});
  CHECK(sortTerms(*r.checked, "s3") == std::vector<std::string>{"f(1,2)", "f(2,1)"});

  std::vector<std::string> ground;
  for (const auto& t : r.checked->sorts.groundTerms) ground.push_back(toString(t));
  CHECK(ground == std::vector<std::string>{"1", "2", "3", "f(1,2)", "f(2,1)"});
}

TEST_CASE("sorts of P2: projections of a binary relation") {
  CheckResult r = checkText(corpus::kP2);
  REQUIRE(r.checked.has_value());
  CHECK(sortTerms(*r.checked, "s1") == std::vector<std::string>{"a", "c"});
  CHECK(sortTerms(*r.checked, "s2") == std::vector<std::string>{"1", "b"});
  CHECK(sortTerms(*r.checked, "s3") == std::vector<std::string>{"a"});

  const auto* t = &r.checked->sorts.relations.at({"t", 2});
  CHECK(t->size() == 2);
  CHECK(r.checked->sorts.holds(Atom::predicate("t", {Term::symConst("a"), Term::symConst("b")})));
  CHECK_FALSE(
      r.checked->sorts.holds(Atom::predicate("t", {Term::symConst("a"), Term::nat(1)})));
}

TEST_CASE("declaration lookup and nat positions") {
  CheckResult r = checkText("sorts definition\ns(a).\npredicates declaration\np(s,nat)\n"
                            "program rules\np(a,5).\n");
  REQUIRE(r.checked.has_value());
  const auto* sig = r.checked->decls.lookup("p", 2);
  REQUIRE(sig != nullptr);
  CHECK(*sig == std::vector<std::string>{"s", "nat"});
  CHECK(r.checked->decls.lookup("p", 1) == nullptr);
}

TEST_CASE("misspelled constant in a fact is a sort error") {
  CheckResult r = checkText("sorts definition\nperson(john).\nperson(mary).\n"
                            "predicates declaration\nparent(person,person)\n"
                            "program rules\nparent(jone,mary).\n");
  CHECK_FALSE(r.checked.has_value());
  CHECK(hasErrorContaining(r.diagnostics, "jone"));
}

TEST_CASE("undeclared predicate in a program rule") {
  CheckResult r = checkText("sorts definition\ns(a).\npredicates declaration\np(s)\n"
                            "program rules\nq(a).\n");
  CHECK_FALSE(r.checked.has_value());
  CHECK(hasErrorContaining(r.diagnostics, "q"));
}

TEST_CASE("sort predicates cannot head program rules") {
  CheckResult r = checkText("sorts definition\ns(a).\npredicates declaration\np(s)\n"
                            "program rules\ns(a) :- p(a).\n");
  CHECK_FALSE(r.checked.has_value());
}

TEST_CASE("declaring an unknown or non-sort name fails") {
  CheckResult r = checkText("sorts definition\ns(a).\npredicates declaration\np(nosuch)\n"
                            "program rules\np(a).\n");
  CHECK_FALSE(r.checked.has_value());
  CHECK(hasErrorContaining(r.diagnostics, "nosuch"));
}

TEST_CASE("declared and sort predicate names must not collide") {
  CheckResult r = checkText("sorts definition\ns(a).\nt(a).\npredicates declaration\nt(s)\n"
                            "program rules\nt(a).\n");
  CHECK_FALSE(r.checked.has_value());
}

TEST_CASE("unsafe sort-rule variable is rejected") {
  CheckResult r = checkText("sorts definition\ns(a).\nt(X) :- not s(X).\n"
                            "predicates declaration\np(t)\nprogram rules\np(a).\n");
  CHECK_FALSE(r.checked.has_value());
}

TEST_CASE("unstratified sorts definition is rejected") {
  CheckResult r = checkText("sorts definition\ns(a).\nt(X) :- s(X), not u(X).\n"
                            "u(X) :- s(X), not t(X).\n"
                            "predicates declaration\np(t)\nprogram rules\np(a).\n");
  CHECK_FALSE(r.checked.has_value());
}

TEST_CASE("stratified negation across strata evaluates bottom-up") {
  CheckResult r = checkText("sorts definition\nnode(a).\nnode(b).\nmarked(a).\n"
                            "free(X) :- node(X), not marked(X).\n"
                            "predicates declaration\np(free)\nprogram rules\np(b).\n");
  REQUIRE(r.checked.has_value());
  CHECK(sortTerms(*r.checked, "free") == std::vector<std::string>{"b"});
}

TEST_CASE("arithmetic in sort rules: fold, guard, join order") {
  CheckResult r = checkText("sorts definition\nbase(1).\nbase(2).\nbase(3).\n"
                            "dbl(X*2) :- base(X), X != 2.\n"
                            "predicates declaration\np(dbl)\nprogram rules\np(2).\n");
  REQUIRE(r.checked.has_value());
  CHECK(sortTerms(*r.checked, "dbl") == std::vector<std::string>{"2", "6"});
}

TEST_CASE("negative derived value is an error") {
  CheckResult r = checkText("sorts definition\nbase(1).\nneg(X-5) :- base(X).\n"
                            "predicates declaration\np(neg)\nprogram rules\np(1).\n");
  CHECK_FALSE(r.checked.has_value());
  CHECK(hasErrorContaining(r.diagnostics, "negative"));
}

TEST_CASE("atom cap stops runaway sort derivations") {
  std::string text = "sorts definition\ns(1).\ns(X+1) :- s(X), X < 100000.\n"
                     "predicates declaration\np(s)\nprogram rules\np(1).\n";
  ParseResult parsed = parseProgram(text);
  REQUIRE(parsed.ok);
  SortcheckOptions opts;
  opts.atomCap = 500;
  CHECK_THROWS_AS(checkProgram(std::move(parsed.program), opts), CapacityError);
}

TEST_CASE("ground symbolic terms need a defined sort") {
  CheckResult r = checkText("sorts definition\ns(a).\npredicates declaration\np(s,nat)\n"
                            "program rules\np(a,5) :- not p(b,1).\n");
  CHECK_FALSE(r.checked.has_value());
  CHECK(hasErrorContaining(r.diagnostics, "b"));
}

TEST_CASE("nat-typed argument accepts naturals and arithmetic only") {
  CheckResult ok = checkText("sorts definition\ns(a).\npredicates declaration\np(s,nat)\n"
                             "program rules\np(a,3+4).\n");
  CHECK(ok.checked.has_value());

  CheckResult bad = checkText("sorts definition\ns(a).\npredicates declaration\np(nat)\n"
                              "program rules\np(a).\n");
  CHECK_FALSE(bad.checked.has_value());
}

TEST_CASE("language extraction lists sort and declared predicates") {
  CheckResult r = checkText(corpus::kP2);
  REQUIRE(r.checked.has_value());
  Language lang = extractLanguage(r.checked->program, r.checked->sorts);
  std::vector<std::string> preds = lang.predicates;
  std::sort(preds.begin(), preds.end());
  CHECK(preds == std::vector<std::string>{"p", "s1", "s2", "s3", "t"});
}
