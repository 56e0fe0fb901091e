#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>

#include "corpus.hpp"
#include "doctest.h"
#include "sparc/ground.hpp"
#include "sparc/parser.hpp"

using namespace sparc;

namespace {

CheckedProgram checkedOf(const std::string& text) {
  ParseResult parsed = parseProgram(text);
  REQUIRE_MESSAGE(parsed.ok, text);
  CheckResult r = checkProgram(std::move(parsed.program));
  REQUIRE(r.checked.has_value());
  return std::move(*r.checked);
}

std::vector<std::string> lines(const GroundProgram& g) {
  std::vector<std::string> out;
  for (const auto& r : g.rules) out.push_back(toString(r));
  return out;
}

} // namespace

TEST_CASE("P1 grounding matches the golden listing in order") {
  CheckedProgram cp = checkedOf(corpus::kP1);
  GroundResult g = groundProgram(cp);
  REQUIRE(g.ok);
  CHECK(lines(g.program) == corpus::kP1Grounding);
  CHECK(g.program.usedSortAtoms.empty());
}

TEST_CASE("P2 grounding keeps only the instance whose conditions can hold") {
  CheckedProgram cp = checkedOf(corpus::kP2);
  GroundResult g = groundProgram(cp);
  REQUIRE(g.ok);
  CHECK(lines(g.program) == std::vector<std::string>{corpus::kP2Grounding});

  std::vector<std::string> used;
  for (const auto& a : g.program.usedSortAtoms) used.push_back(toString(a));
  CHECK(used == std::vector<std::string>{"s3(a)", "t(a,b)"});
}

TEST_CASE("first variable varies fastest in the instance order") {
  CheckedProgram cp = checkedOf("sorts definition\ns(1).\ns(2).\n"
                                "predicates declaration\np(s,s)\nprogram rules\n"
                                "p(X,Y) :- not p(Y,X).\n");
  GroundResult g = groundProgram(cp);
  REQUIRE(g.ok);
  CHECK(lines(g.program) == std::vector<std::string>{
                                "p(1,1) :- not p(1,1).",
                                "p(2,1) :- not p(1,2).",
                                "p(1,2) :- not p(2,1).",
                                "p(2,2) :- not p(2,2).",
                            });
}

TEST_CASE("domains intersect across every occurrence of a variable") {
  CheckedProgram cp = checkedOf("sorts definition\nsmall(1).\nsmall(2).\n"
                                "big(2).\nbig(3).\n"
                                "predicates declaration\np(small)\nq(big)\n"
                                "program rules\nq(X) :- p(X).\n");
  GroundResult g = groundProgram(cp);
  REQUIRE(g.ok);
  CHECK(lines(g.program) == std::vector<std::string>{"q(2) :- p(2)."});
}

TEST_CASE("positive sort atoms stay in the body, naf sort atoms are resolved") {
  CheckedProgram cp = checkedOf("sorts definition\nt(a,b).\nt(c,1).\ns1(X) :- t(X,Y).\n"
                                "s2(Y) :- t(X,Y).\n"
                                "predicates declaration\np(s1)\nprogram rules\n"
                                "p(X) :- not t(X,b).\n");
  GroundResult g = groundProgram(cp);
  REQUIRE(g.ok);
  // X=a fails (t(a,b) holds); X=c keeps the instance and drops the settled atom.
  CHECK(lines(g.program) == std::vector<std::string>{"p(c)."});
}

TEST_CASE("relations prune instances and vanish from bodies") {
  CheckedProgram cp = checkedOf("sorts definition\ns(1).\ns(2).\ns(3).\n"
                                "predicates declaration\np(s,s)\nprogram rules\n"
                                "p(X,Y) :- X < Y, X + Y = 4.\n");
  GroundResult g = groundProgram(cp);
  REQUIRE(g.ok);
  CHECK(lines(g.program) == std::vector<std::string>{"p(1,3)."});
}

TEST_CASE("arithmetic arguments fold to values") {
  CheckedProgram cp = checkedOf("sorts definition\ns(1).\ns(2).\nd(2).\nd(4).\n"
                                "predicates declaration\np(d)\nq(s)\nprogram rules\n"
                                "p(X*2) :- q(X).\n");
  GroundResult g = groundProgram(cp);
  REQUIRE(g.ok);
  CHECK(lines(g.program) == std::vector<std::string>{
                                "p(2) :- q(1).",
                                "p(4) :- q(2).",
                            });
}

TEST_CASE("instances violating a declared sort are dropped") {
  CheckedProgram cp = checkedOf("sorts definition\ns(1).\ns(2).\nd(2).\n"
                                "predicates declaration\np(d)\nq(s)\nprogram rules\n"
                                "p(X*2) :- q(X).\n");
  GroundResult g = groundProgram(cp);
  REQUIRE(g.ok);
  CHECK(lines(g.program) == std::vector<std::string>{"p(2) :- q(1)."});
}

TEST_CASE("cr-rule instances carry rn names over the rule's variables") {
  CheckedProgram cp = checkedOf("sorts definition\ns(a).\ns(b).\n"
                                "predicates declaration\np(s)\nq(s,s)\nprogram rules\n"
                                "p(a) :+ .\n"
                                "q(X,Y) :+ p(Y), p(X).\n");
  GroundResult g = groundProgram(cp);
  REQUIRE(g.ok);
  auto crs = g.program.crRules();
  REQUIRE(crs.size() == 5);
  REQUIRE(crs[0].name.has_value());
  CHECK(toString(*crs[0].name) == "rn(1)");
  CHECK(toString(*crs[1].name) == "rn(2,a,a)");
  CHECK(toString(*crs[2].name) == "rn(2,b,a)");
  CHECK(toString(*crs[3].name) == "rn(2,a,b)");
  CHECK(toString(*crs[4].name) == "rn(2,b,b)");
}

TEST_CASE("a variable no sort can bound is an error") {
  CheckedProgram cp = checkedOf("sorts definition\ns(a).\npredicates declaration\n"
                                "p(s)\nq(nat)\nprogram rules\nq(X) :- not q(X+1).\n");
  GroundResult g = groundProgram(cp);
  CHECK_FALSE(g.ok);
  REQUIRE_FALSE(g.diagnostics.empty());
  CHECK(g.diagnostics[0].message ==
        "variable X cannot be bounded by a defined sort (nat positions alone do not bound a "
        "variable)");
}

TEST_CASE("nat positions bound through a companion sort atom") {
  CheckedProgram cp = checkedOf("sorts definition\ns(1).\ns(2).\npredicates declaration\n"
                                "q(nat)\np(s)\nprogram rules\nq(X+1) :- p(X).\n");
  GroundResult g = groundProgram(cp);
  REQUIRE(g.ok);
  CHECK(lines(g.program) == std::vector<std::string>{
                                "q(2) :- p(1).",
                                "q(3) :- p(2).",
                            });
}

TEST_CASE("duplicate body literals collapse per instance") {
  CheckedProgram cp = checkedOf("sorts definition\ns(a).\npredicates declaration\n"
                                "p(s)\nq(s)\nprogram rules\nq(X) :- p(X), p(a).\n");
  GroundResult g = groundProgram(cp);
  REQUIRE(g.ok);
  CHECK(lines(g.program) == std::vector<std::string>{"q(a) :- p(a)."});
}

TEST_CASE("instance cap throws") {
  CheckedProgram cp = checkedOf("sorts definition\ns(1).\ns(2).\ns(3).\ns(4).\ns(5).\n"
                                "predicates declaration\np(s,s,s)\nprogram rules\n"
                                "p(X,Y,Z) :- not p(Z,Y,X).\n");
  CHECK_THROWS_AS(groundProgram(cp, 100), CapacityError);
  GroundResult g = groundProgram(cp, 125);
  CHECK(g.ok);
  CHECK(g.program.rules.size() == 125);
}
