#pragma once

// Small programs with known-good groundings, answer sets, and translations,
// shared between the unit tests and the acceptance run.

#include <string>
#include <vector>

namespace corpus {

inline const char* kP1 = R"(sorts definition
s1(1).
s1(2).
s2(X+1) :-
         s1(X).
s3(f(X,Y)) :-
         s1(X),
         s1(Y),
         X != Y.
predicates declaration
p(s1)
q(s1,s3)
r(s1,s3)
program rules
p(X).
r(1,f(1,2)).
q(X,Y) :-
       p(X),
       r(X,Y).
)";

inline const std::vector<std::string> kP1Grounding = {
    "p(1).",
    "p(2).",
    "r(1,f(1,2)).",
    "q(1,f(1,2)) :- p(1), r(1,f(1,2)).",
    "q(2,f(1,2)) :- p(2), r(2,f(1,2)).",
    "q(1,f(2,1)) :- p(1), r(1,f(2,1)).",
    "q(2,f(2,1)) :- p(2), r(2,f(2,1)).",
};

inline const char* kP1Answer = "{p(1), p(2), q(1,f(1,2)), r(1,f(1,2))}";

// P1 with an extra sort no rule mentions; output must not change.
inline const char* kP1ExtraSort = R"(sorts definition
s1(1).
s1(2).
s2(X+1) :-
         s1(X).
s3(f(X,Y)) :-
         s1(X),
         s1(Y),
         X != Y.
s9(99).
predicates declaration
p(s1)
q(s1,s3)
r(s1,s3)
program rules
p(X).
r(1,f(1,2)).
q(X,Y) :-
       p(X),
       r(X,Y).
)";

inline const char* kP2 = R"(sorts definition
t(a,b).
t(c,1).
s1(X) :- t(X,Y).
s2(Y) :- t(X,Y).
s3(a).
predicates declaration
p(s1,s2).
program rules
p(X,Y) :- s3(X),t(X,Y).
)";

inline const char* kP2Grounding = "p(a,b) :- s3(a), t(a,b).";
inline const char* kP2Answer = "{p(a,b), t(a,b)}";

// One default, one contingency cr-rule; consistency needs the cr-rule.
inline const char* kRestore = R"(sorts definition
s(a).
predicates declaration
p(s)
q(s)
program rules
p(X) :- not q(X).
-p(X).
q(X) :+ .
)";

inline const std::vector<std::string> kRestoreCounterpart = {
    "s(a).",
    "p(X) :- not q(X), s(X).",
    "-p(X) :- s(X).",
    "appl(rn(1,X)) v -appl(rn(1,X)) :- s(X).",
    ":~ appl(rn(1,X)), s(X).",
    "q(X) :- appl(rn(1,X)), s(X).",
};

inline const std::vector<std::string> kRestoreCounterpartAnswer = {"-p(a)", "appl(rn(1,a))",
                                                                  "q(a)", "s(a)"};
inline const std::vector<std::string> kRestoreCounterpartStripped = {"-p(a)", "q(a)", "s(a)"};

inline const char* kDefaultAsp = R"(sorts definition
s1(a).
s2(d(a)).
predicates declaration
p(s1)
q(s1)
c(s1)
ab(s2)
program rules
p(X) :- c(X), not ab(d(X)), not -p(X).
q(X) :- p(X).
c(a).
-q(a).
)";

inline const char* kDefaultCr = R"(sorts definition
s1(a).
s2(d(a)).
predicates declaration
p(s1)
q(s1)
c(s1)
ab(s2)
program rules
p(X) :- c(X), not ab(d(X)), not -p(X).
-p(X) :+ c(X).
c(a).
)";

inline const std::vector<std::string> kDefaultCrAnswer = {"c(a)", "p(a)"};

inline const char* kDefaultCrObs = R"(sorts definition
s1(a).
s2(d(a)).
predicates declaration
p(s1)
q(s1)
c(s1)
ab(s2)
program rules
p(X) :- c(X), not ab(d(X)), not -p(X).
-p(X) :+ c(X).
c(a).
q(X) :- p(X).
-q(a).
)";

inline const std::vector<std::string> kDefaultCrObsAnswer = {"-p(a)", "-q(a)", "c(a)"};

} // namespace corpus
