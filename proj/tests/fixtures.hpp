#ifndef LAMRES_TESTS_FIXTURES_HPP_
#define LAMRES_TESTS_FIXTURES_HPP_

#include <string>
#include <vector>

#include "lamres/session.hpp"

namespace fixtures {

// Sixteen rules, nine conflicts; the running example of the test-suite.
inline const std::string kExample =
    "a :- b, not c.\n"
    "-a :- b.\n"
    "x :- d, e, f, not c.\n"
    "-x :- d, e.\n"
    "y :- g, h, f.\n"
    "-y :- g.\n"
    "z :- j, k, not l.\n"
    "-z :- j, not l.\n"
    "w :- f, m, n.\n"
    "-w :- m.\n"
    "-w :- n.\n"
    "p :- o, h, f, not q.\n"
    "-p :- o, not q.\n"
    "u :- s.\n"
    "-u :- s, -t, h.\n"
    "-u :- s, t, h.\n";

// kExample after the four-step resolution script.
inline const std::string kResolved =
    "a :- b, not c.\n"
    "-a :- b, c.\n"
    "x :- d, e, f, not c.\n"
    "-x :- d, e, c.\n"
    "y :- g, h, f.\n"
    "-y :- g, not f.\n"
    "z :- j, k, not l.\n"
    "-z :- j, not l, not k.\n"
    "w :- f, m, n.\n"
    "-w :- m, not f.\n"
    "-w :- n, not f.\n"
    "p :- o, h, f, not q.\n"
    "-p :- o, not q, not f.\n"
    "u :- s, not h.\n"
    "-u :- s, -t, h.\n"
    "-u :- s, t, h.\n";

inline const std::string kDiagnosis =
    "disA :- sympM, sympN.\n"
    "disB :- sympM, sympO.\n"
    "treatX :- disA.\n"
    "treatY :- disB.\n";

inline const std::vector<lamres::ChoiceRequest> kScript = {
    {"~f", {"r10", "r6", "r11", "r13"}},
    {"c", {"r2", "r4"}},
    {"~k", {"r8"}},
    {"~h", {"r14"}},
};

inline const std::string kScriptJson =
    R"([{"extension":"~f","targets":["r10","r6","r11","r13"]},)"
    R"({"extension":"c","targets":["r2","r4"]},)"
    R"({"extension":"~k","targets":["r8"]},)"
    R"({"extension":"~h","targets":["r14"]}])";

inline lamres::Program example() { return lamres::parse_program(kExample); }
inline lamres::Program resolved() { return lamres::parse_program(kResolved); }

}  // namespace fixtures

#endif  // LAMRES_TESTS_FIXTURES_HPP_
