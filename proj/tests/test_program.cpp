#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "lamres/answer_sets.hpp"
#include "lamres/program.hpp"
#include "oracles.hpp"

using namespace lamres;

TEST(Parse, RuleWithDefaultNegation) {
  Program p = parse_program("a :- b, not c.");
  ASSERT_EQ(p.rules.size(), 1u);
  const Rule& r = p.rules[0];
  EXPECT_EQ(r.id, "r1");
  EXPECT_EQ(r.head, (Literal{"a", false}));
  EXPECT_EQ(r.body_pos(), (std::vector<Literal>{{"b", false}}));
  EXPECT_EQ(r.body_neg(), (std::vector<Literal>{{"c", false}}));
}

TEST(Parse, StrongNegationInHeadAndBody) {
  Program p = parse_program("-u :- s, -t, h.\n-a :- not -b.");
  EXPECT_TRUE(p.rules[0].head.strong_neg);
  EXPECT_EQ(p.rules[0].body_pos()[1], (Literal{"t", true}));
  EXPECT_EQ(p.rules[1].body_neg(), (std::vector<Literal>{{"b", true}}));
}

TEST(Parse, FactsCommentsAndBlankLines) {
  Program p = parse_program("% header\n\nsympM.\n  sympO. % trailing\n\n");
  ASSERT_EQ(p.rules.size(), 2u);
  EXPECT_TRUE(p.rules[0].is_fact());
  EXPECT_EQ(p.rules[1].id, "r2");
  EXPECT_TRUE(p.is_core() == false);
}

TEST(Parse, EmptyInputGivesEmptyProgram) {
  EXPECT_TRUE(parse_program("").rules.empty());
  EXPECT_TRUE(parse_program("\n\n% nothing\n").rules.empty());
}

TEST(Parse, AtomsMayStartWithNot) {
  Program p = parse_program("a :- nothing, not note.");
  EXPECT_EQ(p.rules[0].body_pos(), (std::vector<Literal>{{"nothing", false}}));
  EXPECT_EQ(p.rules[0].body_neg(), (std::vector<Literal>{{"note", false}}));
}

TEST(Parse, DuplicateBodyLiteralsCollapse) {
  Program p = parse_program("a :- b, b, not c, not c.");
  EXPECT_EQ(p.rules[0].body.size(), 2u);
}

TEST(Parse, MissingPeriodReportsLineAndColumn) {
  try {
    parse_program("a :- b.\n\nc :- d");
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.code(), ErrorCode::SyntaxError);
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 7u);
  }
}

TEST(Parse, MalformedRulesAreRejected) {
  for (const char* bad : {"A :- b.", "a :- .", "a :- b,, c.", "a :- b c.", "a : b.", ":- b.", "a :- not.x.",
                          "a. b.", "--a.", "a :- -not c."}) {
    EXPECT_THROW(parse_program(bad), SyntaxError) << bad;
  }
}

TEST(Parse, IdAnnotations) {
  Program p = parse_program("a :- b. % #id base\n% #id other\n-a :- b.\nc.\n");
  ASSERT_EQ(p.rules.size(), 3u);
  EXPECT_EQ(p.rules[0].id, "base");
  EXPECT_EQ(p.rules[1].id, "other");
  EXPECT_EQ(p.rules[2].id, "r3");
  EXPECT_EQ(p.at("other").head, (Literal{"a", true}));
  EXPECT_THROW(p.at("r1"), Error);
}

TEST(Parse, DuplicateIds) {
  try {
    parse_program("a. % #id x\nb. % #id x\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DuplicateRuleId);
  }
  EXPECT_THROW(parse_program("a. % #id r2\nb.\n"), Error);
}

TEST(Print, CanonicalSpacing) {
  Program p = parse_program("a:-b,not   c.\n-x :-d ,  -e.\nf.");
  EXPECT_EQ(print_program(p), "a :- b, not c.\n-x :- d, -e.\nf.\n");
}

TEST(Print, RoundTripsTheExample) {
  EXPECT_EQ(print_program(fixtures::example()), fixtures::kExample);
  EXPECT_EQ(parse_program(print_program(fixtures::example())), fixtures::example());
}

TEST(Print, KeepsNonPositionalIds) {
  Program p = parse_program("a. % #id first\nb.\n");
  EXPECT_EQ(print_program(p), "a. % #id first\nb.\n");
  EXPECT_EQ(parse_program(print_program(p)), p);
}

TEST(Program, AtomsAndBodyLiterals) {
  Program p = fixtures::example();
  EXPECT_EQ(p.atoms().size(), 23u);
  EXPECT_EQ(p.body_atoms().size(), 16u);
  EXPECT_TRUE(p.body_literals().count(Literal{"t", true}));
  EXPECT_TRUE(p.is_core());
}

TEST(Satisfaction, DefaultAndStrongLiterals) {
  InterpretationSet s{{{"b", false}, {"t", true}}};
  EXPECT_TRUE(satisfies(s, pos("b")));
  EXPECT_FALSE(satisfies(s, naf("b")));
  EXPECT_TRUE(satisfies(s, naf("t")));
  EXPECT_FALSE(satisfies(s, naf("t", true)));
  EXPECT_TRUE(satisfies(s, pos("t", true)));
  EXPECT_TRUE(s.consistent());
  s.literals.insert({"b", true});
  EXPECT_FALSE(s.consistent());
}

TEST(Reduct, DropsBlockedRulesAndStripsDefaults) {
  Program p = parse_program("a :- b, not c.\nd :- not a.\ne :- f.\n");
  Program r = reduct(p, InterpretationSet{{{"a", false}}});
  ASSERT_EQ(r.rules.size(), 2u);
  EXPECT_EQ(print_rule(r.rules[0]), "a :- b.");
  EXPECT_EQ(print_rule(r.rules[1]), "e :- f.");
}

TEST(AnswerSets, DiagnosisExample) {
  Program p = parse_program(fixtures::kDiagnosis + "sympM.\nsympO.\n");
  AnswerSets as = answer_sets(p);
  EXPECT_FALSE(as.contradictory);
  ASSERT_EQ(as.sets.size(), 1u);
  EXPECT_EQ(as.sets[0].literals,
            (std::set<Literal>{{"sympM", false}, {"sympO", false}, {"disB", false}, {"treatY", false}}));
}

TEST(AnswerSets, ContradictionAndEvenLoop) {
  EXPECT_TRUE(answer_sets(parse_program("a.\n-a.\n")).contradictory);
  AnswerSets loop = answer_sets(parse_program("p :- not q.\nq :- not p.\n"));
  EXPECT_EQ(loop.sets.size(), 2u);
  EXPECT_TRUE(answer_sets(parse_program("p :- not p.\n")).sets.empty());
  EXPECT_FALSE(answer_sets(parse_program("p :- not p.\n")).contradictory);
}

TEST(AnswerSets, ExampleWithFactHasNoAnswerSet) {
  // a and -a both follow, but the full literal set falsifies the reduct of the
  // rule guarded by not c, so no candidate survives.
  Program p = fixtures::example();
  p.rules.push_back(Rule{"fb", {"b", false}, {}});
  AnswerSets as = answer_sets(p, {32});
  EXPECT_FALSE(as.contradictory);
  EXPECT_TRUE(as.sets.empty());
}

TEST(AnswerSets, RespectsAtomCap) {
  try {
    answer_sets(fixtures::example());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooLarge);
  }
}

TEST(AnswerSets, MatchNaiveOracleOnSmallPrograms) {
  for (const char* src : {"a :- not b.\nb :- not a.\n-a :- b.\n", "a :- not -a.\n-a :- not a.\nb :- a.\n-b :- -a.\n",
                          "a.\nb :- a, not c.\nc :- not b.\n-c :- b.\n"}) {
    Program p = parse_program(src);
    AnswerSets as = answer_sets(p);
    oracle::Models m = oracle::answer_sets(p);
    EXPECT_EQ(as.contradictory, m.contradictory) << src;
    std::vector<oracle::LitSet> got;
    for (const auto& s : as.sets) {
      oracle::LitSet t;
      for (const auto& l : s.literals) t.insert(l.str());
      got.push_back(t);
    }
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, m.sets) << src;
  }
}
