#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "lamres/conflict.hpp"
#include "lamres/groups.hpp"
#include "oracles.hpp"

using namespace lamres;

namespace {

std::vector<std::string> strs(const std::vector<Conflict>& cs) {
  std::vector<std::string> out;
  for (const auto& c : cs) out.push_back(c.str());
  return out;
}

Rule rule(const std::string& text, const std::string& id = "r") {
  Rule r = parse_program(text).rules.at(0);
  r.id = id;
  return r;
}

}  // namespace

TEST(IsConflicting, ExamplePairs) {
  Program p = fixtures::example();
  EXPECT_TRUE(is_conflicting(p.at("r1"), p.at("r2")));
  EXPECT_FALSE(is_conflicting(p.at("r1"), p.at("r3")));
  EXPECT_TRUE(is_conflicting(p.at("r2"), p.at("r1")));
}

TEST(IsConflicting, DefaultPartBlocksWitness) {
  Rule r = rule("a :- b, not c.", "r1");
  Rule r2 = rule("-a :- c.", "r2");
  EXPECT_FALSE(is_conflicting(r, r2));
  EXPECT_FALSE(oracle::conflicting(r, r2));
}

TEST(IsConflicting, InconsistentPositiveUnion) {
  EXPECT_FALSE(is_conflicting(rule("a :- b."), rule("-a :- -b.")));
  EXPECT_TRUE(is_conflicting(rule("a :- b."), rule("-a :- not -b.")));
  EXPECT_FALSE(is_conflicting(rule("a :- b, -b."), rule("-a.")));
}

TEST(IsConflicting, AgreesWithWitnessSearchOnAllSmallPairs) {
  // Every pair of rules with heads a / -a and bodies of up to two literals
  // over atoms {b, c}, both polarities and both negation modes.
  std::vector<BodyLiteral> lits;
  for (const char* atom : {"b", "c"}) {
    for (bool strong : {false, true}) {
      for (bool dn : {false, true}) lits.push_back(BodyLiteral{Literal{atom, strong}, dn});
    }
  }
  std::vector<std::vector<BodyLiteral>> bodies{{}};
  for (std::size_t i = 0; i < lits.size(); ++i) {
    bodies.push_back({lits[i]});
    for (std::size_t j = i + 1; j < lits.size(); ++j) bodies.push_back({lits[i], lits[j]});
  }
  std::size_t checked = 0;
  for (const auto& b1 : bodies) {
    for (const auto& b2 : bodies) {
      Rule r{"r1", {"a", false}, b1};
      Rule r2{"r2", {"a", true}, b2};
      ASSERT_EQ(is_conflicting(r, r2), oracle::conflicting(r, r2)) << print_rule(r) << " / " << print_rule(r2);
      ASSERT_EQ(is_conflicting(r, r2), is_conflicting(r2, r));
      ++checked;
    }
  }
  EXPECT_EQ(checked, bodies.size() * bodies.size());
}

TEST(AllConflicts, Example) {
  EXPECT_EQ(strs(all_conflicts(fixtures::example())),
            (std::vector<std::string>{"{r1,r2}", "{r3,r4}", "{r5,r6}", "{r7,r8}", "{r9,r10}", "{r9,r11}",
                                      "{r12,r13}", "{r14,r15}", "{r14,r16}"}));
}

TEST(AllConflicts, ConflictFreePrograms) {
  EXPECT_TRUE(all_conflicts(parse_program(fixtures::kDiagnosis)).empty());
  EXPECT_TRUE(all_conflicts(parse_program("a :- b.\n-a :- -b.\n")).empty());
  EXPECT_TRUE(all_conflicts(Program{}).empty());
}

TEST(AllConflicts, ResolvedExampleIsClean) { EXPECT_TRUE(all_conflicts(fixtures::resolved()).empty()); }

TEST(ConflictGroup, SizesAndMembers) {
  Program p = fixtures::example();
  ConflictGroup g14 = conflict_group(p, "r14");
  EXPECT_EQ(g14.size(), 2u);
  EXPECT_EQ(strs(g14.conflicts), (std::vector<std::string>{"{r14,r15}", "{r14,r16}"}));
  EXPECT_EQ(conflict_group(p, "r1").size(), 1u);
  EXPECT_EQ(strs(conflict_group(p, "r9").conflicts), (std::vector<std::string>{"{r9,r10}", "{r9,r11}"}));
}

TEST(ConflictGroup, Errors) {
  Program p = fixtures::example();
  try {
    conflict_group(p, "r99");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownRule);
  }
  p.rules.push_back(Rule{"lonely", {"q", false}, {}});
  try {
    conflict_group(p, "lonely");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotConflicting);
  }
}

TEST(RepresentativeCandidates, ExampleGroups) {
  Program p = fixtures::example();
  auto c1 = representative_candidates(p, conflict_group(p, "r1"));
  ASSERT_EQ(c1.size(), 1u);
  EXPECT_EQ(c1[0].rule, "r2");
  ASSERT_EQ(c1[0].extensions.size(), 1u);
  EXPECT_EQ(c1[0].extensions[0].key(), "c");

  EXPECT_TRUE(representative_candidates(p, conflict_group(p, "r9")).empty());

  auto c14 = representative_candidates(p, conflict_group(p, "r14"));
  ASSERT_EQ(c14.size(), 1u);
  EXPECT_EQ(c14[0].rule, "r14");
  std::vector<std::string> keys;
  for (const auto& x : c14[0].extensions) keys.push_back(x.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"~h", "~t,~-t"}));
}

TEST(Covers, ExampleContainsTheEightGroupCover) {
  auto covers = enumerate_min_covers(fixtures::example());
  ASSERT_FALSE(covers.empty());
  const std::vector<std::string> expected{"r2", "r4", "r6", "r8", "r10", "r11", "r13", "r14"};
  EXPECT_EQ(covers.front().anchors(), expected);
  for (const auto& g : covers.front().groups) EXPECT_EQ(*g.representative, g.anchor);
  bool listed = std::any_of(covers.begin(), covers.end(), [&](const GroupCover& c) { return c.anchors() == expected; });
  EXPECT_TRUE(listed);
}

TEST(Covers, EveryCoverIsMinimalOverConflicts) {
  Program p = fixtures::example();
  auto conflicts = all_conflicts(p);
  for (const auto& cover : enumerate_min_covers(p)) {
    for (const auto& c : conflicts) {
      EXPECT_TRUE(std::any_of(cover.groups.begin(), cover.groups.end(), [&](const ConflictGroup& g) { return g.covers(c); }));
    }
    for (std::size_t skip = 0; skip < cover.groups.size(); ++skip) {
      bool still = std::all_of(conflicts.begin(), conflicts.end(), [&](const Conflict& c) {
        for (std::size_t i = 0; i < cover.groups.size(); ++i) {
          if (i != skip && cover.groups[i].covers(c)) return true;
        }
        return false;
      });
      EXPECT_FALSE(still) << "group " << cover.groups[skip].anchor << " is redundant";
    }
  }
}

TEST(Covers, SymmetricConflictIsUnresolvable) {
  Program p = parse_program("a :- b. % #id ra\n-a :- b. % #id rb\n");
  try {
    enumerate_min_covers(p);
    FAIL();
  } catch (const UnresolvableRules& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnresolvableRules);
    EXPECT_EQ(e.rules(), (std::vector<std::string>{"ra", "rb"}));
  }
  EXPECT_TRUE(is_symmetric(p.rules[0], p.rules[1]));
}

TEST(Covers, SingleConflictResolvableFromBothSides) {
  Program p = parse_program("a :- b.\n-a :- c.\n");
  auto covers = enumerate_min_covers(p);
  ASSERT_EQ(covers.size(), 2u);
  EXPECT_EQ(*covers[0].groups.at(0).representative, "r1");
  EXPECT_EQ(*covers[1].groups.at(0).representative, "r2");
}

TEST(Covers, ConflictFreeProgramHasTheEmptyCover) {
  auto covers = enumerate_min_covers(parse_program(fixtures::kDiagnosis));
  ASSERT_EQ(covers.size(), 1u);
  EXPECT_TRUE(covers[0].groups.empty());
}

TEST(Covers, CapFallsBackToOneGreedyCover) {
  Program p = fixtures::example();
  AnalysisOptions opts;
  opts.cover_cap = 1;
  CoverAnalysis a = analyze_covers(p, opts);
  EXPECT_TRUE(a.greedy);
  ASSERT_EQ(a.covers.size(), 1u);
  for (const auto& c : a.conflicts) {
    EXPECT_TRUE(std::any_of(a.covers[0].groups.begin(), a.covers[0].groups.end(),
                            [&](const ConflictGroup& g) { return g.covers(c); }));
  }
}

TEST(Covers, PartialUnresolvabilityIsReportedNotFatal) {
  Program p = parse_program("a :- b.\n-a :- b.\nx :- y.\n-x :- z.\n");
  CoverAnalysis a = analyze_covers(p);
  ASSERT_EQ(a.unresolvable.size(), 1u);
  EXPECT_EQ(a.unresolvable[0].str(), "{r1,r2}");
  ASSERT_FALSE(a.covers.empty());
  EXPECT_EQ(a.covers[0].groups.size(), 1u);
}
