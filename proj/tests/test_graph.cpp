#include <gtest/gtest.h>

#include <random>

#include "dot_checker.hpp"
#include "fixtures.hpp"
#include "lamres/groups.hpp"
#include "lamres/lambda_graph.hpp"
#include "lamres/ordering.hpp"
#include "lamres/report.hpp"
#include "oracles.hpp"

using namespace lamres;

namespace {

LambdaGraph example_graph() { return build_graph(enumerate_min_covers(fixtures::example()).front()); }

struct CliqueView {
  std::string label;
  std::vector<std::string> members;
  std::size_t weight;
  bool operator==(const CliqueView&) const = default;
};

std::vector<CliqueView> view(const std::vector<LambdaClique>& qs) {
  std::vector<CliqueView> out;
  for (const auto& q : qs) out.push_back({q.label.key(), q.members, q.weight});
  return out;
}

std::set<std::string> labels(const CliqueCover& c) {
  std::set<std::string> out;
  for (const auto& q : c.cliques) out.insert(q.label.key());
  return out;
}

}  // namespace

TEST(LambdaGraph, ExampleNodesAndEdges) {
  LambdaGraph g = example_graph();
  std::vector<std::string> nodes;
  for (const auto& n : g.nodes) nodes.push_back(n.group + ":" + std::to_string(n.weight));
  EXPECT_EQ(nodes, (std::vector<std::string>{"r2:1", "r4:1", "r6:1", "r8:1", "r10:1", "r11:1", "r13:1", "r14:2"}));
  auto self_loops = std::count_if(g.edges.begin(), g.edges.end(), [](const GraphEdge& e) { return e.a == e.b; });
  EXPECT_EQ(self_loops, 2);
  EXPECT_TRUE(std::any_of(g.edges.begin(), g.edges.end(), [](const GraphEdge& e) {
    return e.a == "r2" && e.b == "r4" && e.label.key() == "c";
  }));
  // ~f joins five groups pairwise, ~h three, c two; plus two self-loops.
  EXPECT_EQ(g.edges.size(), 10u + 3u + 1u + 2u);
}

TEST(LambdaGraph, ExampleCliques) {
  auto qs = cliques(example_graph());
  EXPECT_EQ(view(qs), (std::vector<CliqueView>{{"~f", {"r4", "r6", "r10", "r11", "r13"}, 5},
                                              {"~h", {"r6", "r13", "r14"}, 4},
                                              {"c", {"r2", "r4"}, 2},
                                              {"~t,~-t", {"r14"}, 2},
                                              {"~k", {"r8"}, 1}}));
  LambdaGraph g = example_graph();
  for (const auto& q : qs) EXPECT_TRUE(clique_complete(g, q)) << q.label.key();
}

TEST(LambdaGraph, ExampleMinimumCliqueCover) {
  LambdaGraph g = example_graph();
  // Two covers of size four: ~h or ~t,~-t for r14. The heavier one comes first.
  auto all = enumerate_min_clique_covers(g);
  ASSERT_EQ(all.size(), 2u);
  EXPECT_EQ(labels(all[1]), (std::set<std::string>{"~t,~-t", "~f", "c", "~k"}));
  CliqueCover c = min_clique_cover(g);
  EXPECT_FALSE(c.approximate);
  EXPECT_EQ(labels(c), (std::set<std::string>{"~h", "~f", "c", "~k"}));
  std::vector<std::string> ext;
  for (const auto& x : c.extensions()) ext.push_back(x.key());
  EXPECT_EQ(ext, (std::vector<std::string>{"c", "~f", "~h", "~k"}));
}

TEST(LambdaGraph, CliqueCoverMatchesExhaustiveSearch) {
  std::mt19937_64 rng(7);
  const std::vector<std::string> pool{"~a", "~b", "c", "-d", "~e", "f", "~g", "h"};
  for (int round = 0; round < 300; ++round) {
    GroupCover cover;
    const std::size_t groups = 1 + rng() % 7;
    const std::size_t nlabels = 1 + rng() % pool.size();
    for (std::size_t i = 0; i < groups; ++i) {
      ConflictGroup g;
      g.anchor = "r" + std::to_string(i + 1);
      g.representative = g.anchor;
      g.conflicts.resize(1 + rng() % 3, Conflict{g.anchor, "x"});
      std::set<std::string> chosen{pool[rng() % nlabels]};
      for (std::size_t k = 0; k < nlabels; ++k) {
        if (rng() % 3 == 0) chosen.insert(pool[k]);
      }
      for (const auto& l : chosen) g.extensions.push_back(LambdaExtension::parse_key(l));
      cover.groups.push_back(g);
    }
    LambdaGraph graph = build_graph(cover);

    std::set<std::string> nodes;
    std::map<std::string, std::set<std::string>> members;
    for (const auto& g : cover.groups) {
      nodes.insert(g.anchor);
      for (const auto& x : g.extensions) members[x.key()].insert(g.anchor);
    }
    std::map<std::string, std::set<std::string>> got_members;
    for (const auto& q : cliques(graph)) got_members[q.label.key()] = {q.members.begin(), q.members.end()};
    ASSERT_EQ(got_members, members);

    std::set<std::set<std::string>> got;
    for (const auto& c : enumerate_min_clique_covers(graph)) got.insert(labels(c));
    ASSERT_EQ(got, oracle::min_set_covers(nodes, members)) << "round " << round;
  }
}

TEST(LambdaGraph, EmptyGraph) {
  LambdaGraph g = build_graph(GroupCover{});
  EXPECT_TRUE(g.empty());
  EXPECT_TRUE(cliques(g).empty());
  EXPECT_TRUE(min_clique_cover(g).cliques.empty());
  EXPECT_EQ(export_graph(g, GraphFormat::Dot), "graph lambda {\n}\n");
}

TEST(ExportGraph, DotIsWellFormed) {
  std::string dot = export_graph(example_graph(), "dot");
  EXPECT_TRUE(DotChecker(dot).valid()) << dot;
  EXPECT_NE(dot.find("  \"r2\" -- \"r4\" [label=\"c\"];\n"), std::string::npos);
  EXPECT_NE(dot.find("  \"r14\" [label=\"cgr(r14) [2]\"];\n"), std::string::npos);
  EXPECT_FALSE(DotChecker("graph lambda {\n  \"a\" -- ;\n}\n").valid());
  EXPECT_FALSE(DotChecker("graph lambda {\n").valid());
}

TEST(ExportGraph, UnknownFormat) {
  try {
    export_graph(example_graph(), "png");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownFormat);
  }
}

TEST(ExportGraph, JsonRoundTrip) {
  LambdaGraph g = example_graph();
  std::string json = export_graph(g, GraphFormat::Json);
  EXPECT_EQ(import_graph_json(json), g);
  auto j = nlohmann::json::parse(json);
  std::vector<std::size_t> weights;
  for (const auto& q : j["cliques"]) weights.push_back(q["weight"].get<std::size_t>());
  EXPECT_EQ(weights, (std::vector<std::size_t>{5, 4, 2, 2, 1}));
  EXPECT_THROW(import_graph_json("{\"nodes\": 3}"), Error);
}

TEST(Ordering, GroupOrderOfTheExample) {
  GroupOrder o = order_groups(example_graph());
  EXPECT_EQ(o.ids(), (std::vector<std::string>{"r10", "r11", "r2", "r8", "r6", "r13", "r4", "r14"}));
  std::map<std::string, std::size_t> weight;
  for (const auto& r : o.ranked) weight[r.group] = r.weight;
  EXPECT_EQ(weight["r4"], 7u);
  EXPECT_EQ(weight["r6"], 9u);
  EXPECT_EQ(weight["r13"], 9u);
  EXPECT_EQ(weight["r14"], 6u);
}

TEST(Ordering, ExtensionOrdersOfTheExample) {
  LambdaGraph g = example_graph();
  EXPECT_EQ(order_extensions(g, "r4").keys(), (std::vector<std::string>{"~f", "c"}));
  EXPECT_EQ(order_extensions(g, "r6").keys(), (std::vector<std::string>{"~f", "~h"}));
  EXPECT_EQ(order_extensions(g, "r13").keys(), (std::vector<std::string>{"~f", "~h"}));
  EXPECT_EQ(order_extensions(g, "r14").keys(), (std::vector<std::string>{"~h", "~t,~-t"}));
  EXPECT_EQ(order_extensions(g, "r8").keys(), (std::vector<std::string>{"~k"}));
}

TEST(Ordering, UnknownGroupAndEmptyGraph) {
  try {
    order_extensions(example_graph(), "r9");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownGroup);
  }
  EXPECT_TRUE(order_groups(LambdaGraph{}).ranked.empty());
}

TEST(Ordering, WeightTieBrokenByExtensionKey) {
  GroupCover cover;
  cover.groups.push_back(ConflictGroup{"r1", {Conflict{"r1", "r2"}, Conflict{"r1", "r3"}}, "r1",
                                       {LambdaExtension::parse_key("~t,~-t"), LambdaExtension::parse_key("~h")}});
  EXPECT_EQ(order_extensions(build_graph(cover), "r1").keys(), (std::vector<std::string>{"~h", "~t,~-t"}));
}

TEST(Ordering, JsonShape) {
  auto j = order_to_json(example_graph());
  EXPECT_EQ(j["groups"][0].dump(), R"({"id":"r10","cliques":1,"weight":5})");
  EXPECT_EQ(j["extensions"]["r14"].dump(), R"([{"key":"~h","weight":4},{"key":"~t,~-t","weight":2}])");
}
