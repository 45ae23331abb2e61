#ifndef LAMRES_LAMBDA_GRAPH_HPP_
#define LAMRES_LAMBDA_GRAPH_HPP_

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lamres/error.hpp"
#include "lamres/extension.hpp"
#include "lamres/groups.hpp"
#include "lamres/natural_order.hpp"

namespace lamres {

struct GraphNode {
  std::string group;           // anchor id of the conflict group
  std::string representative;  // rule the extensions apply to
  std::size_t weight = 0;      // group size
  bool operator==(const GraphNode&) const = default;
};

/// `a == b` marks a self-loop: the label is an extension of one group only.
struct GraphEdge {
  std::string a;
  std::string b;
  LambdaExtension label;
  bool operator==(const GraphEdge&) const = default;
};

struct LambdaGraph {
  std::vector<GraphNode> nodes;  // by group id
  std::vector<GraphEdge> edges;  // by endpoints, then label

  const GraphNode* node(std::string_view group) const {
    for (const auto& n : nodes) {
      if (n.group == group) return &n;
    }
    return nullptr;
  }
  bool empty() const { return nodes.empty(); }
  bool operator==(const LambdaGraph&) const = default;
};

struct LambdaClique {
  LambdaExtension label;
  std::vector<std::string> members;  // group ids, in node order
  std::size_t weight = 0;

  bool contains(std::string_view group) const {
    return std::find(members.begin(), members.end(), group) != members.end();
  }
  bool operator==(const LambdaClique&) const = default;
};

struct CliqueCover {
  std::vector<LambdaClique> cliques;
  bool approximate = false;

  std::vector<LambdaExtension> extensions() const {
    std::vector<LambdaExtension> out;
    for (const auto& q : cliques) out.push_back(q.label);
    std::sort(out.begin(), out.end());
    return out;
  }
  std::size_t total_weight() const {
    std::size_t w = 0;
    for (const auto& q : cliques) w += q.weight;
    return w;
  }
  bool operator==(const CliqueCover&) const = default;
};

namespace detail {

inline void sort_graph(LambdaGraph& g) {
  std::map<std::string, std::size_t, NaturalLess> rank;
  std::sort(g.nodes.begin(), g.nodes.end(),
            [](const GraphNode& x, const GraphNode& y) { return natural_less(x.group, y.group); });
  for (std::size_t i = 0; i < g.nodes.size(); ++i) rank[g.nodes[i].group] = i;
  for (auto& e : g.edges) {
    if (rank.count(e.a) && rank.count(e.b) && rank[e.b] < rank[e.a]) std::swap(e.a, e.b);
  }
  std::sort(g.edges.begin(), g.edges.end(), [&](const GraphEdge& x, const GraphEdge& y) {
    if (x.a != y.a) return rank[x.a] < rank[y.a];
    if (x.b != y.b) return rank[x.b] < rank[y.b];
    return x.label < y.label;
  });
}

}  // namespace detail

/// Nodes are the cover's groups weighted by size. Groups whose representatives
/// share an extension are pairwise joined by an edge labelled with it; an
/// extension of a single group becomes a self-loop.
inline LambdaGraph build_graph(const GroupCover& cover) {
  LambdaGraph g;
  std::map<LambdaExtension, std::vector<std::string>> holders;
  for (const auto& grp : cover.groups) {
    g.nodes.push_back(GraphNode{grp.anchor, grp.representative.value_or(grp.anchor), grp.size()});
  }
  detail::sort_graph(g);
  for (const auto& n : g.nodes) {
    const ConflictGroup* grp = cover.find(n.group);
    for (const auto& x : grp->extensions) holders[x].push_back(n.group);
  }
  for (const auto& [label, groups] : holders) {
    if (groups.size() == 1) {
      g.edges.push_back(GraphEdge{groups[0], groups[0], label});
      continue;
    }
    for (std::size_t i = 0; i < groups.size(); ++i) {
      for (std::size_t j = i + 1; j < groups.size(); ++j) g.edges.push_back(GraphEdge{groups[i], groups[j], label});
    }
  }
  detail::sort_graph(g);
  return g;
}

/// One clique per edge label: every node touching such an edge. Sorted by
/// weight descending, then label.
inline std::vector<LambdaClique> cliques(const LambdaGraph& g) {
  std::map<LambdaExtension, std::set<std::string>> touched;
  for (const auto& e : g.edges) {
    touched[e.label].insert(e.a);
    touched[e.label].insert(e.b);
  }
  std::vector<LambdaClique> out;
  for (const auto& [label, groups] : touched) {
    LambdaClique q{label, {}, 0};
    for (const auto& n : g.nodes) {
      if (groups.count(n.group)) {
        q.members.push_back(n.group);
        q.weight += n.weight;
      }
    }
    out.push_back(std::move(q));
  }
  std::stable_sort(out.begin(), out.end(), [](const LambdaClique& x, const LambdaClique& y) {
    return x.weight != y.weight ? x.weight > y.weight : x.label < y.label;
  });
  return out;
}

/// Every pair of members is joined by an edge with the clique's label (a
/// singleton needs its self-loop).
inline bool clique_complete(const LambdaGraph& g, const LambdaClique& q) {
  auto has_edge = [&](const std::string& a, const std::string& b) {
    return std::any_of(g.edges.begin(), g.edges.end(), [&](const GraphEdge& e) {
      return e.label == q.label && ((e.a == a && e.b == b) || (e.a == b && e.b == a));
    });
  };
  if (q.members.size() == 1) return has_edge(q.members[0], q.members[0]);
  for (std::size_t i = 0; i < q.members.size(); ++i) {
    for (std::size_t j = i + 1; j < q.members.size(); ++j) {
      if (!has_edge(q.members[i], q.members[j])) return false;
    }
  }
  return true;
}

inline constexpr std::size_t kExactCliqueCoverLimit = 24;

namespace detail {

inline bool clique_cover_better(const CliqueCover& x, const CliqueCover& y) {
  if (x.cliques.size() != y.cliques.size()) return x.cliques.size() < y.cliques.size();
  if (x.total_weight() != y.total_weight()) return x.total_weight() > y.total_weight();
  return x.extensions() < y.extensions();
}

class CliqueCoverSearch {
 public:
  CliqueCoverSearch(const LambdaGraph& g, std::vector<LambdaClique> qs) : cliques_(std::move(qs)) {
    for (std::size_t i = 0; i < g.nodes.size(); ++i) index_[g.nodes[i].group] = i;
    holders_.resize(g.nodes.size());
    for (std::size_t q = 0; q < cliques_.size(); ++q) {
      for (const auto& m : cliques_[q].members) holders_[index_.at(m)].push_back(q);
    }
    count_.assign(g.nodes.size(), 0);
  }

  /// All covers of exactly `k` cliques (up to `cap`).
  std::set<std::vector<std::size_t>> covers_of_size(std::size_t k, std::size_t cap) {
    found_.clear();
    limit_ = k;
    cap_ = cap;
    search();
    return found_;
  }

  const std::vector<LambdaClique>& cliques() const { return cliques_; }

 private:
  void search() {
    if (found_.size() >= cap_) return;
    auto open = std::find(count_.begin(), count_.end(), 0u);
    if (open == count_.end()) {
      auto cover = chosen_;
      std::sort(cover.begin(), cover.end());
      found_.insert(std::move(cover));
      return;
    }
    if (chosen_.size() == limit_) return;
    for (auto q : holders_[static_cast<std::size_t>(open - count_.begin())]) {
      if (std::find(chosen_.begin(), chosen_.end(), q) != chosen_.end()) continue;
      chosen_.push_back(q);
      for (const auto& m : cliques_[q].members) ++count_[index_.at(m)];
      search();
      for (const auto& m : cliques_[q].members) --count_[index_.at(m)];
      chosen_.pop_back();
    }
  }

  std::vector<LambdaClique> cliques_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::vector<std::size_t>> holders_;
  std::vector<std::size_t> count_;
  std::vector<std::size_t> chosen_;
  std::set<std::vector<std::size_t>> found_;
  std::size_t limit_ = 0;
  std::size_t cap_ = 0;
};

inline CliqueCover greedy_clique_cover(const LambdaGraph& g, const std::vector<LambdaClique>& qs) {
  CliqueCover out;
  out.approximate = true;
  std::set<std::string> uncovered;
  for (const auto& n : g.nodes) uncovered.insert(n.group);
  std::map<std::string, std::size_t> weight;
  for (const auto& n : g.nodes) weight[n.group] = n.weight;
  std::vector<bool> used(qs.size(), false);
  while (!uncovered.empty()) {
    std::size_t best = qs.size();
    std::size_t best_gain = 0;
    for (std::size_t i = 0; i < qs.size(); ++i) {
      if (used[i]) continue;
      std::size_t gain = 0;
      for (const auto& m : qs[i].members) gain += uncovered.count(m) ? weight[m] : 0;
      if (gain > best_gain) {
        best = i;
        best_gain = gain;
      }
    }
    if (best == qs.size()) break;
    used[best] = true;
    for (const auto& m : qs[best].members) uncovered.erase(m);
  }
  for (std::size_t i = 0; i < qs.size(); ++i) {
    if (used[i]) out.cliques.push_back(qs[i]);
  }
  return out;
}

}  // namespace detail

/// Every cardinality-minimal clique cover, best first: higher total weight,
/// then lexicographically smaller labels. Above the exact-search limit a single
/// greedy cover flagged `approximate` is returned.
inline std::vector<CliqueCover> enumerate_min_clique_covers(const LambdaGraph& g, std::size_t cap = 1000) {
  auto qs = cliques(g);
  if (g.nodes.empty()) return {CliqueCover{}};
  if (qs.size() > kExactCliqueCoverLimit) return {detail::greedy_clique_cover(g, qs)};

  detail::CliqueCoverSearch search(g, qs);
  std::vector<CliqueCover> out;
  for (std::size_t k = 1; k <= qs.size(); ++k) {
    auto found = search.covers_of_size(k, cap);
    if (found.empty()) continue;
    for (const auto& indices : found) {
      CliqueCover c;
      for (auto i : indices) c.cliques.push_back(qs[i]);
      out.push_back(std::move(c));
    }
    break;
  }
  std::sort(out.begin(), out.end(), detail::clique_cover_better);
  return out;
}

inline CliqueCover min_clique_cover(const LambdaGraph& g) { return enumerate_min_clique_covers(g).front(); }

enum class GraphFormat { Dot, Json };

inline GraphFormat parse_graph_format(std::string_view name) {
  if (name == "dot") return GraphFormat::Dot;
  if (name == "json") return GraphFormat::Json;
  throw Error(ErrorCode::UnknownFormat, std::string(name));
}

namespace detail {

inline std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

}  // namespace detail

inline nlohmann::ordered_json graph_to_json(const LambdaGraph& g) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["nodes"] = ordered_json::array();
  for (const auto& n : g.nodes) {
    j["nodes"].push_back({{"group", n.group}, {"representative", n.representative}, {"weight", n.weight}});
  }
  j["edges"] = ordered_json::array();
  for (const auto& e : g.edges) j["edges"].push_back({{"a", e.a}, {"b", e.b}, {"label", e.label.key()}});
  j["cliques"] = ordered_json::array();
  for (const auto& q : cliques(g)) {
    j["cliques"].push_back({{"label", q.label.key()}, {"members", q.members}, {"weight", q.weight}});
  }
  CliqueCover cover = min_clique_cover(g);
  ordered_json labels = ordered_json::array();
  for (const auto& q : cover.cliques) labels.push_back(q.label.key());
  j["clique_cover"] = {{"labels", labels}, {"approximate", cover.approximate}};
  return j;
}

inline std::string export_graph(const LambdaGraph& g, GraphFormat format) {
  if (format == GraphFormat::Json) return graph_to_json(g).dump(2) + "\n";
  std::string out = "graph lambda {\n";
  for (const auto& n : g.nodes) {
    out += "  " + detail::dot_quote(n.group) + " [label=" +
           detail::dot_quote("cgr(" + n.group + ") [" + std::to_string(n.weight) + "]") + "];\n";
  }
  for (const auto& e : g.edges) {
    out += "  " + detail::dot_quote(e.a) + " -- " + detail::dot_quote(e.b) +
           " [label=" + detail::dot_quote(e.label.key()) + "];\n";
  }
  out += "}\n";
  return out;
}

inline std::string export_graph(const LambdaGraph& g, std::string_view format) {
  return export_graph(g, parse_graph_format(format));
}

/// Reads the node and edge arrays of the JSON export; derived fields are ignored.
inline LambdaGraph import_graph_json(std::string_view text) {
  LambdaGraph g;
  try {
    auto j = nlohmann::json::parse(text);
    for (const auto& n : j.at("nodes")) {
      std::string group = n.at("group").get<std::string>();
      std::string rep = n.contains("representative") ? n.at("representative").get<std::string>() : group;
      g.nodes.push_back(GraphNode{group, rep, n.at("weight").get<std::size_t>()});
    }
    for (const auto& e : j.at("edges")) {
      g.edges.push_back(GraphEdge{e.at("a").get<std::string>(), e.at("b").get<std::string>(),
                                  LambdaExtension::parse_key(e.at("label").get<std::string>())});
    }
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::InvalidInput, ex.what());
  }
  detail::sort_graph(g);
  return g;
}

}  // namespace lamres

#endif  // LAMRES_LAMBDA_GRAPH_HPP_
