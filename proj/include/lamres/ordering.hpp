#ifndef LAMRES_ORDERING_HPP_
#define LAMRES_ORDERING_HPP_

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "lamres/error.hpp"
#include "lamres/lambda_graph.hpp"
#include "lamres/natural_order.hpp"

namespace lamres {

struct GroupRank {
  std::string group;
  std::size_t cliques = 0;  // cliques the group is part of
  std::size_t weight = 0;   // summed weight of those cliques
  bool operator==(const GroupRank&) const = default;
};

struct GroupOrder {
  std::vector<GroupRank> ranked;

  std::vector<std::string> ids() const {
    std::vector<std::string> out;
    for (const auto& r : ranked) out.push_back(r.group);
    return out;
  }
  bool operator==(const GroupOrder&) const = default;
};

struct ExtensionRank {
  LambdaExtension extension;
  std::size_t weight = 0;  // weight of the clique labelled with this extension
  bool operator==(const ExtensionRank&) const = default;
};

struct ExtensionOrder {
  std::string group;
  std::vector<ExtensionRank> ranked;

  std::vector<std::string> keys() const {
    std::vector<std::string> out;
    for (const auto& r : ranked) out.push_back(r.extension.key());
    return out;
  }
  bool operator==(const ExtensionOrder&) const = default;
};

/// Fewest cliques first; within equal counts, heaviest total clique weight
/// first; remaining ties by group id. Counts and weights range over all
/// cliques of the graph, not only a chosen clique cover.
inline GroupOrder order_groups(const LambdaGraph& g) {
  const auto qs = cliques(g);
  GroupOrder out;
  for (const auto& n : g.nodes) {
    GroupRank rank{n.group, 0, 0};
    for (const auto& q : qs) {
      if (q.contains(n.group)) {
        ++rank.cliques;
        rank.weight += q.weight;
      }
    }
    out.ranked.push_back(rank);
  }
  std::sort(out.ranked.begin(), out.ranked.end(), [](const GroupRank& a, const GroupRank& b) {
    if (a.cliques != b.cliques) return a.cliques < b.cliques;
    if (a.weight != b.weight) return a.weight > b.weight;
    return natural_less(a.group, b.group);
  });
  return out;
}

/// The group's extensions by clique weight, heaviest first, ties alphanumerically.
inline ExtensionOrder order_extensions(const LambdaGraph& g, std::string_view group) {
  if (!g.node(group)) throw Error(ErrorCode::UnknownGroup, std::string(group));
  ExtensionOrder out{std::string(group), {}};
  for (const auto& q : cliques(g)) {
    if (q.contains(group)) out.ranked.push_back(ExtensionRank{q.label, q.weight});
  }
  std::sort(out.ranked.begin(), out.ranked.end(), [](const ExtensionRank& a, const ExtensionRank& b) {
    return a.weight != b.weight ? a.weight > b.weight : a.extension < b.extension;
  });
  return out;
}

}  // namespace lamres

#endif  // LAMRES_ORDERING_HPP_
