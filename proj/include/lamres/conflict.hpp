#ifndef LAMRES_CONFLICT_HPP_
#define LAMRES_CONFLICT_HPP_

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "lamres/program.hpp"

namespace lamres {

inline bool complementary_heads(const Rule& r, const Rule& r2) { return r.head == r2.head.complement(); }

/// Whether some literal set satisfies both bodies at once. The positive parts
/// must be jointly consistent and must avoid every default-negated literal;
/// their union is then a witness.
inline bool jointly_satisfiable(const Rule& r, const Rule& r2) {
  std::vector<Literal> positive = r.body_pos();
  for (auto& l : r2.body_pos()) positive.push_back(std::move(l));
  std::sort(positive.begin(), positive.end());
  for (const auto& l : positive) {
    if (!l.strong_neg && std::binary_search(positive.begin(), positive.end(), l.complement())) return false;
  }
  for (const Rule* rule : {&r, &r2}) {
    for (const auto& l : rule->body_neg()) {
      if (std::binary_search(positive.begin(), positive.end(), l)) return false;
    }
  }
  return true;
}

inline bool is_conflicting(const Rule& r, const Rule& r2) {
  return complementary_heads(r, r2) && jointly_satisfiable(r, r2);
}

/// Equal bodies with complementary heads; only resolvable by extending both rules.
inline bool is_symmetric(const Rule& r, const Rule& r2) {
  return complementary_heads(r, r2) && r.sorted_body() == r2.sorted_body();
}

/// An unordered pair of conflicting rules, stored in program order.
struct Conflict {
  std::string first;
  std::string second;

  bool contains(std::string_view id) const { return first == id || second == id; }
  const std::string& other(std::string_view id) const { return first == id ? second : first; }
  std::string str() const { return "{" + first + "," + second + "}"; }

  bool operator==(const Conflict&) const = default;
};

inline std::vector<Conflict> all_conflicts(const Program& p) {
  std::vector<Conflict> out;
  for (std::size_t i = 0; i < p.rules.size(); ++i) {
    for (std::size_t j = i + 1; j < p.rules.size(); ++j) {
      if (is_conflicting(p.rules[i], p.rules[j])) out.push_back(Conflict{p.rules[i].id, p.rules[j].id});
    }
  }
  return out;
}

/// Rules taking part in at least one conflict, in program order.
inline std::vector<std::string> conflicting_rules(const Program& p, const std::vector<Conflict>& conflicts) {
  std::vector<std::string> out;
  for (const auto& r : p.rules) {
    if (std::any_of(conflicts.begin(), conflicts.end(), [&](const Conflict& c) { return c.contains(r.id); })) {
      out.push_back(r.id);
    }
  }
  return out;
}

}  // namespace lamres

#endif  // LAMRES_CONFLICT_HPP_
