#ifndef LAMRES_GROUPS_HPP_
#define LAMRES_GROUPS_HPP_

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lamres/conflict.hpp"
#include "lamres/error.hpp"
#include "lamres/extension.hpp"
#include "lamres/natural_order.hpp"
#include "lamres/program.hpp"

namespace lamres {

/// Extensions the expert turned down, keyed by (rule id, extension key).
using DeclinedSet = std::set<std::pair<std::string, std::string>>;

struct AnalysisOptions {
  std::size_t cover_cap = 10000;
  std::size_t extension_cap = 1000;
  DeclinedSet declined;
};

/// All conflicts sharing one rule. `extensions` belong to `representative`
/// once one is chosen.
struct ConflictGroup {
  std::string anchor;
  std::vector<Conflict> conflicts;
  std::optional<std::string> representative;
  std::vector<LambdaExtension> extensions;

  std::size_t size() const { return conflicts.size(); }
  bool covers(const Conflict& c) const { return std::find(conflicts.begin(), conflicts.end(), c) != conflicts.end(); }
  /// Rules the given member conflicts with inside this group.
  std::vector<std::string> partners(std::string_view rule) const {
    std::vector<std::string> out;
    for (const auto& c : conflicts) out.push_back(c.other(rule));
    return out;
  }
  bool operator==(const ConflictGroup&) const = default;
};

inline std::vector<Conflict> conflicts_of(const std::vector<Conflict>& all, std::string_view rule) {
  std::vector<Conflict> out;
  for (const auto& c : all) {
    if (c.contains(rule)) out.push_back(c);
  }
  return out;
}

inline ConflictGroup conflict_group(const Program& p, std::string_view anchor) {
  p.at(anchor);
  ConflictGroup g{std::string(anchor), conflicts_of(all_conflicts(p), anchor), std::nullopt, {}};
  if (g.conflicts.empty()) throw Error(ErrorCode::NotConflicting, std::string(anchor));
  return g;
}

/// Filtered extensions of `rep` against the other rules of its conflicts.
inline std::vector<LambdaExtension> representative_extensions(const Program& p, const Rule& rep,
                                                              const std::vector<Conflict>& conflicts,
                                                              const AnalysisOptions& opts = {}) {
  std::vector<Rule> others;
  for (const auto& c : conflicts) {
    if (!c.contains(rep.id)) return {};
    others.push_back(p.at(c.other(rep.id)));
  }
  auto exts = vacuous_filter(p, rep, cautious_filter(min_extensions(rep, others, opts.extension_cap)));
  if (!opts.declined.empty()) {
    std::vector<LambdaExtension> kept;
    for (const auto& x : exts) {
      if (!opts.declined.count({rep.id, x.key()})) kept.push_back(x);
    }
    if (!kept.empty()) exts = std::move(kept);
  }
  return exts;
}

struct RepresentativeCandidate {
  std::string rule;
  std::vector<LambdaExtension> extensions;
};

/// Rules able to represent `g`: both members of a single conflict, otherwise
/// only the anchor, provided some extension resolves every conflict of `g`.
inline std::vector<RepresentativeCandidate> representative_candidates(const Program& p, const ConflictGroup& g,
                                                                      const AnalysisOptions& opts = {}) {
  std::vector<std::string> tested;
  if (g.size() == 1) {
    const Conflict& c = g.conflicts.front();
    tested = {c.first, c.second};
  } else {
    tested = {g.anchor};
  }
  std::vector<RepresentativeCandidate> out;
  for (const auto& id : tested) {
    auto exts = representative_extensions(p, p.at(id), g.conflicts, opts);
    if (!exts.empty()) out.push_back({id, std::move(exts)});
  }
  return out;
}

/// A set of resolvable groups, each with its representative set.
struct GroupCover {
  std::vector<ConflictGroup> groups;

  const ConflictGroup* find(std::string_view anchor) const {
    for (const auto& g : groups) {
      if (g.anchor == anchor) return &g;
    }
    return nullptr;
  }
  std::vector<std::string> anchors() const {
    std::vector<std::string> out;
    for (const auto& g : groups) out.push_back(g.anchor);
    return out;
  }
  bool operator==(const GroupCover&) const = default;
};

struct CoverAnalysis {
  std::vector<Conflict> conflicts;
  std::vector<ConflictGroup> candidates;  // every resolvable (group, representative) pair
  std::vector<GroupCover> covers;         // inclusion-minimal covers of the coverable conflicts
  std::vector<Conflict> unresolvable;     // conflicts no resolvable group contains
  bool greedy = false;                    // enumeration hit the cap; `covers` holds one greedy cover
};

namespace detail {

inline bool anchor_less(const ConflictGroup& a, const ConflictGroup& b) {
  if (a.anchor != b.anchor) return natural_less(a.anchor, b.anchor);
  return natural_less(a.representative.value_or(""), b.representative.value_or(""));
}

/// Covers ordered by group count, then representative ids, then anchors.
inline bool cover_less(const GroupCover& a, const GroupCover& b) {
  if (a.groups.size() != b.groups.size()) return a.groups.size() < b.groups.size();
  auto reps = [](const GroupCover& c) {
    std::vector<std::string> out;
    for (const auto& g : c.groups) out.push_back(*g.representative);
    std::sort(out.begin(), out.end(), NaturalLess{});
    return out;
  };
  auto ra = reps(a);
  auto rb = reps(b);
  auto lex = [](const std::vector<std::string>& x, const std::vector<std::string>& y) {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(), NaturalLess{});
  };
  if (ra != rb) return lex(ra, rb);
  return lex(a.anchors(), b.anchors());
}

class CoverSearch {
 public:
  CoverSearch(std::size_t universe, std::vector<std::vector<std::size_t>> covers_of_element, std::size_t cap)
      : universe_(universe), elements_(std::move(covers_of_element)), cap_(cap) {
    by_item_.resize(universe_);
    for (std::size_t e = 0; e < elements_.size(); ++e) {
      for (auto item : elements_[e]) by_item_[item].push_back(e);
    }
  }

  /// Returns false when the cap was exceeded.
  bool run() {
    count_.assign(universe_, 0);
    forbidden_.assign(elements_.size(), false);
    return search();
  }

  const std::set<std::vector<std::size_t>>& results() const { return results_; }

  std::vector<std::size_t> greedy() const {
    std::vector<std::size_t> chosen;
    std::vector<bool> covered(universe_, false);
    std::size_t left = universe_;
    while (left > 0) {
      std::size_t best = 0;
      std::size_t best_gain = 0;
      for (std::size_t e = 0; e < elements_.size(); ++e) {
        std::size_t gain = 0;
        for (auto item : elements_[e]) gain += covered[item] ? 0 : 1;
        if (gain > best_gain) {
          best = e;
          best_gain = gain;
        }
      }
      chosen.push_back(best);
      for (auto item : elements_[best]) {
        if (!covered[item]) {
          covered[item] = true;
          --left;
        }
      }
    }
    // drop redundant picks, latest first
    for (std::size_t i = chosen.size(); i-- > 0;) {
      std::vector<std::size_t> cnt(universe_, 0);
      for (std::size_t j = 0; j < chosen.size(); ++j) {
        if (j == i) continue;
        for (auto item : elements_[chosen[j]]) ++cnt[item];
      }
      if (std::all_of(cnt.begin(), cnt.end(), [](std::size_t c) { return c > 0; })) {
        chosen.erase(chosen.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
  }

 private:
  bool redundant(std::size_t e) const {
    return std::all_of(elements_[e].begin(), elements_[e].end(), [&](std::size_t item) { return count_[item] > 1; });
  }

  bool search() {
    std::size_t open = universe_;
    for (std::size_t i = 0; i < universe_; ++i) {
      if (count_[i] == 0) {
        open = i;
        break;
      }
    }
    if (open == universe_) {
      std::vector<std::size_t> cover = chosen_;
      std::sort(cover.begin(), cover.end());
      results_.insert(std::move(cover));
      return results_.size() <= cap_;
    }
    std::vector<std::size_t> newly_forbidden;
    bool ok = true;
    for (auto e : by_item_[open]) {
      if (forbidden_[e]) continue;
      chosen_.push_back(e);
      for (auto item : elements_[e]) ++count_[item];
      bool prune = std::any_of(chosen_.begin(), chosen_.end() - 1, [&](std::size_t c) { return redundant(c); });
      if (!prune) ok = search();
      for (auto item : elements_[e]) --count_[item];
      chosen_.pop_back();
      if (!ok) break;
      forbidden_[e] = true;
      newly_forbidden.push_back(e);
    }
    for (auto e : newly_forbidden) forbidden_[e] = false;
    return ok;
  }

  std::size_t universe_;
  std::vector<std::vector<std::size_t>> elements_;
  std::vector<std::vector<std::size_t>> by_item_;
  std::size_t cap_;
  std::vector<std::size_t> count_;
  std::vector<bool> forbidden_;
  std::vector<std::size_t> chosen_;
  std::set<std::vector<std::size_t>> results_;
};

}  // namespace detail

/// Resolvable groups, the conflicts they can reach, and all inclusion-minimal
/// sets of groups that contain every coverable conflict.
inline CoverAnalysis analyze_covers(const Program& p, const AnalysisOptions& opts = {}) {
  CoverAnalysis out;
  out.conflicts = all_conflicts(p);

  std::vector<std::vector<Conflict>> sets;
  for (const auto& id : conflicting_rules(p, out.conflicts)) {
    auto group = conflicts_of(out.conflicts, id);
    if (std::find(sets.begin(), sets.end(), group) == sets.end()) sets.push_back(std::move(group));
  }
  for (const auto& set : sets) {
    std::vector<std::string> tested;
    if (set.size() == 1) {
      tested = {set.front().first, set.front().second};
    } else {
      const Conflict& a = set[0];
      const Conflict& b = set[1];
      tested = {b.contains(a.first) ? a.first : a.second};
    }
    for (const auto& rep : tested) {
      auto exts = representative_extensions(p, p.at(rep), set, opts);
      if (exts.empty()) continue;
      std::string anchor = rep;
      if (conflicts_of(out.conflicts, rep) != set) anchor = set.front().other(rep);
      out.candidates.push_back(ConflictGroup{anchor, set, rep, std::move(exts)});
    }
  }
  std::sort(out.candidates.begin(), out.candidates.end(), detail::anchor_less);

  std::vector<std::size_t> universe_index(out.conflicts.size(), 0);
  std::vector<Conflict> coverable;
  for (std::size_t i = 0; i < out.conflicts.size(); ++i) {
    const Conflict& c = out.conflicts[i];
    bool reachable = std::any_of(out.candidates.begin(), out.candidates.end(),
                                 [&](const ConflictGroup& g) { return g.covers(c); });
    if (reachable) {
      universe_index[i] = coverable.size();
      coverable.push_back(c);
    } else {
      out.unresolvable.push_back(c);
    }
  }

  std::vector<std::vector<std::size_t>> element_items;
  for (const auto& g : out.candidates) {
    std::vector<std::size_t> items;
    for (std::size_t i = 0; i < out.conflicts.size(); ++i) {
      if (g.covers(out.conflicts[i])) items.push_back(universe_index[i]);
    }
    element_items.push_back(std::move(items));
  }

  detail::CoverSearch search(coverable.size(), element_items, opts.cover_cap);
  std::vector<std::vector<std::size_t>> picked;
  if (search.run()) {
    picked.assign(search.results().begin(), search.results().end());
  } else {
    out.greedy = true;
    picked.push_back(search.greedy());
  }
  for (const auto& indices : picked) {
    GroupCover cover;
    for (auto i : indices) cover.groups.push_back(out.candidates[i]);
    std::sort(cover.groups.begin(), cover.groups.end(), detail::anchor_less);
    out.covers.push_back(std::move(cover));
  }
  std::sort(out.covers.begin(), out.covers.end(), detail::cover_less);
  return out;
}

/// All inclusion-minimal conflict group covers; fails if some conflict is out of reach.
inline std::vector<GroupCover> enumerate_min_covers(const Program& p, const AnalysisOptions& opts = {}) {
  CoverAnalysis analysis = analyze_covers(p, opts);
  if (!analysis.unresolvable.empty()) {
    std::vector<std::string> rules;
    for (const auto& c : analysis.unresolvable) {
      for (const auto* id : {&c.first, &c.second}) {
        if (std::find(rules.begin(), rules.end(), *id) == rules.end()) rules.push_back(*id);
      }
    }
    std::sort(rules.begin(), rules.end(), NaturalLess{});
    throw UnresolvableRules(std::move(rules));
  }
  return std::move(analysis.covers);
}

}  // namespace lamres

#endif  // LAMRES_GROUPS_HPP_
