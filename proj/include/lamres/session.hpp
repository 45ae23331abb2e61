#ifndef LAMRES_SESSION_HPP_
#define LAMRES_SESSION_HPP_

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <ctime>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lamres/answer_sets.hpp"
#include "lamres/conflict.hpp"
#include "lamres/error.hpp"
#include "lamres/extension.hpp"
#include "lamres/groups.hpp"
#include "lamres/lambda_graph.hpp"
#include "lamres/natural_order.hpp"
#include "lamres/ordering.hpp"
#include "lamres/program.hpp"

namespace lamres {

enum class SessionStatus { Resolving, Clean, Blocked };

inline std::string_view to_string(SessionStatus s) {
  switch (s) {
    case SessionStatus::Resolving: return "resolving";
    case SessionStatus::Clean: return "clean";
    case SessionStatus::Blocked: return "blocked";
  }
  return "unknown";
}

/// One expert decision: an extension applied to some representatives of its clique.
struct AppliedChoice {
  LambdaExtension extension;
  std::vector<std::string> applied_to;
  std::vector<std::string> declined_by;  // clique representatives left out
  std::string timestamp;

  friend bool operator==(const AppliedChoice& a, const AppliedChoice& b) {
    return a.extension == b.extension && a.applied_to == b.applied_to && a.declined_by == b.declined_by;
  }
};

/// Requested extension plus targets, as stored in session files and scripts.
struct ChoiceRequest {
  std::string extension;
  std::vector<std::string> targets;
  bool operator==(const ChoiceRequest&) const = default;
};

struct SessionOptions {
  std::optional<std::size_t> cover_choice;   // index into covers at start; auto when empty
  std::optional<std::size_t> clique_choice;  // index into minimum clique covers at start
  std::size_t cover_cap = 10000;
  std::size_t extension_cap = 1000;
  bool operator==(const SessionOptions&) const = default;
};

/// Everything the expert sees at one point of the resolution loop. Always
/// derived from (initial program, options, history) by replay.
struct SessionState {
  Program initial;
  SessionOptions options;
  Program current;
  std::vector<Conflict> conflicts;
  std::vector<Conflict> unresolvable;
  std::vector<GroupCover> covers;
  std::size_t cover_index = 0;
  GroupCover cover;
  LambdaGraph graph;
  std::vector<LambdaClique> cliques;
  std::vector<CliqueCover> clique_covers;
  std::size_t clique_cover_index = 0;
  CliqueCover clique_cover;
  GroupOrder group_order;
  std::map<std::string, ExtensionOrder, NaturalLess> ext_orders;
  std::vector<AppliedChoice> history;
  DeclinedSet declined;
  std::vector<std::string> shown;     // every group anchor presented so far
  std::vector<std::string> resolved;  // shown groups no longer in the cover
  SessionStatus status = SessionStatus::Clean;

  bool operator==(const SessionState&) const = default;
};

namespace detail {

inline std::string utc_timestamp() {
  auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline std::size_t cover_overlap(const GroupCover& a, const GroupCover& b) {
  std::size_t n = 0;
  for (const auto& g : a.groups) {
    for (const auto& h : b.groups) {
      if (g.anchor == h.anchor && g.representative == h.representative) ++n;
    }
  }
  return n;
}

/// Rebuilds every derived field from `s.current`, keeping the previous cover
/// choice where it still applies.
inline void recompute(SessionState& s, const std::optional<GroupCover>& previous) {
  AnalysisOptions opts;
  opts.cover_cap = s.options.cover_cap;
  opts.extension_cap = s.options.extension_cap;
  opts.declined = s.declined;
  CoverAnalysis analysis = analyze_covers(s.current, opts);

  s.conflicts = analysis.conflicts;
  s.unresolvable = analysis.unresolvable;
  s.covers = analysis.covers;
  s.cover_index = 0;
  if (!previous) {
    if (s.options.cover_choice) {
      if (*s.options.cover_choice >= s.covers.size()) {
        throw Error(ErrorCode::InvalidInput, "cover index " + std::to_string(*s.options.cover_choice) +
                                                 " out of range (" + std::to_string(s.covers.size()) + " covers)");
      }
      s.cover_index = *s.options.cover_choice;
    }
  } else {
    std::size_t best = 0;
    for (std::size_t i = 0; i < s.covers.size(); ++i) {
      if (cover_overlap(s.covers[i], *previous) > best) {
        best = cover_overlap(s.covers[i], *previous);
        s.cover_index = i;
      }
    }
  }
  s.cover = s.covers.empty() ? GroupCover{} : s.covers[s.cover_index];
  s.graph = build_graph(s.cover);
  s.cliques = lamres::cliques(s.graph);
  s.clique_covers = enumerate_min_clique_covers(s.graph);
  s.clique_cover_index = 0;
  if (!previous && s.options.clique_choice) {
    if (*s.options.clique_choice >= s.clique_covers.size()) {
      throw Error(ErrorCode::InvalidInput, "clique cover index " + std::to_string(*s.options.clique_choice) +
                                               " out of range");
    }
    s.clique_cover_index = *s.options.clique_choice;
  }
  s.clique_cover = s.clique_covers[s.clique_cover_index];
  s.group_order = order_groups(s.graph);
  s.ext_orders.clear();
  for (const auto& n : s.graph.nodes) s.ext_orders.emplace(n.group, order_extensions(s.graph, n.group));

  for (const auto& g : s.cover.groups) {
    if (std::find(s.shown.begin(), s.shown.end(), g.anchor) == s.shown.end()) s.shown.push_back(g.anchor);
  }
  std::sort(s.shown.begin(), s.shown.end(), NaturalLess{});
  s.resolved.clear();
  for (const auto& id : s.shown) {
    if (!s.cover.find(id)) s.resolved.push_back(id);
  }

  if (s.conflicts.empty()) {
    s.status = SessionStatus::Clean;
  } else if (s.cover.groups.empty()) {
    s.status = SessionStatus::Blocked;
  } else {
    s.status = SessionStatus::Resolving;
  }
}

}  // namespace detail

/// Runs the analysis pipeline once on `p`. Unresolvable conflicts are listed,
/// not fatal; the session is blocked only when nothing else is left.
inline SessionState start_session(Program p, SessionOptions options = {}) {
  SessionState s;
  s.initial = p;
  s.current = std::move(p);
  s.options = options;
  detail::recompute(s, std::nullopt);
  return s;
}

/// Applies `extension_key` to each target representative, records the clique
/// members left out as having declined it, then recomputes everything.
inline SessionState choose(const SessionState& s, std::string_view extension_key,
                           const std::vector<std::string>& targets, std::string timestamp = {}) {
  if (s.status != SessionStatus::Resolving) {
    throw Error(ErrorCode::StaleExtension, "session is " + std::string(to_string(s.status)));
  }
  LambdaExtension ext;
  try {
    ext = LambdaExtension::parse_key(extension_key);
  } catch (const Error&) {
    throw Error(ErrorCode::StaleExtension, "not an extension key: '" + std::string(extension_key) + "'");
  }
  auto clique = std::find_if(s.cliques.begin(), s.cliques.end(), [&](const LambdaClique& q) { return q.label == ext; });
  if (clique == s.cliques.end()) {
    throw Error(ErrorCode::StaleExtension, "{" + ext.key() + "} labels no current clique");
  }
  if (targets.empty()) throw Error(ErrorCode::InvalidTarget, "no targets given");

  std::vector<std::string> member_reps;
  for (const auto& m : clique->members) {
    const std::string& rep = s.graph.node(m)->representative;
    if (std::find(member_reps.begin(), member_reps.end(), rep) == member_reps.end()) member_reps.push_back(rep);
  }
  std::vector<std::string> applied;
  for (const auto& t : targets) {
    if (std::find(member_reps.begin(), member_reps.end(), t) == member_reps.end()) {
      throw Error(ErrorCode::InvalidTarget, t + " does not represent a group of clique {" + ext.key() + "}");
    }
    if (std::find(applied.begin(), applied.end(), t) == applied.end()) applied.push_back(t);
  }

  SessionState next = s;
  AppliedChoice record{ext, applied, {}, timestamp.empty() ? detail::utc_timestamp() : std::move(timestamp)};
  for (const auto& t : applied) next.current = apply_extension(next.current, t, ext);
  for (const auto& rep : member_reps) {
    if (std::find(applied.begin(), applied.end(), rep) == applied.end()) {
      record.declined_by.push_back(rep);
      next.declined.insert({rep, ext.key()});
    }
  }
  next.history.push_back(std::move(record));
  detail::recompute(next, s.cover);
  return next;
}

inline SessionState choose(const SessionState& s, const ChoiceRequest& request) {
  return choose(s, request.extension, request.targets);
}

/// Rebuilds a session from its initial program by replaying `history`.
inline SessionState replay(const Program& initial, const SessionOptions& options,
                           const std::vector<AppliedChoice>& history) {
  SessionState s = start_session(initial, options);
  for (const auto& step : history) s = choose(s, step.extension.key(), step.applied_to, step.timestamp);
  return s;
}

inline SessionState replay(const Program& initial, const SessionOptions& options,
                           const std::vector<ChoiceRequest>& script) {
  SessionState s = start_session(initial, options);
  for (const auto& step : script) s = choose(s, step);
  return s;
}

inline SessionState undo(const SessionState& s) {
  if (s.history.empty()) throw Error(ErrorCode::EmptyHistory, "nothing to undo");
  std::vector<AppliedChoice> prefix(s.history.begin(), s.history.end() - 1);
  return replay(s.initial, s.options, prefix);
}

inline std::vector<ChoiceRequest> history_requests(const SessionState& s) {
  std::vector<ChoiceRequest> out;
  for (const auto& h : s.history) out.push_back({h.extension.key(), h.applied_to});
  return out;
}

/// Conflicts present in `before` but gone in `after`.
inline std::vector<Conflict> resolved_between(const SessionState& before, const SessionState& after) {
  std::vector<Conflict> out;
  for (const auto& c : before.conflicts) {
    if (std::find(after.conflicts.begin(), after.conflicts.end(), c) == after.conflicts.end()) out.push_back(c);
  }
  return out;
}

struct UniformOptions {
  std::size_t sample_count = 0;  // 0: every consistent fact set
  std::size_t max_body_atoms = 20;
  std::uint64_t seed = 1;
};

struct UniformReport {
  std::size_t samples = 0;
  bool exhaustive = false;
  std::vector<InterpretationSet> failures;
};

/// Whether `p` plus `facts` is contradictory: reading complementary literals as
/// unrelated atoms, it has answer sets and each holds a complementary pair.
inline bool contradictory_with(const Program& p, const InterpretationSet& facts) {
  Program extended = p;
  for (const auto& l : facts.literals) extended.rules.push_back(Rule{"fact_" + l.str(), l, {}});
  detail::BitProgram bits(extended);
  std::uint64_t f = 0;
  for (const auto& l : facts.literals) f |= bits.bit(l);
  return bits.contradicts(f);
}

/// Checks p ∪ F for contradiction over consistent fact sets F built from the
/// literals occurring in bodies. See `contradictory_with` for the criterion.
inline UniformReport check_uniform(const Program& p, const UniformOptions& opts = {}) {
  const auto body_atoms = p.body_atoms();
  if (body_atoms.size() > opts.max_body_atoms) {
    throw Error(ErrorCode::TooLarge, std::to_string(body_atoms.size()) + " body atoms exceed cap " +
                                         std::to_string(opts.max_body_atoms));
  }
  detail::BitProgram bits(p);
  std::vector<std::vector<std::uint64_t>> choices;  // per atom: bits it may contribute
  std::vector<std::vector<Literal>> choice_lits;
  {
    std::map<std::string, std::vector<Literal>> by_atom;
    for (const auto& l : p.body_literals()) by_atom[l.atom].push_back(l);
    for (const auto& [atom, lits] : by_atom) {
      std::vector<std::uint64_t> c{0};
      std::vector<Literal> cl{Literal{}};
      for (const auto& l : lits) {
        c.push_back(bits.bit(l));
        cl.push_back(l);
      }
      choices.push_back(std::move(c));
      choice_lits.push_back(std::move(cl));
    }
  }
  UniformReport report;
  std::vector<std::size_t> pick(choices.size(), 0);
  auto check = [&]() {
    std::uint64_t facts = 0;
    for (std::size_t i = 0; i < choices.size(); ++i) facts |= choices[i][pick[i]];
    ++report.samples;
    if (bits.contradicts(facts)) {
      InterpretationSet f;
      for (std::size_t i = 0; i < choices.size(); ++i) {
        if (pick[i]) f.literals.insert(choice_lits[i][pick[i]]);
      }
      report.failures.push_back(std::move(f));
    }
  };

  if (opts.sample_count == 0) {
    report.exhaustive = true;
    while (true) {
      check();
      std::size_t i = 0;
      for (; i < pick.size(); ++i) {
        if (++pick[i] < choices[i].size()) break;
        pick[i] = 0;
      }
      if (i == pick.size()) break;
    }
  } else {
    std::mt19937_64 rng(opts.seed);
    for (std::size_t n = 0; n < opts.sample_count; ++n) {
      for (std::size_t i = 0; i < choices.size(); ++i) {
        pick[i] = std::uniform_int_distribution<std::size_t>(0, choices[i].size() - 1)(rng);
      }
      check();
    }
  }
  return report;
}

inline UniformReport check_uniform(const SessionState& s, const UniformOptions& opts = {}) {
  return check_uniform(s.current, opts);
}

}  // namespace lamres

#endif  // LAMRES_SESSION_HPP_
