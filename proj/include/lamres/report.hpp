#ifndef LAMRES_REPORT_HPP_
#define LAMRES_REPORT_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lamres/error.hpp"
#include "lamres/extension.hpp"
#include "lamres/groups.hpp"
#include "lamres/lambda_graph.hpp"
#include "lamres/natural_order.hpp"
#include "lamres/ordering.hpp"
#include "lamres/program.hpp"
#include "lamres/session.hpp"

namespace lamres {

using nlohmann::ordered_json;

inline ordered_json to_json(const LambdaExtension& x) {
  ordered_json lits = ordered_json::array();
  for (const auto& l : x.literals()) lits.push_back(l.key());
  return {{"literals", lits}, {"key", x.key()}};
}

inline ordered_json to_json(const Conflict& c) { return ordered_json::array({c.first, c.second}); }

inline ordered_json to_json(const std::vector<Conflict>& cs) {
  ordered_json out = ordered_json::array();
  for (const auto& c : cs) out.push_back(to_json(c));
  return out;
}

inline ordered_json to_json(const ConflictGroup& g) {
  ordered_json exts = ordered_json::array();
  for (const auto& x : g.extensions) exts.push_back(to_json(x));
  return {{"anchor", g.anchor},
          {"representative", g.representative ? ordered_json(*g.representative) : ordered_json(nullptr)},
          {"conflicts", to_json(g.conflicts)},
          {"size", g.size()},
          {"extensions", exts}};
}

inline ordered_json to_json(const GroupCover& c) {
  ordered_json out = ordered_json::array();
  for (const auto& g : c.groups) out.push_back({{"anchor", g.anchor}, {"representative", *g.representative}});
  return out;
}

/// Conflicts, the groups of the selected cover, every minimal cover and the
/// conflicts no group can resolve.
inline ordered_json analysis_to_json(const CoverAnalysis& a, std::size_t selected = 0) {
  ordered_json j;
  j["conflicts"] = to_json(a.conflicts);
  j["groups"] = ordered_json::array();
  if (selected < a.covers.size()) {
    for (const auto& g : a.covers[selected].groups) j["groups"].push_back(to_json(g));
  }
  j["covers"] = ordered_json::array();
  for (const auto& c : a.covers) j["covers"].push_back(to_json(c));
  j["selected_cover"] = selected;
  j["covers_truncated"] = a.greedy;
  j["unresolvable"] = to_json(a.unresolvable);
  return j;
}

inline ordered_json order_to_json(const GroupOrder& groups,
                                  const std::map<std::string, ExtensionOrder, NaturalLess>& extensions) {
  ordered_json j;
  j["groups"] = ordered_json::array();
  for (const auto& r : groups.ranked) {
    j["groups"].push_back({{"id", r.group}, {"cliques", r.cliques}, {"weight", r.weight}});
  }
  j["extensions"] = ordered_json::object();
  for (const auto& r : groups.ranked) {
    ordered_json list = ordered_json::array();
    auto it = extensions.find(r.group);
    if (it != extensions.end()) {
      for (const auto& e : it->second.ranked) list.push_back({{"key", e.extension.key()}, {"weight", e.weight}});
    }
    j["extensions"][r.group] = list;
  }
  return j;
}

inline ordered_json order_to_json(const LambdaGraph& g) {
  std::map<std::string, ExtensionOrder, NaturalLess> exts;
  for (const auto& n : g.nodes) exts.emplace(n.group, order_extensions(g, n.group));
  return order_to_json(order_groups(g), exts);
}

inline ordered_json to_json(const CliqueCover& c) {
  ordered_json labels = ordered_json::array();
  for (const auto& q : c.cliques) labels.push_back(q.label.key());
  return {{"labels", labels}, {"weight", c.total_weight()}, {"approximate", c.approximate}};
}

/// Full session payload: everything a client needs to render one loop step.
inline ordered_json state_to_json(const SessionState& s) {
  ordered_json j;
  j["status"] = to_string(s.status);
  j["program"] = print_program(s.current);
  j["conflicts"] = to_json(s.conflicts);
  j["unresolvable"] = to_json(s.unresolvable);

  j["groups"] = ordered_json::array();
  for (const auto& rank : s.group_order.ranked) {
    const ConflictGroup* g = s.cover.find(rank.group);
    ordered_json exts = ordered_json::array();
    for (const auto& e : s.ext_orders.at(rank.group).ranked) {
      ordered_json x = to_json(e.extension);
      x["weight"] = e.weight;
      exts.push_back(x);
    }
    j["groups"].push_back({{"anchor", g->anchor},
                           {"representative", *g->representative},
                           {"conflicts", to_json(g->conflicts)},
                           {"size", g->size()},
                           {"cliques", rank.cliques},
                           {"weight", rank.weight},
                           {"extensions", exts},
                           {"resolved", false}});
  }
  j["resolved"] = s.resolved;

  j["cover"] = {{"index", s.cover_index}, {"count", s.covers.size()}};
  j["graph"] = graph_to_json(s.graph);
  j["clique_cover"] = to_json(s.clique_cover);
  j["clique_cover"]["index"] = s.clique_cover_index;
  j["clique_cover"]["count"] = s.clique_covers.size();
  j["order"] = order_to_json(s.group_order, s.ext_orders);

  j["history"] = ordered_json::array();
  for (const auto& h : s.history) {
    j["history"].push_back({{"extension", h.extension.key()},
                            {"targets", h.applied_to},
                            {"declined", h.declined_by},
                            {"timestamp", h.timestamp}});
  }
  return j;
}

inline ordered_json script_to_json(const std::vector<ChoiceRequest>& steps) {
  ordered_json out = ordered_json::array();
  for (const auto& s : steps) out.push_back({{"extension", s.extension}, {"targets", s.targets}});
  return out;
}

/// Reads `[{"extension": "~f", "targets": ["r10", ...]}, ...]`.
inline std::vector<ChoiceRequest> script_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidInput, "script must be a JSON array");
  std::vector<ChoiceRequest> out;
  for (const auto& step : j) {
    try {
      out.push_back({step.at("extension").get<std::string>(), step.at("targets").get<std::vector<std::string>>()});
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::InvalidInput, "step " + std::to_string(out.size()) + ": " + e.what());
    }
  }
  return out;
}

inline std::vector<ChoiceRequest> parse_script(std::string_view text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::InvalidInput, "script is not valid JSON");
  return script_from_json(j);
}

/// Initial program text, optional explicit selections and the choice history.
inline ordered_json session_file_json(const SessionState& s) {
  ordered_json j;
  j["program"] = print_program(s.initial);
  j["history"] = script_to_json(history_requests(s));
  if (s.options.cover_choice) j["cover"] = *s.options.cover_choice;
  if (s.options.clique_choice) j["clique_cover"] = *s.options.clique_choice;
  return j;
}

/// Rebuilds a session by replaying a session file. Parse errors in the program
/// text surface as SyntaxError; malformed JSON as InvalidInput.
inline SessionState load_session(std::string_view text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw Error(ErrorCode::InvalidInput, "session file is not a JSON object");
  if (!j.contains("program") || !j["program"].is_string()) {
    throw Error(ErrorCode::InvalidInput, "session file lacks a program string");
  }
  SessionOptions opts;
  if (j.contains("cover")) opts.cover_choice = j["cover"].get<std::size_t>();
  if (j.contains("clique_cover")) opts.clique_choice = j["clique_cover"].get<std::size_t>();
  auto history = j.contains("history") ? script_from_json(j["history"]) : std::vector<ChoiceRequest>{};
  return replay(parse_program(j["program"].get<std::string>()), opts, history);
}

/// One row per group: "cgr(r14) | r14 | {r14,r15},{r14,r16} | ~h ; ~t,~-t".
inline std::string group_table(const GroupCover& cover) {
  std::string out = "group | representative | conflicts | extensions\n";
  for (const auto& g : cover.groups) {
    out += "cgr(" + g.anchor + ") | " + g.representative.value_or("-") + " | ";
    for (std::size_t i = 0; i < g.conflicts.size(); ++i) out += (i ? "," : "") + g.conflicts[i].str();
    out += " | ";
    for (std::size_t i = 0; i < g.extensions.size(); ++i) out += (i ? " ; " : "") + g.extensions[i].key();
    out += '\n';
  }
  return out;
}

inline std::string analysis_to_text(const CoverAnalysis& a, std::size_t selected = 0) {
  std::string out = "conflicts: " + std::to_string(a.conflicts.size()) + "\n";
  for (const auto& c : a.conflicts) out += "  " + c.str() + "\n";
  if (a.conflicts.empty()) return out;
  out += "covers: " + std::to_string(a.covers.size()) + (a.greedy ? " (truncated)" : "") + "\n";
  for (std::size_t i = 0; i < a.covers.size(); ++i) {
    out += std::string(i == selected ? "* " : "  ") + "[" + std::to_string(i) + "]";
    for (const auto& g : a.covers[i].groups) {
      out += " cgr(" + g.anchor + ")";
      if (*g.representative != g.anchor) out += "@" + *g.representative;
    }
    out += '\n';
  }
  if (selected < a.covers.size() && !a.covers[selected].groups.empty()) out += group_table(a.covers[selected]);
  if (!a.unresolvable.empty()) {
    out += "unresolvable:";
    for (const auto& c : a.unresolvable) out += " " + c.str();
    out += '\n';
  }
  return out;
}

}  // namespace lamres

#endif  // LAMRES_REPORT_HPP_
