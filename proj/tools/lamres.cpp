// Command-line front end: analyze, graph, resolve, serve.
//
// Exit codes: 0 conflict-free, 1 conflicts remain, 2 unresolvable conflicts,
// 3 unreadable or malformed input, 4 invalid resolve step, 5 bind failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lamres/lamres.hpp"
#include "lamres/service.hpp"

namespace {

using namespace lamres;

enum Exit { kClean = 0, kConflicts = 1, kUnresolvable = 2, kBadInput = 3, kBadStep = 4, kBindFailure = 5 };

struct InputError {
  std::string message;
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError{path + ": cannot open"};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Program load_program(const std::string& path) {
  std::string text = read_file(path);
  try {
    return parse_program(text);
  } catch (const SyntaxError& e) {
    throw InputError{path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " + e.detail()};
  } catch (const Error& e) {
    throw InputError{path + ": " + std::string(to_string(e.code())) + ": " + e.detail()};
  }
}

std::size_t checked_cover(const CoverAnalysis& a, std::size_t index) {
  if (index >= a.covers.size()) {
    throw InputError{"cover index " + std::to_string(index) + " out of range (" + std::to_string(a.covers.size()) +
                     " covers)"};
  }
  return index;
}

int cmd_analyze(const std::string& path, bool json, std::size_t cover) {
  Program p = load_program(path);
  CoverAnalysis a = analyze_covers(p);
  cover = checked_cover(a, cover);
  if (json) {
    std::cout << analysis_to_json(a, cover).dump(2) << '\n';
  } else {
    std::cout << analysis_to_text(a, cover);
  }
  if (a.conflicts.empty()) return kClean;
  return a.unresolvable.empty() ? kConflicts : kUnresolvable;
}

int cmd_graph(const std::string& path, bool dot, std::size_t cover) {
  Program p = load_program(path);
  CoverAnalysis a = analyze_covers(p);
  cover = checked_cover(a, cover);
  std::cout << export_graph(build_graph(a.covers[cover]), dot ? GraphFormat::Dot : GraphFormat::Json);
  return kClean;
}

void print_state(const SessionState& s, std::ostream& out) {
  out << "status: " << to_string(s.status) << '\n';
  for (const auto& r : s.group_order.ranked) {
    const ConflictGroup* g = s.cover.find(r.group);
    out << "  cgr(" << r.group << ") rep " << *g->representative << ":";
    for (const auto& e : s.ext_orders.at(r.group).ranked) out << " {" << e.extension.key() << "}[" << e.weight << "]";
    out << '\n';
  }
  for (const auto& q : s.cliques) {
    out << "  clique {" << q.label.key() << "}:";
    for (const auto& m : q.members) out << ' ' << s.graph.node(m)->representative;
    out << '\n';
  }
  for (const auto& c : s.unresolvable) out << "  unresolvable " << c.str() << '\n';
}

std::vector<std::string> clique_targets(const SessionState& s, const std::string& key) {
  std::vector<std::string> out;
  LambdaExtension x = LambdaExtension::parse_key(key);
  for (const auto& q : s.cliques) {
    if (q.label != x) continue;
    for (const auto& m : q.members) out.push_back(s.graph.node(m)->representative);
  }
  return out;
}

/// Minimal prompt loop: `choose KEY [RULE...]`, `undo`, `show`, `quit`.
SessionState interactive(SessionState s) {
  std::cerr << "commands: choose KEY [RULE...] | undo | show | quit\n";
  print_state(s, std::cerr);
  std::string line;
  while (s.status != SessionStatus::Clean && (std::cerr << "> ", std::getline(std::cin, line))) {
    std::istringstream words(line);
    std::string cmd;
    words >> cmd;
    try {
      if (cmd == "choose") {
        std::string key;
        words >> key;
        std::vector<std::string> targets;
        for (std::string t; words >> t;) targets.push_back(t);
        if (targets.empty()) targets = clique_targets(s, key);
        s = choose(s, key, targets);
        print_state(s, std::cerr);
      } else if (cmd == "undo") {
        s = undo(s);
        print_state(s, std::cerr);
      } else if (cmd == "show") {
        print_state(s, std::cerr);
      } else if (cmd == "quit") {
        break;
      } else if (!cmd.empty()) {
        std::cerr << "unknown command '" << cmd << "'\n";
      }
    } catch (const Error& e) {
      std::cerr << to_string(e.code()) << ": " << e.detail() << '\n';
    }
  }
  return s;
}

int cmd_resolve(const std::string& path, const std::string& script_path, bool tty, const SessionOptions& opts,
                const std::string& save_path) {
  Program p = load_program(path);
  std::vector<ChoiceRequest> script;
  if (!script_path.empty()) {
    try {
      script = parse_script(read_file(script_path));
    } catch (const Error& e) {
      throw InputError{script_path + ": " + e.detail()};
    }
  }
  SessionState s;
  try {
    s = start_session(p, opts);
  } catch (const Error& e) {
    throw InputError{std::string(to_string(e.code())) + ": " + e.detail()};
  }
  for (std::size_t i = 0; i < script.size(); ++i) {
    try {
      s = choose(s, script[i]);
    } catch (const Error& e) {
      std::cerr << "step " << i + 1 << ": " << to_string(e.code()) << ": " << e.detail() << '\n';
      return kBadStep;
    }
  }
  if (tty) s = interactive(std::move(s));
  std::cout << print_program(s.current);
  if (!save_path.empty()) {
    std::ofstream out(save_path);
    out << session_file_json(s).dump(2) << '\n';
  }
  if (s.status == SessionStatus::Clean) return kClean;
  return s.status == SessionStatus::Blocked ? kUnresolvable : kConflicts;
}

int cmd_serve(int port, const std::string& host, const std::string& static_dir, const std::string& session_path) {
  ServiceOptions opts;
  opts.host = host;
  if (!static_dir.empty()) opts.static_dir = static_dir;
  std::optional<Service> service;
  try {
    service.emplace(opts);
  } catch (const Error& e) {
    throw InputError{e.detail()};
  }
  std::string preloaded;
  if (!session_path.empty()) {
    try {
      preloaded = service->add_session(load_session(read_file(session_path)));
    } catch (const Error& e) {
      throw InputError{session_path + ": " + e.detail()};
    }
  }
  int bound = service->bind(port);
  if (bound < 0) {
    std::cerr << "cannot bind " << host << ":" << port << '\n';
    return kBindFailure;
  }
  std::cout << bound << std::endl;
  if (!preloaded.empty()) std::cout << "session " << preloaded << std::endl;
  return service->listen() ? kClean : kBindFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conflict analysis and interactive resolution for extended logic programs"};
  app.require_subcommand(1);

  std::string input;
  std::size_t cover = 0;

  auto* analyze = app.add_subcommand("analyze", "list conflicts, groups, extensions and covers");
  bool analyze_json = false;
  analyze->add_option("file", input, "program file ('-' for stdin)")->required();
  auto* aj = analyze->add_flag("--json", analyze_json, "JSON report");
  analyze->add_flag("--text", "table report (default)")->excludes(aj);
  analyze->add_option("--cover", cover, "index of the conflict group cover to show");

  auto* graph = app.add_subcommand("graph", "export the lambda-graph of a cover");
  bool graph_dot = false;
  graph->add_option("file", input, "program file ('-' for stdin)")->required();
  auto* gd = graph->add_flag("--dot", graph_dot, "Graphviz output");
  graph->add_flag("--json", "JSON output (default)")->excludes(gd);
  graph->add_option("--cover", cover, "index of the conflict group cover");

  auto* resolve = app.add_subcommand("resolve", "apply extensions and print the resulting program");
  std::string script, save;
  bool tty = false;
  std::optional<std::size_t> cover_choice, clique_choice;
  resolve->add_option("file", input, "program file ('-' for stdin)")->required();
  auto* rs = resolve->add_option("--script", script, "JSON list of {extension, targets} steps");
  resolve->add_flag("--interactive-tty", tty, "prompt for choices on the terminal")->excludes(rs);
  resolve->add_option("--cover", cover_choice, "initial cover index");
  resolve->add_option("--clique-cover", clique_choice, "initial clique cover index");
  resolve->add_option("--save-session", save, "write the session file here");

  auto* serve = app.add_subcommand("serve", "run the HTTP service");
  int port = 8080;
  std::string host = "127.0.0.1", static_dir, session_file;
  serve->add_option("--port", port, "port, 0 for any free one");
  serve->add_option("--host", host, "bind address");
  serve->add_option("--static-dir", static_dir, "directory served under /");
  serve->add_option("--session", session_file, "session file to preload");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kBadInput;
  }

  try {
    if (*analyze) return cmd_analyze(input, analyze_json, cover);
    if (*graph) return cmd_graph(input, graph_dot, cover);
    if (*resolve) {
      if (script.empty() && !tty) {
        std::cerr << "resolve: give --script or --interactive-tty\n";
        return kBadInput;
      }
      return cmd_resolve(input, script, tty, SessionOptions{cover_choice, clique_choice}, save);
    }
    if (*serve) return cmd_serve(port, host, static_dir, session_file);
  } catch (const InputError& e) {
    std::cerr << e.message << '\n';
    return kBadInput;
  } catch (const Error& e) {
    std::cerr << to_string(e.code()) << ": " << e.detail() << '\n';
    return kBadInput;
  }
  return kBadInput;
}
