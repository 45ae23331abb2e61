#ifndef LAMRES_SERVICE_HPP_
#define LAMRES_SERVICE_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <string>
#include <utility>

#include <httplib.h>
#include <json.hpp>

#include "lamres/error.hpp"
#include "lamres/lambda_graph.hpp"
#include "lamres/program.hpp"
#include "lamres/report.hpp"
#include "lamres/session.hpp"

namespace lamres {

/// Sessions keyed by random tokens. Writers to one session are serialized;
/// readers copy the last published state without waiting for a writer.
class SessionStore {
 public:
  using Snapshot = std::shared_ptr<const SessionState>;

  std::string create(SessionState state) {
    auto entry = std::make_shared<Entry>();
    entry->state = std::make_shared<const SessionState>(std::move(state));
    std::unique_lock lock(map_mutex_);
    std::string id;
    do {
      id = token();
    } while (entries_.count(id));
    entries_.emplace(id, std::move(entry));
    return id;
  }

  Snapshot get(const std::string& id) const {
    auto entry = find(id);
    if (!entry) return nullptr;
    std::lock_guard lock(entry->publish);
    return entry->state;
  }

  /// Applies `step` to the session's current state under its write lock and
  /// publishes the result. Returns {before, after}; nullptr pair for unknown ids.
  std::pair<Snapshot, Snapshot> mutate(const std::string& id,
                                       const std::function<SessionState(const SessionState&)>& step) {
    auto entry = find(id);
    if (!entry) return {nullptr, nullptr};
    std::lock_guard write(entry->write);
    Snapshot before = get(id);
    auto after = std::make_shared<const SessionState>(step(*before));
    std::lock_guard lock(entry->publish);
    entry->state = after;
    return {before, after};
  }

  std::size_t size() const {
    std::shared_lock lock(map_mutex_);
    return entries_.size();
  }

 private:
  struct Entry {
    std::mutex write;
    mutable std::mutex publish;
    Snapshot state;
  };

  std::shared_ptr<Entry> find(const std::string& id) const {
    std::shared_lock lock(map_mutex_);
    auto it = entries_.find(id);
    return it == entries_.end() ? nullptr : it->second;
  }

  std::string token() {
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    for (int i = 0; i < 4; ++i) {
      std::uint32_t v = rng_();
      for (int k = 0; k < 8; ++k, v >>= 4) out += kHex[v & 0xf];
    }
    return out;
  }

  mutable std::shared_mutex map_mutex_;
  std::map<std::string, std::shared_ptr<Entry>> entries_;
  std::random_device rng_;
};

inline int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidTarget:
    case ErrorCode::StaleExtension:
    case ErrorCode::EmptyHistory:
    case ErrorCode::InconsistentExtension:
      return 409;
    case ErrorCode::UnknownRule:
    case ErrorCode::UnknownGroup:
      return 404;
    default:
      return 400;
  }
}

struct ServiceOptions {
  std::string host = "127.0.0.1";
  std::optional<std::string> static_dir;
};

/// JSON facade over sessions. Construct, `bind`, then `listen` (blocks until `stop`).
class Service {
 public:
  explicit Service(ServiceOptions options = {}) : options_(std::move(options)) { routes(); }

  httplib::Server& server() { return server_; }
  SessionStore& store() { return store_; }

  /// Binds to `port` (0 picks a free one) and returns the bound port, or -1.
  int bind(int port) {
    if (port == 0) return server_.bind_to_any_port(options_.host);
    return server_.bind_to_port(options_.host, port) ? port : -1;
  }
  bool listen() { return server_.listen_after_bind(); }
  void stop() { server_.stop(); }
  void wait_until_ready() { server_.wait_until_ready(); }

  /// Registers a prepared session under a fresh id.
  std::string add_session(SessionState s) { return store_.create(std::move(s)); }

 private:
  using Request = httplib::Request;
  using Response = httplib::Response;

  static void send_json(Response& res, int status, const ordered_json& body) {
    res.status = status;
    res.set_content(body.dump(2) + "\n", "application/json");
  }

  static void send_error(Response& res, int status, std::string_view code, const std::string& detail) {
    send_json(res, status, {{"error", code}, {"detail", detail}});
  }

  static void send_error(Response& res, const Error& e) {
    ordered_json body{{"error", to_string(e.code())}, {"detail", e.detail()}};
    if (auto* se = dynamic_cast<const SyntaxError*>(&e)) {
      body["line"] = se->line();
      body["column"] = se->column();
    }
    send_json(res, http_status(e.code()), body);
  }

  static ordered_json session_body(const std::string& id, const SessionState& s) {
    return {{"id", id}, {"state", state_to_json(s)}};
  }

  static std::optional<nlohmann::json> parse_body(const Request& req, Response& res) {
    auto j = nlohmann::json::parse(req.body, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      send_error(res, 400, "InvalidInput", "request body must be a JSON object");
      return std::nullopt;
    }
    return j;
  }

  SessionStore::Snapshot lookup(const Request& req, Response& res) {
    auto snap = store_.get(req.matches[1]);
    if (!snap) send_error(res, 404, "UnknownSession", req.matches[1]);
    return snap;
  }

  void routes() {
    server_.set_exception_handler([](const Request&, Response& res, std::exception_ptr ep) {
      try {
        std::rethrow_exception(ep);
      } catch (const Error& e) {
        send_error(res, e);
      } catch (const std::exception& e) {
        send_error(res, 500, "Internal", e.what());
      }
    });

    server_.Get("/health", [](const Request&, Response& res) { res.set_content("ok", "text/plain"); });

    server_.Post("/sessions", [this](const Request& req, Response& res) {
      auto body = parse_body(req, res);
      if (!body) return;
      if (!body->contains("program") || !(*body)["program"].is_string()) {
        return send_error(res, 400, "InvalidInput", "missing \"program\" string");
      }
      SessionOptions opts;
      try {
        if (body->contains("cover") && !(*body)["cover"].is_null()) opts.cover_choice = (*body)["cover"].get<std::size_t>();
        if (body->contains("clique_cover") && !(*body)["clique_cover"].is_null()) {
          opts.clique_choice = (*body)["clique_cover"].get<std::size_t>();
        }
      } catch (const nlohmann::json::exception& e) {
        return send_error(res, 400, "InvalidInput", e.what());
      }
      std::vector<ChoiceRequest> history;
      if (body->contains("history")) history = script_from_json((*body)["history"]);
      SessionState s = replay(parse_program((*body)["program"].get<std::string>()), opts, history);
      int status = s.status == SessionStatus::Blocked ? 422 : 201;
      std::string id = store_.create(s);
      send_json(res, status, session_body(id, s));
    });

    server_.Get(R"(/sessions/([0-9a-f]+))", [this](const Request& req, Response& res) {
      if (auto snap = lookup(req, res)) send_json(res, 200, session_body(req.matches[1], *snap));
    });

    server_.Get(R"(/sessions/([0-9a-f]+)/graph)", [this](const Request& req, Response& res) {
      auto snap = lookup(req, res);
      if (!snap) return;
      GraphFormat format = parse_graph_format(req.has_param("format") ? req.get_param_value("format") : "json");
      res.set_content(export_graph(snap->graph, format),
                      format == GraphFormat::Dot ? "text/vnd.graphviz" : "application/json");
    });

    server_.Get(R"(/sessions/([0-9a-f]+)/program)", [this](const Request& req, Response& res) {
      if (auto snap = lookup(req, res)) res.set_content(print_program(snap->current), "text/plain");
    });

    server_.Get(R"(/sessions/([0-9a-f]+)/export)", [this](const Request& req, Response& res) {
      if (auto snap = lookup(req, res)) send_json(res, 200, session_file_json(*snap));
    });

    server_.Post(R"(/sessions/([0-9a-f]+)/choices)", [this](const Request& req, Response& res) {
      auto body = parse_body(req, res);
      if (!body) return;
      ChoiceRequest choice;
      try {
        choice.extension = body->at("extension").get<std::string>();
        choice.targets = body->at("targets").get<std::vector<std::string>>();
      } catch (const nlohmann::json::exception& e) {
        return send_error(res, 400, "InvalidInput", e.what());
      }
      auto [before, after] = store_.mutate(req.matches[1], [&](const SessionState& s) { return choose(s, choice); });
      if (!after) return send_error(res, 404, "UnknownSession", req.matches[1]);
      ordered_json out = session_body(req.matches[1], *after);
      out["resolved_now"] = to_json(resolved_between(*before, *after));
      send_json(res, 200, out);
    });

    server_.Post(R"(/sessions/([0-9a-f]+)/undo)", [this](const Request& req, Response& res) {
      auto [before, after] = store_.mutate(req.matches[1], [](const SessionState& s) { return undo(s); });
      if (!after) return send_error(res, 404, "UnknownSession", req.matches[1]);
      send_json(res, 200, session_body(req.matches[1], *after));
    });

    if (options_.static_dir) {
      if (!server_.set_mount_point("/", *options_.static_dir)) {
        throw Error(ErrorCode::InvalidInput, "static directory not found: " + *options_.static_dir);
      }
    }
  }

  ServiceOptions options_;
  httplib::Server server_;
  SessionStore store_;
};

}  // namespace lamres

#endif  // LAMRES_SERVICE_HPP_
