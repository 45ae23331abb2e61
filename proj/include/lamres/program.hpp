#ifndef LAMRES_PROGRAM_HPP_
#define LAMRES_PROGRAM_HPP_

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "lamres/error.hpp"

namespace lamres {

inline bool is_atom_name(std::string_view name) {
  if (name.empty() || !std::islower(static_cast<unsigned char>(name.front()))) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
  });
}

/// An atom with optional strong negation. Ordering is by atom name first.
struct Literal {
  std::string atom;
  bool strong_neg = false;

  Literal complement() const { return Literal{atom, !strong_neg}; }
  std::string str() const { return strong_neg ? "-" + atom : atom; }

  auto operator<=>(const Literal&) const = default;
  bool operator==(const Literal&) const = default;
};

/// A literal as it occurs in a rule body, optionally under default negation.
///
/// The defaulted ordering compares (atom, strong_neg, default_neg), so all
/// literals over one atom are adjacent: t < ~t < -t < ~-t.
struct BodyLiteral {
  Literal literal;
  bool default_neg = false;

  /// Compact form used in extension keys: `~` for default, `-` for strong negation.
  std::string key() const { return (default_neg ? "~" : "") + literal.str(); }
  /// Concrete program syntax.
  std::string text() const { return (default_neg ? "not " : "") + literal.str(); }
  /// The body literal that holds exactly when this one does not.
  BodyLiteral flipped() const { return BodyLiteral{literal, !default_neg}; }

  auto operator<=>(const BodyLiteral&) const = default;
  bool operator==(const BodyLiteral&) const = default;
};

inline BodyLiteral pos(std::string atom, bool strong_neg = false) {
  return BodyLiteral{Literal{std::move(atom), strong_neg}, false};
}
inline BodyLiteral naf(std::string atom, bool strong_neg = false) {
  return BodyLiteral{Literal{std::move(atom), strong_neg}, true};
}

/// Parses the key form (`~-a`, `~a`, `-a`, `a`).
inline BodyLiteral parse_body_key(std::string_view key) {
  BodyLiteral out;
  std::string_view rest = key;
  if (!rest.empty() && rest.front() == '~') {
    out.default_neg = true;
    rest.remove_prefix(1);
  }
  if (!rest.empty() && rest.front() == '-') {
    out.literal.strong_neg = true;
    rest.remove_prefix(1);
  }
  if (!is_atom_name(rest)) {
    throw Error(ErrorCode::InvalidInput, "bad literal key '" + std::string(key) + "'");
  }
  out.literal.atom = std::string(rest);
  return out;
}

/// True iff the body literals can hold together in some consistent literal set.
inline bool body_consistent(std::span<const BodyLiteral> body) {
  for (const auto& b : body) {
    if (b.default_neg) {
      if (std::find(body.begin(), body.end(), b.flipped()) != body.end()) return false;
    } else {
      if (std::find(body.begin(), body.end(), BodyLiteral{b.literal.complement(), false}) != body.end()) {
        return false;
      }
    }
  }
  return true;
}

struct Rule {
  std::string id;
  Literal head;
  std::vector<BodyLiteral> body;  // printing order; semantics are set-based

  std::vector<Literal> body_pos() const {
    std::vector<Literal> out;
    for (const auto& b : body) {
      if (!b.default_neg) out.push_back(b.literal);
    }
    return out;
  }
  std::vector<Literal> body_neg() const {
    std::vector<Literal> out;
    for (const auto& b : body) {
      if (b.default_neg) out.push_back(b.literal);
    }
    return out;
  }
  bool has(const BodyLiteral& b) const { return std::find(body.begin(), body.end(), b) != body.end(); }
  bool is_fact() const { return body.empty(); }
  bool applicable() const { return body_consistent(body); }

  std::vector<BodyLiteral> sorted_body() const {
    std::vector<BodyLiteral> out = body;
    std::sort(out.begin(), out.end());
    return out;
  }

  friend bool operator==(const Rule& a, const Rule& b) {
    return a.id == b.id && a.head == b.head && a.sorted_body() == b.sorted_body();
  }
};

/// A ground extended logic program. Rule order is the input order.
struct Program {
  std::vector<Rule> rules;

  const Rule* find(std::string_view id) const {
    for (const auto& r : rules) {
      if (r.id == id) return &r;
    }
    return nullptr;
  }
  const Rule& at(std::string_view id) const {
    if (const Rule* r = find(id)) return *r;
    throw Error(ErrorCode::UnknownRule, std::string(id));
  }
  std::optional<std::size_t> index_of(std::string_view id) const {
    for (std::size_t i = 0; i < rules.size(); ++i) {
      if (rules[i].id == id) return i;
    }
    return std::nullopt;
  }

  /// All atoms occurring in heads or bodies.
  std::set<std::string> atoms() const {
    std::set<std::string> out;
    for (const auto& r : rules) {
      out.insert(r.head.atom);
      for (const auto& b : r.body) out.insert(b.literal.atom);
    }
    return out;
  }
  std::set<std::string> body_atoms() const {
    std::set<std::string> out;
    for (const auto& r : rules) {
      for (const auto& b : r.body) out.insert(b.literal.atom);
    }
    return out;
  }
  /// Literals occurring in bodies, default negation stripped.
  std::set<Literal> body_literals() const {
    std::set<Literal> out;
    for (const auto& r : rules) {
      for (const auto& b : r.body) out.insert(b.literal);
    }
    return out;
  }
  /// A program core has no facts.
  bool is_core() const {
    return std::none_of(rules.begin(), rules.end(), [](const Rule& r) { return r.is_fact(); });
  }

  bool operator==(const Program&) const = default;
};

inline std::string default_rule_id(std::size_t position) { return "r" + std::to_string(position + 1); }

inline bool is_rule_id(std::string_view id) {
  return !id.empty() && std::all_of(id.begin(), id.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
  });
}

namespace detail {

class RuleScanner {
 public:
  RuleScanner(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  Rule parse() {
    Rule rule;
    skip_ws();
    rule.head = literal("rule head");
    skip_ws();
    if (peek() == ':') {
      expect(":-");
      do {
        skip_ws();
        BodyLiteral b = body_literal();
        if (!std::count(rule.body.begin(), rule.body.end(), b)) rule.body.push_back(std::move(b));
        skip_ws();
      } while (accept(','));
    }
    skip_ws();
    if (!accept('.')) fail("expected '.' or ','");
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected text after '.'");
    return rule;
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(std::string_view s) {
    if (text_.substr(pos_, s.size()) != s) fail("expected '" + std::string(s) + "'");
    pos_ += s.size();
  }
  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(line_, pos_ + 1, what); }

  std::string identifier(const char* what) {
    if (!std::islower(static_cast<unsigned char>(peek()))) fail(std::string("expected ") + what);
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) != 0 || text_[pos_] == '_')) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  Literal literal(const char* what) {
    Literal lit;
    if (accept('-')) lit.strong_neg = true;
    lit.atom = identifier(what);
    return lit;
  }

  BodyLiteral body_literal() {
    std::size_t start = pos_;
    if (peek() != '-') {
      std::string word = identifier("body literal");
      if (word == "not" && pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) {
        skip_ws();
        if (peek() == '-' || std::islower(static_cast<unsigned char>(peek()))) {
          return BodyLiteral{literal("literal after 'not'"), true};
        }
      }
      pos_ = start;
    }
    return BodyLiteral{literal("body literal"), false};
  }

  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

inline std::optional<std::string> id_annotation(std::string_view comment) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  comment = trim(comment);
  if (comment.substr(0, 3) != "#id") return std::nullopt;
  comment.remove_prefix(3);
  if (comment.empty() || !std::isspace(static_cast<unsigned char>(comment.front()))) return std::nullopt;
  comment = trim(comment);
  return std::string(comment);
}

}  // namespace detail

/// Parses the line-oriented rule syntax: `HEAD :- B1, ..., Bn.` or `HEAD.`
///
/// A `% #id NAME` comment names the rule on the same line, or the next rule
/// when it stands on its own line. Unnamed rules get positional ids r1..rn.
inline Program parse_program(std::string_view text) {
  Program program;
  std::unordered_set<std::string> seen;
  std::optional<std::string> pending_id;
  std::size_t line_no = 0;
  while (!text.empty() || line_no == 0) {
    ++line_no;
    std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::optional<std::string> id;
    std::size_t pct = line.find('%');
    if (pct != std::string_view::npos) {
      id = detail::id_annotation(line.substr(pct + 1));
      if (id && !is_rule_id(*id)) throw SyntaxError(line_no, pct + 1, "bad rule id '" + *id + "'");
      line = line.substr(0, pct);
    }
    bool blank = std::all_of(line.begin(), line.end(), [](char c) { return c == ' ' || c == '\t'; });
    if (blank) {
      if (id) pending_id = id;
      if (text.empty()) break;
      continue;
    }
    Rule rule = detail::RuleScanner(line, line_no).parse();
    if (id) {
      rule.id = *id;
    } else if (pending_id) {
      rule.id = *pending_id;
    } else {
      rule.id = default_rule_id(program.rules.size());
    }
    pending_id.reset();
    if (!seen.insert(rule.id).second) {
      throw Error(ErrorCode::DuplicateRuleId, rule.id + " (line " + std::to_string(line_no) + ")");
    }
    program.rules.push_back(std::move(rule));
    if (text.empty()) break;
  }
  return program;
}

inline std::string print_rule(const Rule& rule) {
  std::string out = rule.head.str();
  if (!rule.body.empty()) {
    out += " :- ";
    for (std::size_t i = 0; i < rule.body.size(); ++i) {
      if (i) out += ", ";
      out += rule.body[i].text();
    }
  }
  out += '.';
  return out;
}

/// One rule per line; ids that differ from the positional default are kept as annotations.
inline std::string print_program(const Program& program) {
  std::string out;
  for (std::size_t i = 0; i < program.rules.size(); ++i) {
    const Rule& r = program.rules[i];
    out += print_rule(r);
    if (r.id != default_rule_id(i)) out += " % #id " + r.id;
    out += '\n';
  }
  return out;
}

/// A set of literals, e.g. a candidate answer set.
struct InterpretationSet {
  std::set<Literal> literals;

  bool contains(const Literal& l) const { return literals.count(l) != 0; }
  bool consistent() const {
    return std::none_of(literals.begin(), literals.end(),
                        [&](const Literal& l) { return !l.strong_neg && contains(l.complement()); });
  }
  bool operator==(const InterpretationSet&) const = default;
};

inline bool satisfies(const InterpretationSet& s, const BodyLiteral& b) {
  return s.contains(b.literal) != b.default_neg;
}

inline bool satisfies(const InterpretationSet& s, std::span<const BodyLiteral> body) {
  return std::all_of(body.begin(), body.end(), [&](const BodyLiteral& b) { return satisfies(s, b); });
}

/// Gelfond-Lifschitz reduct: drops rules blocked by `s`, strips default literals from the rest.
inline Program reduct(const Program& p, const InterpretationSet& s) {
  Program out;
  for (const auto& r : p.rules) {
    auto neg = r.body_neg();
    if (std::any_of(neg.begin(), neg.end(), [&](const Literal& l) { return s.contains(l); })) continue;
    Rule kept{r.id, r.head, {}};
    for (const auto& b : r.body) {
      if (!b.default_neg) kept.body.push_back(b);
    }
    out.rules.push_back(std::move(kept));
  }
  return out;
}

}  // namespace lamres

#endif  // LAMRES_PROGRAM_HPP_
