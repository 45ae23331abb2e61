#ifndef LAMRES_EXTENSION_HPP_
#define LAMRES_EXTENSION_HPP_

#include <algorithm>
#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lamres/conflict.hpp"
#include "lamres/error.hpp"
#include "lamres/program.hpp"

namespace lamres {

/// A set of body literals added to a representative's body to resolve its conflicts.
///
/// Literals are kept sorted by (atom, strong negation, default negation); the
/// canonical key joins their compact forms with commas, e.g. "~t,~-t". The
/// ordering of extensions is lexicographic over that literal sequence, which is
/// the "alphanumerical" order used for tie-breaks.
class LambdaExtension {
 public:
  LambdaExtension() = default;
  explicit LambdaExtension(std::vector<BodyLiteral> literals) : literals_(std::move(literals)) {
    std::sort(literals_.begin(), literals_.end());
    literals_.erase(std::unique(literals_.begin(), literals_.end()), literals_.end());
  }

  static LambdaExtension parse_key(std::string_view key) {
    std::vector<BodyLiteral> lits;
    while (!key.empty()) {
      std::size_t comma = key.find(',');
      std::string_view part = key.substr(0, comma);
      while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
      while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
      lits.push_back(parse_body_key(part));
      if (comma == std::string_view::npos) break;
      key.remove_prefix(comma + 1);
    }
    return LambdaExtension(std::move(lits));
  }

  const std::vector<BodyLiteral>& literals() const { return literals_; }
  bool empty() const { return literals_.empty(); }
  std::size_t size() const { return literals_.size(); }
  bool contains(const BodyLiteral& b) const { return std::binary_search(literals_.begin(), literals_.end(), b); }

  std::string key() const {
    std::string out;
    for (const auto& l : literals_) {
      if (!out.empty()) out += ',';
      out += l.key();
    }
    return out;
  }

  bool consistent() const { return body_consistent(literals_); }

  bool subset_of(const LambdaExtension& other) const {
    return std::includes(other.literals_.begin(), other.literals_.end(), literals_.begin(), literals_.end());
  }

  auto operator<=>(const LambdaExtension&) const = default;
  bool operator==(const LambdaExtension&) const = default;

 private:
  std::vector<BodyLiteral> literals_;
};

/// The rule with `x` appended to its body (literals already present are skipped).
inline Rule extend_rule(const Rule& r, const LambdaExtension& x) {
  Rule out = r;
  for (const auto& b : x.literals()) {
    if (!out.has(b)) out.body.push_back(b);
  }
  return out;
}

/// Single body literals that, added to `r`, keep `r` applicable and stop it from
/// conflicting with `r2`. Sorted.
inline std::vector<BodyLiteral> blockers(const Rule& r, const Rule& r2) {
  std::vector<BodyLiteral> candidates;
  for (const auto& b : r2.body) {
    if (b.default_neg) {
      candidates.push_back(BodyLiteral{b.literal, false});
    } else {
      candidates.push_back(BodyLiteral{b.literal, true});
      candidates.push_back(BodyLiteral{b.literal.complement(), false});
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  std::vector<BodyLiteral> out;
  for (const auto& x : candidates) {
    if (r.has(x)) continue;
    Rule extended = r;
    extended.body.push_back(x);
    if (!extended.applicable()) continue;
    if (!is_conflicting(extended, r2)) out.push_back(x);
  }
  return out;
}

/// All inclusion-minimal extensions of `r` that resolve its conflict with every
/// rule of `others`, sorted. An empty result means `r` cannot represent them.
///
/// Every conflict broken by an applicable extension is broken by one of its
/// literals alone, so the minimal extensions are exactly the consistent minimal
/// hitting sets of the per-rule blocker families.
inline std::vector<LambdaExtension> min_extensions(const Rule& r, std::span<const Rule> others,
                                                   std::size_t cap = 1000) {
  std::vector<std::vector<BodyLiteral>> families;
  for (const auto& r2 : others) {
    families.push_back(blockers(r, r2));
    if (families.back().empty()) return {};
  }
  if (families.empty()) return {};

  std::vector<LambdaExtension> found;
  std::vector<BodyLiteral> chosen;
  const std::size_t leaf_cap = cap * 64;

  auto hits = [&](const std::vector<BodyLiteral>& family) {
    return std::any_of(chosen.begin(), chosen.end(),
                       [&](const BodyLiteral& b) { return std::find(family.begin(), family.end(), b) != family.end(); });
  };
  auto compatible = [&](const BodyLiteral& x) {
    std::vector<BodyLiteral> body = r.body;
    body.insert(body.end(), chosen.begin(), chosen.end());
    body.push_back(x);
    return body_consistent(body);
  };

  auto search = [&](auto&& self) -> void {
    auto open = std::find_if(families.begin(), families.end(), [&](const auto& f) { return !hits(f); });
    if (open == families.end()) {
      found.emplace_back(chosen);
      if (found.size() > leaf_cap) {
        throw Error(ErrorCode::TooLarge, "extension search for " + r.id + " exceeded " + std::to_string(leaf_cap));
      }
      return;
    }
    for (const auto& x : *open) {
      if (!compatible(x)) continue;
      chosen.push_back(x);
      self(self);
      chosen.pop_back();
    }
  };
  search(search);

  std::sort(found.begin(), found.end(),
            [](const LambdaExtension& a, const LambdaExtension& b) {
              return a.size() != b.size() ? a.size() < b.size() : a < b;
            });
  found.erase(std::unique(found.begin(), found.end()), found.end());
  std::vector<LambdaExtension> minimal;
  for (const auto& x : found) {
    bool dominated = std::any_of(minimal.begin(), minimal.end(), [&](const LambdaExtension& m) { return m.subset_of(x); });
    if (!dominated) minimal.push_back(x);
  }
  if (minimal.size() > cap) {
    throw Error(ErrorCode::TooLarge, std::to_string(minimal.size()) + " extensions for " + r.id +
                                         " exceed cap " + std::to_string(cap));
  }
  std::sort(minimal.begin(), minimal.end());
  return minimal;
}

/// Drops an extension containing a positive literal L when the same extension
/// with ~complement(L) in its place is also offered: ~a is the more cautious
/// choice over -a (and ~-a over a). Order is preserved.
inline std::vector<LambdaExtension> cautious_filter(const std::vector<LambdaExtension>& exts) {
  std::vector<LambdaExtension> out;
  for (const auto& x : exts) {
    bool dominated = false;
    for (const auto& lit : x.literals()) {
      if (lit.default_neg) continue;
      std::vector<BodyLiteral> variant;
      for (const auto& other : x.literals()) {
        variant.push_back(other == lit ? BodyLiteral{lit.literal.complement(), true} : other);
      }
      LambdaExtension v(std::move(variant));
      if (std::find(exts.begin(), exts.end(), v) != exts.end()) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(x);
  }
  return out;
}

/// True when applying `x` to `r` changes nothing: wherever `r`'s body holds but
/// some literal of `x` fails, another rule with the same head fires anyway.
inline bool is_vacuous(const Program& p, const Rule& r, const LambdaExtension& x) {
  if (x.empty()) return true;
  for (const auto& lit : x.literals()) {
    Rule widened = r;
    widened.body.push_back(lit.flipped());
    bool shadowed = std::any_of(p.rules.begin(), p.rules.end(), [&](const Rule& s) {
      if (s.id == r.id || s.head != r.head) return false;
      return std::all_of(s.body.begin(), s.body.end(), [&](const BodyLiteral& b) { return widened.has(b); });
    });
    if (!shadowed) return false;
  }
  return true;
}

/// Removes vacuous extensions unless that would leave none.
inline std::vector<LambdaExtension> vacuous_filter(const Program& p, const Rule& r,
                                                   const std::vector<LambdaExtension>& exts) {
  std::vector<LambdaExtension> out;
  for (const auto& x : exts) {
    if (!is_vacuous(p, r, x)) out.push_back(x);
  }
  return out.empty() ? exts : out;
}

/// Exact criterion for `r` having some extension against `r2`: a positive
/// literal of `r2` missing from `r`, or a default-negated literal L of `r2`
/// that `r` neither negates by default nor contradicts positively.
inline bool extendable_against(const Rule& r, const Rule& r2) {
  const auto pos = r.body_pos();
  for (const auto& l : r2.body_pos()) {
    if (std::find(pos.begin(), pos.end(), l) == pos.end()) return true;
  }
  const auto neg = r.body_neg();
  for (const auto& l : r2.body_neg()) {
    if (std::find(neg.begin(), neg.end(), l) == neg.end() &&
        std::find(pos.begin(), pos.end(), l.complement()) == pos.end()) {
      return true;
    }
  }
  return false;
}

inline Program apply_extension(const Program& p, std::string_view rule_id, const LambdaExtension& x) {
  auto index = p.index_of(rule_id);
  if (!index) throw Error(ErrorCode::UnknownRule, std::string(rule_id));
  Rule extended = extend_rule(p.rules[*index], x);
  if (!extended.applicable()) {
    throw Error(ErrorCode::InconsistentExtension, "{" + x.key() + "} on " + std::string(rule_id));
  }
  Program out = p;
  out.rules[*index] = std::move(extended);
  return out;
}

}  // namespace lamres

#endif  // LAMRES_EXTENSION_HPP_
