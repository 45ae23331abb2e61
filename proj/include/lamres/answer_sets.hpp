#ifndef LAMRES_ANSWER_SETS_HPP_
#define LAMRES_ANSWER_SETS_HPP_

#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lamres/error.hpp"
#include "lamres/program.hpp"

namespace lamres {

struct AnswerSetOptions {
  std::size_t max_atoms = 20;
};

/// Result of brute-force answer-set computation. When `contradictory` is set the
/// unique answer set is the full literal set and `sets` is empty.
struct AnswerSets {
  bool contradictory = false;
  std::vector<InterpretationSet> sets;
};

namespace detail {

/// Literal sets as bitmasks: atom i owns bit 2i (positive) and 2i+1 (strongly negated).
class BitProgram {
 public:
  static constexpr std::size_t kMaxAtoms = 32;

  explicit BitProgram(const Program& p) {
    for (const auto& a : p.atoms()) index_.emplace(a, index_.size());
    if (index_.size() > kMaxAtoms) {
      throw Error(ErrorCode::TooLarge, std::to_string(index_.size()) + " atoms exceed the solver width of " +
                                           std::to_string(kMaxAtoms));
    }
    for (const auto& r : p.rules) {
      BitRule br;
      br.head = bit(r.head);
      for (const auto& b : r.body) (b.default_neg ? br.neg : br.pos) |= bit(b.literal);
      neg_mask_ |= br.neg;
      rules_.push_back(br);
    }
    all_ = index_.size() == kMaxAtoms ? ~std::uint64_t{0} : (std::uint64_t{1} << (2 * index_.size())) - 1;
  }

  std::uint64_t bit(const Literal& l) const {
    return std::uint64_t{1} << (2 * index_.at(l.atom) + (l.strong_neg ? 1 : 0));
  }
  std::uint64_t all() const { return all_; }
  std::uint64_t neg_mask() const { return neg_mask_; }

  static bool consistent(std::uint64_t s) {
    constexpr std::uint64_t kEven = 0x5555555555555555ULL;
    return ((s & kEven) & ((s >> 1) & kEven)) == 0;
  }

  /// Least model of the reduct w.r.t. `guess` (only guess & neg_mask matters),
  /// seeded with `facts`. Returns all() when the closure is inconsistent.
  std::uint64_t closure(std::uint64_t guess, std::uint64_t facts = 0) const {
    if (!consistent(facts)) return all_;
    std::uint64_t m = fixpoint(guess, facts, true);
    return consistent(m) ? m : all_;
  }

  /// Same fixpoint with complementary literals read as unrelated atoms.
  std::uint64_t blind_closure(std::uint64_t guess, std::uint64_t facts = 0) const {
    return fixpoint(guess, facts, false);
  }

  /// True when the program plus `facts`, with complementary literals read as
  /// unrelated atoms, has answer sets and every one of them holds a
  /// complementary pair.
  bool contradicts(std::uint64_t facts) const {
    const std::uint64_t mask = neg_mask_;
    bool found = false;
    std::uint64_t guess = 0;
    while (true) {
      std::uint64_t m = fixpoint(guess, facts, false);
      if ((m & mask) == guess) {
        if (consistent(m)) return false;
        found = true;
      }
      if (guess == mask) break;
      guess = (guess - mask) & mask;
    }
    return found;
  }

  /// Enumerates answer sets of the program plus `facts`; stops early on a contradiction.
  template <typename Visit>
  bool answer_sets(std::uint64_t facts, Visit&& visit) const {
    const std::uint64_t mask = neg_mask_;
    std::uint64_t guess = 0;
    while (true) {
      std::uint64_t m = closure(guess, facts);
      if ((m & mask) == guess) {
        if (m == all_) return false;
        visit(m);
      }
      if (guess == mask) break;
      guess = (guess - mask) & mask;  // next submask
    }
    return true;
  }

  InterpretationSet decode(std::uint64_t s) const {
    InterpretationSet out;
    for (const auto& [atom, i] : index_) {
      if (s & (std::uint64_t{1} << (2 * i))) out.literals.insert(Literal{atom, false});
      if (s & (std::uint64_t{1} << (2 * i + 1))) out.literals.insert(Literal{atom, true});
    }
    return out;
  }

  std::size_t atom_count() const { return index_.size(); }

 private:
  struct BitRule {
    std::uint64_t head = 0;
    std::uint64_t pos = 0;
    std::uint64_t neg = 0;
  };

  std::uint64_t fixpoint(std::uint64_t guess, std::uint64_t m, bool stop_on_clash) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& r : rules_) {
        if ((r.neg & guess) != 0 || (m & r.head) != 0) continue;
        if ((r.pos & m) == r.pos) {
          m |= r.head;
          changed = true;
        }
      }
      if (stop_on_clash && !consistent(m)) return m;
    }
    return m;
  }

  std::map<std::string, std::size_t> index_;
  std::vector<BitRule> rules_;
  std::uint64_t neg_mask_ = 0;
  std::uint64_t all_ = 0;
};

}  // namespace detail

/// Exact answer sets by guess-and-check over the default-negated literals.
inline AnswerSets answer_sets(const Program& p, const AnswerSetOptions& opts = {}) {
  const auto atoms = p.atoms();
  if (atoms.size() > opts.max_atoms) {
    throw Error(ErrorCode::TooLarge,
                std::to_string(atoms.size()) + " atoms exceed cap " + std::to_string(opts.max_atoms));
  }
  detail::BitProgram bits(p);
  AnswerSets out;
  std::vector<std::uint64_t> found;
  out.contradictory = !bits.answer_sets(0, [&](std::uint64_t m) { found.push_back(m); });
  if (!out.contradictory) {
    std::sort(found.begin(), found.end());
    for (auto m : found) out.sets.push_back(bits.decode(m));
  }
  return out;
}

}  // namespace lamres

#endif  // LAMRES_ANSWER_SETS_HPP_
