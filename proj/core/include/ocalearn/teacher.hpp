#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "ocalearn/automata.hpp"
#include "ocalearn/deadline.hpp"

namespace ocalearn {

enum class MismatchKind { Membership, Counter };

std::string to_string(MismatchKind kind);

struct Mismatch {
  Word word;
  MismatchKind kind = MismatchKind::Membership;

  friend bool operator==(const Mismatch&, const Mismatch&) = default;
};

struct Equivalent {};

struct Counterexample {
  Word word;
  MismatchKind kind = MismatchKind::Membership;
};

/// No mismatch was found, but the search was cut short.
struct PresumedEquivalent {
  std::size_t length_bound = 0;  // longest word explored
  std::size_t configurations = 0;
};

using EquivalenceVerdict = std::variant<Equivalent, Counterexample, PresumedEquivalent>;

struct MsqLimits {
  /// Longest word explored by the counterexample search; 0 means no limit.
  std::size_t max_cex_length = 0;
  std::size_t max_configurations = 4'000'000;
};

/// Exact check that no word separates `a` and `b` by membership or counter
/// value (stuck runs reject and have no counter value). The synchronised
/// product is itself a one-counter system whose positive-counter moves do
/// not depend on the counter value, so reachability of a separating
/// configuration is decided with "pop" summaries: pairs (s, t) such that
/// the product can go from (s, 1) to (t, 0) while staying positive until
/// the last step. Throws InputError on alphabet mismatch.
bool synchronously_equivalent(const Droca& a, const Droca& b);

/// Equivalent when synchronously_equivalent holds. Otherwise a
/// breadth-first search of the product from ((init_a, init_b), 0), letters
/// in alphabet order, returns the llex-least separating word; a membership
/// mismatch wins over a counter mismatch on the same word and words on
/// which both runs are stuck are pruned. PresumedEquivalent only when the
/// limits stop that search first. Throws BudgetExhausted on deadline.
EquivalenceVerdict product_search(const Droca& a, const Droca& b, const MsqLimits& limits = {},
                                  const Deadline& deadline = {});

/// First mismatch among all words of length <= max_len in llex order.
/// Stuck runs reject and have no counter value.
std::optional<Mismatch> brute_force_equiv(const Droca& a, const Droca& b, std::size_t max_len);

struct QueryStats {
  std::uint64_t mq = 0;
  std::uint64_t cv = 0;
  std::uint64_t msq = 0;
};

/// Simulated oracle over a hidden target.
class Teacher {
 public:
  /// Throws InputError unless `target` is complete.
  explicit Teacher(Droca target, MsqLimits limits = {});
  explicit Teacher(Voca target, MsqLimits limits = {});

  bool mq(const Word& w);
  /// nullopt for words without a run (invalid VOCA words).
  std::optional<std::uint64_t> cv(const Word& w);
  EquivalenceVerdict msq(const Droca& hypothesis, const Deadline& deadline = {});
  EquivalenceVerdict msq(const Voca& hypothesis, const Deadline& deadline = {});

  const QueryStats& stats() const { return stats_; }
  const Alphabet& alphabet() const { return target_.alphabet(); }
  bool is_voca() const { return partition_.has_value(); }
  const std::optional<Partition>& partition() const { return partition_; }
  const MsqLimits& limits() const { return limits_; }

 private:
  Droca target_;
  std::optional<Partition> partition_;
  MsqLimits limits_;
  QueryStats stats_;
};

}  // namespace ocalearn
