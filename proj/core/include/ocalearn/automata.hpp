#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "ocalearn/alphabet.hpp"

namespace ocalearn {

using StateId = std::uint32_t;
inline constexpr StateId kNoState = static_cast<StateId>(-1);

// ---------------------------------------------------------------------------
// DFA
// ---------------------------------------------------------------------------

/// Deterministic finite automaton with a possibly partial transition map.
/// A missing transition rejects.
class Dfa {
 public:
  Dfa() = default;
  Dfa(Alphabet alphabet, std::size_t num_states, StateId initial = 0);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t num_states() const { return finals_.size(); }
  StateId initial() const { return initial_; }

  bool is_final(StateId q) const { return finals_.at(q) != 0; }
  void set_final(StateId q, bool final = true);

  std::optional<StateId> next(StateId q, Letter a) const;
  void set_transition(StateId from, Letter a, StateId to);
  void clear_transition(StateId from, Letter a);

  /// State reached on `w` from the initial state, if every step is defined.
  std::optional<StateId> run(const Word& w) const;
  bool accepts(const Word& w) const;

  std::size_t num_transitions() const;

  friend bool operator==(const Dfa&, const Dfa&) = default;

 private:
  std::size_t index(StateId q, Letter a) const;

  Alphabet alphabet_;
  StateId initial_ = 0;
  std::vector<StateId> delta_;
  std::vector<std::uint8_t> finals_;
};

/// Renumbers states in breadth-first order from the initial state (letters
/// in alphabet order) and drops unreachable states. Two DFAs are isomorphic
/// on their reachable parts iff their canonical forms compare equal.
Dfa canonical(const Dfa& dfa);

// ---------------------------------------------------------------------------
// DROCA
// ---------------------------------------------------------------------------

enum class CounterAction : std::int8_t { Decrement = -1, Keep = 0, Increment = 1 };

inline int to_int(CounterAction c) { return static_cast<int>(c); }
/// Throws InputError unless v is -1, 0 or +1.
CounterAction counter_action_from_int(int v);

struct Move {
  StateId target = kNoState;
  CounterAction action = CounterAction::Keep;

  friend bool operator==(const Move&, const Move&) = default;
};

struct Configuration {
  StateId state = 0;
  std::uint64_t counter = 0;

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

struct CompletedRun {
  std::vector<Configuration> configurations;  // one per prefix, epsilon included
};

struct StuckRun {
  std::size_t position = 0;  // index of the first letter without a transition
};

using RunResult = std::variant<CompletedRun, StuckRun>;

inline bool completed(const RunResult& r) { return std::holds_alternative<CompletedRun>(r); }

/// Deterministic real-time one-counter automaton. `delta0` is consulted at
/// counter zero and may only keep or increment; `delta1` is consulted at a
/// positive counter. Both maps may be partial; a run that reaches an
/// undefined transition is stuck and the word is rejected.
class Droca {
 public:
  Droca() = default;
  Droca(Alphabet alphabet, std::size_t num_states, StateId initial = 0);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t num_states() const { return finals_.size(); }
  StateId initial() const { return initial_; }

  bool is_final(StateId q) const { return finals_.at(q) != 0; }
  void set_final(StateId q, bool final = true);

  std::optional<Move> zero(StateId q, Letter a) const;
  std::optional<Move> positive(StateId q, Letter a) const;
  /// Transition used from configuration (q, counter).
  std::optional<Move> step(StateId q, std::uint64_t counter, Letter a) const {
    return counter == 0 ? zero(q, a) : positive(q, a);
  }

  /// Throws InputError for a decrement (the counter would go negative).
  void set_zero(StateId from, Letter a, Move move);
  void set_positive(StateId from, Letter a, Move move);
  void clear_zero(StateId from, Letter a);
  void clear_positive(StateId from, Letter a);

  /// Adds a fresh non-final state with no transitions and returns its id.
  StateId add_state();

  RunResult run(const Word& w) const;
  /// Final configuration of `w`, or nullopt when the run is stuck.
  std::optional<Configuration> final_configuration(const Word& w) const;
  bool accepts(const Word& w) const;
  std::optional<std::uint64_t> counter_effect(const Word& w) const;

  /// True when both transition maps are total.
  bool is_complete() const;

  friend bool operator==(const Droca&, const Droca&) = default;

 private:
  std::size_t index(StateId q, Letter a) const;
  void check_move(StateId from, Letter a, const Move& move) const;

  Alphabet alphabet_;
  StateId initial_ = 0;
  std::vector<Move> delta0_;  // target == kNoState means undefined
  std::vector<Move> delta1_;
  std::vector<std::uint8_t> finals_;
};

// ---------------------------------------------------------------------------
// VOCA
// ---------------------------------------------------------------------------

enum class LetterKind : std::uint8_t { Call, Return, Internal };

/// Classification of every letter of an alphabet.
using Partition = std::vector<LetterKind>;

/// Counter action fixed by a letter's class: call +1, return -1, internal 0.
CounterAction voca_letter_effect(const Partition& partition, Letter a);

/// Counter value after `w` when every prefix stays non-negative.
std::optional<std::uint64_t> visible_counter(const Partition& partition, const Word& w);

/// A DROCA whose counter actions are determined by the alphabet partition.
class Voca {
 public:
  Voca() = default;
  /// Validates the partition against every transition of `base`.
  Voca(Droca base, Partition partition);

  const Droca& base() const { return base_; }
  const Partition& partition() const { return partition_; }
  const Alphabet& alphabet() const { return base_.alphabet(); }
  std::size_t num_states() const { return base_.num_states(); }

  bool accepts(const Word& w) const { return base_.accepts(w); }
  std::optional<std::uint64_t> counter_effect(const Word& w) const {
    return base_.counter_effect(w);
  }

  /// Every transition that can carry its class action is defined: delta0 on
  /// call and internal letters, delta1 on all letters.
  bool is_complete() const;

  friend bool operator==(const Voca&, const Voca&) = default;

 private:
  Droca base_;
  Partition partition_;
};

// ---------------------------------------------------------------------------
// Utilities
// ---------------------------------------------------------------------------

/// Control states seen by a breadth-first exploration of configurations
/// from (initial, 0) that never expands a configuration whose counter
/// exceeds `counter_cutoff`. Heuristic: the configuration space is infinite.
std::set<StateId> reachable_states(const Droca& machine, std::uint64_t counter_cutoff);

/// Adds a non-final sink with action-0 self-loops and sends every undefined
/// (state, letter) pair to it with action 0.
Droca complete_with_sink(const Droca& machine);

/// VOCA flavour: the sink and the redirected transitions carry the action
/// of their letter's class, and zero-counter transitions on return letters
/// stay undefined.
Voca complete_with_sink(const Voca& machine);

}  // namespace ocalearn
