#pragma once

#include <cstdint>
#include <vector>

#include "ocalearn/automata.hpp"
#include "ocalearn/deadline.hpp"
#include "ocalearn/samples.hpp"

namespace ocalearn {

/// Tree-shaped DFA accepting exactly the positive words. State `q` is the
/// prefix `representative[q]`; states are numbered in llex order of their
/// representatives, so the root is state 0.
struct PrefixTreeAcceptor {
  Dfa dfa;
  std::vector<Word> representative;
};

PrefixTreeAcceptor build_pta(const WordSet& positives, const Alphabet& alphabet);

/// All pairs (u, v) of pref(positives) with v <llex u, sorted by
/// llex_pair_compare. Quadratic; intended for small inputs and tests.
std::vector<WordPair> merge_plan(const WordSet& positives);

/// Identifies `target` with `survivor` and folds successors recursively
/// until the result is deterministic. A merged state is final when any
/// constituent was. The surviving class keeps the smaller id; remaining
/// states are renumbered preserving their relative order.
Dfa merge(const Dfa& dfa, StateId target, StateId survivor);

/// Every positive word accepted and every negative word rejected (a missing
/// transition rejects).
bool consistent_with(const Dfa& dfa, const SampleSet& sample);

struct RpniStats {
  std::uint64_t merge_attempts = 0;
  std::uint64_t merges_accepted = 0;
  std::size_t tree_nodes = 0;
};

struct RpniOptions {
  Deadline deadline;
  RpniStats* stats = nullptr;
};

/// Passive DFA inference by state merging. Pairs of pref(S+) are visited in
/// increasing llex order; a pair whose current states differ is merged when
/// the merged automaton stays consistent with the whole sample.
///
/// Throws InputError for words outside `alphabet` and BudgetExhausted when
/// the deadline passes.
Dfa rpni(const SampleSet& sample, const Alphabet& alphabet, const RpniOptions& options = {});

}  // namespace ocalearn
