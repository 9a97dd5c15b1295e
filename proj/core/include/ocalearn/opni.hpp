#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ocalearn/automata.hpp"
#include "ocalearn/deadline.hpp"
#include "ocalearn/rpni.hpp"
#include "ocalearn/samples.hpp"

namespace ocalearn {

/// Counter effect of one letter after a word; `Unknown` when the counter
/// value of the extension is not available.
enum class Effect : std::int8_t { Decrement = -1, Keep = 0, Increment = 1, Unknown = 2 };

/// Sign of the counter after a word plus the per-letter counter effects
/// that follow it.
struct ActionTuple {
  std::uint8_t sign = 0;
  std::vector<Effect> effects;  // one entry per alphabet letter

  friend bool operator==(const ActionTuple&, const ActionTuple&) = default;
  friend auto operator<=>(const ActionTuple&, const ActionTuple&) = default;
};

struct ActionTupleHash {
  std::size_t operator()(const ActionTuple& t) const noexcept;
};

/// `(0,+1,?)` with `?` for unknown effects.
std::string format_action(const ActionTuple& t);

/// Compatible per letter (unknowns match anything), or different signs.
/// Reflexive and symmetric, not transitive.
bool act_similar(const ActionTuple& a, const ActionTuple& b);

struct AnnotatedLetter {
  Letter base = 0;
  std::uint8_t sign = 0;

  friend bool operator==(const AnnotatedLetter&, const AnnotatedLetter&) = default;
};

/// Letters of the learned DFA: every base letter annotated with a counter
/// sign, followed by the action tuples. Letter order (used by RPNI's llex
/// order): a⁰, a¹, b⁰, b¹, ..., then the actions in the order given.
class EnrichedAlphabet {
 public:
  EnrichedAlphabet() = default;
  EnrichedAlphabet(const Alphabet& base, std::vector<ActionTuple> actions);

  std::size_t base_size() const { return base_size_; }
  const std::vector<ActionTuple>& actions() const { return actions_; }
  const Alphabet& letters() const { return letters_; }

  Letter annotated(Letter base, std::uint8_t sign) const { return 2 * base + sign; }
  Letter annotated(AnnotatedLetter l) const { return annotated(l.base, l.sign); }
  Letter action(std::size_t index) const { return static_cast<Letter>(2 * base_size_ + index); }

  bool is_action(Letter l) const { return l >= 2 * base_size_; }
  AnnotatedLetter annotated_of(Letter l) const { return {l / 2, static_cast<std::uint8_t>(l % 2)}; }
  const ActionTuple& action_of(Letter l) const { return actions_.at(l - 2 * base_size_); }

 private:
  std::size_t base_size_ = 0;
  std::vector<ActionTuple> actions_;
  Alphabet letters_;
};

/// Act(w). Throws InputError when ce has no value for w.
ActionTuple compute_act(const Word& w, const CounterMap& ce, const Alphabet& alphabet);

/// Enc(w): each letter annotated with the sign of the counter before it.
/// Throws InputError when a strict prefix of w has no counter value.
std::vector<AnnotatedLetter> encode_word(const Word& w, const CounterMap& ce);

struct EnrichedSample {
  SampleSet sample;  // words over alphabet.letters()
  EnrichedAlphabet alphabet;
};

/// Ŝ+ = Enc(S+) ∪ {Enc(w)·Act(w)}, Ŝ− = Enc(S−) ∪ {Enc(w)·op | op ≁ Act(w)}
/// over w ∈ pref(S). Actions are indexed in first-seen order along pref(S)
/// sorted by llex. Throws InconsistentSample naming the two source
/// prefixes if a word would be both positive and negative; throws
/// InputError if ce does not validate against the sample.
EnrichedSample enrich_sample(const SampleSet& sample, const CounterMap& ce, const Alphabet& alphabet);

/// Reads a DROCA off a DFA over the enriched alphabet. An edge q -σ^s-> q'
/// becomes δ_s(q, σ) = (q', c) where c is the σ-effect of the first action
/// edge leaving q (in action order) whose sign is s and whose σ-effect is
/// known. Action edges themselves are dropped.
///
/// Throws ExtractionError when no such action edge exists and
/// InvariantViolation when two candidate actions disagree on σ.
Droca const_oca(const Dfa& hat_dfa, const EnrichedAlphabet& enriched, const Alphabet& alphabet);

struct OpniOptions {
  Deadline deadline;
  /// Re-check the learned DFA and DROCA against the sample after each run
  /// (throws InvariantViolation on failure).
  bool check_invariants = false;
  RpniStats* rpni_stats = nullptr;
};

/// Intermediate artefacts of one OPNI run.
struct OpniTrace {
  EnrichedSample enriched;
  Dfa hat_dfa;
  Droca droca;
};

OpniTrace opni_trace(const SampleSet& sample, const CounterMap& ce, const Alphabet& alphabet,
                     const OpniOptions& options = {});
Droca opni(const SampleSet& sample, const CounterMap& ce, const Alphabet& alphabet,
           const OpniOptions& options = {});

/// Accepts S+, rejects S−, and reproduces ce on every word of pref(S).
bool check_consistency(const Droca& machine, const SampleSet& sample, const CounterMap& ce);

/// For any two words of pref(S) whose encodings reach the same state of
/// `hat_dfa`, their action tuples are similar.
bool merged_prefixes_similar(const Dfa& hat_dfa, const EnrichedAlphabet& enriched,
                             const SampleSet& sample, const CounterMap& ce, const Alphabet& alphabet);

/// Visibly-counter variant: counter values come from the partition, so the
/// sample is only annotated (no action letters) and the extraction takes
/// each transition's action from its letter. Every sample word must have a
/// valid run (no return letter at counter zero).
struct VocaTrace {
  Dfa hat_dfa;
  Voca voca;
};

VocaTrace opni_voca_trace(const SampleSet& sample, const Partition& partition, const Alphabet& alphabet,
                          const OpniOptions& options = {});
Voca opni_voca(const SampleSet& sample, const Partition& partition, const Alphabet& alphabet,
               const OpniOptions& options = {});

}  // namespace ocalearn
