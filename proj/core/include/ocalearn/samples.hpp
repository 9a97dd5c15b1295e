#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>

#include "ocalearn/alphabet.hpp"

namespace ocalearn {

/// Length-lexicographic order: shorter words first, equal lengths compared
/// letter by letter under the alphabet order (letter index order).
std::strong_ordering llex_compare(const Word& u, const Word& v);
/// Same, rejecting letters foreign to `alphabet` with InputError.
std::strong_ordering llex_compare(const Word& u, const Word& v, const Alphabet& alphabet);

using WordPair = std::pair<Word, Word>;
/// Lexicographic on the components, each compared with llex_compare.
std::strong_ordering llex_pair_compare(const WordPair& a, const WordPair& b);
std::strong_ordering llex_pair_compare(const WordPair& a, const WordPair& b, const Alphabet& alphabet);

struct LlexLess {
  bool operator()(const Word& u, const Word& v) const { return llex_compare(u, v) < 0; }
};

using WordSet = std::set<Word, LlexLess>;

/// Every prefix (epsilon and the words themselves included) of every word.
/// The empty input yields the empty set.
template <class Range>
WordSet prefixes(const Range& words) {
  WordSet out;
  for (const Word& w : words) {
    for (std::size_t n = 0; n <= w.size(); ++n) {
      out.emplace(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(n));
    }
  }
  return out;
}

/// Positive and negative words. The two sets never intersect: adding a word
/// already present with the opposite label throws InconsistentSample.
class SampleSet {
 public:
  SampleSet() = default;
  SampleSet(std::initializer_list<Word> positives, std::initializer_list<Word> negatives);

  void add_positive(Word w);
  void add_negative(Word w);
  void add(Word w, bool positive) { positive ? add_positive(std::move(w)) : add_negative(std::move(w)); }

  const WordSet& positives() const { return positives_; }
  const WordSet& negatives() const { return negatives_; }
  std::size_t size() const { return positives_.size() + negatives_.size(); }
  bool empty() const { return size() == 0; }

  /// pref(S+ ∪ S−).
  WordSet prefix_closure() const;

  friend bool operator==(const SampleSet&, const SampleSet&) = default;

 private:
  WordSet positives_;
  WordSet negatives_;
};

/// Absolute counter values for a set of words.
class CounterMap {
 public:
  CounterMap() = default;

  void set(Word w, std::uint64_t value) { values_[std::move(w)] = value; }
  bool contains(const Word& w) const { return values_.count(w) != 0; }
  std::optional<std::uint64_t> find(const Word& w) const;
  /// Throws InputError when `w` has no value.
  std::uint64_t at(const Word& w) const;
  std::size_t size() const { return values_.size(); }

  const std::unordered_map<Word, std::uint64_t, WordHash>& values() const { return values_; }

  /// Throws InputError unless the map covers pref(sample), assigns 0 to
  /// epsilon, and moves by at most one per letter without dropping below
  /// zero (a step of -1 needs a positive predecessor).
  void validate(const SampleSet& sample) const;
  /// Step-size and non-negativity checks only, over pairs (w, wσ) in the map.
  void validate_steps() const;

 private:
  std::unordered_map<Word, std::uint64_t, WordHash> values_;
};

}  // namespace ocalearn
