#include "ocalearn/samples.hpp"

#include <algorithm>

#include "ocalearn/errors.hpp"

namespace ocalearn {

std::strong_ordering llex_compare(const Word& u, const Word& v) {
  if (u.size() != v.size()) return u.size() <=> v.size();
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] != v[i]) return u[i] <=> v[i];
  }
  return std::strong_ordering::equal;
}

std::strong_ordering llex_compare(const Word& u, const Word& v, const Alphabet& alphabet) {
  alphabet.validate(u);
  alphabet.validate(v);
  return llex_compare(u, v);
}

std::strong_ordering llex_pair_compare(const WordPair& a, const WordPair& b) {
  if (auto c = llex_compare(a.first, b.first); c != 0) return c;
  return llex_compare(a.second, b.second);
}

std::strong_ordering llex_pair_compare(const WordPair& a, const WordPair& b, const Alphabet& alphabet) {
  for (const Word* w : {&a.first, &a.second, &b.first, &b.second}) alphabet.validate(*w);
  return llex_pair_compare(a, b);
}

SampleSet::SampleSet(std::initializer_list<Word> positives, std::initializer_list<Word> negatives) {
  for (const Word& w : positives) add_positive(w);
  for (const Word& w : negatives) add_negative(w);
}

void SampleSet::add_positive(Word w) {
  if (negatives_.count(w)) throw InconsistentSample("word is both a positive and a negative sample");
  positives_.insert(std::move(w));
}

void SampleSet::add_negative(Word w) {
  if (positives_.count(w)) throw InconsistentSample("word is both a positive and a negative sample");
  negatives_.insert(std::move(w));
}

WordSet SampleSet::prefix_closure() const {
  WordSet out = prefixes(positives_);
  WordSet neg = prefixes(negatives_);
  out.insert(neg.begin(), neg.end());
  return out;
}

std::optional<std::uint64_t> CounterMap::find(const Word& w) const {
  auto it = values_.find(w);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::uint64_t CounterMap::at(const Word& w) const {
  auto it = values_.find(w);
  if (it == values_.end()) {
    throw InputError("no counter value for a word of length " + std::to_string(w.size()));
  }
  return it->second;
}

void CounterMap::validate_steps() const {
  if (auto e = find(Word{}); e && *e != 0) throw InputError("counter value of the empty word must be 0");
  Word parent;
  for (const auto& [w, value] : values_) {
    if (w.empty()) continue;
    parent.assign(w.begin(), w.end() - 1);
    auto p = find(parent);
    if (!p) continue;
    const auto diff = static_cast<std::int64_t>(value) - static_cast<std::int64_t>(*p);
    if (diff < -1 || diff > 1) {
      throw InputError("counter values of consecutive prefixes differ by more than one");
    }
  }
}

void CounterMap::validate(const SampleSet& sample) const {
  WordSet pref = sample.prefix_closure();
  for (const Word& w : pref) {
    if (!contains(w)) {
      throw InputError("counter map has no value for a prefix of length " + std::to_string(w.size()));
    }
  }
  if (!pref.empty() && at(Word{}) != 0) throw InputError("counter value of the empty word must be 0");
  validate_steps();
}

}  // namespace ocalearn
