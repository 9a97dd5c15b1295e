#include "ocalearn/opni.hpp"

#include <sstream>
#include <unordered_map>

#include "ocalearn/errors.hpp"

namespace ocalearn {

namespace {

std::uint8_t sgn(std::uint64_t n) { return n == 0 ? 0 : 1; }

Effect effect_from_diff(std::int64_t d) {
  switch (d) {
    case -1: return Effect::Decrement;
    case 0: return Effect::Keep;
    case 1: return Effect::Increment;
    default: throw InputError("counter values of consecutive prefixes differ by more than one");
  }
}

Word to_letters(const std::vector<AnnotatedLetter>& enc, const EnrichedAlphabet& enriched) {
  Word out;
  out.reserve(enc.size() + 1);
  for (const AnnotatedLetter& l : enc) out.push_back(enriched.annotated(l));
  return out;
}

// Annotated-only alphabet used by the visibly-counter variant.
Alphabet annotated_letters(const Alphabet& base) {
  std::vector<std::string> names;
  names.reserve(2 * base.size());
  for (const auto& s : base.symbols()) {
    names.push_back(s + "0");
    names.push_back(s + "1");
  }
  return Alphabet(std::move(names));
}

std::string describe(const Alphabet& alphabet, const Word& w) { return "'" + alphabet.format_word(w) + "'"; }

}  // namespace

std::size_t ActionTupleHash::operator()(const ActionTuple& t) const noexcept {
  std::uint64_t h = 1469598103934665603ULL ^ t.sign;
  for (Effect e : t.effects) {
    h ^= static_cast<std::uint64_t>(static_cast<std::int8_t>(e) + 3);
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

std::string format_action(const ActionTuple& t) {
  std::string out = "(" + std::to_string(t.sign);
  for (Effect e : t.effects) {
    switch (e) {
      case Effect::Decrement: out += ",-1"; break;
      case Effect::Keep: out += ",0"; break;
      case Effect::Increment: out += ",+1"; break;
      case Effect::Unknown: out += ",?"; break;
    }
  }
  return out + ")";
}

bool act_similar(const ActionTuple& a, const ActionTuple& b) {
  if (a.sign != b.sign) return true;
  if (a.effects.size() != b.effects.size()) return false;
  for (std::size_t i = 0; i < a.effects.size(); ++i) {
    const Effect x = a.effects[i], y = b.effects[i];
    if (x != Effect::Unknown && y != Effect::Unknown && x != y) return false;
  }
  return true;
}

EnrichedAlphabet::EnrichedAlphabet(const Alphabet& base, std::vector<ActionTuple> actions)
    : base_size_(base.size()), actions_(std::move(actions)) {
  std::vector<std::string> names;
  names.reserve(2 * base_size_ + actions_.size());
  for (const auto& s : base.symbols()) {
    names.push_back(s + "0");
    names.push_back(s + "1");
  }
  for (const ActionTuple& t : actions_) {
    if (t.effects.size() != base_size_) throw InputError("action tuple arity does not match the alphabet");
    names.push_back(format_action(t));
  }
  letters_ = Alphabet(std::move(names));
}

ActionTuple compute_act(const Word& w, const CounterMap& ce, const Alphabet& alphabet) {
  alphabet.validate(w);
  const auto base = ce.find(w);
  if (!base) throw InputError("compute_act: no counter value for " + describe(alphabet, w));
  ActionTuple t;
  t.sign = sgn(*base);
  t.effects.resize(alphabet.size(), Effect::Unknown);
  Word ext = w;
  ext.push_back(0);
  for (Letter a = 0; a < alphabet.size(); ++a) {
    ext.back() = a;
    if (auto v = ce.find(ext)) {
      t.effects[a] = effect_from_diff(static_cast<std::int64_t>(*v) - static_cast<std::int64_t>(*base));
    }
  }
  if (t.sign == 0) {
    for (Effect e : t.effects) {
      if (e == Effect::Decrement) throw InputError("counter decreases below zero after " + describe(alphabet, w));
    }
  }
  return t;
}

std::vector<AnnotatedLetter> encode_word(const Word& w, const CounterMap& ce) {
  std::vector<AnnotatedLetter> out;
  out.reserve(w.size());
  Word prefix;
  prefix.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    std::uint8_t sign = 0;
    if (i > 0) {
      auto v = ce.find(prefix);
      if (!v) throw InputError("encode_word: no counter value for a prefix of length " + std::to_string(i));
      sign = sgn(*v);
    }
    out.push_back({w[i], sign});
    prefix.push_back(w[i]);
  }
  return out;
}

EnrichedSample enrich_sample(const SampleSet& sample, const CounterMap& ce, const Alphabet& alphabet) {
  for (const Word& w : sample.positives()) alphabet.validate(w);
  for (const Word& w : sample.negatives()) alphabet.validate(w);
  ce.validate(sample);

  const WordSet pref = sample.prefix_closure();
  std::vector<const Word*> pref_words;
  std::vector<ActionTuple> act_of;  // parallel to pref_words
  std::vector<ActionTuple> actions;
  std::unordered_map<ActionTuple, std::size_t, ActionTupleHash> action_index;
  pref_words.reserve(pref.size());
  act_of.reserve(pref.size());
  for (const Word& w : pref) {
    ActionTuple t = compute_act(w, ce, alphabet);
    if (action_index.emplace(t, actions.size()).second) actions.push_back(t);
    pref_words.push_back(&w);
    act_of.push_back(std::move(t));
  }

  EnrichedSample out{SampleSet{}, EnrichedAlphabet(alphabet, actions)};
  const EnrichedAlphabet& ehat = out.alphabet;

  // Remember where each enriched word came from for diagnostics.
  struct Source {
    const Word* word;
    bool via_action;
  };
  std::unordered_map<Word, Source, WordHash> positive_source;
  auto source_text = [&](const Source& s) {
    return describe(alphabet, *s.word) + (s.via_action ? " (with its action)" : "");
  };
  auto add_positive = [&](Word hat, Source src) { positive_source.emplace(std::move(hat), src); };

  for (const Word& u : sample.positives()) add_positive(to_letters(encode_word(u, ce), ehat), {&u, false});
  std::vector<Word> encoded(pref_words.size());
  for (std::size_t i = 0; i < pref_words.size(); ++i) {
    encoded[i] = to_letters(encode_word(*pref_words[i], ce), ehat);
    Word hat = encoded[i];
    hat.push_back(ehat.action(action_index.at(act_of[i])));
    add_positive(std::move(hat), {pref_words[i], true});
  }

  std::vector<std::pair<Word, Source>> negatives;
  for (const Word& u : sample.negatives()) negatives.emplace_back(to_letters(encode_word(u, ce), ehat), Source{&u, false});
  for (std::size_t i = 0; i < pref_words.size(); ++i) {
    for (std::size_t j = 0; j < actions.size(); ++j) {
      if (act_similar(actions[j], act_of[i])) continue;
      Word hat = encoded[i];
      hat.push_back(ehat.action(j));
      negatives.emplace_back(std::move(hat), Source{pref_words[i], true});
    }
  }
  for (const auto& [hat, src] : negatives) {
    if (auto it = positive_source.find(hat); it != positive_source.end()) {
      throw InconsistentSample("enriched sample is inconsistent: positive from " + source_text(it->second) +
                               " collides with negative from " + source_text(src));
    }
  }
  for (auto& [hat, src] : positive_source) out.sample.add_positive(hat);
  for (auto& [hat, src] : negatives) out.sample.add_negative(std::move(hat));
  return out;
}

Droca const_oca(const Dfa& hat_dfa, const EnrichedAlphabet& enriched, const Alphabet& alphabet) {
  if (hat_dfa.alphabet().size() != enriched.letters().size()) {
    throw InputError("const_oca: DFA alphabet is not the enriched alphabet");
  }
  const std::size_t k = alphabet.size();
  Droca out(alphabet, hat_dfa.num_states(), hat_dfa.initial());
  for (StateId q = 0; q < hat_dfa.num_states(); ++q) {
    if (hat_dfa.is_final(q)) out.set_final(q);
  }
  std::vector<std::size_t> actions_at;
  for (StateId q = 0; q < hat_dfa.num_states(); ++q) {
    actions_at.clear();
    for (std::size_t i = 0; i < enriched.actions().size(); ++i) {
      if (hat_dfa.next(q, enriched.action(i))) actions_at.push_back(i);
    }
    for (Letter sigma = 0; sigma < k; ++sigma) {
      for (std::uint8_t sign = 0; sign < 2; ++sign) {
        auto target = hat_dfa.next(q, enriched.annotated(sigma, sign));
        if (!target) continue;
        std::optional<Effect> chosen;
        for (std::size_t i : actions_at) {
          const ActionTuple& t = enriched.actions()[i];
          if (t.sign != sign || t.effects[sigma] == Effect::Unknown) continue;
          if (!chosen) {
            chosen = t.effects[sigma];
          } else if (*chosen != t.effects[sigma]) {
            throw InvariantViolation("const_oca: state " + std::to_string(q) + " has action edges disagreeing on '" +
                                     alphabet.symbol(sigma) + "'");
          }
        }
        if (!chosen) {
          throw ExtractionError("const_oca: state " + std::to_string(q) + " has a '" + alphabet.symbol(sigma) +
                                (sign ? "1" : "0") + "' edge but no action edge with sign " +
                                std::to_string(sign) + " and a known effect");
        }
        const Move move{*target, static_cast<CounterAction>(static_cast<std::int8_t>(*chosen))};
        if (sign == 0) {
          if (move.action == CounterAction::Decrement) {
            throw ExtractionError("const_oca: zero-counter transition would decrement");
          }
          out.set_zero(q, sigma, move);
        } else {
          out.set_positive(q, sigma, move);
        }
      }
    }
  }
  return out;
}

bool check_consistency(const Droca& machine, const SampleSet& sample, const CounterMap& ce) {
  auto check_word = [&](const Word& w, bool positive) {
    RunResult r = machine.run(w);
    if (!completed(r)) {
      // A stuck run rejects, but the counter values of the stuck prefix
      // and beyond cannot match.
      return false;
    }
    const auto& configs = std::get<CompletedRun>(r).configurations;
    Word prefix;
    prefix.reserve(w.size());
    for (std::size_t i = 0; i <= w.size(); ++i) {
      auto expected = ce.find(prefix);
      if (!expected || *expected != configs[i].counter) return false;
      if (i < w.size()) prefix.push_back(w[i]);
    }
    return machine.is_final(configs.back().state) == positive;
  };
  for (const Word& w : sample.positives()) {
    if (!check_word(w, true)) return false;
  }
  for (const Word& w : sample.negatives()) {
    if (!check_word(w, false)) return false;
  }
  return true;
}

bool merged_prefixes_similar(const Dfa& hat_dfa, const EnrichedAlphabet& enriched, const SampleSet& sample,
                             const CounterMap& ce, const Alphabet& alphabet) {
  // Pairwise similarity inside one state with one sign means that every
  // letter has at most one known effect across the group.
  struct Group {
    std::vector<Effect> known;
  };
  std::unordered_map<std::uint64_t, Group> groups;  // key: state * 2 + sign
  for (const Word& w : sample.prefix_closure()) {
    auto state = hat_dfa.run(to_letters(encode_word(w, ce), enriched));
    if (!state) return false;
    const ActionTuple t = compute_act(w, ce, alphabet);
    Group& g = groups[static_cast<std::uint64_t>(*state) * 2 + t.sign];
    if (g.known.empty()) g.known.assign(t.effects.size(), Effect::Unknown);
    for (std::size_t i = 0; i < t.effects.size(); ++i) {
      if (t.effects[i] == Effect::Unknown) continue;
      if (g.known[i] == Effect::Unknown) {
        g.known[i] = t.effects[i];
      } else if (g.known[i] != t.effects[i]) {
        return false;
      }
    }
  }
  return true;
}

OpniTrace opni_trace(const SampleSet& sample, const CounterMap& ce, const Alphabet& alphabet,
                     const OpniOptions& options) {
  EnrichedSample enriched = enrich_sample(sample, ce, alphabet);
  RpniOptions rpni_options;
  rpni_options.deadline = options.deadline;
  rpni_options.stats = options.rpni_stats;
  Dfa hat = rpni(enriched.sample, enriched.alphabet.letters(), rpni_options);
  Droca droca = const_oca(hat, enriched.alphabet, alphabet);
  if (options.check_invariants) {
    for (const Word& w : sample.positives()) {
      if (!hat.accepts(to_letters(encode_word(w, ce), enriched.alphabet))) {
        throw InvariantViolation("opni: learned DFA rejects the encoding of positive " + describe(alphabet, w));
      }
    }
    for (const Word& w : sample.negatives()) {
      if (hat.accepts(to_letters(encode_word(w, ce), enriched.alphabet))) {
        throw InvariantViolation("opni: learned DFA accepts the encoding of negative " + describe(alphabet, w));
      }
    }
    if (!merged_prefixes_similar(hat, enriched.alphabet, sample, ce, alphabet)) {
      throw InvariantViolation("opni: a state of the learned DFA merges prefixes with dissimilar actions");
    }
    if (!check_consistency(droca, sample, ce)) {
      throw InvariantViolation("opni: extracted DROCA is not consistent with the sample");
    }
  }
  return OpniTrace{std::move(enriched), std::move(hat), std::move(droca)};
}

Droca opni(const SampleSet& sample, const CounterMap& ce, const Alphabet& alphabet, const OpniOptions& options) {
  return opni_trace(sample, ce, alphabet, options).droca;
}

VocaTrace opni_voca_trace(const SampleSet& sample, const Partition& partition, const Alphabet& alphabet,
                          const OpniOptions& options) {
  if (partition.size() != alphabet.size()) throw InputError("opni_voca: partition does not match the alphabet");
  const Alphabet letters = annotated_letters(alphabet);
  auto encode = [&](const Word& w) {
    alphabet.validate(w);
    Word out;
    out.reserve(w.size());
    std::uint64_t n = 0;
    for (Letter a : w) {
      out.push_back(2 * a + (n == 0 ? 0 : 1));
      switch (voca_letter_effect(partition, a)) {
        case CounterAction::Increment: ++n; break;
        case CounterAction::Decrement:
          if (n == 0) throw InputError("opni_voca: sample word " + describe(alphabet, w) + " has no valid run");
          --n;
          break;
        case CounterAction::Keep: break;
      }
    }
    return out;
  };
  SampleSet hat_sample;
  for (const Word& w : sample.positives()) hat_sample.add_positive(encode(w));
  for (const Word& w : sample.negatives()) hat_sample.add_negative(encode(w));

  RpniOptions rpni_options;
  rpni_options.deadline = options.deadline;
  rpni_options.stats = options.rpni_stats;
  Dfa hat = rpni(hat_sample, letters, rpni_options);

  Droca base(alphabet, hat.num_states(), hat.initial());
  for (StateId q = 0; q < hat.num_states(); ++q) {
    if (hat.is_final(q)) base.set_final(q);
    for (Letter a = 0; a < alphabet.size(); ++a) {
      const CounterAction c = voca_letter_effect(partition, a);
      if (auto t = hat.next(q, 2 * a)) {
        if (partition[a] == LetterKind::Return) {
          throw ExtractionError("opni_voca: return letter read at counter zero");
        }
        base.set_zero(q, a, Move{*t, c});
      }
      if (auto t = hat.next(q, 2 * a + 1)) base.set_positive(q, a, Move{*t, c});
    }
  }
  Voca voca(std::move(base), partition);
  if (options.check_invariants) {
    for (const Word& w : sample.positives()) {
      if (!voca.accepts(w)) throw InvariantViolation("opni_voca: learned VOCA rejects positive " + describe(alphabet, w));
    }
    for (const Word& w : sample.negatives()) {
      if (voca.accepts(w)) throw InvariantViolation("opni_voca: learned VOCA accepts negative " + describe(alphabet, w));
    }
  }
  return VocaTrace{std::move(hat), std::move(voca)};
}

Voca opni_voca(const SampleSet& sample, const Partition& partition, const Alphabet& alphabet,
               const OpniOptions& options) {
  return opni_voca_trace(sample, partition, alphabet, options).voca;
}

}  // namespace ocalearn
