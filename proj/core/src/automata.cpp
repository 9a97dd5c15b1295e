#include "ocalearn/automata.hpp"

#include <deque>
#include <limits>
#include <string>
#include <unordered_set>

#include "ocalearn/errors.hpp"

namespace ocalearn {

namespace {

void check_state(std::size_t num_states, StateId q, const char* what) {
  if (q >= num_states) {
    throw InputError(std::string(what) + " state " + std::to_string(q) + " out of range (" +
                     std::to_string(num_states) + " states)");
  }
}

}  // namespace

// --- Dfa ---------------------------------------------------------------------

Dfa::Dfa(Alphabet alphabet, std::size_t num_states, StateId initial)
    : alphabet_(std::move(alphabet)),
      initial_(initial),
      delta_(num_states * alphabet_.size(), kNoState),
      finals_(num_states, 0) {
  if (num_states == 0) throw InputError("a DFA needs at least one state");
  check_state(num_states, initial, "initial");
}

std::size_t Dfa::index(StateId q, Letter a) const {
  check_state(num_states(), q, "source");
  if (!alphabet_.contains(a)) throw InputError("letter outside the DFA alphabet");
  return static_cast<std::size_t>(q) * alphabet_.size() + a;
}

void Dfa::set_final(StateId q, bool final) {
  check_state(num_states(), q, "final");
  finals_[q] = final ? 1 : 0;
}

std::optional<StateId> Dfa::next(StateId q, Letter a) const {
  StateId t = delta_[index(q, a)];
  if (t == kNoState) return std::nullopt;
  return t;
}

void Dfa::set_transition(StateId from, Letter a, StateId to) {
  check_state(num_states(), to, "target");
  delta_[index(from, a)] = to;
}

void Dfa::clear_transition(StateId from, Letter a) { delta_[index(from, a)] = kNoState; }

std::optional<StateId> Dfa::run(const Word& w) const {
  StateId q = initial_;
  const std::size_t k = alphabet_.size();
  for (Letter a : w) {
    if (a >= k) throw InputError("letter outside the DFA alphabet");
    q = delta_[static_cast<std::size_t>(q) * k + a];
    if (q == kNoState) return std::nullopt;
  }
  return q;
}

bool Dfa::accepts(const Word& w) const {
  auto q = run(w);
  return q && finals_[*q] != 0;
}

std::size_t Dfa::num_transitions() const {
  std::size_t n = 0;
  for (StateId t : delta_) n += t != kNoState;
  return n;
}

Dfa canonical(const Dfa& dfa) {
  const std::size_t k = dfa.alphabet().size();
  std::vector<StateId> order;
  std::vector<StateId> renumber(dfa.num_states(), kNoState);
  renumber[dfa.initial()] = 0;
  order.push_back(dfa.initial());
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (Letter a = 0; a < k; ++a) {
      if (auto t = dfa.next(order[i], a); t && renumber[*t] == kNoState) {
        renumber[*t] = static_cast<StateId>(order.size());
        order.push_back(*t);
      }
    }
  }
  Dfa out(dfa.alphabet(), order.size(), 0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    out.set_final(static_cast<StateId>(i), dfa.is_final(order[i]));
    for (Letter a = 0; a < k; ++a) {
      if (auto t = dfa.next(order[i], a)) out.set_transition(static_cast<StateId>(i), a, renumber[*t]);
    }
  }
  return out;
}

// --- Droca -------------------------------------------------------------------

CounterAction counter_action_from_int(int v) {
  switch (v) {
    case -1: return CounterAction::Decrement;
    case 0: return CounterAction::Keep;
    case 1: return CounterAction::Increment;
    default: throw InputError("counter action must be -1, 0 or +1, got " + std::to_string(v));
  }
}

Droca::Droca(Alphabet alphabet, std::size_t num_states, StateId initial)
    : alphabet_(std::move(alphabet)),
      initial_(initial),
      delta0_(num_states * alphabet_.size()),
      delta1_(num_states * alphabet_.size()),
      finals_(num_states, 0) {
  if (num_states == 0) throw InputError("a DROCA needs at least one state");
  check_state(num_states, initial, "initial");
}

std::size_t Droca::index(StateId q, Letter a) const {
  check_state(num_states(), q, "source");
  if (!alphabet_.contains(a)) throw InputError("letter outside the DROCA alphabet");
  return static_cast<std::size_t>(q) * alphabet_.size() + a;
}

void Droca::check_move(StateId, Letter, const Move& move) const {
  check_state(num_states(), move.target, "target");
}

void Droca::set_final(StateId q, bool final) {
  check_state(num_states(), q, "final");
  finals_[q] = final ? 1 : 0;
}

std::optional<Move> Droca::zero(StateId q, Letter a) const {
  const Move& m = delta0_[index(q, a)];
  if (m.target == kNoState) return std::nullopt;
  return m;
}

std::optional<Move> Droca::positive(StateId q, Letter a) const {
  const Move& m = delta1_[index(q, a)];
  if (m.target == kNoState) return std::nullopt;
  return m;
}

void Droca::set_zero(StateId from, Letter a, Move move) {
  if (move.action == CounterAction::Decrement) {
    throw InputError("zero-counter transition from state " + std::to_string(from) +
                     " cannot decrement");
  }
  check_move(from, a, move);
  delta0_[index(from, a)] = move;
}

void Droca::set_positive(StateId from, Letter a, Move move) {
  check_move(from, a, move);
  delta1_[index(from, a)] = move;
}

void Droca::clear_zero(StateId from, Letter a) { delta0_[index(from, a)] = Move{}; }
void Droca::clear_positive(StateId from, Letter a) { delta1_[index(from, a)] = Move{}; }

StateId Droca::add_state() {
  const std::size_t k = alphabet_.size();
  delta0_.resize(delta0_.size() + k);
  delta1_.resize(delta1_.size() + k);
  finals_.push_back(0);
  return static_cast<StateId>(finals_.size() - 1);
}

RunResult Droca::run(const Word& w) const {
  CompletedRun run;
  run.configurations.reserve(w.size() + 1);
  Configuration c{initial_, 0};
  run.configurations.push_back(c);
  for (std::size_t i = 0; i < w.size(); ++i) {
    auto m = step(c.state, c.counter, w[i]);
    if (!m) return StuckRun{i};
    c.state = m->target;
    c.counter = static_cast<std::uint64_t>(static_cast<std::int64_t>(c.counter) + to_int(m->action));
    run.configurations.push_back(c);
  }
  return run;
}

std::optional<Configuration> Droca::final_configuration(const Word& w) const {
  const std::size_t k = alphabet_.size();
  Configuration c{initial_, 0};
  for (Letter a : w) {
    if (a >= k) throw InputError("letter outside the DROCA alphabet");
    const std::size_t i = static_cast<std::size_t>(c.state) * k + a;
    const Move& m = c.counter == 0 ? delta0_[i] : delta1_[i];
    if (m.target == kNoState) return std::nullopt;
    c.state = m.target;
    c.counter = static_cast<std::uint64_t>(static_cast<std::int64_t>(c.counter) + to_int(m.action));
  }
  return c;
}

bool Droca::accepts(const Word& w) const {
  auto c = final_configuration(w);
  return c && finals_[c->state] != 0;
}

std::optional<std::uint64_t> Droca::counter_effect(const Word& w) const {
  auto c = final_configuration(w);
  if (!c) return std::nullopt;
  return c->counter;
}

bool Droca::is_complete() const {
  for (const Move& m : delta0_) if (m.target == kNoState) return false;
  for (const Move& m : delta1_) if (m.target == kNoState) return false;
  return true;
}

// --- Voca --------------------------------------------------------------------

CounterAction voca_letter_effect(const Partition& partition, Letter a) {
  if (a >= partition.size()) throw InputError("letter " + std::to_string(a) + " is not classified");
  switch (partition[a]) {
    case LetterKind::Call: return CounterAction::Increment;
    case LetterKind::Return: return CounterAction::Decrement;
    case LetterKind::Internal: return CounterAction::Keep;
  }
  return CounterAction::Keep;
}

std::optional<std::uint64_t> visible_counter(const Partition& partition, const Word& w) {
  std::uint64_t n = 0;
  for (Letter a : w) {
    switch (voca_letter_effect(partition, a)) {
      case CounterAction::Increment: ++n; break;
      case CounterAction::Decrement:
        if (n == 0) return std::nullopt;
        --n;
        break;
      case CounterAction::Keep: break;
    }
  }
  return n;
}

Voca::Voca(Droca base, Partition partition) : base_(std::move(base)), partition_(std::move(partition)) {
  const std::size_t k = base_.alphabet().size();
  if (partition_.size() != k) {
    throw InputError("partition classifies " + std::to_string(partition_.size()) +
                     " letters, alphabet has " + std::to_string(k));
  }
  for (StateId q = 0; q < base_.num_states(); ++q) {
    for (Letter a = 0; a < k; ++a) {
      const CounterAction expected = voca_letter_effect(partition_, a);
      const std::string& sym = base_.alphabet().symbol(a);
      if (auto m = base_.zero(q, a)) {
        if (partition_[a] == LetterKind::Return) {
          throw InputError("return letter '" + sym + "' has a zero-counter transition");
        }
        if (m->action != expected) {
          throw InputError("zero-counter transition on '" + sym + "' from state " +
                           std::to_string(q) + " disagrees with the partition");
        }
      }
      if (auto m = base_.positive(q, a); m && m->action != expected) {
        throw InputError("positive-counter transition on '" + sym + "' from state " +
                         std::to_string(q) + " disagrees with the partition");
      }
    }
  }
}

bool Voca::is_complete() const {
  const std::size_t k = alphabet().size();
  for (StateId q = 0; q < num_states(); ++q) {
    for (Letter a = 0; a < k; ++a) {
      if (!base_.positive(q, a)) return false;
      if (partition_[a] != LetterKind::Return && !base_.zero(q, a)) return false;
    }
  }
  return true;
}

// --- Utilities ---------------------------------------------------------------

std::set<StateId> reachable_states(const Droca& machine, std::uint64_t counter_cutoff) {
  struct Hash {
    std::size_t operator()(const Configuration& c) const noexcept {
      return std::hash<std::uint64_t>{}((c.counter << 20) ^ c.state);
    }
  };
  std::set<StateId> seen_states;
  std::unordered_set<Configuration, Hash> seen;
  std::deque<Configuration> queue;
  const Configuration start{machine.initial(), 0};
  seen.insert(start);
  queue.push_back(start);
  const std::size_t k = machine.alphabet().size();
  while (!queue.empty()) {
    Configuration c = queue.front();
    queue.pop_front();
    seen_states.insert(c.state);
    if (c.counter > counter_cutoff) continue;
    for (Letter a = 0; a < k; ++a) {
      auto m = machine.step(c.state, c.counter, a);
      if (!m) continue;
      Configuration n{m->target,
                      static_cast<std::uint64_t>(static_cast<std::int64_t>(c.counter) + to_int(m->action))};
      if (seen.insert(n).second) queue.push_back(n);
    }
  }
  return seen_states;
}

Droca complete_with_sink(const Droca& machine) {
  Droca out = machine;
  const StateId sink = out.add_state();
  const std::size_t k = out.alphabet().size();
  for (StateId q = 0; q < out.num_states(); ++q) {
    for (Letter a = 0; a < k; ++a) {
      if (!out.zero(q, a)) out.set_zero(q, a, Move{sink, CounterAction::Keep});
      if (!out.positive(q, a)) out.set_positive(q, a, Move{sink, CounterAction::Keep});
    }
  }
  return out;
}

Voca complete_with_sink(const Voca& machine) {
  Droca out = machine.base();
  const Partition& part = machine.partition();
  const StateId sink = out.add_state();
  const std::size_t k = out.alphabet().size();
  for (StateId q = 0; q < out.num_states(); ++q) {
    for (Letter a = 0; a < k; ++a) {
      const CounterAction c = voca_letter_effect(part, a);
      if (part[a] != LetterKind::Return && !out.zero(q, a)) out.set_zero(q, a, Move{sink, c});
      if (!out.positive(q, a)) out.set_positive(q, a, Move{sink, c});
    }
  }
  return Voca(std::move(out), part);
}

}  // namespace ocalearn
