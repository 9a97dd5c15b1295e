#include "ocalearn/randgen.hpp"

#include "ocalearn/errors.hpp"

namespace ocalearn {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void check_config(const GenConfig& c, std::size_t min_alphabet) {
  if (c.n_states < 1) throw InputError("n_states must be at least 1");
  if (c.alphabet_size < min_alphabet) {
    throw InputError("alphabet size must be at least " + std::to_string(min_alphabet));
  }
  if (c.alphabet_size > 26) throw InputError("alphabet size must be at most 26");
  if (c.max_restarts < 1) throw InputError("max_restarts must be at least 1");
}

// Returns false when F = ∅ or F = Q.
bool draw_finals(Droca& m, Rng& rng) {
  std::size_t count = 0;
  for (StateId q = 0; q < m.num_states(); ++q) {
    if (rng.coin()) {
      m.set_final(q);
      ++count;
    }
  }
  return count != 0 && count != m.num_states();
}

StateId draw_state(Rng& rng, std::size_t n) { return static_cast<StateId>(rng.uniform_below(n)); }

bool all_reachable(const Droca& m, const GenConfig& c) {
  const std::uint64_t cutoff = c.reachability_cutoff.value_or(2 * static_cast<std::uint64_t>(c.n_states));
  return reachable_states(m, cutoff).size() == m.num_states();
}

class RestartBudget {
 public:
  RestartBudget(const GenConfig& c, GenStats* stats) : max_(c.max_restarts), stats_(stats) {
    if (stats_) stats_->restarts = 0;
  }
  void restart() {
    ++count_;
    if (stats_) stats_->restarts = count_;
    if (count_ >= max_) throw GenerationError("random generation gave up after " + std::to_string(count_) + " restarts");
  }

 private:
  std::size_t max_;
  std::size_t count_ = 0;
  GenStats* stats_;
};

}  // namespace

std::uint64_t Rng::uniform_below(std::uint64_t n) {
  if (n == 0) throw InputError("uniform_below(0)");
  // Largest multiple of n representable, as 2^64 - (2^64 mod n).
  const std::uint64_t limit = -(-n % n);
  for (;;) {
    const std::uint64_t x = next();
    if (limit == 0 || x < limit) return x % n;
  }
}

Droca random_droca(const GenConfig& config, Rng& rng, GenStats* stats) {
  check_config(config, 1);
  const std::size_t n = config.n_states;
  const Alphabet alphabet = Alphabet::latin(config.alphabet_size);
  RestartBudget budget(config, stats);
  for (;;) {
    Droca m(alphabet, n, 0);
    if (!draw_finals(m, rng)) {
      budget.restart();
      continue;
    }
    for (StateId q = 0; q < n; ++q) {
      for (Letter a = 0; a < alphabet.size(); ++a) {
        const StateId t0 = draw_state(rng, n);
        const auto c0 = static_cast<CounterAction>(rng.uniform_below(2));
        m.set_zero(q, a, {t0, c0});
        const StateId t1 = draw_state(rng, n);
        const auto c1 = static_cast<CounterAction>(static_cast<int>(rng.uniform_below(3)) - 1);
        m.set_positive(q, a, {t1, c1});
      }
    }
    if (!all_reachable(m, config)) {
      budget.restart();
      continue;
    }
    return m;
  }
}

Droca random_droca(const GenConfig& config) {
  Rng rng(config.seed);
  return random_droca(config, rng);
}

Voca random_voca(const GenConfig& config, Rng& rng, GenStats* stats) {
  check_config(config, 2);
  const std::size_t n = config.n_states;
  const Alphabet alphabet = Alphabet::latin(config.alphabet_size);
  RestartBudget budget(config, stats);
  for (;;) {
    Droca m(alphabet, n, 0);
    if (!draw_finals(m, rng)) {
      budget.restart();
      continue;
    }
    Partition partition(alphabet.size());
    bool has_call = false, has_ret = false;
    for (auto& kind : partition) {
      kind = static_cast<LetterKind>(rng.uniform_below(3));
      has_call |= kind == LetterKind::Call;
      has_ret |= kind == LetterKind::Return;
    }
    if (!has_call || !has_ret) {
      budget.restart();
      continue;
    }
    for (StateId q = 0; q < n; ++q) {
      for (Letter a = 0; a < alphabet.size(); ++a) {
        const CounterAction c = voca_letter_effect(partition, a);
        if (partition[a] != LetterKind::Return) m.set_zero(q, a, {draw_state(rng, n), c});
        m.set_positive(q, a, {draw_state(rng, n), c});
      }
    }
    if (!all_reachable(m, config)) {
      budget.restart();
      continue;
    }
    return Voca(std::move(m), std::move(partition));
  }
}

Voca random_voca(const GenConfig& config) {
  Rng rng(config.seed);
  return random_voca(config, rng);
}

std::uint64_t instance_seed(std::uint64_t master, std::uint64_t n, std::uint64_t alphabet_size, std::uint64_t idx) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ n);
  h = splitmix64(h ^ alphabet_size);
  return splitmix64(h ^ idx);
}

}  // namespace ocalearn
