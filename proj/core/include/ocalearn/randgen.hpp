#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "ocalearn/automata.hpp"

namespace ocalearn {

/// Seeded source of uniform choices. Wraps std::mt19937_64, whose output
/// sequence is fixed by the C++ standard; bounded draws use rejection
/// sampling on the raw 64-bit output instead of library distributions, so
/// results do not depend on the standard library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, n). n must be positive.
  std::uint64_t uniform_below(std::uint64_t n);
  bool coin() { return (next() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

struct GenConfig {
  std::size_t n_states = 5;
  std::size_t alphabet_size = 2;
  std::uint64_t seed = 1;
  std::size_t max_restarts = 10'000;
  /// Counter cutoff for the reachability check; defaults to 2·n_states.
  std::optional<std::uint64_t> reachability_cutoff;
};

struct GenStats {
  std::size_t restarts = 0;
};

/// Random complete DROCA over Alphabet::latin(alphabet_size) with n_states
/// states, initial state 0, a proper non-empty set of finals, uniform
/// targets and actions, and every state reachable. Throws GenerationError
/// when the restart budget runs out and InputError for invalid configs.
Droca random_droca(const GenConfig& config, Rng& rng, GenStats* stats = nullptr);
Droca random_droca(const GenConfig& config);

/// Random complete VOCA: letters classified uniformly as call, return or
/// internal (at least one call and one return letter), transition targets
/// uniform, actions taken from the classes, no zero-counter transitions on
/// return letters. Needs alphabet_size >= 2.
Voca random_voca(const GenConfig& config, Rng& rng, GenStats* stats = nullptr);
Voca random_voca(const GenConfig& config);

/// Seed of the idx-th instance of a sweep cell: splitmix64 finalizer
/// folded over (master, n, alphabet_size, idx).
std::uint64_t instance_seed(std::uint64_t master, std::uint64_t n, std::uint64_t alphabet_size, std::uint64_t idx);

}  // namespace ocalearn
