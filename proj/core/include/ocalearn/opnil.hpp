#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

#include "ocalearn/automata.hpp"
#include "ocalearn/observation_table.hpp"
#include "ocalearn/teacher.hpp"

namespace ocalearn {

struct LearnLimits {
  /// Equivalence rounds; 0 breaches the limit before the first round.
  std::size_t max_rounds = 200;
  /// Wall-clock budget for the whole run; zero means unlimited.
  std::chrono::milliseconds timeout{0};
  /// Re-check every OPNI result against its sample.
  bool check_invariants = true;
};

struct RunReport {
  std::size_t iterations = 0;
  std::uint64_t eq_queries = 0;
  std::uint64_t mq_count = 0;
  std::uint64_t cv_count = 0;
  std::size_t act_entries = 0;
  std::size_t learned_states = 0;  // states of the last OPNI result, before completion
  std::size_t longest_cex_len = 0;
  std::size_t table_rows = 0;      // |R ∪ RΣ|
  std::size_t table_cols = 0;      // |C|
  std::uint64_t d = 0;
  bool success = false;
  bool presumed = false;           // ended on a PresumedEquivalent verdict
  bool timed_out = false;          // wall-clock or round limit reached
  double wall_ms = 0;
  std::string error;               // set when the run failed for another reason
};

struct DrocaLearnResult {
  std::optional<Droca> hypothesis;  // completed with a sink
  RunReport report;
};

struct VocaLearnResult {
  std::optional<Voca> hypothesis;
  RunReport report;
};

/// Active learning loop: close and consistify the table, extract a sample,
/// run OPNI, ask an equivalence query, and feed counterexamples back.
/// Never throws for budget breaches or learning failures; see the report.
DrocaLearnResult learn_droca(Teacher& teacher, const LearnLimits& limits = {});
/// Same loop over a VOCA target; counter values come from the partition.
VocaLearnResult learn_voca(Teacher& teacher, const LearnLimits& limits = {});

}  // namespace ocalearn
