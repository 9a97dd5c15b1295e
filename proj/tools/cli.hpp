#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ocalearn::cli {

enum ExitCode : int { kOk = 0, kNegative = 1, kInputError = 2, kTimeout = 3 };

struct Io {
  std::ostream& out;
  std::ostream& err;
};

int cmd_generate(const std::string& kind, std::size_t n, std::size_t alphabet_size, std::uint64_t seed,
                 const std::optional<std::string>& out_path, Io io);

/// With a counter file: OPNI. Without: RPNI, writing a DFA.
int cmd_learn_passive(const std::string& sample_path, const std::optional<std::string>& ce_path,
                      const std::optional<std::string>& out_path, Io io);

struct ActiveOptions {
  std::optional<std::string> kind;  // inferred from the target file when absent
  double timeout_s = 0;             // 0: unlimited
  std::size_t max_rounds = 200;
  std::optional<std::string> out_path;
};

int cmd_learn_active(const std::string& target_path, const ActiveOptions& options, Io io);

struct CheckOptions {
  std::size_t max_len = 14;
  std::optional<std::string> sample_path;
  std::optional<std::string> ce_path;
};

/// Compares two machines, or a machine against a sample when `other` is
/// empty and a sample is given.
int cmd_check(const std::string& path, const std::optional<std::string>& other, const CheckOptions& options, Io io);

struct BenchOptions {
  std::string kind = "droca";
  std::vector<std::size_t> states{2, 3, 4, 5, 6, 7, 8};
  std::vector<std::size_t> alphabets{2, 3};
  std::size_t per_cell = 5;
  double timeout_s = 60;
  std::size_t max_rounds = 200;
  std::uint64_t seed = 1;
  std::size_t verify_len = 0;  // brute-force check of successes; 0: off
  std::string out_csv = "bench.csv";
  std::size_t threads = 0;     // 0: hardware concurrency (capped by OCALEARN_THREADS)
};

inline constexpr const char* kBenchHeader =
    "kind,n_states,alphabet_size,seed,success,wall_ms,eq_queries,mq_count,cv_count,learned_states,"
    "longest_cex_len,table_rows,table_cols";

int cmd_bench(const BenchOptions& options, Io io);

/// `2:8` (inclusive range) or `4,6,8`.
std::vector<std::size_t> parse_size_list(const std::string& text);

/// Summary file path derived from the record CSV path.
std::string summary_path(const std::string& csv_path);

/// Full command-line entry point.
int run(int argc, const char* const* argv, Io io);

}  // namespace ocalearn::cli
