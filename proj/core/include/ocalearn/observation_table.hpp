#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ocalearn/deadline.hpp"
#include "ocalearn/opni.hpp"
#include "ocalearn/samples.hpp"
#include "ocalearn/teacher.hpp"

namespace ocalearn {

enum class TableMode { Droca, Voca };

/// Membership cell value; `Undefined` marks words without a valid run.
enum class Memb : std::uint8_t { No = 0, Yes = 1, Undefined = 2 };

/// Memoises teacher answers so every word is asked at most once per kind.
/// In VOCA mode counter values come from the partition and invalid words
/// are never sent to the teacher.
class QueryCache {
 public:
  QueryCache(Teacher& teacher, TableMode mode);

  Memb memb(const Word& w);
  std::optional<std::uint64_t> ce(const Word& w);
  /// Act(w) with every effect known. DROCA mode only.
  const ActionTuple& act(const Word& w);

  std::size_t act_entries() const { return act_.size(); }
  Teacher& teacher() { return teacher_; }

 private:
  Teacher& teacher_;
  TableMode mode_;
  std::unordered_map<Word, Memb, WordHash> memb_;
  std::unordered_map<Word, std::optional<std::uint64_t>, WordHash> ce_;
  std::unordered_map<Word, ActionTuple, WordHash> act_;
};

struct RowSignature {
  std::optional<std::uint64_t> ce;
  std::vector<Memb> memb;         // one per column, in column order
  std::vector<ActionTuple> act;   // empty in VOCA mode

  friend bool operator==(const RowSignature&, const RowSignature&) = default;
};

/// Same counter value and, column by column, equal cells. In VOCA mode an
/// `Undefined` cell matches anything.
bool rows_match(const RowSignature& x, const RowSignature& y);

struct ConsistencyWitness {
  Word r;
  Word s;
  Letter a = 0;
  Word c;
};

/// Observation table (R, C, Memb, ce, Act) over a teacher. R and C keep
/// insertion order; R stays prefix-closed and C suffix-closed.
class ObservationTable {
 public:
  ObservationTable(Teacher& teacher, TableMode mode);

  TableMode mode() const { return mode_; }
  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<Word>& prefixes() const { return r_; }
  const std::vector<Word>& suffixes() const { return c_; }
  /// R ∪ RΣ in discovery order.
  const std::vector<Word>& rows() const { return rows_; }
  bool in_r(const Word& w) const { return r_set_.count(w) != 0; }
  bool in_rows(const Word& w) const { return rows_set_.count(w) != 0; }

  std::size_t num_rows() const { return rows_.size(); }
  std::size_t num_columns() const { return c_.size(); }

  /// Adds `r` to R. Its longest proper prefix must already be in R.
  /// Returns false if `r` was already present.
  bool add_prefix(const Word& r);
  /// Adds `c` to C. Its longest proper suffix must already be in C.
  bool add_suffix(const Word& c);

  /// Throws InputError unless r ∈ R ∪ RΣ.
  RowSignature row(const Word& r);
  Memb memb(const Word& w) { return cache_.memb(w); }
  std::optional<std::uint64_t> ce(const Word& w) { return cache_.ce(w); }

  /// First r' ∈ RΣ with ce(r') <= d whose row matches no row of R.
  std::optional<Word> is_d_closed(std::uint64_t d);
  std::optional<ConsistencyWitness> is_d_consistent(std::uint64_t d);

  /// Grows R and C until the table is d-closed and d-consistent.
  /// Throws BudgetExhausted when the deadline passes.
  void close_and_consistify(std::uint64_t d, const Deadline& deadline = {});

  /// S+ and S− from the Memb cells (Undefined cells dropped) and ce over
  /// pref(S).
  std::pair<SampleSet, CounterMap> extract_sample();

  /// Adds every prefix of `z` to R; returns max(d, ce of those prefixes).
  /// Throws InputError for the empty word.
  std::uint64_t process_counterexample(const Word& z, std::uint64_t d);

  QueryCache& cache() { return cache_; }

 private:
  void add_row(const Word& w);

  TableMode mode_;
  Alphabet alphabet_;
  QueryCache cache_;
  std::vector<Word> r_;
  std::unordered_set<Word, WordHash> r_set_;
  std::vector<Word> c_;
  std::unordered_set<Word, WordHash> c_set_;
  std::vector<Word> rows_;
  std::unordered_set<Word, WordHash> rows_set_;
};

}  // namespace ocalearn
