#include <gtest/gtest.h>

#include "ocalearn/errors.hpp"
#include "ocalearn/observation_table.hpp"
#include "support.hpp"

using namespace ocalearn;
using test::w;

namespace {

constexpr Effect D = Effect::Decrement, K = Effect::Keep, I = Effect::Increment;

// R = {ε, a, b, ab}, C = {ε} over the a^n b^m DROCA.
ObservationTable droca_table(Teacher& t) {
  ObservationTable table(t, TableMode::Droca);
  for (const char* r : {"a", "b", "ab"}) table.add_prefix(w(r));
  return table;
}

// R = {ε, a, ab}, C = {ε} over the a^n b^m VOCA.
ObservationTable voca_table(Teacher& t) {
  ObservationTable table(t, TableMode::Voca);
  for (const char* r : {"a", "ab"}) table.add_prefix(w(r));
  return table;
}

}  // namespace

TEST(DrocaTable, CellsMatchTarget) {
  Teacher t(test::anbm_droca());
  ObservationTable table = droca_table(t);
  EXPECT_EQ(table.num_rows(), 9u);
  EXPECT_EQ(table.num_columns(), 1u);
  struct Expected {
    const char* word;
    std::uint64_t ce;
    Memb memb;
    ActionTuple act;
  };
  const std::vector<Expected> rows{
      {"", 0, Memb::No, {0, {I, K}}},   {"a", 1, Memb::No, {1, {I, D}}},   {"b", 0, Memb::Yes, {0, {K, K}}},
      {"ab", 0, Memb::No, {0, {K, K}}}, {"aa", 2, Memb::No, {1, {I, D}}},  {"ba", 0, Memb::No, {0, {K, K}}},
      {"bb", 0, Memb::Yes, {0, {K, K}}}, {"aba", 0, Memb::No, {0, {K, K}}}, {"abb", 0, Memb::Yes, {0, {K, K}}},
  };
  for (const Expected& e : rows) {
    const RowSignature row = table.row(w(e.word));
    EXPECT_EQ(row.ce, e.ce) << e.word;
    ASSERT_EQ(row.memb.size(), 1u);
    EXPECT_EQ(row.memb[0], e.memb) << e.word;
    EXPECT_EQ(row.act[0], e.act) << e.word;
  }
}

TEST(DrocaTable, RowOfA) {
  Teacher t(test::anbm_droca());
  ObservationTable table = droca_table(t);
  const RowSignature row = table.row(w("a"));
  EXPECT_EQ(row, (RowSignature{1, {Memb::No}, {{1, {I, D}}}}));
  EXPECT_NE(table.row(w("b")), table.row(w("ab")));
  EXPECT_THROW(table.row(w("bab")), InputError);
}

TEST(DrocaTable, OneClosedAndConsistent) {
  Teacher t(test::anbm_droca());
  ObservationTable table = droca_table(t);
  EXPECT_FALSE(table.is_d_closed(1));
  EXPECT_FALSE(table.is_d_consistent(1));
  const std::size_t rows = table.num_rows();
  table.close_and_consistify(1);
  EXPECT_EQ(table.num_rows(), rows);
  EXPECT_EQ(table.num_columns(), 1u);
}

TEST(DrocaTable, NotClosedWithOnlyEpsilon) {
  Teacher t(test::anbm_droca());
  ObservationTable table(t, TableMode::Droca);
  const auto witness = table.is_d_closed(1);
  ASSERT_TRUE(witness);
  EXPECT_TRUE(*witness == w("a") || *witness == w("b"));
}

TEST(DrocaTable, ExtractSample) {
  Teacher t(test::anbm_droca());
  ObservationTable table = droca_table(t);
  const auto [sample, ce] = table.extract_sample();
  EXPECT_EQ(sample.positives(), (WordSet{w("b"), w("bb"), w("abb")}));
  EXPECT_EQ(sample.negatives(), (WordSet{w(""), w("a"), w("ab"), w("aa"), w("ba"), w("aba")}));
  EXPECT_NO_THROW(ce.validate(sample));
  EXPECT_EQ(ce.at(w("aa")), 2u);
}

TEST(VocaTable, CellsMatchTarget) {
  Teacher t(test::anbm_voca());
  ObservationTable table = voca_table(t);
  EXPECT_EQ(table.num_rows(), 7u);
  struct Expected {
    const char* word;
    std::optional<std::uint64_t> ce;
    Memb memb;
  };
  const std::vector<Expected> rows{
      {"", 0, Memb::No},   {"a", 1, Memb::No},   {"ab", 0, Memb::Yes},          {"b", std::nullopt, Memb::Undefined},
      {"aa", 2, Memb::No}, {"aba", 1, Memb::No}, {"abb", std::nullopt, Memb::Undefined},
  };
  for (const Expected& e : rows) {
    const RowSignature row = table.row(w(e.word));
    EXPECT_EQ(row.ce, e.ce) << e.word;
    EXPECT_EQ(row.memb, std::vector<Memb>{e.memb}) << e.word;
    EXPECT_TRUE(row.act.empty());
  }
  EXPECT_EQ(table.cache().act_entries(), 0u);
  // Invalid words never reach the teacher.
  EXPECT_EQ(t.stats().mq, 5u);
  EXPECT_EQ(t.stats().cv, 0u);
}

TEST(VocaTable, OneClosedAndConsistent) {
  Teacher t(test::anbm_voca());
  ObservationTable table = voca_table(t);
  EXPECT_FALSE(table.is_d_closed(1));
  EXPECT_FALSE(table.is_d_consistent(1));
}

TEST(VocaTable, ExtractSampleDropsUndefined) {
  Teacher t(test::anbm_voca());
  ObservationTable table = voca_table(t);
  const auto [sample, ce] = table.extract_sample();
  EXPECT_EQ(sample.positives(), (WordSet{w("ab")}));
  EXPECT_EQ(sample.negatives(), (WordSet{w(""), w("a"), w("aa"), w("aba")}));
}

TEST(RowsMatch, UndefinedCellsMatchAnything) {
  const RowSignature x{1, {Memb::Undefined, Memb::Yes}, {}};
  const RowSignature y{1, {Memb::No, Memb::Yes}, {}};
  const RowSignature z{1, {Memb::No, Memb::No}, {}};
  EXPECT_TRUE(rows_match(x, y));
  EXPECT_FALSE(rows_match(y, z));
  EXPECT_FALSE(rows_match(x, RowSignature{2, {Memb::Undefined, Memb::Yes}, {}}));
}

TEST(Consistency, ConstructedViolation) {
  // ε and b look alike in column ε, but a accepts while ba rejects.
  Droca m(test::ab(), 4);
  for (StateId q = 0; q < 4; ++q) {
    for (Letter a = 0; a < 2; ++a) {
      m.set_zero(q, a, {2, CounterAction::Keep});
      m.set_positive(q, a, {2, CounterAction::Keep});
    }
  }
  m.set_zero(0, 0, {3, CounterAction::Keep});
  m.set_zero(0, 1, {1, CounterAction::Keep});
  m.set_final(3);
  Teacher t(m);
  ObservationTable table(t, TableMode::Droca);
  table.add_prefix(w("b"));
  ASSERT_EQ(table.row(w("")), table.row(w("b")));
  const auto wit = table.is_d_consistent(0);
  ASSERT_TRUE(wit);
  EXPECT_EQ(wit->r, w(""));
  EXPECT_EQ(wit->s, w("b"));
  EXPECT_EQ(wit->a, 0u);
  EXPECT_EQ(wit->c, w(""));
  table.close_and_consistify(0);
  EXPECT_FALSE(table.is_d_consistent(0));
  EXPECT_GT(table.num_columns(), 1u);
}

TEST(Consistency, SingleRowIsConsistent) {
  Teacher t(test::anbm_droca());
  ObservationTable table(t, TableMode::Droca);
  EXPECT_FALSE(table.is_d_consistent(5));
}

TEST(CloseAndConsistify, GrowsFromEmptyTable) {
  Teacher t(test::anbm_droca());
  ObservationTable table(t, TableMode::Droca);
  table.close_and_consistify(0);
  EXPECT_FALSE(table.is_d_closed(0));
  EXPECT_FALSE(table.is_d_consistent(0));
  EXPECT_GT(table.prefixes().size(), 1u);
}

TEST(CloseAndConsistify, Deadline) {
  Teacher t(test::anbm_droca());
  ObservationTable table(t, TableMode::Droca);
  EXPECT_THROW(table.close_and_consistify(0, Deadline::after(std::chrono::milliseconds(-1))), BudgetExhausted);
}

TEST(ProcessCounterexample, RaisesD) {
  Teacher t(test::anbm_droca());
  ObservationTable table(t, TableMode::Droca);
  EXPECT_EQ(table.process_counterexample(w("aab"), 0), 2u);
  for (const char* p : {"", "a", "aa", "aab"}) EXPECT_TRUE(table.in_r(w(p))) << p;
  const std::size_t r = table.prefixes().size();
  EXPECT_EQ(table.process_counterexample(w("aa"), 3), 3u);
  EXPECT_EQ(table.prefixes().size(), r);
  EXPECT_THROW(table.process_counterexample(w(""), 0), InputError);
}

TEST(TableShape, PrefixAndSuffixClosure) {
  Teacher t(test::anbm_droca());
  ObservationTable table(t, TableMode::Droca);
  EXPECT_THROW(table.add_prefix(w("ab")), InputError);
  EXPECT_THROW(table.add_suffix(w("ab")), InputError);
  EXPECT_TRUE(table.add_suffix(w("b")));
  EXPECT_TRUE(table.add_suffix(w("ab")));
  EXPECT_FALSE(table.add_suffix(w("ab")));
}

TEST(TableShape, ModeMustMatchTeacher) {
  Teacher t(test::anbm_droca());
  EXPECT_THROW(ObservationTable(t, TableMode::Voca), InputError);
}
