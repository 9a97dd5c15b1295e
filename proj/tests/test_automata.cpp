#include <gtest/gtest.h>

#include "ocalearn/automata.hpp"
#include "ocalearn/errors.hpp"
#include "support.hpp"

using namespace ocalearn;
using test::anbm_droca;
using test::anbm_voca;
using test::w;

TEST(Dfa, PartialTransitionsReject) {
  Dfa d(Alphabet::latin(2), 2);
  d.set_transition(0, 0, 1);
  d.set_final(1);
  EXPECT_TRUE(d.accepts(w("a")));
  EXPECT_FALSE(d.accepts(w("b")));
  EXPECT_FALSE(d.accepts(w("aa")));
  EXPECT_EQ(d.num_transitions(), 1u);
  d.clear_transition(0, 0);
  EXPECT_FALSE(d.accepts(w("a")));
}

TEST(Dfa, CanonicalDropsUnreachableAndRenumbers) {
  Dfa d(Alphabet::latin(1), 3, 2);
  d.set_transition(2, 0, 0);
  d.set_transition(0, 0, 2);
  d.set_final(0);
  const Dfa c = canonical(d);
  ASSERT_EQ(c.num_states(), 2u);
  EXPECT_EQ(c.initial(), 0u);
  EXPECT_TRUE(c.is_final(1));
  EXPECT_EQ(c.next(0, 0), 1u);
}

TEST(Droca, RunOnBEndsInAcceptingZero) {
  const Droca m = anbm_droca();
  const RunResult r = m.run(w("b"));
  ASSERT_TRUE(completed(r));
  const auto& configs = std::get<CompletedRun>(r).configurations;
  ASSERT_EQ(configs.size(), 2u);
  EXPECT_EQ(configs.back(), (Configuration{2, 0}));
  EXPECT_TRUE(m.accepts(w("b")));
}

TEST(Droca, EmptyRun) {
  const RunResult r = anbm_droca().run(w(""));
  ASSERT_TRUE(completed(r));
  EXPECT_EQ(std::get<CompletedRun>(r).configurations, (std::vector<Configuration>{{0, 0}}));
}

TEST(Droca, RunOnAb) {
  const Droca m = anbm_droca();
  EXPECT_EQ(m.counter_effect(w("ab")), 0u);
  EXPECT_FALSE(m.accepts(w("ab")));
}

TEST(Droca, AcceptsAnbmLanguage) {
  const Droca m = anbm_droca();
  EXPECT_TRUE(m.accepts(w("abb")));
  EXPECT_FALSE(m.accepts(w("aba")));
  EXPECT_TRUE(m.accepts(w("aabbb")));
  EXPECT_FALSE(m.accepts(w("aabb")));
}

TEST(Droca, CounterEffect) {
  const Droca m = anbm_droca();
  EXPECT_EQ(m.counter_effect(w("")), 0u);
  EXPECT_EQ(m.counter_effect(w("a")), 1u);
  EXPECT_EQ(m.counter_effect(w("aab")), 1u);
}

TEST(Droca, StuckRunRejects) {
  const Voca v = anbm_voca();
  EXPECT_FALSE(v.accepts(w("b")));
  EXPECT_FALSE(v.counter_effect(w("b")).has_value());
  const RunResult r = v.base().run(w("ab" "b"));
  ASSERT_FALSE(completed(r));
  EXPECT_EQ(std::get<StuckRun>(r).position, 2u);
  EXPECT_EQ(v.counter_effect(w("aa")), 2u);
}

TEST(Droca, ZeroDecrementRejected) {
  Droca m(Alphabet::latin(1), 1);
  EXPECT_THROW(m.set_zero(0, 0, {0, CounterAction::Decrement}), InputError);
  EXPECT_THROW(m.set_positive(0, 0, {3, CounterAction::Keep}), InputError);
}

TEST(Droca, Completeness) {
  EXPECT_TRUE(anbm_droca().is_complete());
  Droca m(Alphabet::latin(1), 1);
  EXPECT_FALSE(m.is_complete());
}

TEST(Voca, LetterEffects) {
  const Partition p{LetterKind::Call, LetterKind::Return, LetterKind::Internal};
  EXPECT_EQ(voca_letter_effect(p, 0), CounterAction::Increment);
  EXPECT_EQ(voca_letter_effect(p, 1), CounterAction::Decrement);
  EXPECT_EQ(voca_letter_effect(p, 2), CounterAction::Keep);
  EXPECT_EQ(visible_counter(p, {0, 2, 0, 1}), 1u);
  EXPECT_FALSE(visible_counter(p, {1}).has_value());
}

TEST(Voca, ValidatesActionsAgainstPartition) {
  Droca m(Alphabet::latin(2), 1);
  m.set_zero(0, 0, {0, CounterAction::Keep});
  EXPECT_THROW(Voca(m, {LetterKind::Call, LetterKind::Return}), InputError);
  Droca ok(Alphabet::latin(2), 1);
  ok.set_zero(0, 0, {0, CounterAction::Increment});
  EXPECT_NO_THROW(Voca(ok, {LetterKind::Call, LetterKind::Return}));
  EXPECT_THROW(Voca(ok, {LetterKind::Call}), InputError);
}

TEST(Voca, AnbmIsComplete) { EXPECT_TRUE(anbm_voca().is_complete()); }

TEST(Reachable, AnbmAllStates) { EXPECT_EQ(reachable_states(anbm_droca(), 8).size(), 4u); }

TEST(Reachable, ExcludesIsolatedState) {
  Droca m(Alphabet::latin(1), 2);
  m.set_zero(0, 0, {0, CounterAction::Increment});
  m.set_positive(0, 0, {0, CounterAction::Keep});
  EXPECT_EQ(reachable_states(m, 8), (std::set<StateId>{0}));
}

TEST(Reachable, CutoffLimitsExploration) {
  // 0 -a-> 0 (+1) at zero, then 0 -a-> 2 -a-> 3 -a-> 1 climbing the counter.
  Droca m(Alphabet::latin(1), 4);
  m.set_zero(0, 0, {0, CounterAction::Increment});
  m.set_positive(0, 0, {2, CounterAction::Increment});
  m.set_positive(2, 0, {3, CounterAction::Increment});
  m.set_positive(3, 0, {1, CounterAction::Keep});
  EXPECT_EQ(reachable_states(m, 1), (std::set<StateId>{0, 2}));
  EXPECT_EQ(reachable_states(m, 8), (std::set<StateId>{0, 1, 2, 3}));
}

TEST(CompleteWithSink, AddsSinkToCompleteMachine) {
  const Droca m = anbm_droca();
  const Droca c = complete_with_sink(m);
  EXPECT_EQ(c.num_states(), m.num_states() + 1);
  EXPECT_TRUE(c.is_complete());
  EXPECT_EQ(reachable_states(c, 8).size(), m.num_states());
}

TEST(CompleteWithSink, EmptyMachine) {
  const Droca c = complete_with_sink(Droca(Alphabet::latin(1), 1));
  ASSERT_EQ(c.num_states(), 2u);
  EXPECT_TRUE(c.is_complete());
  for (const char* x : {"", "a", "aaa"}) {
    EXPECT_FALSE(c.accepts(w(x)));
    EXPECT_EQ(c.counter_effect(w(x)), 0u);
  }
}

TEST(CompleteWithSink, VocaKeepsClassActions) {
  Droca base(Alphabet::latin(2), 1);
  base.set_zero(0, 0, {0, CounterAction::Increment});
  const Voca v(base, {LetterKind::Call, LetterKind::Return});
  const Voca c = complete_with_sink(v);
  EXPECT_TRUE(c.is_complete());
  EXPECT_FALSE(c.base().zero(0, 1).has_value());
  EXPECT_EQ(c.base().positive(0, 1)->action, CounterAction::Decrement);
  EXPECT_EQ(c.counter_effect(w("aab")), 1u);
}
