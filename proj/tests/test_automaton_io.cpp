#include <gtest/gtest.h>

#include "ocalearn/automaton_io.hpp"
#include "ocalearn/errors.hpp"
#include "support.hpp"

using namespace ocalearn;

TEST(AutomatonIo, DrocaRoundTrip) {
  const Droca m = test::anbm_droca();
  const Machine back = decode_automaton(encode_automaton(m));
  ASSERT_TRUE(std::holds_alternative<Droca>(back));
  EXPECT_EQ(std::get<Droca>(back), m);
}

TEST(AutomatonIo, VocaRoundTrip) {
  const Voca v = test::anbm_voca();
  const Machine back = decode_automaton(encode_automaton(v));
  ASSERT_TRUE(std::holds_alternative<Voca>(back));
  EXPECT_EQ(std::get<Voca>(back), v);
}

TEST(AutomatonIo, DfaRoundTrip) {
  Dfa d(Alphabet::latin(2), 2);
  d.set_transition(0, 1, 1);
  d.set_transition(1, 0, 0);
  d.set_final(1);
  const Machine back = decode_automaton(encode_automaton(d));
  ASSERT_TRUE(std::holds_alternative<Dfa>(back));
  EXPECT_EQ(std::get<Dfa>(back), d);
}

TEST(AutomatonIo, EncodingIsStable) {
  EXPECT_EQ(encode_automaton(test::anbm_droca()), encode_automaton(test::anbm_droca()));
}

TEST(AutomatonIo, RejectsZeroDecrement) {
  const char* text = "droca\nalphabet: a\nstates: 1\ninitial: 0\nfinals:\n0 a z -> 0 -1\n";
  EXPECT_THROW(decode_automaton(text), InputError);
}

TEST(AutomatonIo, RejectsCallWithKeep) {
  const char* text =
      "voca\nalphabet: a b\ncall: a\nret: b\nint:\nstates: 1\ninitial: 0\nfinals:\n0 a z -> 0 0\n";
  EXPECT_THROW(decode_automaton(text), InputError);
}

TEST(AutomatonIo, RejectsMalformedInput) {
  EXPECT_THROW(decode_automaton(""), InputError);
  EXPECT_THROW(decode_automaton("nfa\n"), InputError);
  EXPECT_THROW(decode_automaton("droca\nalphabet: a\nstates: 1\ninitial: 0\nfinals:\n0 a z -> 5 0\n"), InputError);
  EXPECT_THROW(decode_automaton("droca\nalphabet: a\nstates: 1\ninitial: 0\nfinals:\n0 a z -> 0 0\n0 a z -> 0 +1\n"),
               InputError);
  EXPECT_THROW(decode_automaton("droca\nalphabet: a\nstates: 1\ninitial: 0\nfinals:\n0 q z -> 0 0\n"), InputError);
}

TEST(AutomatonIo, ErrorsNameTheLine) {
  try {
    decode_automaton("droca\nalphabet: a\nstates: 1\ninitial: 0\nfinals:\n\n0 a z -> 0 -1\n");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("7"), std::string::npos) << e.what();
  }
}

TEST(AutomatonIo, Dot) {
  const std::string dot = to_dot(test::anbm_droca());
  EXPECT_NE(dot.find("digraph"), std::string::npos);
  EXPECT_NE(dot.find("doublecircle"), std::string::npos);
  EXPECT_NE(dot.find("b[>0]/-1"), std::string::npos);
  EXPECT_NE(dot.find("a[=0]/+1"), std::string::npos);
}
