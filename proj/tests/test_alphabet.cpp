#include <gtest/gtest.h>

#include "ocalearn/alphabet.hpp"
#include "ocalearn/errors.hpp"

using namespace ocalearn;

TEST(Alphabet, LatinLetters) {
  const Alphabet a = Alphabet::latin(3);
  ASSERT_EQ(a.size(), 3u);
  EXPECT_EQ(a.symbol(0), "a");
  EXPECT_EQ(a.symbol(2), "c");
  EXPECT_EQ(a.letter("b"), 1u);
  EXPECT_FALSE(a.find("d").has_value());
}

TEST(Alphabet, RejectsBadSymbols) {
  EXPECT_THROW(Alphabet(std::vector<std::string>{}), InputError);
  EXPECT_THROW(Alphabet({"a", "a"}), InputError);
  EXPECT_THROW(Alphabet({"a b"}), InputError);
  EXPECT_THROW(Alphabet({"@eps"}), InputError);
  EXPECT_THROW(Alphabet::latin(2).letter("z"), InputError);
}

TEST(Alphabet, ParseAndFormatSingleCharacter) {
  const Alphabet a = Alphabet::latin(2);
  EXPECT_EQ(a.parse_word("abba"), (Word{0, 1, 1, 0}));
  EXPECT_EQ(a.parse_word("@eps"), Word{});
  EXPECT_EQ(a.parse_word(""), Word{});
  EXPECT_EQ(a.parse_word("a b"), (Word{0, 1}));
  EXPECT_EQ(a.format_word({1, 0}), "ba");
  EXPECT_THROW(a.parse_word("abc"), InputError);
}

TEST(Alphabet, MultiCharacterSymbolsUseSpaces) {
  const Alphabet a({"push", "pop"});
  const Word x = a.parse_word("push push pop");
  EXPECT_EQ(x, (Word{0, 0, 1}));
  EXPECT_EQ(a.format_word(x), "push push pop");
  EXPECT_EQ(a.parse_word(a.format_word(x)), x);
}

TEST(Alphabet, ValidateRejectsForeignLetters) {
  const Alphabet a = Alphabet::latin(2);
  EXPECT_NO_THROW(a.validate({0, 1}));
  EXPECT_THROW(a.validate({2}), InputError);
}
