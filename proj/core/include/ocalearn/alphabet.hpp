#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ocalearn {

/// Index of a symbol inside its Alphabet. The index order is the letter
/// order used by every length-lexicographic comparison.
using Letter = std::uint32_t;
using Word = std::vector<Letter>;

/// Token used in text files for the empty word.
inline constexpr std::string_view kEpsilonToken = "@eps";

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ w.size();
    for (Letter a : w) {
      h ^= a + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

/// Finite, ordered set of distinct symbol names.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> symbols);

  /// Alphabet "a", "b", ... with `size` letters (size <= 26).
  static Alphabet latin(std::size_t size);

  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  const std::string& symbol(Letter a) const { return symbols_.at(a); }
  const std::vector<std::string>& symbols() const { return symbols_; }
  bool contains(Letter a) const { return a < symbols_.size(); }

  std::optional<Letter> find(std::string_view symbol) const;
  /// Throws InputError for unknown symbols.
  Letter letter(std::string_view symbol) const;

  /// Throws InputError unless every letter of `w` belongs to this alphabet.
  void validate(const Word& w) const;

  /// Parses the textual form of a word: `@eps`, a space-separated symbol
  /// list, or (when there is no space) one symbol per character.
  Word parse_word(std::string_view text) const;
  /// Inverse of parse_word. Single-character alphabets concatenate.
  std::string format_word(const Word& w) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.symbols_ == b.symbols_;
  }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, Letter> index_;
  bool single_char_ = true;
};

}  // namespace ocalearn
