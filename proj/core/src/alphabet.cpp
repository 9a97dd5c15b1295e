#include "ocalearn/alphabet.hpp"

#include <cctype>

#include "ocalearn/errors.hpp"

namespace ocalearn {

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw InputError("alphabet must not be empty");
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    const std::string& s = symbols_[i];
    if (s.empty()) throw InputError("alphabet symbol must not be empty");
    if (s == kEpsilonToken) throw InputError("'@eps' is reserved for the empty word");
    for (char c : s) {
      if (std::isspace(static_cast<unsigned char>(c))) {
        throw InputError("alphabet symbol '" + s + "' contains whitespace");
      }
    }
    if (!index_.emplace(s, static_cast<Letter>(i)).second) {
      throw InputError("duplicate alphabet symbol '" + s + "'");
    }
    if (s.size() != 1) single_char_ = false;
  }
}

Alphabet Alphabet::latin(std::size_t size) {
  if (size == 0 || size > 26) throw InputError("latin alphabet size must be in [1, 26]");
  std::vector<std::string> symbols;
  for (std::size_t i = 0; i < size; ++i) symbols.emplace_back(1, static_cast<char>('a' + i));
  return Alphabet(std::move(symbols));
}

std::optional<Letter> Alphabet::find(std::string_view symbol) const {
  auto it = index_.find(std::string(symbol));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Letter Alphabet::letter(std::string_view symbol) const {
  if (auto a = find(symbol)) return *a;
  throw InputError("symbol '" + std::string(symbol) + "' is not in the alphabet");
}

void Alphabet::validate(const Word& w) const {
  for (Letter a : w) {
    if (!contains(a)) {
      throw InputError("letter index " + std::to_string(a) + " is outside an alphabet of size " +
                       std::to_string(size()));
    }
  }
}

Word Alphabet::parse_word(std::string_view text) const {
  if (text == kEpsilonToken || text.empty()) return {};
  Word w;
  if (text.find(' ') != std::string_view::npos) {
    std::size_t pos = 0;
    while (pos < text.size()) {
      while (pos < text.size() && text[pos] == ' ') ++pos;
      std::size_t end = text.find(' ', pos);
      if (end == std::string_view::npos) end = text.size();
      if (end > pos) w.push_back(letter(text.substr(pos, end - pos)));
      pos = end;
    }
    return w;
  }
  w.reserve(text.size());
  for (char c : text) w.push_back(letter(std::string_view(&c, 1)));
  return w;
}

std::string Alphabet::format_word(const Word& w) const {
  if (w.empty()) return std::string(kEpsilonToken);
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!single_char_ && i > 0) out += ' ';
    out += symbol(w[i]);
  }
  return out;
}

}  // namespace ocalearn
