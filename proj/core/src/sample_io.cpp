#include "ocalearn/sample_io.hpp"

#include <charconv>
#include <set>
#include <sstream>
#include <vector>

#include "ocalearn/errors.hpp"

namespace ocalearn {

namespace {

struct Record {
  std::size_t line;
  std::string_view first;
  std::string_view second;
};

std::string_view strip(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  return s;
}

std::vector<Record> records(std::string_view text, const char* what) {
  std::vector<Record> out;
  std::size_t pos = 0, number = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view line = strip(text.substr(pos, end - pos));
    pos = end + 1;
    if (line.empty() || line.front() == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw InputError(std::string(what) + ", line " + std::to_string(number) + ": expected two tab-separated fields");
    }
    out.push_back({number, strip(line.substr(0, tab)), strip(line.substr(tab + 1))});
  }
  return out;
}

void collect_symbols(std::string_view word, std::set<char>& out) {
  if (word == kEpsilonToken) return;
  for (char c : word) {
    if (c != ' ') out.insert(c);
  }
}

}  // namespace

SampleSet parse_sample(std::string_view text, const Alphabet& alphabet) {
  SampleSet sample;
  for (const Record& r : records(text, "sample file")) {
    const std::string where = "sample file, line " + std::to_string(r.line) + ": ";
    if (r.first != "+" && r.first != "-") throw InputError(where + "label must be '+' or '-'");
    Word w;
    try {
      w = alphabet.parse_word(r.second);
    } catch (const InputError& e) {
      throw InputError(where + e.what());
    }
    try {
      sample.add(std::move(w), r.first == "+");
    } catch (const InconsistentSample&) {
      throw InconsistentSample(where + "word '" + std::string(r.second) + "' is both positive and negative");
    }
  }
  return sample;
}

std::string format_sample(const SampleSet& sample, const Alphabet& alphabet) {
  std::ostringstream out;
  for (const Word& w : sample.positives()) out << "+\t" << alphabet.format_word(w) << '\n';
  for (const Word& w : sample.negatives()) out << "-\t" << alphabet.format_word(w) << '\n';
  return out.str();
}

CounterMap parse_counter_map(std::string_view text, const Alphabet& alphabet) {
  CounterMap ce;
  for (const Record& r : records(text, "counter file")) {
    const std::string where = "counter file, line " + std::to_string(r.line) + ": ";
    Word w;
    try {
      w = alphabet.parse_word(r.first);
    } catch (const InputError& e) {
      throw InputError(where + e.what());
    }
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(r.second.data(), r.second.data() + r.second.size(), v);
    if (ec != std::errc{} || ptr != r.second.data() + r.second.size()) {
      throw InputError(where + "counter value must be a non-negative integer");
    }
    if (auto old = ce.find(w); old && *old != v) throw InputError(where + "conflicting counter values");
    ce.set(std::move(w), v);
  }
  return ce;
}

std::string format_counter_map(const CounterMap& ce, const Alphabet& alphabet) {
  std::set<Word, LlexLess> words;
  for (const auto& [w, v] : ce.values()) words.insert(w);
  std::ostringstream out;
  for (const Word& w : words) out << alphabet.format_word(w) << '\t' << ce.at(w) << '\n';
  return out.str();
}

Alphabet infer_alphabet(std::string_view sample_text, std::string_view counter_text) {
  std::set<char> symbols;
  for (const Record& r : records(sample_text, "sample file")) collect_symbols(r.second, symbols);
  if (!counter_text.empty()) {
    for (const Record& r : records(counter_text, "counter file")) collect_symbols(r.first, symbols);
  }
  if (symbols.empty()) throw InputError("cannot infer an alphabet: no letters in the input");
  std::vector<std::string> names;
  for (char c : symbols) names.emplace_back(1, c);
  return Alphabet(std::move(names));
}

}  // namespace ocalearn
