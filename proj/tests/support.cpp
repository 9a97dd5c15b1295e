#include "support.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ocalearn/automaton_io.hpp"

namespace ocalearn::test {

std::string data_path(const std::string& name) { return std::string(OCALEARN_TEST_DATA) + "/" + name; }

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Droca anbm_droca() { return std::get<Droca>(decode_automaton(read_text(data_path("anbm_droca.txt")))); }
Voca anbm_voca() { return std::get<Voca>(decode_automaton(read_text(data_path("anbm_voca.txt")))); }

const Alphabet& ab() {
  static const Alphabet a = Alphabet::latin(2);
  return a;
}

Word w(const char* text) { return ab().parse_word(text); }

SampleSet worked_sample() { return SampleSet({w("ab"), w("bb")}, {w("a"), w("b")}); }

CounterMap worked_ce() {
  CounterMap ce;
  ce.set(w(""), 0);
  ce.set(w("a"), 1);
  ce.set(w("b"), 0);
  ce.set(w("ab"), 0);
  ce.set(w("bb"), 1);
  return ce;
}

Word random_word(std::mt19937_64& rng, std::size_t alphabet_size, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<Letter> letter(0, static_cast<Letter>(alphabet_size - 1));
  Word out(len(rng));
  for (Letter& l : out) l = letter(rng);
  return out;
}

SampleSet random_sample(std::mt19937_64& rng, std::size_t alphabet_size, std::size_t words, std::size_t max_len) {
  SampleSet s;
  for (std::size_t i = 0; i < words; ++i) {
    Word x = random_word(rng, alphabet_size, max_len);
    if (s.positives().count(x) || s.negatives().count(x)) continue;
    s.add(std::move(x), rng() & 1);
  }
  return s;
}

std::pair<SampleSet, CounterMap> sample_from(const Droca& m, std::mt19937_64& rng, std::size_t words,
                                             std::size_t max_len) {
  SampleSet s;
  for (std::size_t i = 0; i < words; ++i) {
    Word x = random_word(rng, m.alphabet().size(), max_len);
    if (!m.counter_effect(x)) continue;
    if (s.positives().count(x) || s.negatives().count(x)) continue;
    s.add(x, m.accepts(x));
  }
  CounterMap ce;
  for (const Word& p : s.prefix_closure()) ce.set(p, *m.counter_effect(p));
  return {std::move(s), std::move(ce)};
}

}  // namespace ocalearn::test
