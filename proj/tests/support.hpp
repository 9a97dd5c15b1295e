#pragma once

#include <random>
#include <string>
#include <vector>

#include "ocalearn/automata.hpp"
#include "ocalearn/samples.hpp"

namespace ocalearn::test {

std::string data_path(const std::string& name);
std::string read_text(const std::string& path);

/// a^n b^m with m > n, plus a rejecting sink (state 3).
Droca anbm_droca();
/// a^n b^m with 1 <= m <= n, call a, return b, plus a sink (state 2).
Voca anbm_voca();

const Alphabet& ab();
Word w(const char* text);  // over ab()

/// S+ = {ab, bb}, S- = {a, b} and its counter values.
SampleSet worked_sample();
CounterMap worked_ce();

Word random_word(std::mt19937_64& rng, std::size_t alphabet_size, std::size_t max_len);
/// Disjoint random sample over `alphabet_size` letters.
SampleSet random_sample(std::mt19937_64& rng, std::size_t alphabet_size, std::size_t words, std::size_t max_len);
/// Words of length <= max_len labelled by `m`, with counter values on all
/// prefixes. Words whose run is stuck are left out.
std::pair<SampleSet, CounterMap> sample_from(const Droca& m, std::mt19937_64& rng, std::size_t words,
                                             std::size_t max_len);

}  // namespace ocalearn::test
