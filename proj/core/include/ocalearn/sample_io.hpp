#pragma once

#include <string>
#include <string_view>

#include "ocalearn/samples.hpp"

namespace ocalearn {

// Sample files hold one `+<TAB>word` or `-<TAB>word` record per line;
// counter files one `word<TAB>value` line per word. The empty word is
// written `@eps`. Blank lines and '#' comments are skipped.

SampleSet parse_sample(std::string_view text, const Alphabet& alphabet);
std::string format_sample(const SampleSet& sample, const Alphabet& alphabet);

CounterMap parse_counter_map(std::string_view text, const Alphabet& alphabet);
/// Lines are written in llex order of the words.
std::string format_counter_map(const CounterMap& ce, const Alphabet& alphabet);

/// Single-character symbols appearing in the word columns of the given
/// sample / counter documents, in byte order.
Alphabet infer_alphabet(std::string_view sample_text, std::string_view counter_text = {});

}  // namespace ocalearn
