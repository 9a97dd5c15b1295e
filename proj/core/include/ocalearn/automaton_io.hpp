#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "ocalearn/automata.hpp"

namespace ocalearn {

using Machine = std::variant<Dfa, Droca, Voca>;

/// Line-oriented text form:
///
///     droca
///     alphabet: a b
///     states: 4
///     initial: 0
///     finals: 2
///     0 a z -> 0 +1
///     0 a p -> 0 +1
///
/// `z` lines are zero-counter transitions, `p` lines positive-counter ones.
/// A `voca` document adds `call:`, `ret:` and `int:` lines after the
/// alphabet; a `dfa` document writes transitions as `0 a -> 1`. Blank lines
/// and lines starting with '#' are ignored on input.
std::string encode_automaton(const Machine& machine);

/// Throws InputError on malformed text, dangling state ids, decrementing
/// zero-counter transitions or a VOCA whose actions contradict its
/// partition.
Machine decode_automaton(std::string_view text);

/// Graphviz rendering. Final states are doubled circles; DROCA edges are
/// labelled `a[=0]/+1` or `a[>0]/-1`.
std::string to_dot(const Machine& machine);

}  // namespace ocalearn
