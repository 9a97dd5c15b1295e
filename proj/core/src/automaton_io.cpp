#include "ocalearn/automaton_io.hpp"

#include <charconv>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "ocalearn/errors.hpp"

namespace ocalearn {

namespace {

std::string action_text(CounterAction c) {
  switch (c) {
    case CounterAction::Increment: return "+1";
    case CounterAction::Decrement: return "-1";
    case CounterAction::Keep: return "0";
  }
  return "0";
}

void write_header(std::ostringstream& out, std::string_view kind, const Alphabet& alphabet) {
  out << kind << "\nalphabet:";
  for (const auto& s : alphabet.symbols()) out << ' ' << s;
  out << '\n';
}

template <class IsFinal>
void write_states(std::ostringstream& out, std::size_t num_states, StateId initial, IsFinal is_final) {
  out << "states: " << num_states << "\ninitial: " << initial << "\nfinals:";
  for (StateId q = 0; q < num_states; ++q) {
    if (is_final(q)) out << ' ' << q;
  }
  out << '\n';
}

void write_droca_transitions(std::ostringstream& out, const Droca& m) {
  const auto& sigma = m.alphabet();
  for (StateId q = 0; q < m.num_states(); ++q) {
    for (Letter a = 0; a < sigma.size(); ++a) {
      if (auto mv = m.zero(q, a)) {
        out << q << ' ' << sigma.symbol(a) << " z -> " << mv->target << ' ' << action_text(mv->action) << '\n';
      }
      if (auto mv = m.positive(q, a)) {
        out << q << ' ' << sigma.symbol(a) << " p -> " << mv->target << ' ' << action_text(mv->action) << '\n';
      }
    }
  }
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

class Parser {
 public:
  explicit Parser(std::string_view text) {
    std::size_t pos = 0;
    std::size_t number = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      ++number;
      std::string_view line = trim(text.substr(pos, end - pos));
      if (!line.empty() && line.front() != '#') lines_.push_back({number, line});
      pos = end + 1;
    }
  }

  bool done() const { return next_ >= lines_.size(); }
  std::size_t line_number() const { return next_ < lines_.size() ? lines_[next_].number : 0; }

  std::string_view peek() const { return done() ? std::string_view{} : lines_[next_].text; }
  std::string_view take() {
    if (done()) fail("unexpected end of document");
    return lines_[next_++].text;
  }

  /// Consumes `key: values...` and returns the values.
  std::vector<std::string_view> field(std::string_view key) {
    std::string_view line = take();
    auto colon = line.find(':');
    if (colon == std::string_view::npos || trim(line.substr(0, colon)) != key) {
      fail("expected '" + std::string(key) + ":' line");
    }
    return split_ws(line.substr(colon + 1));
  }

  bool peek_field(std::string_view key) const {
    std::string_view line = peek();
    auto colon = line.find(':');
    return colon != std::string_view::npos && trim(line.substr(0, colon)) == key;
  }

  [[noreturn]] void fail(const std::string& message) const {
    std::size_t n = next_ == 0 ? (lines_.empty() ? 0 : lines_[0].number)
                               : lines_[std::min(next_, lines_.size()) - 1].number;
    throw InputError("automaton text, line " + std::to_string(n) + ": " + message);
  }

 private:
  struct Line {
    std::size_t number;
    std::string_view text;
  };
  std::vector<Line> lines_;
  std::size_t next_ = 0;
};

std::uint64_t parse_uint(const Parser& p, std::string_view s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) p.fail("expected a non-negative integer, got '" + std::string(s) + "'");
  return v;
}

CounterAction parse_action(const Parser& p, std::string_view s) {
  if (s == "+1" || s == "1") return CounterAction::Increment;
  if (s == "0" || s == "+0" || s == "-0") return CounterAction::Keep;
  if (s == "-1") return CounterAction::Decrement;
  p.fail("counter action must be -1, 0 or +1, got '" + std::string(s) + "'");
}

StateId parse_state(const Parser& p, std::string_view s, std::size_t num_states) {
  std::uint64_t v = parse_uint(p, s);
  if (v >= num_states) p.fail("state id " + std::string(s) + " is out of range");
  return static_cast<StateId>(v);
}

Letter parse_letter(const Parser& p, const Alphabet& sigma, std::string_view s) {
  auto a = sigma.find(s);
  if (!a) p.fail("letter '" + std::string(s) + "' is not in the alphabet");
  return *a;
}

struct Common {
  Alphabet alphabet;
  std::size_t num_states = 0;
  StateId initial = 0;
  std::vector<StateId> finals;
};

Alphabet parse_alphabet(Parser& p) {
  auto symbols = p.field("alphabet");
  std::vector<std::string> names(symbols.begin(), symbols.end());
  try {
    return Alphabet(std::move(names));
  } catch (const InputError& e) {
    p.fail(e.what());
  }
}

void parse_states(Parser& p, Common& c) {
  auto st = p.field("states");
  if (st.size() != 1) p.fail("'states:' takes one count");
  c.num_states = parse_uint(p, st[0]);
  if (c.num_states == 0) p.fail("an automaton needs at least one state");
  auto init = p.field("initial");
  if (init.size() != 1) p.fail("'initial:' takes one state id");
  c.initial = parse_state(p, init[0], c.num_states);
  for (auto s : p.field("finals")) c.finals.push_back(parse_state(p, s, c.num_states));
}

Partition parse_partition(Parser& p, const Alphabet& sigma) {
  Partition part(sigma.size(), LetterKind::Internal);
  std::vector<int> seen(sigma.size(), 0);
  const std::pair<std::string_view, LetterKind> keys[] = {
      {"call", LetterKind::Call}, {"ret", LetterKind::Return}, {"int", LetterKind::Internal}};
  for (const auto& [key, kind] : keys) {
    for (auto s : p.field(key)) {
      Letter a = parse_letter(p, sigma, s);
      if (seen[a]++) p.fail("letter '" + std::string(s) + "' is classified twice");
      part[a] = kind;
    }
  }
  for (Letter a = 0; a < sigma.size(); ++a) {
    if (!seen[a]) p.fail("letter '" + sigma.symbol(a) + "' is not classified");
  }
  return part;
}

Droca parse_droca_body(Parser& p, const Common& c) {
  Droca m(c.alphabet, c.num_states, c.initial);
  for (StateId f : c.finals) m.set_final(f);
  while (!p.done()) {
    auto tok = split_ws(p.take());
    if (tok.size() != 6 || tok[3] != "->") p.fail("expected '<src> <letter> z|p -> <dst> <action>'");
    StateId from = parse_state(p, tok[0], c.num_states);
    Letter a = parse_letter(p, c.alphabet, tok[1]);
    StateId to = parse_state(p, tok[4], c.num_states);
    CounterAction act = parse_action(p, tok[5]);
    if (tok[2] == "z") {
      if (m.zero(from, a)) p.fail("duplicate zero-counter transition");
      if (act == CounterAction::Decrement) p.fail("zero-counter transition cannot decrement");
      m.set_zero(from, a, Move{to, act});
    } else if (tok[2] == "p") {
      if (m.positive(from, a)) p.fail("duplicate positive-counter transition");
      m.set_positive(from, a, Move{to, act});
    } else {
      p.fail("transition guard must be 'z' or 'p'");
    }
  }
  return m;
}

Dfa parse_dfa_body(Parser& p, const Common& c) {
  Dfa d(c.alphabet, c.num_states, c.initial);
  for (StateId f : c.finals) d.set_final(f);
  while (!p.done()) {
    auto tok = split_ws(p.take());
    if (tok.size() != 4 || tok[2] != "->") p.fail("expected '<src> <letter> -> <dst>'");
    StateId from = parse_state(p, tok[0], c.num_states);
    Letter a = parse_letter(p, c.alphabet, tok[1]);
    StateId to = parse_state(p, tok[3], c.num_states);
    if (d.next(from, a)) p.fail("duplicate transition");
    d.set_transition(from, a, to);
  }
  return d;
}

std::string symbols_of(const Alphabet& sigma, const Partition& part, LetterKind kind) {
  std::string out;
  for (Letter a = 0; a < sigma.size(); ++a) {
    if (part[a] == kind) out += ' ' + sigma.symbol(a);
  }
  return out;
}

}  // namespace

std::string encode_automaton(const Machine& machine) {
  std::ostringstream out;
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Dfa>) {
          write_header(out, "dfa", m.alphabet());
          write_states(out, m.num_states(), m.initial(), [&](StateId q) { return m.is_final(q); });
          for (StateId q = 0; q < m.num_states(); ++q) {
            for (Letter a = 0; a < m.alphabet().size(); ++a) {
              if (auto t = m.next(q, a)) out << q << ' ' << m.alphabet().symbol(a) << " -> " << *t << '\n';
            }
          }
        } else if constexpr (std::is_same_v<T, Droca>) {
          write_header(out, "droca", m.alphabet());
          write_states(out, m.num_states(), m.initial(), [&](StateId q) { return m.is_final(q); });
          write_droca_transitions(out, m);
        } else {
          const Droca& b = m.base();
          write_header(out, "voca", b.alphabet());
          out << "call:" << symbols_of(b.alphabet(), m.partition(), LetterKind::Call) << '\n';
          out << "ret:" << symbols_of(b.alphabet(), m.partition(), LetterKind::Return) << '\n';
          out << "int:" << symbols_of(b.alphabet(), m.partition(), LetterKind::Internal) << '\n';
          write_states(out, b.num_states(), b.initial(), [&](StateId q) { return b.is_final(q); });
          write_droca_transitions(out, b);
        }
      },
      machine);
  return out.str();
}

Machine decode_automaton(std::string_view text) {
  Parser p(text);
  if (p.done()) throw InputError("automaton text is empty");
  const std::string_view kind = p.take();
  if (kind != "dfa" && kind != "droca" && kind != "voca") {
    p.fail("header must be 'dfa', 'droca' or 'voca', got '" + std::string(kind) + "'");
  }
  Common c;
  c.alphabet = parse_alphabet(p);
  Partition part;
  if (kind == "voca") part = parse_partition(p, c.alphabet);
  parse_states(p, c);
  if (kind == "dfa") return parse_dfa_body(p, c);
  Droca base = parse_droca_body(p, c);
  if (kind == "droca") return base;
  try {
    return Voca(std::move(base), std::move(part));
  } catch (const InputError& e) {
    throw InputError(std::string("automaton text: ") + e.what());
  }
}

std::string to_dot(const Machine& machine) {
  std::ostringstream out;
  auto nodes = [&](std::size_t n, StateId initial, auto is_final) {
    out << "digraph automaton {\n  rankdir=LR;\n  __start [shape=point];\n";
    for (StateId q = 0; q < n; ++q) {
      out << "  q" << q << " [shape=" << (is_final(q) ? "doublecircle" : "circle") << ", label=\"q" << q
          << "\"];\n";
    }
    out << "  __start -> q" << initial << ";\n";
  };
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Dfa>) {
          nodes(m.num_states(), m.initial(), [&](StateId q) { return m.is_final(q); });
          for (StateId q = 0; q < m.num_states(); ++q) {
            for (Letter a = 0; a < m.alphabet().size(); ++a) {
              if (auto t = m.next(q, a)) {
                out << "  q" << q << " -> q" << *t << " [label=\"" << m.alphabet().symbol(a) << "\"];\n";
              }
            }
          }
        } else {
          const Droca* d = nullptr;
          if constexpr (std::is_same_v<T, Droca>) {
            d = &m;
          } else {
            d = &m.base();
          }
          nodes(d->num_states(), d->initial(), [&](StateId q) { return d->is_final(q); });
          for (StateId q = 0; q < d->num_states(); ++q) {
            for (Letter a = 0; a < d->alphabet().size(); ++a) {
              const std::string& s = d->alphabet().symbol(a);
              if (auto mv = d->zero(q, a)) {
                out << "  q" << q << " -> q" << mv->target << " [label=\"" << s << "[=0]/"
                    << action_text(mv->action) << "\"];\n";
              }
              if (auto mv = d->positive(q, a)) {
                out << "  q" << q << " -> q" << mv->target << " [label=\"" << s << "[>0]/"
                    << action_text(mv->action) << "\"];\n";
              }
            }
          }
        }
      },
      machine);
  out << "}\n";
  return out.str();
}

}  // namespace ocalearn
