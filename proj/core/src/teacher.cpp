#include "ocalearn/teacher.hpp"

#include <deque>
#include <unordered_set>

#include "ocalearn/errors.hpp"

namespace ocalearn {

namespace {

struct Side {
  bool alive = false;
  Configuration config;
};

Side advance(const Droca& m, const Side& s, Letter a) {
  if (!s.alive) return {};
  auto mv = m.step(s.config.state, s.config.counter, a);
  if (!mv) return {};
  std::uint64_t n = s.config.counter;
  if (mv->action == CounterAction::Increment) ++n;
  if (mv->action == CounterAction::Decrement) --n;
  return {true, {mv->target, n}};
}

std::optional<MismatchKind> compare(const Droca& a, const Side& x, const Droca& b, const Side& y) {
  const bool acc_x = x.alive && a.is_final(x.config.state);
  const bool acc_y = y.alive && b.is_final(y.config.state);
  if (acc_x != acc_y) return MismatchKind::Membership;
  if (x.alive != y.alive) return MismatchKind::Counter;
  if (x.alive && x.config.counter != y.config.counter) return MismatchKind::Counter;
  return std::nullopt;
}

void check_alphabets(const Droca& a, const Droca& b) {
  if (!(a.alphabet() == b.alphabet())) throw InputError("machines have different alphabets");
}

struct Key {
  StateId p, q;
  std::uint64_t n;
  friend bool operator==(const Key&, const Key&) = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept {
    std::uint64_t h = (static_cast<std::uint64_t>(k.p) << 32) ^ k.q;
    h ^= k.n + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h * 0xff51afd7ed558ccdULL);
  }
};

}  // namespace

std::string to_string(MismatchKind kind) { return kind == MismatchKind::Membership ? "membership" : "counter"; }

namespace {

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1; }
  bool set(std::size_t i) {
    const std::uint64_t m = std::uint64_t{1} << (i % 64);
    const bool fresh = !(words_[i / 64] & m);
    words_[i / 64] |= m;
    return fresh;
  }
  bool merge(const Bits& o) {
    bool changed = false;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      const std::uint64_t v = words_[w] | o.words_[w];
      changed |= v != words_[w];
      words_[w] = v;
    }
    return changed;
  }
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      for (std::uint64_t v = words_[w]; v; v &= v - 1) f(w * 64 + static_cast<std::size_t>(__builtin_ctzll(v)));
    }
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct Edge {
  std::size_t to;
  CounterAction action;
};

}  // namespace

bool synchronously_equivalent(const Droca& a, const Droca& b) {
  check_alphabets(a, b);
  const std::size_t nb = b.num_states();
  const std::size_t n = a.num_states() * nb;
  const std::size_t k = a.alphabet().size();
  // Product controls s = p * |Q_b| + q; level 0 uses zero moves, level 1
  // positive moves. bad[z][s]: a separating configuration or step.
  std::vector<Edge> edges[2];
  std::vector<std::size_t> first[2];
  std::vector<char> bad[2];
  for (int z = 0; z < 2; ++z) {
    first[z].assign(n + 1, 0);
    bad[z].assign(n, 0);
    for (std::size_t s = 0; s < n; ++s) {
      first[z][s] = edges[z].size();
      const auto p = static_cast<StateId>(s / nb), q = static_cast<StateId>(s % nb);
      if (a.is_final(p) != b.is_final(q)) bad[z][s] = 1;
      for (Letter l = 0; l < k; ++l) {
        const auto ma = z ? a.positive(p, l) : a.zero(p, l);
        const auto mb = z ? b.positive(q, l) : b.zero(q, l);
        if (!ma && !mb) continue;
        if (!ma || !mb || ma->action != mb->action) {
          bad[z][s] = 1;
          continue;
        }
        edges[z].push_back({ma->target * nb + mb->target, ma->action});
      }
    }
    first[z][n] = edges[z].size();
  }
  auto out = [&](int z, std::size_t s) {
    return std::pair(edges[z].begin() + static_cast<std::ptrdiff_t>(first[z][s]),
                     edges[z].begin() + static_cast<std::ptrdiff_t>(first[z][s + 1]));
  };

  // pop[s] = { t : (s, 1) reaches (t, 0) staying positive before the end }.
  std::vector<Bits> pop(n, Bits(n));
  for (std::size_t s = 0; s < n; ++s) {
    for (auto [it, e] = out(1, s); it != e; ++it) {
      if (it->action == CounterAction::Decrement) pop[s].set(it->to);
    }
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t s = 0; s < n; ++s) {
      for (auto [it, e] = out(1, s); it != e; ++it) {
        if (it->action == CounterAction::Keep) {
          if (it->to != s) changed |= pop[s].merge(pop[it->to]);
        } else if (it->action == CounterAction::Increment) {
          Bits acc(n);
          pop[it->to].for_each([&](std::size_t u) { acc.merge(pop[u]); });
          changed |= pop[s].merge(acc);
        }
      }
    }
  }

  // Controls seen at counter zero, and entry points of positive stretches.
  Bits zero(n), entry(n);
  std::vector<std::size_t> work;
  auto reach_zero = [&](std::size_t s) {
    if (zero.set(s)) work.push_back(s);
  };
  reach_zero(static_cast<std::size_t>(a.initial()) * nb + b.initial());
  while (!work.empty()) {
    const std::size_t s = work.back();
    work.pop_back();
    if (bad[0][s]) return false;
    for (auto [it, e] = out(0, s); it != e; ++it) {
      if (it->action == CounterAction::Keep) {
        reach_zero(it->to);
      } else if (entry.set(it->to)) {
        pop[it->to].for_each(reach_zero);
      }
    }
  }

  // Positive stretches: keep and +1 moves, plus +1 followed by a summary.
  Bits positive(n);
  entry.for_each([&](std::size_t s) {
    if (positive.set(s)) work.push_back(s);
  });
  while (!work.empty()) {
    const std::size_t s = work.back();
    work.pop_back();
    if (bad[1][s]) return false;
    for (auto [it, e] = out(1, s); it != e; ++it) {
      if (it->action == CounterAction::Decrement) continue;
      if (positive.set(it->to)) work.push_back(it->to);
      if (it->action == CounterAction::Increment) {
        pop[it->to].for_each([&](std::size_t u) {
          if (positive.set(u)) work.push_back(u);
        });
      }
    }
  }
  return true;
}

EquivalenceVerdict product_search(const Droca& a, const Droca& b, const MsqLimits& limits, const Deadline& deadline) {
  if (synchronously_equivalent(a, b)) return Equivalent{};
  const std::size_t k = a.alphabet().size();

  // Each node stores its parent and letter so the word can be rebuilt.
  struct Node {
    Side x, y;
    std::size_t parent;
    Letter letter;
    std::size_t depth;
  };
  std::vector<Node> nodes;
  auto word_of = [&](std::size_t i) {
    Word w(nodes[i].depth);
    for (std::size_t j = i; nodes[j].depth > 0; j = nodes[j].parent) w[nodes[j].depth - 1] = nodes[j].letter;
    return w;
  };

  Side x0{true, {a.initial(), 0}}, y0{true, {b.initial(), 0}};
  if (auto kind = compare(a, x0, b, y0)) return Counterexample{{}, *kind};
  std::unordered_set<Key, KeyHash> visited;
  visited.insert({x0.config.state, y0.config.state, 0});
  nodes.push_back({x0, y0, 0, 0, 0});

  std::size_t max_depth = 0;
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    if ((head & 1023) == 0 && deadline.expired()) throw BudgetExhausted("equivalence query ran out of time");
    const Node cur = nodes[head];
    max_depth = std::max(max_depth, cur.depth);
    if (limits.max_cex_length && cur.depth >= limits.max_cex_length) continue;
    for (Letter l = 0; l < k; ++l) {
      Side x = advance(a, cur.x, l), y = advance(b, cur.y, l);
      if (auto kind = compare(a, x, b, y)) {
        nodes.push_back({x, y, head, l, cur.depth + 1});
        return Counterexample{word_of(nodes.size() - 1), *kind};
      }
      if (!x.alive) continue;  // both stuck
      if (!visited.insert({x.config.state, y.config.state, x.config.counter}).second) continue;
      if (nodes.size() >= limits.max_configurations) return PresumedEquivalent{max_depth, nodes.size()};
      nodes.push_back({x, y, head, l, cur.depth + 1});
    }
  }
  return PresumedEquivalent{max_depth, nodes.size()};
}

std::optional<Mismatch> brute_force_equiv(const Droca& a, const Droca& b, std::size_t max_len) {
  check_alphabets(a, b);
  const std::size_t k = a.alphabet().size();
  struct Entry {
    Side x, y;
    Word w;
  };
  std::vector<Entry> level{{{true, {a.initial(), 0}}, {true, {b.initial(), 0}}, {}}};
  if (auto kind = compare(a, level[0].x, b, level[0].y)) return Mismatch{{}, *kind};
  for (std::size_t len = 1; len <= max_len && !level.empty(); ++len) {
    std::vector<Entry> next;
    next.reserve(level.size() * k);
    for (const Entry& e : level) {
      for (Letter l = 0; l < k; ++l) {
        Side x = advance(a, e.x, l), y = advance(b, e.y, l);
        Word w = e.w;
        w.push_back(l);
        if (auto kind = compare(a, x, b, y)) return Mismatch{std::move(w), *kind};
        // Both stuck: every extension agrees.
        if (x.alive) next.push_back({x, y, std::move(w)});
      }
    }
    level = std::move(next);
  }
  return std::nullopt;
}

Teacher::Teacher(Droca target, MsqLimits limits) : target_(std::move(target)), limits_(limits) {
  if (!target_.is_complete()) throw InputError("teacher target must be a complete DROCA");
}

Teacher::Teacher(Voca target, MsqLimits limits)
    : target_(target.base()), partition_(target.partition()), limits_(limits) {
  if (!target.is_complete()) throw InputError("teacher target must be a complete VOCA");
}

bool Teacher::mq(const Word& w) {
  ++stats_.mq;
  return target_.accepts(w);
}

std::optional<std::uint64_t> Teacher::cv(const Word& w) {
  ++stats_.cv;
  return target_.counter_effect(w);
}

EquivalenceVerdict Teacher::msq(const Droca& hypothesis, const Deadline& deadline) {
  ++stats_.msq;
  return product_search(target_, hypothesis, limits_, deadline);
}

EquivalenceVerdict Teacher::msq(const Voca& hypothesis, const Deadline& deadline) {
  if (partition_ && hypothesis.partition() != *partition_) throw InputError("hypothesis partition differs");
  EquivalenceVerdict v = msq(hypothesis.base(), deadline);
  if (partition_) {
    // Both counters follow the partition, so only membership can differ.
    if (auto* c = std::get_if<Counterexample>(&v); c && c->kind == MismatchKind::Counter) {
      throw InvariantViolation("visibly counter machines disagree on a counter value");
    }
  }
  return v;
}

}  // namespace ocalearn
