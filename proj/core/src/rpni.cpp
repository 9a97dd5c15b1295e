#include "ocalearn/rpni.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "ocalearn/errors.hpp"

namespace ocalearn {

namespace {

using Node = std::uint32_t;
constexpr Node kNoNode = std::numeric_limits<Node>::max();

enum Label : std::uint8_t { kUnlabelled = 0, kAccept = 1, kReject = 2 };

/// Trie over S+ ∪ S−. Nodes on a path to a positive word are "positive";
/// only those become states of the learned DFA.
struct AugmentedTree {
  struct Entry {
    std::vector<std::pair<Letter, Node>> children;  // sorted by letter
    std::uint8_t label = kUnlabelled;
    bool positive = false;
  };
  std::vector<Entry> nodes{1};

  Node child(Node n, Letter a) const {
    const auto& ch = nodes[n].children;
    auto it = std::lower_bound(ch.begin(), ch.end(), a,
                               [](const auto& p, Letter l) { return p.first < l; });
    return (it != ch.end() && it->first == a) ? it->second : kNoNode;
  }

  void insert(const Word& w, bool is_positive) {
    Node n = 0;
    if (is_positive) nodes[0].positive = true;
    for (Letter a : w) {
      auto& ch = nodes[n].children;
      auto it = std::lower_bound(ch.begin(), ch.end(), a,
                                 [](const auto& p, Letter l) { return p.first < l; });
      Node next;
      if (it != ch.end() && it->first == a) {
        next = it->second;
      } else {
        next = static_cast<Node>(nodes.size());
        ch.insert(it, {a, next});
        nodes.emplace_back();
      }
      n = next;
      if (is_positive) nodes[n].positive = true;
    }
    nodes[n].label |= is_positive ? kAccept : kReject;
  }

  /// Positive nodes in llex order of the words they represent.
  std::vector<Node> positive_order() const {
    std::vector<Node> order;
    if (!nodes[0].positive) return order;
    order.push_back(0);
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (const auto& [a, c] : nodes[order[i]].children) {
        if (nodes[c].positive) order.push_back(c);
      }
    }
    return order;
  }
};

/// Union-find over tree nodes with fold-on-merge and undo. Each class root
/// carries the union label, whether the class holds a positive node, and
/// one representative successor per letter.
class MergeEngine {
 public:
  explicit MergeEngine(const AugmentedTree& tree) {
    const std::size_t n = tree.nodes.size();
    parent_.resize(n);
    std::iota(parent_.begin(), parent_.end(), Node{0});
    rank_.assign(n, 0);
    label_.resize(n);
    positive_.resize(n);
    children_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      label_[i] = tree.nodes[i].label;
      positive_[i] = tree.nodes[i].positive;
      children_[i] = tree.nodes[i].children;
    }
  }

  Node find(Node x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }

  /// Merges the classes of a and b and folds. On a label conflict the
  /// engine is restored and false is returned.
  bool try_merge(Node a, Node b) {
    const std::size_t mark = log_.size();
    stack_.clear();
    stack_.emplace_back(a, b);
    while (!stack_.empty()) {
      auto [x, y] = stack_.back();
      stack_.pop_back();
      x = find(x);
      y = find(y);
      if (x == y) continue;
      if ((label_[x] | label_[y]) == (kAccept | kReject)) {
        rollback(mark);
        return false;
      }
      if (rank_[x] < rank_[y]) std::swap(x, y);
      // y is absorbed into x
      log_.push_back({y, x, label_[x], positive_[x], rank_[x],
                      static_cast<std::uint32_t>(children_[x].size())});
      parent_[y] = x;
      label_[x] |= label_[y];
      positive_[x] = positive_[x] || positive_[y];
      if (rank_[x] == rank_[y]) ++rank_[x];
      for (const auto& [letter, c] : children_[y]) {
        Node existing = kNoNode;
        for (const auto& [l2, c2] : children_[x]) {
          if (l2 == letter) {
            existing = c2;
            break;
          }
        }
        if (existing == kNoNode) {
          children_[x].emplace_back(letter, c);
        } else {
          stack_.emplace_back(existing, c);
        }
      }
    }
    return true;
  }

  void commit() { log_.clear(); }

  std::uint8_t label(Node root) const { return label_[root]; }
  bool positive(Node root) const { return positive_[root]; }
  const std::vector<std::pair<Letter, Node>>& children(Node root) const { return children_[root]; }

 private:
  struct Undo {
    Node absorbed;
    Node root;
    std::uint8_t label;
    bool positive;
    std::uint32_t rank;
    std::uint32_t children_size;
  };

  void rollback(std::size_t mark) {
    while (log_.size() > mark) {
      const Undo& u = log_.back();
      parent_[u.absorbed] = u.absorbed;
      label_[u.root] = u.label;
      positive_[u.root] = u.positive;
      rank_[u.root] = u.rank;
      children_[u.root].resize(u.children_size);
      log_.pop_back();
    }
  }

  std::vector<Node> parent_;
  std::vector<std::uint32_t> rank_;
  std::vector<std::uint8_t> label_;
  std::vector<bool> positive_;
  std::vector<std::vector<std::pair<Letter, Node>>> children_;
  std::vector<Undo> log_;
  std::vector<std::pair<Node, Node>> stack_;
};

}  // namespace

PrefixTreeAcceptor build_pta(const WordSet& positives, const Alphabet& alphabet) {
  AugmentedTree tree;
  for (const Word& w : positives) {
    alphabet.validate(w);
    tree.insert(w, true);
  }
  // An empty S+ still yields the non-final root.
  std::vector<Node> order = tree.positive_order();
  if (order.empty()) order.push_back(0);
  std::vector<StateId> id(tree.nodes.size(), kNoState);
  for (std::size_t i = 0; i < order.size(); ++i) id[order[i]] = static_cast<StateId>(i);

  PrefixTreeAcceptor pta{Dfa(alphabet, order.size(), 0), std::vector<Word>(order.size())};
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& entry = tree.nodes[order[i]];
    if (entry.label & kAccept) pta.dfa.set_final(static_cast<StateId>(i));
    for (const auto& [a, c] : entry.children) {
      pta.dfa.set_transition(static_cast<StateId>(i), a, id[c]);
      pta.representative[id[c]] = pta.representative[i];
      pta.representative[id[c]].push_back(a);
    }
  }
  return pta;
}

std::vector<WordPair> merge_plan(const WordSet& positives) {
  const WordSet pref = prefixes(positives);
  std::vector<WordPair> plan;
  for (auto u = pref.begin(); u != pref.end(); ++u) {
    for (auto v = pref.begin(); v != u; ++v) plan.emplace_back(*u, *v);
  }
  // pref is llex-sorted, so the nested loop already yields pair order.
  return plan;
}

Dfa merge(const Dfa& dfa, StateId target, StateId survivor) {
  const std::size_t n = dfa.num_states();
  const std::size_t k = dfa.alphabet().size();
  if (target >= n || survivor >= n) throw InputError("merge: state out of range");
  if (target == survivor) return dfa;

  std::vector<StateId> parent(n);
  std::iota(parent.begin(), parent.end(), StateId{0});
  auto find = [&](StateId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  // succ[root * k + a]: some successor of the class on a
  std::vector<StateId> succ(n * k, kNoState);
  for (StateId q = 0; q < n; ++q) {
    for (Letter a = 0; a < k; ++a) {
      if (auto t = dfa.next(q, a)) succ[q * k + a] = *t;
    }
  }
  std::vector<std::pair<StateId, StateId>> stack{{survivor, target}};
  while (!stack.empty()) {
    auto [x, y] = stack.back();
    stack.pop_back();
    x = find(x);
    y = find(y);
    if (x == y) continue;
    if (y < x) std::swap(x, y);  // smaller id survives
    parent[y] = x;
    for (Letter a = 0; a < k; ++a) {
      StateId sy = succ[y * k + a];
      if (sy == kNoState) continue;
      StateId& sx = succ[x * k + a];
      if (sx == kNoState) {
        sx = sy;
      } else {
        stack.emplace_back(sx, sy);
      }
    }
  }
  std::vector<StateId> id(n, kNoState);
  std::size_t classes = 0;
  for (StateId q = 0; q < n; ++q) {
    if (find(q) == q) id[q] = static_cast<StateId>(classes++);
  }
  Dfa out(dfa.alphabet(), classes, id[find(dfa.initial())]);
  for (StateId q = 0; q < n; ++q) {
    const StateId r = find(q);
    if (dfa.is_final(q)) out.set_final(id[r]);
    for (Letter a = 0; a < k; ++a) {
      if (auto t = dfa.next(q, a)) out.set_transition(id[r], a, id[find(*t)]);
    }
  }
  return out;
}

bool consistent_with(const Dfa& dfa, const SampleSet& sample) {
  for (const Word& w : sample.positives()) {
    if (!dfa.accepts(w)) return false;
  }
  for (const Word& w : sample.negatives()) {
    if (dfa.accepts(w)) return false;
  }
  return true;
}

Dfa rpni(const SampleSet& sample, const Alphabet& alphabet, const RpniOptions& options) {
  AugmentedTree tree;
  for (const Word& w : sample.positives()) {
    alphabet.validate(w);
    tree.insert(w, true);
  }
  for (const Word& w : sample.negatives()) {
    alphabet.validate(w);
    tree.insert(w, false);
  }
  for (const auto& entry : tree.nodes) {
    if (entry.label == (kAccept | kReject)) throw InconsistentSample("rpni: inconsistent sample");
  }

  const std::vector<Node> order = tree.positive_order();
  MergeEngine engine(tree);
  RpniStats stats;
  stats.tree_nodes = tree.nodes.size();

  // Red classes: classes that hold an already visited prefix. For each,
  // the sorted llex positions of its visited members.
  std::unordered_map<Node, std::vector<std::uint32_t>> members;
  std::vector<Node> red;
  std::unordered_set<Node> failed;

  auto refresh_red = [&]() {
    std::vector<Node> next;
    next.reserve(red.size());
    for (Node x : red) {
      const Node r = engine.find(x);
      next.push_back(r);
      if (r == x) continue;
      auto from = std::move(members[x]);
      members.erase(x);
      auto& into = members[r];
      std::vector<std::uint32_t> merged;
      merged.reserve(from.size() + into.size());
      std::merge(from.begin(), from.end(), into.begin(), into.end(), std::back_inserter(merged));
      into.swap(merged);
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    red.swap(next);
  };

  for (std::uint32_t i = 0; i < order.size(); ++i) {
    if ((i & 63) == 0 && options.deadline.expired()) throw BudgetExhausted("rpni: deadline reached");
    const Node u = order[i];
    // Pairs (u, v) for v < u in llex order. Between two accepted merges
    // the automaton is fixed, so only the first visited member of each
    // class matters, and a class that refused the merge keeps refusing.
    std::int64_t last = -1;
    failed.clear();
    for (;;) {
      const Node ru = engine.find(u);
      Node best = kNoNode;
      std::uint32_t best_pos = std::numeric_limits<std::uint32_t>::max();
      for (Node x : red) {
        if (x == ru || failed.count(x)) continue;
        const auto& m = members[x];
        auto it = std::upper_bound(m.begin(), m.end(), last,
                                   [](std::int64_t v, std::uint32_t p) { return v < static_cast<std::int64_t>(p); });
        if (it != m.end() && *it < best_pos) {
          best_pos = *it;
          best = x;
        }
      }
      if (best == kNoNode) break;
      ++stats.merge_attempts;
      if (engine.try_merge(best, ru)) {
        engine.commit();
        ++stats.merges_accepted;
        last = best_pos;
        failed.clear();
        refresh_red();
      } else {
        failed.insert(best);
      }
    }
    const Node ru = engine.find(u);
    auto [it, inserted] = members.try_emplace(ru);
    it->second.push_back(i);
    if (inserted) red.push_back(ru);
  }

  // Quotient restricted to classes holding positive nodes.
  std::vector<StateId> id(tree.nodes.size(), kNoState);
  std::vector<Node> roots;
  for (Node n : order) {
    const Node r = engine.find(n);
    if (id[r] == kNoState) {
      id[r] = static_cast<StateId>(roots.size());
      roots.push_back(r);
    }
  }
  if (roots.empty()) {
    // Empty S+: a single rejecting state.
    roots.push_back(engine.find(0));
    id[roots[0]] = 0;
  }
  Dfa out(alphabet, roots.size(), 0);
  for (std::size_t s = 0; s < roots.size(); ++s) {
    const Node r = roots[s];
    if (engine.label(r) & kAccept) out.set_final(static_cast<StateId>(s));
    for (const auto& [a, c] : engine.children(r)) {
      const Node rc = engine.find(c);
      if (engine.positive(rc)) out.set_transition(static_cast<StateId>(s), a, id[rc]);
    }
  }
  if (options.stats) *options.stats = stats;
  return out;
}

}  // namespace ocalearn
