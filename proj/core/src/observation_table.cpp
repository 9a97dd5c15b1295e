#include "ocalearn/observation_table.hpp"

#include <algorithm>

#include "ocalearn/errors.hpp"

namespace ocalearn {

namespace {

Word concat(const Word& u, const Word& v) {
  Word w;
  w.reserve(u.size() + v.size());
  w.insert(w.end(), u.begin(), u.end());
  w.insert(w.end(), v.begin(), v.end());
  return w;
}

struct SignatureHash {
  std::size_t operator()(const RowSignature& s) const noexcept {
    std::uint64_t h = s.ce ? *s.ce + 1 : 0;
    auto mix = [&h](std::uint64_t v) { h = (h ^ v) * 0x100000001b3ULL + 0x9e3779b97f4a7c15ULL; };
    for (Memb m : s.memb) mix(static_cast<std::uint64_t>(m));
    ActionTupleHash ah;
    for (const ActionTuple& t : s.act) mix(ah(t));
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

QueryCache::QueryCache(Teacher& teacher, TableMode mode) : teacher_(teacher), mode_(mode) {
  if ((mode == TableMode::Voca) != teacher.is_voca()) {
    throw InputError("table mode does not match the teacher's target kind");
  }
}

std::optional<std::uint64_t> QueryCache::ce(const Word& w) {
  if (auto it = ce_.find(w); it != ce_.end()) return it->second;
  std::optional<std::uint64_t> v =
      mode_ == TableMode::Voca ? visible_counter(*teacher_.partition(), w) : teacher_.cv(w);
  ce_.emplace(w, v);
  return v;
}

Memb QueryCache::memb(const Word& w) {
  if (auto it = memb_.find(w); it != memb_.end()) return it->second;
  Memb m;
  if (mode_ == TableMode::Voca && !visible_counter(*teacher_.partition(), w)) {
    m = Memb::Undefined;
  } else {
    m = teacher_.mq(w) ? Memb::Yes : Memb::No;
  }
  memb_.emplace(w, m);
  return m;
}

const ActionTuple& QueryCache::act(const Word& w) {
  if (mode_ != TableMode::Droca) throw InputError("Act is not tracked in VOCA mode");
  if (auto it = act_.find(w); it != act_.end()) return it->second;
  const std::uint64_t base = ce(w).value();
  ActionTuple t;
  t.sign = base == 0 ? 0 : 1;
  const std::size_t k = teacher_.alphabet().size();
  t.effects.reserve(k);
  Word ext = w;
  ext.push_back(0);
  for (Letter a = 0; a < k; ++a) {
    ext.back() = a;
    const auto v = static_cast<std::int64_t>(ce(ext).value()) - static_cast<std::int64_t>(base);
    t.effects.push_back(static_cast<Effect>(v));
  }
  return act_.emplace(w, std::move(t)).first->second;
}

bool rows_match(const RowSignature& x, const RowSignature& y) {
  if (x.ce != y.ce || x.memb.size() != y.memb.size() || x.act != y.act) return false;
  for (std::size_t i = 0; i < x.memb.size(); ++i) {
    if (x.memb[i] == Memb::Undefined || y.memb[i] == Memb::Undefined) continue;
    if (x.memb[i] != y.memb[i]) return false;
  }
  return true;
}

ObservationTable::ObservationTable(Teacher& teacher, TableMode mode)
    : mode_(mode), alphabet_(teacher.alphabet()), cache_(teacher, mode) {
  c_.push_back(Word{});
  c_set_.insert(Word{});
  add_row(Word{});
  r_.push_back(Word{});
  r_set_.insert(Word{});
  for (Letter a = 0; a < alphabet_.size(); ++a) add_row(Word{a});
}

void ObservationTable::add_row(const Word& w) {
  if (rows_set_.insert(w).second) rows_.push_back(w);
}

bool ObservationTable::add_prefix(const Word& r) {
  alphabet_.validate(r);
  if (in_r(r)) return false;
  if (r.empty() || !in_r(Word(r.begin(), r.end() - 1))) {
    throw InputError("add_prefix: R would not stay prefix-closed");
  }
  add_row(r);
  r_.push_back(r);
  r_set_.insert(r);
  Word ext = r;
  ext.push_back(0);
  for (Letter a = 0; a < alphabet_.size(); ++a) {
    ext.back() = a;
    add_row(ext);
  }
  return true;
}

bool ObservationTable::add_suffix(const Word& c) {
  alphabet_.validate(c);
  if (c_set_.count(c)) return false;
  if (c.empty() || !c_set_.count(Word(c.begin() + 1, c.end()))) {
    throw InputError("add_suffix: C would not stay suffix-closed");
  }
  c_.push_back(c);
  c_set_.insert(c);
  return true;
}

RowSignature ObservationTable::row(const Word& r) {
  if (!in_rows(r)) throw InputError("row: word is not in R ∪ RΣ");
  RowSignature s;
  s.ce = cache_.ce(r);
  s.memb.reserve(c_.size());
  if (mode_ == TableMode::Droca) s.act.reserve(c_.size());
  for (const Word& c : c_) {
    const Word rc = concat(r, c);
    s.memb.push_back(cache_.memb(rc));
    if (mode_ == TableMode::Droca) s.act.push_back(cache_.act(rc));
  }
  return s;
}

// Within one counter value, Undefined cells sit in the same columns for
// every row (validity depends only on the counter), so matching reduces to
// exact equality and rows can be hashed.

std::optional<Word> ObservationTable::is_d_closed(std::uint64_t d) {
  std::unordered_set<RowSignature, SignatureHash> seen;
  for (const Word& r : r_) seen.insert(row(r));
  for (const Word& w : rows_) {
    if (in_r(w)) continue;
    const auto v = cache_.ce(w);
    if (!v || *v > d) continue;
    if (!seen.count(row(w))) return w;
  }
  return std::nullopt;
}

std::optional<ConsistencyWitness> ObservationTable::is_d_consistent(std::uint64_t d) {
  std::unordered_map<RowSignature, std::size_t, SignatureHash> first;  // signature -> index into r_
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < r_.size(); ++i) {
    const auto v = cache_.ce(r_[i]);
    if (!v || *v > d) continue;
    auto [it, fresh] = first.emplace(row(r_[i]), i);
    if (!fresh) pairs.emplace_back(it->second, i);
  }
  for (const auto& [i, j] : pairs) {
    const Word& r = r_[i];
    const Word& s = r_[j];
    for (Letter a = 0; a < alphabet_.size(); ++a) {
      Word ra = r, sa = s;
      ra.push_back(a);
      sa.push_back(a);
      for (const Word& c : c_) {
        const Word rac = concat(ra, c), sac = concat(sa, c);
        const Memb x = cache_.memb(rac), y = cache_.memb(sac);
        bool differ;
        if (mode_ == TableMode::Voca) {
          differ = x != Memb::Undefined && y != Memb::Undefined && x != y;
        } else {
          differ = x != y || cache_.act(rac) != cache_.act(sac);
        }
        if (differ) return ConsistencyWitness{r, s, a, c};
      }
    }
  }
  return std::nullopt;
}

void ObservationTable::close_and_consistify(std::uint64_t d, const Deadline& deadline) {
  for (;;) {
    if (deadline.expired()) {
      throw BudgetExhausted("table closure ran out of time with " + std::to_string(r_.size()) + " prefixes and " +
                            std::to_string(c_.size()) + " suffixes");
    }
    if (auto w = is_d_closed(d)) {
      add_prefix(*w);
      continue;
    }
    if (auto wit = is_d_consistent(d)) {
      Word ac;
      ac.reserve(wit->c.size() + 1);
      ac.push_back(wit->a);
      ac.insert(ac.end(), wit->c.begin(), wit->c.end());
      add_suffix(ac);
      continue;
    }
    return;
  }
}

std::pair<SampleSet, CounterMap> ObservationTable::extract_sample() {
  SampleSet sample;
  for (const Word& r : rows_) {
    for (const Word& c : c_) {
      Word w = concat(r, c);
      switch (cache_.memb(w)) {
        case Memb::Yes: sample.add_positive(std::move(w)); break;
        case Memb::No: sample.add_negative(std::move(w)); break;
        case Memb::Undefined: break;
      }
    }
  }
  CounterMap ce;
  if (!sample.empty()) {
    for (const Word& p : sample.prefix_closure()) ce.set(p, cache_.ce(p).value());
  }
  return {std::move(sample), std::move(ce)};
}

std::uint64_t ObservationTable::process_counterexample(const Word& z, std::uint64_t d) {
  if (z.empty()) throw InputError("counterexample must be non-empty");
  alphabet_.validate(z);
  std::uint64_t out = d;
  Word p;
  p.reserve(z.size());
  for (std::size_t i = 0; i <= z.size(); ++i) {
    if (auto v = cache_.ce(p)) out = std::max(out, *v);
    if (i > 0) add_prefix(p);
    if (i < z.size()) p.push_back(z[i]);
  }
  return out;
}

}  // namespace ocalearn
