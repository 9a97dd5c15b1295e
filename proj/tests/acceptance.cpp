// Acceptance checks: one PASS/FAIL line per criterion.
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ocalearn/errors.hpp"
#include "ocalearn/observation_table.hpp"
#include "ocalearn/opni.hpp"
#include "ocalearn/opnil.hpp"
#include "ocalearn/randgen.hpp"
#include "ocalearn/rpni.hpp"
#include "ocalearn/teacher.hpp"
#include "support.hpp"

using namespace ocalearn;
using test::w;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail = what;
      pass = false;
    }
  }
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

constexpr Effect D = Effect::Decrement, K = Effect::Keep, I = Effect::Increment, U = Effect::Unknown;

Outcome enrichment() {
  Outcome o;
  const auto start = Clock::now();
  const CounterMap ce = test::worked_ce();
  const ActionTuple r{0, {I, K}}, s{1, {U, D}}, u{0, {U, I}}, t{0, {U, U}}, v{1, {U, U}};
  o.require(compute_act(w(""), ce, test::ab()) == r, "Act(eps)");
  o.require(compute_act(w("a"), ce, test::ab()) == s, "Act(a)");
  o.require(compute_act(w("b"), ce, test::ab()) == u, "Act(b)");
  o.require(compute_act(w("ab"), ce, test::ab()) == t, "Act(ab)");
  o.require(compute_act(w("bb"), ce, test::ab()) == v, "Act(bb)");
  o.require(encode_word(w("ab"), ce) == std::vector<AnnotatedLetter>{{0, 0}, {1, 1}}, "Enc(ab)");
  o.require(encode_word(w("bb"), ce) == std::vector<AnnotatedLetter>{{1, 0}, {1, 0}}, "Enc(bb)");

  const EnrichedSample es = enrich_sample(test::worked_sample(), ce, test::ab());
  const EnrichedAlphabet& e = es.alphabet;
  o.require(e.actions() == std::vector<ActionTuple>{r, s, u, t, v}, "action order");
  const Letter a0 = e.annotated(0, 0), b0 = e.annotated(1, 0), b1 = e.annotated(1, 1);
  const Letter R = e.action(0), S = e.action(1), Uu = e.action(2), T = e.action(3), V = e.action(4);
  o.require(es.sample.positives() == WordSet{{a0, b1}, {b0, b0}, {R}, {a0, S}, {a0, b1, T}, {b0, Uu}, {b0, b0, V}},
            "enriched positives");
  o.require(es.sample.negatives() == WordSet{{a0}, {b0}, {Uu}, {b0, R}}, "enriched negatives");
  const double secs = seconds_since(start);
  o.require(secs < 1.0, "took " + std::to_string(secs) + " s");
  if (o.pass) o.detail = "Act, Enc and the enriched sample match exactly";
  return o;
}

Outcome passive_example() {
  Outcome o;
  const Droca m = opni(test::worked_sample(), test::worked_ce(), test::ab(), {.check_invariants = true});
  o.require(check_consistency(m, test::worked_sample(), test::worked_ce()), "machine inconsistent with sample");
  const auto b = m.positive(m.initial(), 1);
  o.require(b && b->action == CounterAction::Decrement, "no decrementing b-transition from the initial state");
  if (o.pass) o.detail = "consistent, " + std::to_string(m.num_states()) + " states";
  return o;
}

Outcome tables() {
  Outcome o;
  Teacher td(test::anbm_droca());
  ObservationTable t1(td, TableMode::Droca);
  for (const char* r : {"a", "b", "ab"}) t1.add_prefix(w(r));
  o.require(t1.row(w("a")) == RowSignature{1, {Memb::No}, {{1, {I, D}}}}, "droca table row a");
  o.require(t1.row(w("aa")) == RowSignature{2, {Memb::No}, {{1, {I, D}}}}, "droca table row aa");
  o.require(t1.row(w("b")) == RowSignature{0, {Memb::Yes}, {{0, {K, K}}}}, "droca table row b");
  o.require(t1.row(w("")) == RowSignature{0, {Memb::No}, {{0, {I, K}}}}, "droca table row eps");
  o.require(t1.row(w("abb")) == RowSignature{0, {Memb::Yes}, {{0, {K, K}}}}, "droca table row abb");
  o.require(!t1.is_d_closed(1) && !t1.is_d_consistent(1), "droca table not 1-closed");

  Teacher tv(test::anbm_voca());
  ObservationTable t2(tv, TableMode::Voca);
  for (const char* r : {"a", "ab"}) t2.add_prefix(w(r));
  o.require(t2.row(w("ab")) == RowSignature{0, {Memb::Yes}, {}}, "voca table row ab");
  o.require(t2.row(w("aba")) == RowSignature{1, {Memb::No}, {}}, "voca table row aba");
  o.require(t2.row(w("b")) == RowSignature{std::nullopt, {Memb::Undefined}, {}}, "voca table row b");
  o.require(t2.row(w("abb")) == RowSignature{std::nullopt, {Memb::Undefined}, {}}, "voca table row abb");
  o.require(!t2.is_d_closed(1) && !t2.is_d_consistent(1), "voca table not 1-closed");
  if (o.pass) o.detail = "cells, closedness and consistency match";
  return o;
}

Outcome active_droca() {
  Outcome o;
  Teacher t(test::anbm_droca());
  const DrocaLearnResult r = learn_droca(t, {.max_rounds = 50, .timeout = std::chrono::seconds(60)});
  o.require(r.report.success && r.hypothesis, "learning failed: " + r.report.error);
  if (!o.pass) return o;
  o.require(!brute_force_equiv(*r.hypothesis, test::anbm_droca(), 14), "hypothesis differs within length 14");
  if (o.pass) {
    std::ostringstream s;
    s << r.report.eq_queries << " equivalence queries, " << r.report.wall_ms << " ms";
    o.detail = s.str();
  }
  return o;
}

Outcome active_voca() {
  Outcome o;
  Teacher t(test::anbm_voca());
  const VocaLearnResult r = learn_voca(t, {.timeout = std::chrono::seconds(60)});
  o.require(r.report.success && r.hypothesis, "learning failed: " + r.report.error);
  if (!o.pass) return o;
  o.require(r.hypothesis->partition() == test::anbm_voca().partition(), "partition changed");
  o.require(!brute_force_equiv(r.hypothesis->base(), test::anbm_voca().base(), 14),
            "hypothesis differs within length 14");
  if (o.pass) {
    std::ostringstream s;
    s << r.report.eq_queries << " equivalence queries, " << r.report.wall_ms << " ms";
    o.detail = s.str();
  }
  return o;
}

Outcome sweep() {
  Outcome o;
  std::size_t total = 0, ok = 0;
  for (std::size_t n : {4, 6, 8}) {
    for (std::size_t i = 0; i < 25; ++i) {
      GenConfig config;
      config.n_states = n;
      config.alphabet_size = 2;
      config.seed = instance_seed(1, n, 2, i);
      const Droca target = random_droca(config);
      Teacher t(target);
      const DrocaLearnResult r = learn_droca(t, {.timeout = std::chrono::seconds(120)});
      ++total;
      if (r.report.success && r.hypothesis && !brute_force_equiv(*r.hypothesis, target, 12)) ++ok;
    }
  }
  o.require(ok * 10 >= total * 9, "only " + std::to_string(ok) + "/" + std::to_string(total));
  if (o.pass) o.detail = std::to_string(ok) + "/" + std::to_string(total) + " learned and verified";
  return o;
}

Outcome properties() {
  Outcome o;
  std::mt19937_64 rng(7);

  for (int i = 0; i < 1000 && o.pass; ++i) {
    const std::size_t k = 1 + i % 3;
    const SampleSet s = test::random_sample(rng, k, 1 + i % 40, i % 9);
    o.require(consistent_with(rpni(s, Alphabet::latin(k)), s), "rpni inconsistent on sample " + std::to_string(i));
  }

  for (int i = 0; i < 1000 && o.pass; ++i) {
    const Word x = test::random_word(rng, 3, 4), y = test::random_word(rng, 3, 4), z = test::random_word(rng, 3, 4);
    const bool anti = !(llex_compare(x, y) <= 0 && llex_compare(y, x) <= 0) || x == y;
    const bool trans = !(llex_compare(x, y) <= 0 && llex_compare(y, z) <= 0) || llex_compare(x, z) <= 0;
    o.require(anti && trans, "llex order violated");
  }

  std::uniform_int_distribution<int> effect(-1, 2);
  auto random_tuple = [&] {
    ActionTuple t;
    t.sign = rng() & 1;
    for (int j = 0; j < 3; ++j) t.effects.push_back(static_cast<Effect>(effect(rng)));
    return t;
  };
  for (int i = 0; i < 1000 && o.pass; ++i) {
    const ActionTuple x = random_tuple(), y = random_tuple();
    o.require(act_similar(x, x) && act_similar(x, y) == act_similar(y, x), "similarity not reflexive/symmetric");
  }

  for (std::uint64_t seed = 1; seed <= 100 && o.pass; ++seed) {
    GenConfig config;
    config.n_states = 2 + seed % 5;
    config.seed = seed;
    const Droca m = random_droca(config);
    const auto [sample, ce] = test::sample_from(m, rng, 12, 7);
    const OpniTrace tr = opni_trace(sample, ce, m.alphabet());
    o.require(merged_prefixes_similar(tr.hat_dfa, tr.enriched.alphabet, sample, ce, m.alphabet()),
              "merged prefixes with dissimilar actions");
    o.require(check_consistency(tr.droca, sample, ce), "OPNI output inconsistent");
  }

  for (int i = 0; i < 200 && o.pass; ++i) {
    GenConfig config;
    config.n_states = 2 + i % 4;
    config.seed = 300 + i;
    const Droca x = random_droca(config);
    config.seed = 7000 + i / 4;
    const Droca y = i % 5 == 0 ? x : random_droca(config);
    const EquivalenceVerdict v = product_search(x, y);
    const auto bf = brute_force_equiv(x, y, 10);
    if (const auto* c = std::get_if<Counterexample>(&v)) {
      if (c->word.size() <= 10) {
        o.require(bf && bf->word == c->word && bf->kind == c->kind, "msq counterexample not minimal");
      } else {
        o.require(!bf, "msq missed a short counterexample");
      }
    } else {
      o.require(!bf, "msq reported equivalence for differing machines");
    }
  }

  for (std::uint64_t seed = 1; seed <= 50 && o.pass; ++seed) {
    GenConfig config;
    config.n_states = 3 + seed % 6;
    config.alphabet_size = 2 + seed % 2;
    config.seed = seed;
    o.require(random_droca(config) == random_droca(config) && random_voca(config) == random_voca(config),
              "generation not reproducible");
  }
  if (o.pass) o.detail = "all property checks hold";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"enrichment of the worked sample", enrichment},
      {"passive learning of the worked sample", passive_example},
      {"observation tables over the a^n b^m machines", tables},
      {"active learning of the a^n b^m DROCA", active_droca},
      {"active learning of the a^n b^m VOCA", active_voca},
      {"random DROCA sweep", sweep},
      {"property checks", properties},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " ("
              << o.detail << ")" << std::endl;
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
