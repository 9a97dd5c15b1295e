#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ocalearn/automaton_io.hpp"
#include "ocalearn/errors.hpp"
#include "ocalearn/opni.hpp"
#include "ocalearn/opnil.hpp"
#include "ocalearn/randgen.hpp"
#include "ocalearn/rpni.hpp"
#include "ocalearn/sample_io.hpp"
#include "ocalearn/teacher.hpp"

namespace ocalearn::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_output(const std::optional<std::string>& path, const std::string& text, Io io) {
  if (!path) {
    io.out << text;
    return;
  }
  std::ofstream out(*path, std::ios::binary);
  if (!out) throw InputError("cannot write " + *path);
  out << text;
}

// Graphviz when the output path ends in ".dot", the text format otherwise.
std::string render(const Machine& m, const std::optional<std::string>& path) {
  const bool dot = path && path->size() >= 4 && path->compare(path->size() - 4, 4, ".dot") == 0;
  return dot ? to_dot(m) : encode_automaton(m);
}

Droca as_droca(const Machine& m) {
  if (const auto* d = std::get_if<Droca>(&m)) return *d;
  if (const auto* v = std::get_if<Voca>(&m)) return v->base();
  const Dfa& dfa = std::get<Dfa>(m);
  Droca out(dfa.alphabet(), dfa.num_states(), dfa.initial());
  for (StateId q = 0; q < dfa.num_states(); ++q) {
    out.set_final(q, dfa.is_final(q));
    for (Letter a = 0; a < dfa.alphabet().size(); ++a) {
      if (auto t = dfa.next(q, a)) {
        out.set_zero(q, a, {*t, CounterAction::Keep});
        out.set_positive(q, a, {*t, CounterAction::Keep});
      }
    }
  }
  return out;
}

std::string word_text(const Alphabet& alphabet, const Word& w) {
  return w.empty() ? std::string(kEpsilonToken) : alphabet.format_word(w);
}

// Maps library exceptions onto exit codes.
template <class F>
int guarded(Io io, F&& body) {
  try {
    return body();
  } catch (const InputError& e) {
    io.err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const GenerationError& e) {
    io.err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const BudgetExhausted& e) {
    io.err << "timeout: " << e.what() << '\n';
    return kTimeout;
  } catch (const Error& e) {
    io.err << "error: " << e.what() << '\n';
    return kNegative;
  }
}

void print_report(const RunReport& r, Io io) {
  io.out << "success: " << (r.success ? "true" : "false") << '\n'
         << "presumed: " << (r.presumed ? "true" : "false") << '\n'
         << "timed_out: " << (r.timed_out ? "true" : "false") << '\n'
         << "wall_ms: " << r.wall_ms << '\n'
         << "iterations: " << r.iterations << '\n'
         << "eq_queries: " << r.eq_queries << '\n'
         << "mq_count: " << r.mq_count << '\n'
         << "cv_count: " << r.cv_count << '\n'
         << "act_entries: " << r.act_entries << '\n'
         << "learned_states: " << r.learned_states << '\n'
         << "longest_cex_len: " << r.longest_cex_len << '\n'
         << "table_rows: " << r.table_rows << '\n'
         << "table_cols: " << r.table_cols << '\n'
         << "d: " << r.d << '\n';
  if (!r.error.empty()) io.out << "error: " << r.error << '\n';
}

}  // namespace

int cmd_generate(const std::string& kind, std::size_t n, std::size_t alphabet_size, std::uint64_t seed,
                 const std::optional<std::string>& out_path, Io io) {
  return guarded(io, [&] {
    GenConfig config;
    config.n_states = n;
    config.alphabet_size = alphabet_size;
    config.seed = seed;
    std::string text;
    if (kind == "droca") {
      text = render(random_droca(config), out_path);
    } else if (kind == "voca") {
      text = render(random_voca(config), out_path);
    } else {
      throw InputError("kind must be droca or voca");
    }
    write_output(out_path, text, io);
    return kOk;
  });
}

int cmd_learn_passive(const std::string& sample_path, const std::optional<std::string>& ce_path,
                      const std::optional<std::string>& out_path, Io io) {
  return guarded(io, [&] {
    const std::string sample_text = read_file(sample_path);
    const std::string ce_text = ce_path ? read_file(*ce_path) : std::string();
    const Alphabet alphabet = infer_alphabet(sample_text, ce_text);
    const SampleSet sample = parse_sample(sample_text, alphabet);
    std::string text;
    if (ce_path) {
      const CounterMap ce = parse_counter_map(ce_text, alphabet);
      OpniOptions options;
      options.check_invariants = true;
      const Droca learned = opni(sample, ce, alphabet, options);
      const bool ok = check_consistency(learned, sample, ce);
      io.out << "consistent: " << (ok ? "true" : "false") << "\nstates: " << learned.num_states() << '\n';
      text = render(learned, out_path);
    } else {
      const Dfa learned = rpni(sample, alphabet);
      const bool ok = consistent_with(learned, sample);
      io.out << "consistent: " << (ok ? "true" : "false") << "\nstates: " << learned.num_states() << '\n';
      text = render(learned, out_path);
    }
    write_output(out_path, text, io);
    return kOk;
  });
}

int cmd_learn_active(const std::string& target_path, const ActiveOptions& options, Io io) {
  return guarded(io, [&] {
    const Machine target = decode_automaton(read_file(target_path));
    std::string kind = options.kind.value_or(std::holds_alternative<Voca>(target) ? "voca" : "droca");
    LearnLimits limits;
    limits.max_rounds = options.max_rounds;
    limits.timeout = std::chrono::milliseconds(static_cast<std::int64_t>(options.timeout_s * 1000.0));
    RunReport report;
    std::string text;
    if (kind == "voca") {
      const auto* v = std::get_if<Voca>(&target);
      if (!v) throw InputError("--kind voca needs a voca target");
      Teacher teacher(*v);
      VocaLearnResult result = learn_voca(teacher, limits);
      report = result.report;
      if (result.hypothesis) text = render(*result.hypothesis, options.out_path);
    } else if (kind == "droca") {
      if (std::holds_alternative<Dfa>(target)) throw InputError("--kind droca needs a droca or voca target");
      Teacher teacher(as_droca(target));
      DrocaLearnResult result = learn_droca(teacher, limits);
      report = result.report;
      if (result.hypothesis) text = render(*result.hypothesis, options.out_path);
    } else {
      throw InputError("kind must be droca or voca");
    }
    print_report(report, io);
    if (options.out_path && !text.empty()) write_output(options.out_path, text, io);
    if (report.success) return kOk;
    return report.timed_out ? kTimeout : kNegative;
  });
}

int cmd_check(const std::string& path, const std::optional<std::string>& other, const CheckOptions& options, Io io) {
  return guarded(io, [&] {
    const Droca a = as_droca(decode_automaton(read_file(path)));
    if (!other) {
      if (!options.sample_path) throw InputError("check needs a second machine or --sample");
      const SampleSet sample = parse_sample(read_file(*options.sample_path), a.alphabet());
      bool ok;
      if (options.ce_path) {
        ok = check_consistency(a, sample, parse_counter_map(read_file(*options.ce_path), a.alphabet()));
      } else {
        ok = std::all_of(sample.positives().begin(), sample.positives().end(),
                         [&](const Word& w) { return a.accepts(w); }) &&
             std::none_of(sample.negatives().begin(), sample.negatives().end(),
                          [&](const Word& w) { return a.accepts(w); });
      }
      io.out << (ok ? "consistent" : "inconsistent") << '\n';
      return ok ? kOk : kNegative;
    }
    const Droca b = as_droca(decode_automaton(read_file(*other)));
    MsqLimits limits;
    limits.max_cex_length = options.max_len;
    const EquivalenceVerdict v = product_search(a, b, limits);
    if (const auto* c = std::get_if<Counterexample>(&v)) {
      io.out << "counterexample " << word_text(a.alphabet(), c->word) << ' ' << to_string(c->kind) << '\n';
      return kNegative;
    }
    if (const auto* p = std::get_if<PresumedEquivalent>(&v)) {
      // The exact check already failed, so a separating word lies past the bound.
      io.out << "inequivalent (no separating word of length <= " << p->length_bound << ")\n";
      return kNegative;
    }
    io.out << "equivalent\n";
    return kOk;
  });
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  auto number = [&](const std::string& s) -> std::size_t {
    try {
      std::size_t pos = 0;
      const unsigned long long v = std::stoull(s, &pos);
      if (pos != s.size()) throw InputError("");
      return static_cast<std::size_t>(v);
    } catch (...) {
      throw InputError("bad number '" + s + "' in '" + text + "'");
    }
  };
  if (auto colon = text.find(':'); colon != std::string::npos) {
    const std::size_t lo = number(text.substr(0, colon)), hi = number(text.substr(colon + 1));
    if (lo > hi) throw InputError("empty range '" + text + "'");
    for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(number(item));
  if (out.empty()) throw InputError("empty list");
  return out;
}

int run(int argc, const char* const* argv, Io io) {
  CLI::App app{"Passive and active learning of one-counter automata", "ocalearn"};
  app.require_subcommand(1);

  std::string gen_kind;
  std::size_t gen_n = 0, gen_k = 0;
  std::uint64_t gen_seed = 1;
  std::optional<std::string> gen_out;
  auto* gen = app.add_subcommand("generate", "Write a random DROCA or VOCA");
  gen->add_option("kind", gen_kind, "droca or voca")->required()->check(CLI::IsMember({"droca", "voca"}));
  gen->add_option("n", gen_n, "number of states")->required();
  gen->add_option("alphabet_size", gen_k, "number of letters")->required();
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("--out", gen_out, "output file (default: stdout)");

  std::string lp_sample;
  std::optional<std::string> lp_ce, lp_out;
  auto* lp = app.add_subcommand("learn-passive", "Learn from a sample (OPNI with counter values, RPNI without)");
  lp->add_option("sample", lp_sample, "sample file")->required();
  lp->add_option("ce", lp_ce, "counter-value file");
  lp->add_option("--out", lp_out, "output file (default: stdout)");

  std::string la_target;
  ActiveOptions la;
  auto* la_cmd = app.add_subcommand("learn-active", "Learn a target machine through queries");
  la_cmd->add_option("target", la_target, "target automaton file")->required();
  la_cmd->add_option("--kind", la.kind, "droca or voca (default: from the file)")
      ->check(CLI::IsMember({"droca", "voca"}));
  la_cmd->add_option("--timeout-s", la.timeout_s, "wall-clock budget in seconds (0: none)");
  la_cmd->add_option("--max-rounds", la.max_rounds, "maximum equivalence rounds");
  la_cmd->add_option("--out", la.out_path, "write the hypothesis here");

  std::string ck_a;
  std::optional<std::string> ck_b;
  CheckOptions ck;
  auto* ck_cmd = app.add_subcommand("check", "Compare two machines, or a machine with a sample");
  ck_cmd->add_option("a", ck_a, "automaton file")->required();
  ck_cmd->add_option("b", ck_b, "second automaton file");
  ck_cmd->add_option("--max-len", ck.max_len, "longest word explored (0: no bound)");
  ck_cmd->add_option("--sample", ck.sample_path, "sample file");
  ck_cmd->add_option("--ce", ck.ce_path, "counter-value file");

  BenchOptions bench;
  std::string states_text = "2:8", alphabet_text = "2:3";
  auto* bench_cmd = app.add_subcommand("bench", "Run a learning sweep over random targets");
  bench_cmd->add_option("--kind", bench.kind, "droca or voca")->check(CLI::IsMember({"droca", "voca"}));
  bench_cmd->add_option("--states", states_text, "state counts, e.g. 2:8 or 4,6,8");
  bench_cmd->add_option("--alphabet", alphabet_text, "alphabet sizes, e.g. 2:3");
  bench_cmd->add_option("--per-cell", bench.per_cell, "machines per (states, alphabet) cell");
  bench_cmd->add_option("--timeout-s", bench.timeout_s, "budget per learning task in seconds");
  bench_cmd->add_option("--max-rounds", bench.max_rounds, "maximum equivalence rounds per task");
  bench_cmd->add_option("--seed", bench.seed, "master seed");
  bench_cmd->add_option("--verify-len", bench.verify_len, "brute-force check of successes up to this length");
  bench_cmd->add_option("--threads", bench.threads, "worker threads (0: all cores)");
  bench_cmd->add_option("--out", bench.out_csv, "record CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, io.out, io.err);
    return code == 0 ? kOk : kInputError;
  }

  if (gen->parsed()) return cmd_generate(gen_kind, gen_n, gen_k, gen_seed, gen_out, io);
  if (lp->parsed()) return cmd_learn_passive(lp_sample, lp_ce, lp_out, io);
  if (la_cmd->parsed()) return cmd_learn_active(la_target, la, io);
  if (ck_cmd->parsed()) return cmd_check(ck_a, ck_b, ck, io);
  return guarded(io, [&] {
    bench.states = parse_size_list(states_text);
    bench.alphabets = parse_size_list(alphabet_text);
    return cmd_bench(bench, io);
  });
}

}  // namespace ocalearn::cli
