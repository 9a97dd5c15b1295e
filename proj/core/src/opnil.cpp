#include "ocalearn/opnil.hpp"

#include <variant>

#include "ocalearn/errors.hpp"
#include "ocalearn/opni.hpp"

namespace ocalearn {

namespace {

template <class Machine, class Learn>
void run_loop(Teacher& teacher, TableMode mode, const LearnLimits& limits, std::optional<Machine>& hypothesis,
              RunReport& report, Learn&& learn_once) {
  const auto start = std::chrono::steady_clock::now();
  const Deadline deadline = limits.timeout.count() > 0 ? Deadline::after(limits.timeout) : Deadline::never();
  ObservationTable table(teacher, mode);
  std::uint64_t d = 0;

  auto finish = [&] {
    report.eq_queries = teacher.stats().msq;
    report.mq_count = teacher.stats().mq;
    report.cv_count = teacher.stats().cv;
    report.act_entries = table.cache().act_entries();
    report.table_rows = table.num_rows();
    report.table_cols = table.num_columns();
    report.d = d;
    report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  };

  try {
    for (;;) {
      if (report.iterations >= limits.max_rounds) {
        report.timed_out = true;
        break;
      }
      ++report.iterations;
      table.close_and_consistify(d, deadline);
      auto [sample, ce] = table.extract_sample();
      OpniOptions options;
      options.deadline = deadline;
      options.check_invariants = limits.check_invariants;
      Machine learned = learn_once(sample, ce, options);
      report.learned_states = learned.num_states();
      hypothesis = complete_with_sink(learned);
      const EquivalenceVerdict verdict = teacher.msq(*hypothesis, deadline);
      if (std::holds_alternative<Equivalent>(verdict)) {
        report.success = true;
        break;
      }
      if (std::holds_alternative<PresumedEquivalent>(verdict)) {
        report.success = true;
        report.presumed = true;
        break;
      }
      const Word& z = std::get<Counterexample>(verdict).word;
      report.longest_cex_len = std::max(report.longest_cex_len, z.size());
      d = table.process_counterexample(z, d);
    }
  } catch (const BudgetExhausted& e) {
    report.timed_out = true;
    report.error = e.what();
  } catch (const Error& e) {
    report.error = e.what();
  }
  finish();
}

}  // namespace

DrocaLearnResult learn_droca(Teacher& teacher, const LearnLimits& limits) {
  if (teacher.is_voca()) throw InputError("learn_droca needs a DROCA teacher");
  DrocaLearnResult out;
  const Alphabet alphabet = teacher.alphabet();
  run_loop<Droca>(teacher, TableMode::Droca, limits, out.hypothesis, out.report,
                  [&](const SampleSet& s, const CounterMap& ce, const OpniOptions& o) { return opni(s, ce, alphabet, o); });
  return out;
}

VocaLearnResult learn_voca(Teacher& teacher, const LearnLimits& limits) {
  if (!teacher.is_voca()) throw InputError("learn_voca needs a VOCA teacher");
  VocaLearnResult out;
  const Alphabet alphabet = teacher.alphabet();
  const Partition partition = *teacher.partition();
  run_loop<Voca>(teacher, TableMode::Voca, limits, out.hypothesis, out.report,
                 [&](const SampleSet& s, const CounterMap&, const OpniOptions& o) {
                   return opni_voca(s, partition, alphabet, o);
                 });
  return out;
}

}  // namespace ocalearn
