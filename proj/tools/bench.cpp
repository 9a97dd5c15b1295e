#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "cli.hpp"
#include "ocalearn/errors.hpp"
#include "ocalearn/opnil.hpp"
#include "ocalearn/randgen.hpp"
#include "ocalearn/teacher.hpp"

namespace ocalearn::cli {

namespace {

struct Task {
  std::size_t n;
  std::size_t k;
  std::uint64_t seed;
};

struct Record {
  Task task;
  RunReport report;
};

Record run_task(const BenchOptions& o, const Task& t) {
  Record rec{t, {}};
  GenConfig config;
  config.n_states = t.n;
  config.alphabet_size = t.k;
  config.seed = t.seed;
  LearnLimits limits;
  limits.max_rounds = o.max_rounds;
  limits.timeout = std::chrono::milliseconds(static_cast<std::int64_t>(o.timeout_s * 1000.0));
  try {
    if (o.kind == "voca") {
      Voca target = random_voca(config);
      Teacher teacher(target);
      VocaLearnResult r = learn_voca(teacher, limits);
      rec.report = r.report;
      if (r.report.success && o.verify_len && r.hypothesis &&
          brute_force_equiv(target.base(), r.hypothesis->base(), o.verify_len)) {
        rec.report.success = false;
      }
    } else {
      Droca target = random_droca(config);
      Teacher teacher(target);
      DrocaLearnResult r = learn_droca(teacher, limits);
      rec.report = r.report;
      if (r.report.success && o.verify_len && r.hypothesis &&
          brute_force_equiv(target, *r.hypothesis, o.verify_len)) {
        rec.report.success = false;
      }
    }
  } catch (const Error& e) {
    rec.report.success = false;
    rec.report.error = e.what();
  }
  return rec;
}

std::string csv_line(const std::string& kind, const Record& r) {
  std::ostringstream s;
  const RunReport& p = r.report;
  s << kind << ',' << r.task.n << ',' << r.task.k << ',' << r.task.seed << ',' << (p.success ? "true" : "false") << ','
    << std::fixed << std::setprecision(3) << p.wall_ms << ',' << p.eq_queries << ',' << p.mq_count << ','
    << p.cv_count << ',' << p.learned_states << ',' << p.longest_cex_len << ',' << p.table_rows << ','
    << p.table_cols;
  return s.str();
}

std::size_t pool_size(std::size_t requested, std::size_t tasks) {
  std::size_t n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("OCALEARN_THREADS")) {
    try {
      const unsigned long cap = std::stoul(env);
      if (cap > 0) n = std::min<std::size_t>(n, cap);
    } catch (...) {
      throw InputError("OCALEARN_THREADS must be a positive integer");
    }
  }
  return std::max<std::size_t>(1, std::min(n, tasks));
}

void write_summary(const std::string& path, const std::string& kind, const std::vector<Record>& records) {
  struct Acc {
    std::size_t total = 0, ok = 0;
    double wall = 0, eq = 0, mq = 0, cv = 0, states = 0, cex = 0, rows = 0, cols = 0;
  };
  std::map<std::pair<std::size_t, std::size_t>, Acc> cells;
  for (const Record& r : records) {
    Acc& a = cells[{r.task.n, r.task.k}];
    ++a.total;
    if (!r.report.success) continue;
    const RunReport& p = r.report;
    ++a.ok;
    a.wall += p.wall_ms;
    a.eq += static_cast<double>(p.eq_queries);
    a.mq += static_cast<double>(p.mq_count);
    a.cv += static_cast<double>(p.cv_count);
    a.states += static_cast<double>(p.learned_states);
    a.cex += static_cast<double>(p.longest_cex_len);
    a.rows += static_cast<double>(p.table_rows);
    a.cols += static_cast<double>(p.table_cols);
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << "kind,n_states,alphabet_size,instances,successes,avg_wall_ms,avg_eq_queries,avg_mq_count,avg_cv_count,"
         "avg_learned_states,avg_longest_cex_len,avg_table_rows,avg_table_cols\n";
  out << std::fixed << std::setprecision(3);
  for (const auto& [cell, a] : cells) {
    out << kind << ',' << cell.first << ',' << cell.second << ',' << a.total << ',' << a.ok;
    for (double v : {a.wall, a.eq, a.mq, a.cv, a.states, a.cex, a.rows, a.cols}) {
      out << ',';
      if (a.ok) out << v / static_cast<double>(a.ok);
    }
    out << '\n';
  }
}

}  // namespace

std::string summary_path(const std::string& csv_path) {
  const std::string ext = ".csv";
  if (csv_path.size() > ext.size() && csv_path.compare(csv_path.size() - ext.size(), ext.size(), ext) == 0) {
    return csv_path.substr(0, csv_path.size() - ext.size()) + ".summary.csv";
  }
  return csv_path + ".summary.csv";
}

int cmd_bench(const BenchOptions& o, Io io) {
  if (o.kind != "droca" && o.kind != "voca") throw InputError("kind must be droca or voca");
  std::vector<Task> tasks;
  for (std::size_t n : o.states) {
    for (std::size_t k : o.alphabets) {
      for (std::size_t i = 0; i < o.per_cell; ++i) tasks.push_back({n, k, instance_seed(o.seed, n, k, i)});
    }
  }

  std::ofstream csv(o.out_csv);
  if (!csv) throw InputError("cannot write " + o.out_csv);
  csv << kBenchHeader << '\n' << std::flush;

  // Workers fill slots; the writer emits records in task order as soon as
  // the next one is ready.
  std::vector<Record> records(tasks.size());
  std::vector<char> done(tasks.size(), 0);
  std::size_t next_to_write = 0;
  std::mutex mu;
  std::atomic<std::size_t> next_task{0};
  auto worker = [&] {
    for (std::size_t i; (i = next_task.fetch_add(1)) < tasks.size();) {
      Record r = run_task(o, tasks[i]);
      std::lock_guard<std::mutex> lock(mu);
      records[i] = std::move(r);
      done[i] = 1;
      while (next_to_write < tasks.size() && done[next_to_write]) {
        const Record& w = records[next_to_write];
        csv << csv_line(o.kind, w) << '\n' << std::flush;
        io.err << "[" << next_to_write + 1 << "/" << tasks.size() << "] n=" << w.task.n << " k=" << w.task.k
               << " success=" << (w.report.success ? "true" : "false") << " wall_ms=" << std::fixed
               << std::setprecision(1) << w.report.wall_ms << '\n';
        ++next_to_write;
      }
    }
  };
  const std::size_t threads = pool_size(o.threads, tasks.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  write_summary(summary_path(o.out_csv), o.kind, records);
  const auto ok = std::count_if(records.begin(), records.end(), [](const Record& r) { return r.report.success; });
  io.out << "records: " << records.size() << "\nsuccesses: " << ok << "\ncsv: " << o.out_csv
         << "\nsummary: " << summary_path(o.out_csv) << '\n';
  return kOk;
}

}  // namespace ocalearn::cli
