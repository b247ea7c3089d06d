// Times the verification kernels in serial and OpenMP mode on a mid-size
// instance and confirms both produce identical reports.

#include <chrono>
#include <cstdio>
#include <string>

#include "latmon/embedding.hpp"
#include "latmon/pipeline.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace latmon;

namespace {

using Clock = std::chrono::steady_clock;

template <typename Fn>
double time_ms(Fn&& fn) {
  const auto start = Clock::now();
  fn();
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

struct Row {
  const char* name;
  double serial_ms = 0;
  double parallel_ms = 0;
  bool identical = true;
};

}  // namespace

int main(int argc, char** argv) {
  const std::string lattice = argc > 1 ? argv[1] : "N5";
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif

  RunConfig cfg;
  cfg.lattice = lattice;
  ResolvedRun r = resolve(cfg);
  const Engine& e = r.engine;
  const Labeling& lb = *r.labeling;
  std::printf("instance: %s, kappa %u, depth %u, %llu nodes\n",
              lattice.c_str(), r.kappa, r.depth,
              static_cast<unsigned long long>(
                  e.trunc.node_count(e.trunc.depth())));

  std::vector<Row> rows;

  {
    Row row{"composition"};
    CheckReport a, b;
    CompositionOptions opt;
    opt.exec = ExecMode::Serial;
    row.serial_ms = time_ms([&] { a = verify_composition(e, opt); });
    opt.exec = ExecMode::Parallel;
    row.parallel_ms = time_ms([&] { b = verify_composition(e, opt); });
    row.identical = a.to_json() == b.to_json();
    rows.push_back(row);
  }
  {
    Row row{"independence (20k pairs)"};
    CheckReport a, b;
    IndependenceOptions opt;
    opt.trials = 20'000;
    opt.size_bound = 4;
    opt.exec = ExecMode::Serial;
    row.serial_ms = time_ms([&] { a = verify_independence(e, opt); });
    opt.exec = ExecMode::Parallel;
    row.parallel_ms = time_ms([&] { b = verify_independence(e, opt); });
    row.identical = a.to_json() == b.to_json();
    rows.push_back(row);
  }
  {
    Row row{"enumeration properties"};
    CheckReport a, b;
    row.serial_ms = time_ms(
        [&] { a = verify_enumeration(lb, e.trunc, {ExecMode::Serial, 0}); });
    row.parallel_ms = time_ms(
        [&] { b = verify_enumeration(lb, e.trunc, {ExecMode::Parallel, 0}); });
    row.identical = a.to_json() == b.to_json();
    rows.push_back(row);
  }
  {
    Row row{"join preservation (full family)"};
    CheckReport a, b;
    JoinOptions opt;
    opt.exec = ExecMode::Serial;
    row.serial_ms =
        time_ms([&] { a = verify_join_preservation(e, lb, r.ideals, opt); });
    opt.exec = ExecMode::Parallel;
    row.parallel_ms =
        time_ms([&] { b = verify_join_preservation(e, lb, r.ideals, opt); });
    row.identical = a.to_json() == b.to_json();
    rows.push_back(row);
  }
  {
    Row row{"meet preservation (full family)"};
    CheckReport a, b;
    MeetOptions opt;
    opt.exec = ExecMode::Serial;
    row.serial_ms =
        time_ms([&] { a = verify_meet_preservation(e, lb, r.ideals, opt); });
    opt.exec = ExecMode::Parallel;
    row.parallel_ms =
        time_ms([&] { b = verify_meet_preservation(e, lb, r.ideals, opt); });
    row.identical = a.to_json() == b.to_json();
    rows.push_back(row);
  }

  std::printf("\n%-32s %12s %12s %9s %s\n", "kernel", "serial ms",
              "parallel ms", "speedup", "identical");
  bool all_identical = true;
  for (const auto& row : rows) {
    std::printf("%-32s %12.1f %12.1f %8.2fx %s\n", row.name, row.serial_ms,
                row.parallel_ms,
                row.parallel_ms > 0 ? row.serial_ms / row.parallel_ms : 0.0,
                row.identical ? "yes" : "NO");
    all_identical = all_identical && row.identical;
  }
  if (!all_identical) {
    std::printf("serial/parallel reports diverge\n");
    return 1;
  }
  return 0;
}
