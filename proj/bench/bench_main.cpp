// Compares the serial reference paths against their OpenMP counterparts
// on the two kernels that fan out: repetition batches and map sampling.
// Results must match bit for bit; only the wall time may differ.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "soc/harness.hpp"
#include "soc/maze.hpp"

using namespace soc;

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double time_s(F&& fn) {
  const auto t0 = Clock::now();
  fn();
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void row(const char* name, double serial, double parallel, bool identical) {
  std::printf("%-28s %10.3fs %10.3fs %8.2fx   %s\n", name, serial, parallel,
              serial / parallel, identical ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  int jobs = 2;
#ifdef _OPENMP
  jobs = omp_get_max_threads();
#endif
  if (argc > 1) {
    jobs = std::stoi(argv[1]);
  }
  std::printf("serial reference vs OpenMP (%d jobs)\n", jobs);
  std::printf("%-28s %11s %11s %9s\n", "kernel", "serial", "parallel",
              "speedup");

  Maze maze = Maze::parse(one_wall_text());

  {
    ExperimentConfig cfg;
    cfg.trials = 2000;
    cfg.repetitions = 8;
    cfg.base_seed = 42;
    BatchTrace serial;
    BatchTrace parallel;
    const double ts = time_s([&] { serial = run_batch(maze, cfg, 1); });
    const double tp = time_s([&] { parallel = run_batch(maze, cfg, jobs); });
    row("run_batch 8 reps x 2000", ts, tp,
        serial.performance == parallel.performance &&
            serial.som_weights == parallel.som_weights);
  }

  {
    ExperimentConfig cfg;
    cfg.trials = 3000;
    cfg.repetitions = 1;
    Learner learner(cfg.som_rows, cfg.som_cols, cfg.params, 4242);
    Rng rng(7);
    for (int t = 0; t < cfg.trials; ++t) {
      run_trial(learner, maze, t % 2 ? Mode::Exploit : Mode::Explore, rng,
                cfg.max_trial_steps);
    }

    const int samples = 20000;
    GridMap<Vec2> bs, bp;
    const double ts =
        time_s([&] { bs = behavior_map(learner, maze, 5, samples, 1); });
    const double tp =
        time_s([&] { bp = behavior_map(learner, maze, 5, samples, jobs); });
    row("behavior_map 20k samples", ts, tp, bs.values == bp.values);

    GridMap<double> fs, fp;
    const double tfs =
        time_s([&] { fs = fitness_map(learner, maze, 6, samples, 1); });
    const double tfp =
        time_s([&] { fp = fitness_map(learner, maze, 6, samples, jobs); });
    row("fitness_map 20k samples", tfs, tfp, fs.values == fp.values);
  }

  return 0;
}
