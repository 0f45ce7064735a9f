#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "soc/learner.hpp"
#include "soc/maze.hpp"
#include "soc/rng.hpp"
#include "soc/types.hpp"

namespace soc {

/// Everything one experiment batch needs besides the maze itself.
struct ExperimentConfig {
  LearnerParams params;
  int som_rows = 10;
  int som_cols = 10;
  int trials = 10000;
  int max_trial_steps = 500;
  int repetitions = 20;
  std::uint64_t base_seed = 1;
  int metric_window = 100;   // exploit trials averaged into the performance curve
  int map_samples = 100;     // probes per unit cell for the evaluation maps
  int census_every = 100;    // environment steps between census snapshots
};

struct TrialRecord {
  int index = 0;
  Mode mode = Mode::Explore;
  int steps = 0;
  bool reached_goal = false;
};

struct CensusSample {
  std::uint64_t step = 0;
  std::uint64_t micro = 0;
  std::uint64_t macro = 0;
};

template <typename T>
struct GridMap {
  int width = 0;
  int height = 0;
  std::vector<T> values;

  GridMap() = default;
  GridMap(int w, int h) : width(w), height(h), values(static_cast<std::size_t>(w) * h) {}

  T& at(int x, int y) { return values[static_cast<std::size_t>(y) * width + x]; }
  const T& at(int x, int y) const {
    return values[static_cast<std::size_t>(y) * width + x];
  }
};

/// Metric streams of a single repetition.
struct Trace {
  std::vector<TrialRecord> trials;
  std::vector<CensusSample> census;
  std::vector<double> performance;  // sliding mean steps per exploit trial
  GridMap<Vec2> behavior;
  GridMap<double> fitness;
  std::vector<double> som_weights;  // row-major rows*cols*2 snapshot
  int som_rows = 0;
  int som_cols = 0;
};

/// Census series averaged across repetitions.
struct MeanCensus {
  std::uint64_t step = 0;
  double micro = 0.0;
  double macro = 0.0;
};

/// Batch aggregate: element-wise means across repetitions, plus the
/// per-repetition traces they came from.
struct BatchTrace {
  std::vector<double> performance;
  std::vector<MeanCensus> census;
  GridMap<Vec2> behavior;
  GridMap<double> fitness;
  std::vector<double> som_weights;
  int som_rows = 0;
  int som_cols = 0;
  std::vector<Trace> runs;
};

struct TrialResult {
  int steps = 0;
  bool reached_goal = false;
};

/// Runs one trial from a random start until the goal, or cuts it off at
/// `max_steps` (truncation applies the last fitness update with the usual
/// bootstrap, since the cap is a harness artifact). `after_step` fires once
/// per environment step, for census bookkeeping.
template <typename L, typename StepHook>
TrialResult run_trial(L& learner, const Maze& maze, Mode mode, Rng& reset_rng,
                      int max_steps, StepHook&& after_step) {
  Vec2 pos = maze.reset(reset_rng);
  learner.begin_trial();
  std::optional<double> reward;
  int steps = 0;
  for (;;) {
    std::optional<Vec2> action = learner.step(pos, reward, false, mode);
    const StepResult res = maze.step(pos, *action);
    pos = res.position;
    ++steps;
    after_step();
    reward = res.reward;
    if (res.terminal) {
      learner.step(pos, reward, true, mode);
      return {steps, true};
    }
    if (steps >= max_steps) {
      learner.truncate(pos, res.reward);
      return {steps, false};
    }
  }
}

template <typename L>
TrialResult run_trial(L& learner, const Maze& maze, Mode mode, Rng& reset_rng,
                      int max_steps) {
  return run_trial(learner, maze, mode, reset_rng, max_steps, [] {});
}

/// One full repetition: explore and exploit trials alternate (explore
/// first), the performance series tracks exploit trials only, census
/// snapshots land every `census_every` environment steps, and the
/// evaluation maps are taken at the end.
Trace run_experiment(const Maze& maze, const ExperimentConfig& cfg,
                     std::uint64_t seed);

/// Mean exploit action per unit cell of the maze, `samples` probes each.
/// Purely observational: the learner is untouched (no SOM update, no
/// experience, no learning). Each cell owns a derived RNG stream, so the
/// result does not depend on `jobs`.
GridMap<Vec2> behavior_map(const Learner& learner, const Maze& maze,
                           std::uint64_t seed, int samples, int jobs = 1);

/// Same sampling scheme, recording the winner cell's max fitness.
GridMap<double> fitness_map(const Learner& learner, const Maze& maze,
                            std::uint64_t seed, int samples, int jobs = 1);

/// Runs `cfg.repetitions` experiments with seeds base_seed, base_seed+1, ...
/// and averages their metric streams. Repetitions are independent, so
/// `jobs > 1` fans them out over OpenMP threads; the aggregate is
/// bit-identical to the serial run either way.
BatchTrace run_batch(const Maze& maze, const ExperimentConfig& cfg,
                     int jobs = 1);

}  // namespace soc
