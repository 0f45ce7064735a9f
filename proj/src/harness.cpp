#include "soc/harness.hpp"

#include <algorithm>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace soc {

namespace {

// Salts for the independent random streams of one repetition.
constexpr std::uint64_t kLearnerStream = 1;
constexpr std::uint64_t kResetStream = 2;
constexpr std::uint64_t kMapStream = 3;

template <typename T, typename Probe>
GridMap<T> sample_map(const Maze& maze, std::uint64_t seed, int samples,
                      int jobs, Probe&& probe) {
  GridMap<T> map(maze.grid_width(), maze.grid_height());
  const int cells = map.width * map.height;

#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(std::max(jobs, 1)) \
    if (jobs > 1)
#endif
  for (int i = 0; i < cells; ++i) {
    const int cx = i % map.width;
    const int cy = i / map.width;
    Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(i));
    T acc{};
    for (int s = 0; s < samples; ++s) {
      const Vec2 pos{cx + rng.uniform01(), cy + rng.uniform01()};
      probe(pos, rng, acc);
    }
    if constexpr (std::is_same_v<T, Vec2>) {
      acc[0] /= samples;
      acc[1] /= samples;
    } else {
      acc /= samples;
    }
    map.at(cx, cy) = acc;
  }
  return map;
}

}  // namespace

GridMap<Vec2> behavior_map(const Learner& learner, const Maze& maze,
                           std::uint64_t seed, int samples, int jobs) {
  return sample_map<Vec2>(maze, seed, samples, jobs,
                          [&learner](const Vec2& pos, Rng& rng, Vec2& acc) {
                            const Vec2 a = learner.exploit_probe(pos, rng);
                            acc[0] += a[0];
                            acc[1] += a[1];
                          });
}

GridMap<double> fitness_map(const Learner& learner, const Maze& maze,
                            std::uint64_t seed, int samples, int jobs) {
  return sample_map<double>(maze, seed, samples, jobs,
                            [&learner](const Vec2& pos, Rng&, double& acc) {
                              acc += learner.max_fitness_probe(pos);
                            });
}

Trace run_experiment(const Maze& maze, const ExperimentConfig& cfg,
                     std::uint64_t seed) {
  if (cfg.metric_window < 1 || cfg.trials < cfg.metric_window) {
    throw std::invalid_argument("need trials >= metric_window >= 1");
  }
  if (cfg.max_trial_steps < 1 || cfg.map_samples < 1 || cfg.census_every < 1) {
    throw std::invalid_argument(
        "max_trial_steps, map_samples, census_every must be >= 1");
  }

  Learner learner(cfg.som_rows, cfg.som_cols, cfg.params,
                  Rng::derive_seed(seed, kLearnerStream));
  Rng reset_rng = Rng::derive(seed, kResetStream);

  Trace trace;
  trace.trials.reserve(cfg.trials);
  trace.som_rows = cfg.som_rows;
  trace.som_cols = cfg.som_cols;

  std::uint64_t global_step = 0;
  auto after_step = [&] {
    ++global_step;
    if (global_step % cfg.census_every == 0) {
      trace.census.push_back({global_step, learner.pool().micro_count(),
                              learner.pool().macro_count()});
    }
  };

  // Sliding window over exploit-trial step counts.
  std::vector<int> window;
  std::size_t window_head = 0;
  std::uint64_t window_sum = 0;

  for (int t = 0; t < cfg.trials; ++t) {
    const Mode mode = (t % 2 == 0) ? Mode::Explore : Mode::Exploit;
    const TrialResult res = run_trial(learner, maze, mode, reset_rng,
                                      cfg.max_trial_steps, after_step);
    trace.trials.push_back({t, mode, res.steps, res.reached_goal});

    if (mode == Mode::Exploit) {
      if (window.size() < static_cast<std::size_t>(cfg.metric_window)) {
        window.push_back(res.steps);
        window_sum += res.steps;
      } else {
        window_sum += res.steps - window[window_head];
        window[window_head] = res.steps;
        window_head = (window_head + 1) % window.size();
      }
      trace.performance.push_back(static_cast<double>(window_sum) /
                                  static_cast<double>(window.size()));
    }
  }

  trace.behavior = behavior_map(learner, maze,
                                Rng::derive_seed(seed, kMapStream),
                                cfg.map_samples);
  trace.fitness = fitness_map(learner, maze,
                              Rng::derive_seed(seed, kMapStream + 1),
                              cfg.map_samples);

  trace.som_weights.reserve(
      static_cast<std::size_t>(cfg.som_rows) * cfg.som_cols * 2);
  for (int r = 0; r < cfg.som_rows; ++r) {
    for (int c = 0; c < cfg.som_cols; ++c) {
      for (double w : learner.som().weight({r, c})) {
        trace.som_weights.push_back(w);
      }
    }
  }
  return trace;
}

BatchTrace run_batch(const Maze& maze, const ExperimentConfig& cfg, int jobs) {
  if (cfg.repetitions < 1) {
    throw std::invalid_argument("repetitions must be >= 1");
  }

  std::vector<Trace> runs(cfg.repetitions);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(std::max(jobs, 1)) \
    if (jobs > 1)
#endif
  for (int rep = 0; rep < cfg.repetitions; ++rep) {
    runs[rep] = run_experiment(maze, cfg, cfg.base_seed + rep);
  }

  BatchTrace batch;
  batch.som_rows = cfg.som_rows;
  batch.som_cols = cfg.som_cols;
  const double n = static_cast<double>(cfg.repetitions);

  batch.performance.assign(runs.front().performance.size(), 0.0);
  for (const Trace& run : runs) {
    for (std::size_t i = 0; i < batch.performance.size(); ++i) {
      batch.performance[i] += run.performance[i];
    }
  }
  for (double& v : batch.performance) {
    v /= n;
  }

  // Shortest census series wins so every averaged point covers all reps.
  std::size_t census_len = runs.front().census.size();
  for (const Trace& run : runs) {
    census_len = std::min(census_len, run.census.size());
  }
  batch.census.resize(census_len);
  for (std::size_t i = 0; i < census_len; ++i) {
    batch.census[i].step = runs.front().census[i].step;
    for (const Trace& run : runs) {
      batch.census[i].micro += static_cast<double>(run.census[i].micro);
      batch.census[i].macro += static_cast<double>(run.census[i].macro);
    }
    batch.census[i].micro /= n;
    batch.census[i].macro /= n;
  }

  batch.behavior = GridMap<Vec2>(maze.grid_width(), maze.grid_height());
  batch.fitness = GridMap<double>(maze.grid_width(), maze.grid_height());
  for (const Trace& run : runs) {
    for (std::size_t i = 0; i < batch.behavior.values.size(); ++i) {
      batch.behavior.values[i][0] += run.behavior.values[i][0];
      batch.behavior.values[i][1] += run.behavior.values[i][1];
      batch.fitness.values[i] += run.fitness.values[i];
    }
  }
  for (std::size_t i = 0; i < batch.behavior.values.size(); ++i) {
    batch.behavior.values[i][0] /= n;
    batch.behavior.values[i][1] /= n;
    batch.fitness.values[i] /= n;
  }

  batch.som_weights.assign(runs.front().som_weights.size(), 0.0);
  for (const Trace& run : runs) {
    for (std::size_t i = 0; i < batch.som_weights.size(); ++i) {
      batch.som_weights[i] += run.som_weights[i];
    }
  }
  for (double& v : batch.som_weights) {
    v /= n;
  }

  batch.runs = std::move(runs);
  return batch;
}

}  // namespace soc
