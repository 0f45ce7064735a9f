#include <doctest.h>

#include <cmath>
#include <optional>
#include <vector>

#include "soc/harness.hpp"
#include "soc/maze.hpp"

using namespace soc;

namespace {

// Minimal agent for exercising run_trial without any learning machinery.
struct StubAgent {
  Vec2 action{0.0, 0.0};
  int steps_taken = 0;
  int truncations = 0;
  int trials_started = 0;

  void begin_trial() { ++trials_started; }

  std::optional<Vec2> step(const Vec2&, std::optional<double>, bool terminal,
                           Mode) {
    if (terminal) {
      return std::nullopt;
    }
    ++steps_taken;
    return action;
  }

  void truncate(const Vec2&, double) { ++truncations; }
};

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.trials = 24;
  cfg.metric_window = 5;
  cfg.repetitions = 2;
  cfg.base_seed = 100;
  cfg.census_every = 50;
  return cfg;
}

}  // namespace

TEST_CASE("run_trial ends in one step when the policy walks into the goal") {
  Maze maze = Maze::parse(".G");
  StubAgent agent;
  agent.action = {1.0, 0.0};
  Rng rng(1);

  for (int i = 0; i < 50; ++i) {
    const TrialResult res = run_trial(agent, maze, Mode::Exploit, rng, 500);
    CHECK(res.steps == 1);
    CHECK(res.reached_goal);
  }
  CHECK(agent.truncations == 0);
}

TEST_CASE("run_trial truncates a never-arriving policy at the cap") {
  Maze maze = Maze::parse(empty_room_text());
  StubAgent agent;  // action (0,0): stands still forever
  Rng rng(2);

  const TrialResult res = run_trial(agent, maze, Mode::Explore, rng, 500);
  CHECK(res.steps == 500);
  CHECK_FALSE(res.reached_goal);
  CHECK(agent.truncations == 1);
  CHECK(agent.steps_taken == 500);
}

TEST_CASE("trials always take at least one step") {
  // starts are never inside the goal, so even an ideal policy needs a step
  Maze maze = Maze::parse(".G");
  StubAgent agent;
  agent.action = {1.0, 1.0};
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    CHECK(run_trial(agent, maze, Mode::Exploit, rng, 500).steps >= 1);
  }
}

TEST_CASE("run_experiment alternates modes starting with exploration") {
  Maze maze = Maze::parse(empty_room_text());
  const ExperimentConfig cfg = small_config();
  const Trace trace = run_experiment(maze, cfg, 41);

  REQUIRE(trace.trials.size() == 24);
  for (const TrialRecord& r : trace.trials) {
    CHECK(r.mode == ((r.index % 2 == 0) ? Mode::Explore : Mode::Exploit));
    CHECK(r.steps >= 1);
    CHECK(r.steps <= cfg.max_trial_steps);
  }
}

TEST_CASE("performance is the sliding mean over exploit trials only") {
  Maze maze = Maze::parse(empty_room_text());
  const ExperimentConfig cfg = small_config();
  const Trace trace = run_experiment(maze, cfg, 42);

  std::vector<int> exploit_steps;
  for (const TrialRecord& r : trace.trials) {
    if (r.mode == Mode::Exploit) {
      exploit_steps.push_back(r.steps);
    }
  }
  REQUIRE(trace.performance.size() == exploit_steps.size());

  for (std::size_t k = 0; k < exploit_steps.size(); ++k) {
    const std::size_t from =
        k + 1 > static_cast<std::size_t>(cfg.metric_window)
            ? k + 1 - cfg.metric_window
            : 0;
    double sum = 0.0;
    for (std::size_t i = from; i <= k; ++i) {
      sum += exploit_steps[i];
    }
    CHECK(trace.performance[k] ==
          doctest::Approx(sum / (k - from + 1)).epsilon(1e-12));
  }
}

TEST_CASE("census snapshots follow the cadence and respect the size cap") {
  Maze maze = Maze::parse(empty_room_text());
  const ExperimentConfig cfg = small_config();
  const Trace trace = run_experiment(maze, cfg, 43);

  REQUIRE(!trace.census.empty());
  const std::uint64_t cap =
      static_cast<std::uint64_t>(cfg.som_rows) * cfg.som_cols *
      (cfg.params.beta + cfg.params.nu);
  std::uint64_t expected_step = cfg.census_every;
  for (const CensusSample& s : trace.census) {
    CHECK(s.step == expected_step);
    expected_step += cfg.census_every;
    CHECK(s.micro <= cap);
    CHECK(s.macro <= s.micro);
  }
}

TEST_CASE("population caps recompute from the group sizes and map size") {
  // stock parameters: 10*10*(5+10) = 1500
  ExperimentConfig stock;
  CHECK(stock.som_rows * stock.som_cols *
            (stock.params.beta + stock.params.nu) ==
        1500);

  // smaller groups: 10*10*(2+5) = 700
  ExperimentConfig test_a = stock;
  test_a.params.beta = 2;
  test_a.params.nu = 5;
  CHECK(test_a.som_rows * test_a.som_cols *
            (test_a.params.beta + test_a.params.nu) ==
        700);

  // smaller map: 7*7*(5+10) = 735
  ExperimentConfig test_b = stock;
  test_b.som_rows = 7;
  test_b.som_cols = 7;
  CHECK(test_b.som_rows * test_b.som_cols *
            (test_b.params.beta + test_b.params.nu) ==
        735);
}

TEST_CASE("behavior map reports the exact action of a single-entry cell") {
  LearnerParams params;
  params.beta = 1;
  Learner learner(1, 1, params, 7);  // every observation hits the one cell
  learner.ensure_cell({0, 0});

  // swap the lone best macro for a known action
  CellState& cell = learner.cell_mut({0, 0});
  learner.pool().release_index(cell.best[0].macro);
  const MacroId planted = learner.pool().create_macro({1.0, 0.0});
  learner.pool().acquire_index(planted);
  cell.best[0].macro = planted;

  Maze maze = Maze::parse(empty_room_text());
  const GridMap<Vec2> map = behavior_map(learner, maze, 9, 100);
  for (const Vec2& v : map.values) {
    CHECK(v[0] == 1.0);  // mean of a constant sample, bit-exact
    CHECK(v[1] == 0.0);
  }
}

TEST_CASE("behavior map averages a two-action cell to the midpoint") {
  LearnerParams params;
  params.beta = 2;
  Learner learner(1, 1, params, 8);
  learner.ensure_cell({0, 0});

  CellState& cell = learner.cell_mut({0, 0});
  const Vec2 actions[2] = {{1.0, 0.0}, {0.0, 1.0}};
  for (int i = 0; i < 2; ++i) {
    learner.pool().release_index(cell.best[i].macro);
    const MacroId id = learner.pool().create_macro(actions[i]);
    learner.pool().acquire_index(id);
    cell.best[i].macro = id;
  }

  Maze maze = Maze::parse(empty_room_text());
  const GridMap<Vec2> map = behavior_map(learner, maze, 10, 100);
  const Vec2& v = map.at(0, 0);
  CHECK(std::abs(v[0] - 0.5) <= 0.1);  // binomial mean of 100 fair picks
  CHECK(std::abs(v[1] - 0.5) <= 0.1);
}

TEST_CASE("fitness map of an untrained learner is exactly zero") {
  Learner learner(10, 10, {}, 11);
  Maze maze = Maze::parse(empty_room_text());
  const GridMap<double> map = fitness_map(learner, maze, 12, 100);
  for (double v : map.values) {
    CHECK(v == 0.0);
  }
}

TEST_CASE("evaluation maps leave the learner bit-identical") {
  Maze maze = Maze::parse(one_wall_text());
  ExperimentConfig cfg = small_config();

  Learner learner(cfg.som_rows, cfg.som_cols, cfg.params, 13);
  Rng rng(14);
  for (int t = 0; t < 10; ++t) {
    run_trial(learner, maze, t % 2 ? Mode::Exploit : Mode::Explore, rng, 200);
  }

  const std::uint64_t before = learner.state_fingerprint();
  behavior_map(learner, maze, 15, 100);
  fitness_map(learner, maze, 16, 100);
  behavior_map(learner, maze, 15, 100, /*jobs=*/2);
  CHECK(learner.state_fingerprint() == before);
}

TEST_CASE("a one-repetition batch equals the single experiment") {
  Maze maze = Maze::parse(empty_room_text());
  ExperimentConfig cfg = small_config();
  cfg.repetitions = 1;

  const Trace single = run_experiment(maze, cfg, cfg.base_seed);
  const BatchTrace batch = run_batch(maze, cfg);

  CHECK(batch.performance == single.performance);
  REQUIRE(batch.census.size() == single.census.size());
  for (std::size_t i = 0; i < batch.census.size(); ++i) {
    CHECK(batch.census[i].step == single.census[i].step);
    CHECK(batch.census[i].micro == double(single.census[i].micro));
  }
  CHECK(batch.behavior.values == single.behavior.values);
  CHECK(batch.fitness.values == single.fitness.values);
  CHECK(batch.som_weights == single.som_weights);
}

TEST_CASE("batch aggregates are element-wise means of the repetitions") {
  Maze maze = Maze::parse(empty_room_text());
  const ExperimentConfig cfg = small_config();  // 2 repetitions
  const BatchTrace batch = run_batch(maze, cfg);

  REQUIRE(batch.runs.size() == 2);
  const Trace& a = batch.runs[0];
  const Trace& b = batch.runs[1];

  // distinct seeds give distinct traces
  std::vector<int> steps_a, steps_b;
  for (const TrialRecord& r : a.trials) {
    steps_a.push_back(r.steps);
  }
  for (const TrialRecord& r : b.trials) {
    steps_b.push_back(r.steps);
  }
  CHECK(steps_a != steps_b);

  for (std::size_t i = 0; i < batch.performance.size(); ++i) {
    CHECK(batch.performance[i] ==
          doctest::Approx((a.performance[i] + b.performance[i]) / 2.0)
              .epsilon(1e-12));
  }
  for (std::size_t i = 0; i < batch.behavior.values.size(); ++i) {
    CHECK(batch.behavior.values[i][0] ==
          doctest::Approx((a.behavior.values[i][0] + b.behavior.values[i][0]) /
                          2.0)
              .epsilon(1e-12));
    CHECK(batch.fitness.values[i] ==
          doctest::Approx((a.fitness.values[i] + b.fitness.values[i]) / 2.0)
              .epsilon(1e-12));
  }
}
