#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "soc/maze.hpp"
#include "soc/rng.hpp"

using namespace soc;

TEST_CASE("built-in geometries parse to the documented layouts") {
  SUBCASE("empty room") {
    Maze m = Maze::parse(empty_room_text());
    CHECK(m.grid_width() == 10);
    CHECK(m.grid_height() == 10);
    CHECK(m.goal() == Cell{9, 9});
    CHECK(m.free_cell_count() == 99);
    for (int y = 0; y < 10; ++y) {
      for (int x = 0; x < 10; ++x) {
        CHECK_FALSE(m.obstacle({x, y}));
      }
    }
  }

  SUBCASE("one wall") {
    Maze m = Maze::parse(one_wall_text());
    CHECK(m.goal() == Cell{1, 5});
    int obstacles = 0;
    for (int y = 0; y < 10; ++y) {
      for (int x = 0; x < 10; ++x) {
        if (m.obstacle({x, y})) {
          ++obstacles;
          CHECK(y == 4);
          CHECK(x <= 6);
        }
      }
    }
    CHECK(obstacles == 7);  // wall cells x=0..6 in the y=4 band, gap right
    CHECK(m.free_cell_count() == 92);
  }
}

TEST_CASE("maze parser reports malformed input with line and column") {
  SUBCASE("two goals") {
    try {
      Maze::parse("G..\n..G\n");
      FAIL("expected parse error");
    } catch (const std::runtime_error& e) {
      const std::string msg = e.what();
      CHECK(msg.find("line 2") != std::string::npos);
      CHECK(msg.find("line 1") != std::string::npos);  // names the first goal
    }
  }

  SUBCASE("no goal") {
    CHECK_THROWS_AS(Maze::parse("...\n...\n"), std::runtime_error);
  }

  SUBCASE("ragged rows") {
    try {
      Maze::parse("...G\n...\n");
      FAIL("expected parse error");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
  }

  SUBCASE("unknown character") {
    try {
      Maze::parse(".G.\n.X.\n");
      FAIL("expected parse error");
    } catch (const std::runtime_error& e) {
      const std::string msg = e.what();
      CHECK(msg.find("line 2") != std::string::npos);
      CHECK(msg.find("column 2") != std::string::npos);
    }
  }

  SUBCASE("a maze with no free start cell is rejected") {
    CHECK_THROWS_AS(Maze::parse("#G\n##\n"), std::runtime_error);
  }

  SUBCASE("trailing newline is optional") {
    Maze a = Maze::parse(".G\n..\n");
    Maze b = Maze::parse(".G\n..");
    CHECK(a.goal() == b.goal());
    CHECK(a.grid_height() == b.grid_height());
  }
}

TEST_CASE("text row zero is the top band") {
  // G in the first text row must land at the highest y
  Maze m = Maze::parse("G..\n...\n#..\n");
  CHECK(m.goal() == Cell{0, 2});
  CHECK(m.obstacle({0, 0}));
  CHECK_FALSE(m.obstacle({0, 2}));
}

TEST_CASE("reset is uniform over the free area") {
  Maze m = Maze::parse(empty_room_text());
  Rng rng(314);

  std::vector<int> counts(100, 0);
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const Vec2 p = m.reset(rng);
    const Cell c = m.cell_of(p);
    CHECK_FALSE(m.obstacle(c));
    CHECK_FALSE(c == m.goal());
    ++counts[c.y * 10 + c.x];
  }

  // chi-square against the uniform law over the 99 free cells;
  // critical value for 98 dof at p = 0.01 is 133.476
  const double expected = n / 99.0;
  double chi2 = 0.0;
  for (int y = 0; y < 10; ++y) {
    for (int x = 0; x < 10; ++x) {
      if (Cell{x, y} == m.goal()) {
        CHECK(counts[y * 10 + x] == 0);
        continue;
      }
      const double diff = counts[y * 10 + x] - expected;
      chi2 += diff * diff / expected;
    }
  }
  CHECK(chi2 < 133.476);
}

TEST_CASE("reset avoids obstacles in a walled maze") {
  Maze m = Maze::parse(one_wall_text());
  Rng rng(2718);
  for (int i = 0; i < 10000; ++i) {
    const Cell c = m.cell_of(m.reset(rng));
    CHECK_FALSE(m.obstacle(c));
    CHECK_FALSE(c == m.goal());
  }
}

TEST_CASE("border clamp slides, obstacles reject, goal absorbs") {
  Maze m = Maze::parse(one_wall_text());

  SUBCASE("per-axis clamp allows sliding along the border") {
    const StepResult r = m.step({9.8, 5.0}, {0.5, 0.7});
    CHECK(r.position[0] == doctest::Approx(10.0));
    CHECK(r.position[1] == doctest::Approx(5.7));
    CHECK(r.reward == Maze::kStepReward);
    CHECK_FALSE(r.terminal);
  }

  SUBCASE("an endpoint inside a wall cell rejects the whole move") {
    const Vec2 start{3.5, 3.5};
    const StepResult r = m.step(start, {0.0, 0.9});  // into the y=4 wall band
    CHECK(r.position[0] == start[0]);
    CHECK(r.position[1] == start[1]);
    CHECK(r.reward == Maze::kObstacleReward);
    CHECK_FALSE(r.terminal);

    // constantly hitting the wall never moves
    const StepResult again = m.step(r.position, {0.0, 0.9});
    CHECK(again.position[1] == start[1]);
  }

  SUBCASE("entering the goal cell terminates with the goal reward") {
    const StepResult r = m.step({2.5, 5.5}, {-1.0, 0.0});
    CHECK(m.cell_of(r.position) == m.goal());
    CHECK(r.reward == Maze::kGoalReward);
    CHECK(r.terminal);
  }

  SUBCASE("oversized action components are clamped before moving") {
    const StepResult r = m.step({5.0, 8.0}, {3.0, 0.0});
    CHECK(r.position[0] == doctest::Approx(6.0));
  }
}

TEST_CASE("far border points belong to the last cell band") {
  Maze m = Maze::parse(empty_room_text());
  CHECK(m.cell_of({10.0, 10.0}) == Cell{9, 9});
  CHECK(m.cell_of({10.0, 0.0}) == Cell{9, 0});
  CHECK(m.cell_of({3.0, 3.999}) == Cell{3, 3});
  CHECK(m.cell_of({0.0, 0.0}) == Cell{0, 0});
}

// Reward partition, step bound and obstacle exclusion over a long random
// walk (the acceptance suite runs the full 100k-step version).
TEST_CASE("random walk: rewards partition, steps bounded, walls excluded") {
  Maze m = Maze::parse(one_wall_text());
  Rng rng(555);
  Vec2 pos = m.reset(rng);

  for (int i = 0; i < 20000; ++i) {
    const Vec2 action{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    const StepResult r = m.step(pos, action);

    const bool goal = r.reward == Maze::kGoalReward;
    const bool wall = r.reward == Maze::kObstacleReward;
    const bool step = r.reward == Maze::kStepReward;
    CHECK((goal || wall || step));
    CHECK(goal == r.terminal);

    CHECK(std::abs(r.position[0] - pos[0]) <= 1.0 + 1e-12);
    CHECK(std::abs(r.position[1] - pos[1]) <= 1.0 + 1e-12);
    CHECK_FALSE(m.obstacle(m.cell_of(r.position)));

    pos = r.terminal ? m.reset(rng) : r.position;
  }
}
