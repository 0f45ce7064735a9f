#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "soc/rng.hpp"
#include "soc/types.hpp"

namespace soc {

/// Integer unit-cell coordinates; cell (cx, cy) spans [cx,cx+1) x [cy,cy+1)
/// with the map's outer border closed.
struct Cell {
  int x = 0;
  int y = 0;

  bool operator==(const Cell&) const = default;
};

struct StepResult {
  Vec2 position{0.0, 0.0};
  double reward = 0.0;
  bool terminal = false;
};

/// Continuous 2D maze built from a grid of unit cells. The agent observes
/// its position, moves at most 1.0 per axis per step, slides along the
/// outer border, and bounces off obstacle cells (a rejected move leaves the
/// position unchanged).
class Maze {
 public:
  static constexpr double kGoalReward = 1000.0;
  static constexpr double kObstacleReward = -20.0;
  static constexpr double kStepReward = -10.0;
  static constexpr double kMaxStep = 1.0;

  /// Parses a character-grid maze: '.' free, '#' obstacle, 'G' goal
  /// (exactly one). Row 0 of the text is the TOP row of the maze.
  /// Throws std::runtime_error with line/column on malformed input.
  static Maze parse(std::string_view text);

  int grid_width() const { return width_cells_; }
  int grid_height() const { return height_cells_; }
  double width() const { return static_cast<double>(width_cells_); }
  double height() const { return static_cast<double>(height_cells_); }
  Cell goal() const { return goal_; }

  bool obstacle(Cell c) const { return obstacle_[cell_index(c)]; }
  bool free_cell(Cell c) const { return !obstacle(c) && !(c == goal_); }
  int free_cell_count() const { return free_cells_; }

  /// Unit cell containing a point; the closed border folds the far edges
  /// into the last cell band.
  Cell cell_of(const Vec2& p) const;

  /// Uniform start over the free area (never inside an obstacle or the
  /// goal cell).
  Vec2 reset(Rng& rng) const;

  /// One move. The action is defensively clamped to [-1,1] per axis, the
  /// candidate point is clamped into bounds per axis (so sliding along the
  /// border works), then classified: obstacle endpoint rejects the whole
  /// move at -20, a goal endpoint pays 1000 and terminates, anything else
  /// costs -10.
  StepResult step(const Vec2& position, Vec2 action) const;

 private:
  std::size_t cell_index(Cell c) const {
    return static_cast<std::size_t>(c.y) * width_cells_ + c.x;
  }

  int width_cells_ = 0;
  int height_cells_ = 0;
  Cell goal_;
  std::vector<char> obstacle_;  // row-major by (y, x), y = 0 at the bottom
  int free_cells_ = 0;
};

/// Built-in geometries, also shipped as text files under data/mazes/.
std::string empty_room_text();
std::string one_wall_text();

}  // namespace soc
