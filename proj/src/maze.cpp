#include "soc/maze.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace soc {

namespace {

[[noreturn]] void parse_fail(int line, int col, const std::string& what) {
  throw std::runtime_error("maze parse error at line " + std::to_string(line) +
                           ", column " + std::to_string(col) + ": " + what);
}

}  // namespace

Maze Maze::parse(std::string_view text) {
  std::vector<std::string_view> rows;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string_view row = (nl == std::string_view::npos)
                               ? text.substr(start)
                               : text.substr(start, nl - start);
    if (!row.empty() && row.back() == '\r') {
      row.remove_suffix(1);
    }
    if (!row.empty()) {
      rows.push_back(row);
    } else if (nl != std::string_view::npos && nl + 1 < text.size()) {
      parse_fail(static_cast<int>(rows.size()) + 1, 1, "empty row");
    }
    if (nl == std::string_view::npos) {
      break;
    }
    start = nl + 1;
  }
  if (rows.empty()) {
    parse_fail(1, 1, "empty maze");
  }

  Maze m;
  m.height_cells_ = static_cast<int>(rows.size());
  m.width_cells_ = static_cast<int>(rows.front().size());
  m.obstacle_.assign(static_cast<std::size_t>(m.width_cells_) * m.height_cells_, 0);

  int goal_line = -1;
  bool have_goal = false;
  for (int i = 0; i < m.height_cells_; ++i) {
    const std::string_view& row = rows[i];
    const int line = i + 1;
    if (static_cast<int>(row.size()) != m.width_cells_) {
      parse_fail(line, static_cast<int>(row.size()) + 1,
                 "row width " + std::to_string(row.size()) + " differs from " +
                     std::to_string(m.width_cells_));
    }
    for (int j = 0; j < m.width_cells_; ++j) {
      // text row 0 is the top band, y = height - 1
      const Cell cell{j, m.height_cells_ - 1 - i};
      switch (row[j]) {
        case '.':
          break;
        case '#':
          m.obstacle_[m.cell_index(cell)] = 1;
          break;
        case 'G':
          if (have_goal) {
            parse_fail(line, j + 1,
                       "second goal (first at line " +
                           std::to_string(goal_line) + ")");
          }
          have_goal = true;
          goal_line = line;
          m.goal_ = cell;
          break;
        default:
          parse_fail(line, j + 1,
                     std::string("unknown character '") + row[j] + "'");
      }
    }
  }
  if (!have_goal) {
    parse_fail(m.height_cells_, 1, "no goal cell");
  }

  m.free_cells_ = 0;
  for (int y = 0; y < m.height_cells_; ++y) {
    for (int x = 0; x < m.width_cells_; ++x) {
      if (m.free_cell({x, y})) {
        ++m.free_cells_;
      }
    }
  }
  if (m.free_cells_ == 0) {
    parse_fail(1, 1, "no free cell to start from");
  }
  return m;
}

Cell Maze::cell_of(const Vec2& p) const {
  int cx = static_cast<int>(std::floor(p[0]));
  int cy = static_cast<int>(std::floor(p[1]));
  cx = std::clamp(cx, 0, width_cells_ - 1);
  cy = std::clamp(cy, 0, height_cells_ - 1);
  return {cx, cy};
}

Vec2 Maze::reset(Rng& rng) const {
  for (;;) {
    Vec2 p{rng.uniform(0.0, width()), rng.uniform(0.0, height())};
    Cell c = cell_of(p);
    if (!obstacle(c) && !(c == goal_)) {
      return p;
    }
  }
}

StepResult Maze::step(const Vec2& position, Vec2 action) const {
  action[0] = std::clamp(action[0], -kMaxStep, kMaxStep);
  action[1] = std::clamp(action[1], -kMaxStep, kMaxStep);

  Vec2 candidate{std::clamp(position[0] + action[0], 0.0, width()),
                 std::clamp(position[1] + action[1], 0.0, height())};

  const Cell c = cell_of(candidate);
  if (obstacle(c)) {
    return {position, kObstacleReward, false};
  }
  if (c == goal_) {
    return {candidate, kGoalReward, true};
  }
  return {candidate, kStepReward, false};
}

std::string empty_room_text() {
  std::string text;
  text += ".........G\n";
  for (int i = 0; i < 9; ++i) {
    text += "..........\n";
  }
  return text;
}

std::string one_wall_text() {
  return
      "..........\n"
      "..........\n"
      "..........\n"
      "..........\n"
      ".G........\n"
      "#######...\n"
      "..........\n"
      "..........\n"
      "..........\n"
      "..........\n";
}

}  // namespace soc
