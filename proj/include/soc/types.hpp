#pragma once

#include <array>
#include <compare>
#include <cstdint>

namespace soc {

/// 2D point / displacement in environment units.
using Vec2 = std::array<double, 2>;

/// Coordinates of a cell on the SOM grid.
struct GridCoord {
  int row = 0;
  int col = 0;

  auto operator<=>(const GridCoord&) const = default;
};

/// Chebyshev distance between two grid cells.
inline int chebyshev(GridCoord a, GridCoord b) {
  int dr = a.row > b.row ? a.row - b.row : b.row - a.row;
  int dc = a.col > b.col ? a.col - b.col : b.col - a.col;
  return dr > dc ? dr : dc;
}

enum class Group : std::uint8_t { Best, Novel };
enum class Mode : std::uint8_t { Explore, Exploit };

}  // namespace soc
