#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "soc/rng.hpp"
#include "soc/types.hpp"

namespace soc {

/// Self-organizing map over a rows x cols grid of weight vectors.
///
/// Winner lookup is a plain nearest-weight scan (Euclidean on input space);
/// neighborhoods use Chebyshev distance on grid coordinates. Weight updates
/// follow the gated schedule: a cell moves toward the input only while
/// learning_restraint(it) * neighborhood(d) stays above the update threshold.
class SomGrid {
 public:
  static constexpr double kUpdateThreshold = 0.005;

  /// Weights start uniform in [0, 1) per component, independent of the
  /// input range the map will be driven with.
  SomGrid(int rows, int cols, int dim, Rng& rng);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int dim() const { return dim_; }

  /// Input presentations seen so far (drives the learning-restraint decay).
  std::uint64_t iteration() const { return iteration_; }

  /// Cell whose weight vector is nearest the input; ties go to the
  /// lexicographically smallest (row, col).
  GridCoord winner(std::span<const double> input) const;

  /// 0.1 * 0.999999^it
  static double learning_restraint(std::uint64_t it);

  /// exp(-d^2) for a Chebyshev grid distance d.
  static double neighborhood(int d);

  /// Single training sweep for one input. Every cell whose gain
  /// g = learning_restraint(iteration) * neighborhood(chebyshev(c, winner))
  /// exceeds the threshold moves toward the input by factor g. Increments
  /// the iteration counter once. Returns the cells that moved.
  std::vector<GridCoord> update(std::span<const double> input, GridCoord winner);

  std::span<const double> weight(GridCoord c) const {
    return {weights_.data() + index(c) * dim_, static_cast<std::size_t>(dim_)};
  }

  /// Test hook: overwrite one cell's weight vector.
  void set_weight(GridCoord c, std::span<const double> w);

  /// Test hook: jump the iteration counter (schedule checks at large it).
  void set_iteration(std::uint64_t it) { iteration_ = it; }

 private:
  std::size_t index(GridCoord c) const {
    return static_cast<std::size_t>(c.row) * cols_ + c.col;
  }

  int rows_;
  int cols_;
  int dim_;
  std::uint64_t iteration_ = 0;
  std::vector<double> weights_;  // row-major, dim_ doubles per cell
};

}  // namespace soc
