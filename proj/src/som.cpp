#include "soc/som.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace soc {

SomGrid::SomGrid(int rows, int cols, int dim, Rng& rng)
    : rows_(rows), cols_(cols), dim_(dim) {
  if (rows < 1 || cols < 1 || dim < 1) {
    throw std::invalid_argument("SOM grid needs positive rows, cols, dim");
  }
  weights_.resize(static_cast<std::size_t>(rows) * cols * dim);
  for (double& w : weights_) {
    w = rng.uniform01();
  }
}

GridCoord SomGrid::winner(std::span<const double> input) const {
  assert(input.size() == static_cast<std::size_t>(dim_));
  GridCoord best{0, 0};
  double best_d2 = -1.0;
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) {
      const double* w = weights_.data() + index({r, c}) * dim_;
      double d2 = 0.0;
      for (int k = 0; k < dim_; ++k) {
        double diff = input[k] - w[k];
        d2 += diff * diff;
      }
      // strict < keeps the lexicographically first cell on ties
      if (best_d2 < 0.0 || d2 < best_d2) {
        best_d2 = d2;
        best = {r, c};
      }
    }
  }
  return best;
}

double SomGrid::learning_restraint(std::uint64_t it) {
  return 0.1 * std::pow(0.999999, static_cast<double>(it));
}

double SomGrid::neighborhood(int d) {
  return std::exp(-static_cast<double>(d) * static_cast<double>(d));
}

std::vector<GridCoord> SomGrid::update(std::span<const double> input,
                                       GridCoord winner) {
  assert(input.size() == static_cast<std::size_t>(dim_));
  const double restraint = learning_restraint(iteration_);

  std::vector<GridCoord> touched;
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) {
      const GridCoord coord{r, c};
      const double g = restraint * neighborhood(chebyshev(coord, winner));
      if (g > kUpdateThreshold) {
        double* w = weights_.data() + index(coord) * dim_;
        for (int k = 0; k < dim_; ++k) {
          w[k] += g * (input[k] - w[k]);
        }
        touched.push_back(coord);
      }
    }
  }
  ++iteration_;
  return touched;
}

void SomGrid::set_weight(GridCoord c, std::span<const double> w) {
  assert(w.size() == static_cast<std::size_t>(dim_));
  double* dst = weights_.data() + index(c) * dim_;
  for (int k = 0; k < dim_; ++k) {
    dst[k] = w[k];
  }
}

}  // namespace soc
