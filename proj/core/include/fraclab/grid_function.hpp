#pragma once

#include <cstdint>
#include <vector>

#include "fraclab/grid.hpp"

namespace fraclab {

// One real value per grid node plus the constant beyond the truncation
// radius. Functions of the zero-exterior class have zero collar/far values
// and far_value = 0.
struct GridFunction {
  std::vector<double> values;
  uint64_t grid_id = 0;
  double far_value = 0.0;

  static GridFunction zeros(const Grid& grid) {
    return {std::vector<double>(grid.nodes.size(), 0.0), grid.hash(), 0.0};
  }
  static GridFunction constant(const Grid& grid, double c) {
    return {std::vector<double>(grid.nodes.size(), c), grid.hash(), c};
  }

  double& operator[](int i) { return values[static_cast<size_t>(i)]; }
  double operator[](int i) const { return values[static_cast<size_t>(i)]; }
  int size() const { return static_cast<int>(values.size()); }
};

void check_same_grid(const Grid& grid, const GridFunction& u);

}  // namespace fraclab
