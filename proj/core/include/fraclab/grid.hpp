#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fraclab/domain.hpp"

namespace fraclab {

enum class NodeClass : uint8_t { Interior, Collar, Far };

struct GridFunction;

// Cell-centered lattice covering ball(0, R_inf), nodes ordered
// lexicographically by coordinates.
struct Grid {
  int n = 1;
  double h = 0.0;
  double vol = 0.0;  // uniform cell volume h^n
  std::vector<Point> nodes;
  std::vector<NodeClass> cls;
  std::vector<int> interior;  // indices of interior nodes, ascending
  double diam = 0.0;          // diam of Omega
  double trunc_radius = 0.0;
  bool approx_distance = false;

  int size() const { return static_cast<int>(nodes.size()); }
  uint64_t hash() const;

  // Index map of the reflection x -> -x when the node set is invariant
  // under it, otherwise nullopt.
  std::optional<std::vector<int>> reflection_map() const;
};

// Throws SpacingTooCoarse when the collar holds fewer than four layers and
// DomainEmpty when no cell center falls inside Omega.
Grid build_grid(const Domain& domain, double h, const Params& params);

// d_i = dist(x_i, boundary of Omega) on interior nodes, 0 elsewhere.
GridFunction dist_to_boundary(const Grid& grid, const Domain& domain);

}  // namespace fraclab
