#pragma once

#include "fraclab/solvers.hpp"

namespace fraclab {

struct CapacityResult {
  double value = 0.0;      // E(potential)
  GridFunction potential;  // in [0,1], pinned to 1 on E, 0 outside B(xi0,2r)
  double r = 0.0;
  Point xi0{0.0, 0.0};
  bool converged = false;
  int iters = 0;
  double residual = 0.0;  // KKT surrogate: sup |grad| off the active sets
};

// Cap_{s,p}(E, B(xi0,2r)): minimize the Gagliardo energy over v in [0,1]
// with v = 1 on the node set E and v = 0 outside B(xi0,2r), by projected
// gradient descent. Requires at least 8 grid cells across r.
CapacityResult capacity(const Grid& grid, const std::vector<int>& E_nodes, const Point& xi0,
                        double r, const KernelMatrix& K, const SolverConfig& cfg);

struct WienerReport {
  std::vector<double> radii;       // r_k = r0 * 2^{-k}
  std::vector<double> cap;         // Cap_{s,p}(clB(xi0,r_k) \ Omega, B(xi0,2r_k))
  std::vector<double> integrand;   // (cap_k / r_k^{n-ps})^{1/(p-1)}
  std::vector<double> partial_sum; // running dyadic sums, integrand * log 2
  std::vector<bool> usable;        // false where the per-radius solve failed
  double dyadic_sum = 0.0;
  bool diverging = false;  // heuristic: last-third integrand average >= 0.5 * first-third
  double growth_slope = 0.0;
};

struct WienerOptions {
  int cells_per_radius = 16;  // grid resolution of each rescaled local solve
};

// Wiener integrand on dyadic radii r_k = r0 * 2^{-k}, each capacity computed
// on its own rescaled local grid centered at xi0. xi0 must lie on the
// boundary of Omega.
WienerReport wiener_integrand(const Domain& domain, const Point& xi0, double r0, int k_max,
                              const Params& params, const SolverConfig& cfg,
                              const WienerOptions& opts = {});

}  // namespace fraclab
