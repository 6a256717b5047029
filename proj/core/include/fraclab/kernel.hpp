#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fraclab/grid_function.hpp"

namespace fraclab {

// |t|^{p-2} t, extended by 0 at t = 0 (matters for p < 2).
inline double phi_p(double t, double p) {
  if (t == 0.0) return 0.0;
  if (p == 2.0) return t;
  return std::pow(std::abs(t), p - 2.0) * t;
}

struct AssemblyOptions {
  int subcell_rule = 8;      // k x k Gauss per near-diagonal cell
  double near_factor = 4.0;  // pairs with |x_i-x_j| <= near_factor*h get subcell quadrature
  int node_budget = 20000;   // refuse dense assembly beyond this
};

// Symmetric nonlocal quadrature weights w_ij ~ int_{cell_j} |x_i-y|^{-(n+ps)} dy
// stored as a packed upper triangle, plus the analytic far-field tail
// T_i = int_{|y| > R_inf} |x_i-y|^{-(n+ps)} dy per node.
class KernelMatrix {
 public:
  KernelMatrix() = default;

  int size() const { return n_nodes_; }
  uint64_t grid_id() const { return grid_id_; }
  const Params& params() const { return params_; }
  double vol() const { return vol_; }
  std::span<const int> interior() const { return interior_; }

  double w(int i, int j) const {
    if (i == j) return 0.0;
    if (i > j) std::swap(i, j);
    return tri_[tri_index(i, j)];
  }
  double tail(int i) const { return tail_[static_cast<size_t>(i)]; }

  // sum_j w_ij + T_i, fixed left-to-right order
  double row_sum(int i) const;

  const std::vector<double>& packed_upper() const { return tri_; }
  const std::vector<double>& tails() const { return tail_; }

  size_t tri_index(int i, int j) const {  // requires i < j
    const size_t n = static_cast<size_t>(n_nodes_);
    const size_t si = static_cast<size_t>(i);
    return si * n - si * (si + 1) / 2 + static_cast<size_t>(j - i - 1);
  }

 private:
  friend KernelMatrix assemble_kernel(const Grid&, const Params&, const AssemblyOptions&);
  friend KernelMatrix load_kernel_cache(const std::string&, const Grid&, const Params&);

  int n_nodes_ = 0;
  double vol_ = 0.0;
  uint64_t grid_id_ = 0;
  Params params_;
  std::vector<int> interior_;
  std::vector<double> tri_;   // packed upper triangle, row-major
  std::vector<double> tail_;
};

KernelMatrix assemble_kernel(const Grid& grid, const Params& params,
                             const AssemblyOptions& opts = {});

// Discrete operator L u(x_i) = 2 [ sum_j w_ij phi_p(u_i-u_j) + T_i phi_p(u_i-u_far) ]
// evaluated on interior nodes; zero on collar/far nodes.
GridFunction apply_operator(const KernelMatrix& K, const GridFunction& u, double u_far);

// Row values of the operator on an arbitrary node subset (out must hold
// rows.size() entries). Deterministic summation order per row.
void operator_rows(const KernelMatrix& K, const GridFunction& u, double u_far,
                   std::span<const int> rows, double* out);

struct AnnulusResult {
  double integral;  // adaptive quadrature of the annulus integral
  double bound;     // |B(0,1)| r0^{beta(p-1)-ps}
};

// int_{B(y0,r0) \ B(y0,eps)} phi_p(|y-x0|^beta - |y0-x0|^beta) |y-y0|^{-(n+ps)} dy.
// Preconditions: 0 < eps < r0, beta > ps/(p-1), and r0 < |x0-y0|/2 when x0 != y0.
AnnulusResult annulus_integral(const Point& x0, const Point& y0, double r0, double eps,
                               double beta, const Params& params);

// Binary cache: header {magic, version, n, s, p, node_count}, then the
// row-major upper triangle as little-endian 64-bit floats. Tails are
// recomputed from the grid on load.
void save_kernel_cache(const KernelMatrix& K, const std::string& path);
KernelMatrix load_kernel_cache(const std::string& path, const Grid& grid,
                               const Params& params);

}  // namespace fraclab
