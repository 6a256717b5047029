#pragma once

#include "fraclab/capacity.hpp"

namespace fraclab {

struct HopfReport {
  double C = 0.0;       // inf over interior nodes of u_i / u_tor,i
  int argmin_node = -1;
  bool positive = false;  // u > 0 on all interior nodes
};

// u against the torsion profile: C = min u_i / u_tor,i over interior nodes.
HopfReport hopf_constant(const KernelMatrix& K, const GridFunction& u,
                         const GridFunction& u_tor);

struct HarnackReport {
  double C1 = 0.0;  // inf u/v over interior nodes
  double C2 = 0.0;  // sup u/v
  std::vector<int> K_core;
  // hypothesis audit: worst interior violations of the two-sided operator
  // bounds -2 (diam)^{-(n+ps)} int_K (.)^{p-1} <= L(.) <= 1, reported not enforced
  double audit_u = 0.0;
  double audit_v = 0.0;
};

// Quotient bounds of two positive functions plus the hypothesis audit.
// An empty K_core picks nodes with dist_to_boundary >= 0.5 * max depth.
HarnackReport harnack_bounds(const KernelMatrix& K, const Grid& grid, const Domain& domain,
                             const GridFunction& u, const GridFunction& v,
                             std::vector<int> K_core = {});

struct MinPrincipleAudit {
  bool min_interior = false;  // premise: global minimum attained at an interior node
  int node = -1;
  double operator_value = 0.0;  // L u at the minimizing node
  double slack = 0.0;           // operator_value - f(node)
  bool pass = false;            // slack >= -tol
};

// At the global-minimum node of u, checks L u(x0) >= f(x0) (pointwise
// minimum-principle inequality for supersolutions).
MinPrincipleAudit min_principle_check(const KernelMatrix& K, const GridFunction& u,
                                      const GridFunction& f, double tol = 1e-10);

struct ConvexityRecord {
  double lhs = 0.0;    // E(sigma_t)
  double rhs = 0.0;    // t E(u) + (1-t) E(v)
  double slack = 0.0;  // rhs - lhs, expected >= -tol
  bool holds = false;
};

// Energy along sigma_t = (t u^q + (1-t) v^q)^{1/q} for positive u, v of the
// zero-exterior class; convexity there drives eigenvalue simplicity.
ConvexityRecord hidden_convexity_check(const KernelMatrix& K, const GridFunction& u,
                                       const GridFunction& v, double t, double q);

struct IsolationReport {
  int trials = 0;
  int converged_count = 0;
  double lambda_min = 0.0;  // best Rayleigh value found
  double gap = 0.0;         // cheapest converged sign-changing value minus lambda_min
  bool gap_defined = false;
  double gap_frac = 0.10;
  struct Offender {
    int trial;
    double lambda;
    double residual;
  };
  std::vector<Offender> offenders;  // converged sign-changing states near lambda_min
  std::vector<double> lambdas;      // per converged trial
  std::vector<bool> sign_definite;  // per converged trial
};

// Random-init eigen sweep; odd-indexed trials are forced sign-changing by
// projecting onto the odd subspace of the grid reflection when available
// (sign-scrambled inits otherwise). Per-trial seeds derive from cfg.seed.
IsolationReport isolation_experiment(const KernelMatrix& K, const Grid& grid, double q,
                                     int trials, const SolverConfig& cfg,
                                     double gap_frac = 0.10);

}  // namespace fraclab
