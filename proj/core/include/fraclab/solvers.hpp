#pragma once

#include <iosfwd>

#include "fraclab/energy.hpp"

namespace fraclab {

struct SolverConfig {
  int max_iters = 200000;
  double tol_grad = 1e-8;   // residual sup-norm target, scaled by (1 + ||f||_inf)
  double tol_step = 1e-14;
  double armijo_c = 1e-4;
  double backtrack = 0.5;
  uint64_t seed = 0;
  int verbosity = 0;
  std::ostream* trace = nullptr;  // iteration CSV when verbosity >= 2

  void validate() const;
};

struct DirichletResult {
  GridFunction u;
  bool converged = false;
  int iters = 0;
  double residual = 0.0;  // sup-norm of L u - f over interior nodes
};

struct EigenResult {
  double lambda = 0.0;  // Rayleigh value, ||u||_q = 1
  GridFunction u;
  double residual = 0.0;  // || L u - lambda phi_q(u) ||_inf over interior
  bool sign_definite = false;
  bool converged = false;
  int iters = 0;
};

// Minimizes E(u)/p - sum vol f_i u_i over {u = g outside Omega} by monotone
// Barzilai-Borwein descent with Armijo backtracking. g supplies the
// collar/far values and far_value; f is read on interior nodes.
DirichletResult solve_dirichlet(const KernelMatrix& K, const GridFunction& f,
                                const GridFunction& g, const SolverConfig& cfg);

// (-Delta_p)^s u = 1 in Omega, u = 0 outside.
DirichletResult solve_torsion(const KernelMatrix& K, const SolverConfig& cfg);

struct EigenInit {
  // When empty, a seeded random interior initialization is used; an all-zero
  // init falls back to the normalized torsion function.
  const GridFunction* u0 = nullptr;
  // Project iterates onto the odd subspace of this reflection map (used by the
  // isolation experiment to reach sign-changing stationary states).
  const std::vector<int>* odd_projection = nullptr;
};

// Projected descent on the Rayleigh quotient E(u)/||u||_q^p with q-normalized
// iterates; accepted steps never increase the quotient.
EigenResult solve_first_eigenpair(const KernelMatrix& K, double q, const SolverConfig& cfg,
                                  const EigenInit& init = {});

}  // namespace fraclab
