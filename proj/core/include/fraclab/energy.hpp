#pragma once

#include "fraclab/kernel.hpp"

namespace fraclab {

// Discrete Gagliardo energy
//   E(u) = vol * [ sum_{i<j} 2 w_ij |u_i-u_j|^p + sum_i 2 T_i |u_i-u_far|^p ];
// the node-to-far pairs are counted twice like every other unordered pair of
// the double integral. The cell volume is absorbed here once, so that the
// gradient of E/p at node i equals vol_i times the operator row.
double gagliardo_energy(const KernelMatrix& K, const GridFunction& u);

// Gradient of E/p: grad_i = vol * 2 [ sum_j w_ij phi_p(u_i-u_j) + T_i phi_p(u_i-u_far) ]
//                         = vol * (operator row at i), at every node.
GridFunction energy_gradient(const KernelMatrix& K, const GridFunction& u);

// (sum_{i interior} vol |u_i|^q)^{1/q}
double lq_norm(const KernelMatrix& K, const GridFunction& u, double q);

// E(u) / ||u||_{L^q}^p ; throws ZeroFunction when the norm vanishes.
double rayleigh_quotient(const KernelMatrix& K, const GridFunction& u, double q);

// J(u) = E(u)/p - sum_{i interior} vol u_i ; minimized by the torsion function.
double torsion_objective(const KernelMatrix& K, const GridFunction& u);

}  // namespace fraclab
