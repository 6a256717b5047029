#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "fraclab/energy.hpp"

namespace fraclab::detail {

inline double abs_pow(double t, double p) {
  if (p == 2.0) return t * t;
  return std::pow(std::abs(t), p);
}

// Gagliardo energy restricted to pairs touching flagged nodes (plus their
// tail terms). Differs from the full energy by a constant while only flagged
// values move, which is all a line search needs; it equals the full energy
// whenever the unflagged part is identically far_value.
double partial_energy(const KernelMatrix& K, const GridFunction& u,
                      const std::vector<uint8_t>& var);

double sup_norm(const std::vector<double>& v);

}  // namespace fraclab::detail
