#pragma once

#include <limits>

#include "fraclab/errors.hpp"

namespace fraclab {

// The quadruple (n, s, p, q) driving every kernel and functional.
struct Params {
  int n = 1;        // dimension, 1 or 2
  double s = 0.5;   // fractional order, 0 < s < 1
  double p = 2.0;   // integrability exponent, p > 1
  double q = 2.0;   // norm exponent of the eigenvalue constraint, 1 < q < p_star

  // Sobolev exponent p*n/(n - p*s), +inf once p*s >= n.
  double p_star() const {
    if (p * s >= static_cast<double>(n)) return std::numeric_limits<double>::infinity();
    return p * static_cast<double>(n) / (static_cast<double>(n) - p * s);
  }

  // Throws Error{Validation} on any violated invariant.
  void validate() const;

  // Eigen-solver entry points additionally need q <= p.
  void validate_eigen_q() const;
};

}  // namespace fraclab
