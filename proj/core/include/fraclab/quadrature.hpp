#pragma once

#include <array>
#include <functional>

namespace fraclab {

// Nodes/weights on [-1,1].
extern const std::array<double, 8> kGauss8Nodes;
extern const std::array<double, 8> kGauss8Weights;
extern const std::array<double, 16> kGauss16Nodes;
extern const std::array<double, 16> kGauss16Weights;

// Adaptive Simpson on [a,b]; tol is an absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 40);

template <size_t N>
double gauss(const std::function<double(double)>& f, double a, double b,
             const std::array<double, N>& nodes, const std::array<double, N>& weights) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (size_t k = 0; k < N; ++k) sum += weights[k] * f(mid + half * nodes[k]);
  return half * sum;
}

}  // namespace fraclab
