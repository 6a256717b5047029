#include "fraclab/energy.hpp"

#include <cmath>
#include <numeric>

namespace fraclab {

namespace {

void check(const KernelMatrix& K, const GridFunction& u) {
  if (u.grid_id != K.grid_id() || u.size() != K.size())
    throw Error(ErrorCode::GridMismatch, "function and kernel live on different grids");
}

double abs_pow(double t, double p) {
  if (p == 2.0) return t * t;
  return std::pow(std::abs(t), p);
}

}  // namespace

double gagliardo_energy(const KernelMatrix& K, const GridFunction& u) {
  check(K, u);
  const int N = K.size();
  const double p = K.params().p;
  const double* tri = K.packed_upper().data();
  const double* uv = u.values.data();
  const size_t n = static_cast<size_t>(N);

  // per-row partials, reduced sequentially: the sum is independent of the
  // thread count
  std::vector<double> partial(n, 0.0);
#pragma omp parallel for schedule(dynamic, 8)
  for (int i = 0; i < N; ++i) {
    const size_t si = static_cast<size_t>(i);
    const double ui = uv[si];
    const double* wr = tri + si * n - si * (si + 1) / 2;
    double acc = 0.0;
    for (size_t j = si + 1; j < n; ++j) acc += wr[j - si - 1] * abs_pow(ui - uv[j], p);
    partial[si] = 2.0 * (acc + K.tail(i) * abs_pow(ui - u.far_value, p));
  }
  double total = 0.0;
  for (double v : partial) total += v;
  return K.vol() * total;
}

GridFunction energy_gradient(const KernelMatrix& K, const GridFunction& u) {
  check(K, u);
  std::vector<int> all(static_cast<size_t>(K.size()));
  std::iota(all.begin(), all.end(), 0);
  GridFunction g{std::vector<double>(u.values.size()), u.grid_id, 0.0};
  operator_rows(K, u, u.far_value, all, g.values.data());
  for (double& v : g.values) v *= K.vol();
  return g;
}

double lq_norm(const KernelMatrix& K, const GridFunction& u, double q) {
  check(K, u);
  if (!(q >= 1.0)) throw Error(ErrorCode::Validation, "lq_norm needs q >= 1");
  double acc = 0.0;
  for (int i : K.interior()) acc += std::pow(std::abs(u[i]), q);
  return std::pow(K.vol() * acc, 1.0 / q);
}

double rayleigh_quotient(const KernelMatrix& K, const GridFunction& u, double q) {
  const double nq = lq_norm(K, u, q);
  if (nq == 0.0)
    throw Error(ErrorCode::ZeroFunction, "Rayleigh quotient of the zero function");
  return gagliardo_energy(K, u) / std::pow(nq, K.params().p);
}

double torsion_objective(const KernelMatrix& K, const GridFunction& u) {
  check(K, u);
  double lin = 0.0;
  for (int i : K.interior()) lin += u[i];
  return gagliardo_energy(K, u) / K.params().p - K.vol() * lin;
}

}  // namespace fraclab
