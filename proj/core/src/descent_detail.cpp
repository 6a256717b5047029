#include "descent_detail.hpp"

#include <algorithm>

namespace fraclab::detail {

double partial_energy(const KernelMatrix& K, const GridFunction& u,
                      const std::vector<uint8_t>& var) {
  const int N = K.size();
  const double p = K.params().p;
  const double* tri = K.packed_upper().data();
  const double* uv = u.values.data();
  const size_t n = static_cast<size_t>(N);

  std::vector<int> rows;
  rows.reserve(n);
  for (int i = 0; i < N; ++i)
    if (var[static_cast<size_t>(i)]) rows.push_back(i);

  // Each flagged row sums over all partners; a flagged-flagged pair shows up
  // in both rows, so the lower-index half is subtracted once.
  std::vector<double> partial(rows.size(), 0.0);
#pragma omp parallel for schedule(dynamic, 8)
  for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
    const size_t si = static_cast<size_t>(rows[static_cast<size_t>(r)]);
    const double ui = uv[si];
    double full = 0.0, dup = 0.0;
    for (size_t j = 0; j < si; ++j) {
      const double e =
          tri[j * n - j * (j + 1) / 2 + (si - j - 1)] * abs_pow(ui - uv[j], p);
      full += e;
      if (var[j]) dup += e;
    }
    const double* wr = tri + si * n - si * (si + 1) / 2;
    for (size_t j = si + 1; j < n; ++j) full += wr[j - si - 1] * abs_pow(ui - uv[j], p);
    partial[static_cast<size_t>(r)] =
        2.0 * (full - dup +
               K.tail(rows[static_cast<size_t>(r)]) * abs_pow(ui - u.far_value, p));
  }
  double total = 0.0;
  for (double v : partial) total += v;
  return K.vol() * total;
}

double sup_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace fraclab::detail
