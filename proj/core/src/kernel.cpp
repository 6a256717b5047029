#include "fraclab/kernel.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "fraclab/quadrature.hpp"

namespace fraclab {

namespace {

constexpr double kPi = 3.14159265358979323846;

double kernel_pow(double r, double nps) { return std::pow(r, -nps); }

// int_{cell_j} |x_i - y|^{-(n+ps)} dy by k-point (n=1) / k x k (n=2) Gauss.
double subcell_weight(const Point& xi, const Point& xj, double h, int n, double nps) {
  double acc = 0.0;
  for (size_t a = 0; a < kGauss8Nodes.size(); ++a) {
    const double ya = xj[0] + 0.5 * h * kGauss8Nodes[a];
    if (n == 1) {
      acc += kGauss8Weights[a] * kernel_pow(std::abs(xi[0] - ya), nps);
    } else {
      for (size_t b = 0; b < kGauss8Nodes.size(); ++b) {
        const double yb = xj[1] + 0.5 * h * kGauss8Nodes[b];
        const double dx = xi[0] - ya;
        const double dy = xi[1] - yb;
        acc += kGauss8Weights[a] * kGauss8Weights[b] *
               kernel_pow(std::sqrt(dx * dx + dy * dy), nps);
      }
    }
  }
  const double scale = n == 1 ? 0.5 * h : 0.25 * h * h;
  return scale * acc;
}

// T(x) = int_{|y| > R} |x-y|^{-(n+ps)} dy for |x| < R.
//
// n=1 is the closed radial form. For n=2 substitute w = (R/r)^{ps}, which
// flattens the radial decay exactly:
//   T = (R^{-ps}/ps) * int_0^1 G(mu(w)) dw,  mu = (|x|/R) w^{1/ps},
//   G(mu) = int_0^{2pi} (1 + mu^2 - 2 mu cos t)^{-(2+ps)/2} dt.
// Theta panels are graded toward t = 0 where G peaks as mu -> 1.
double tail_integral(const Point& x, double R, int n, double ps, double h) {
  double d = norm(x);
  // rim cells protrude past the truncation radius; clamping excludes the
  // overlap with the node's own cell, like the P.V. diagonal
  d = std::min(d, R - 0.25 * h);
  if (n == 1) {
    return (std::pow(R - d, -ps) + std::pow(R + d, -ps)) / ps;
  }
  const double mu_max = d / R;
  auto G = [ps](double mu) {
    const int panels = 8;
    double acc = 0.0;
    double t0 = 0.0;
    for (int k = 1; k <= panels; ++k) {
      const double t1 = kPi * std::pow(static_cast<double>(k) / panels, 2.0);
      acc += gauss(
          [mu, ps](double t) {
            return std::pow(1.0 + mu * mu - 2.0 * mu * std::cos(t), -0.5 * (2.0 + ps));
          },
          t0, t1, kGauss16Nodes, kGauss16Weights);
      t0 = t1;
    }
    return 2.0 * acc;
  };
  const int wpanels = 4;
  double acc = 0.0;
  for (int k = 0; k < wpanels; ++k) {
    const double w0 = static_cast<double>(k) / wpanels;
    const double w1 = static_cast<double>(k + 1) / wpanels;
    acc += gauss([&](double w) { return G(mu_max * std::pow(w, 1.0 / ps)); }, w0, w1,
                 kGauss16Nodes, kGauss16Weights);
  }
  return std::pow(R, -ps) / ps * acc;
}

std::vector<double> compute_tails(const Grid& grid, const Params& params) {
  const double ps = params.p * params.s;
  std::vector<double> tails(grid.nodes.size());
#pragma omp parallel for schedule(static)
  for (int i = 0; i < grid.size(); ++i)
    tails[static_cast<size_t>(i)] =
        tail_integral(grid.nodes[static_cast<size_t>(i)], grid.trunc_radius, grid.n, ps, grid.h);
  return tails;
}

}  // namespace

double KernelMatrix::row_sum(int i) const {
  double acc = 0.0;
  for (int j = 0; j < n_nodes_; ++j)
    if (j != i) acc += w(i, j);
  return acc + tail(i);
}

KernelMatrix assemble_kernel(const Grid& grid, const Params& params,
                             const AssemblyOptions& opts) {
  params.validate();
  if (grid.size() > opts.node_budget)
    throw Error(ErrorCode::OutOfMemory,
                "node count " + std::to_string(grid.size()) + " exceeds kernel budget " +
                    std::to_string(opts.node_budget));

  KernelMatrix K;
  K.n_nodes_ = grid.size();
  K.vol_ = grid.vol;
  K.grid_id_ = grid.hash();
  K.params_ = params;
  K.interior_.assign(grid.interior.begin(), grid.interior.end());

  const size_t n = static_cast<size_t>(grid.size());
  K.tri_.resize(n * (n - 1) / 2);

  const double nps = static_cast<double>(params.n) + params.p * params.s;
  const double near = opts.near_factor * grid.h;
  const double vol = grid.vol;

#pragma omp parallel for schedule(dynamic, 16)
  for (int i = 0; i < grid.size(); ++i) {
    const Point& xi = grid.nodes[static_cast<size_t>(i)];
    double* row = K.tri_.data() + K.tri_index(i, i + 1) - 0;
    for (int j = i + 1; j < grid.size(); ++j) {
      const Point& xj = grid.nodes[static_cast<size_t>(j)];
      const double d = dist(xi, xj);
      row[j - i - 1] = d > near ? vol * kernel_pow(d, nps)
                                : subcell_weight(xi, xj, grid.h, grid.n, nps);
    }
  }

  K.tail_ = compute_tails(grid, params);
  return K;
}

void operator_rows(const KernelMatrix& K, const GridFunction& u, double u_far,
                   std::span<const int> rows, double* out) {
  const int N = K.size();
  const double p = K.params().p;
  const double* tri = K.packed_upper().data();
  const double* uv = u.values.data();
  const size_t n = static_cast<size_t>(N);

#pragma omp parallel for schedule(dynamic, 8)
  for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
    const int i = rows[static_cast<size_t>(r)];
    const size_t si = static_cast<size_t>(i);
    const double ui = uv[si];
    double acc = 0.0;
    if (p == 2.0) {
      for (size_t j = 0; j < si; ++j)
        acc += tri[j * n - j * (j + 1) / 2 + (si - j - 1)] * (ui - uv[j]);
      const double* wr = tri + si * n - si * (si + 1) / 2;
      for (size_t j = si + 1; j < n; ++j) acc += wr[j - si - 1] * (ui - uv[j]);
      acc += K.tail(i) * (ui - u_far);
    } else {
      for (size_t j = 0; j < si; ++j)
        acc += tri[j * n - j * (j + 1) / 2 + (si - j - 1)] * phi_p(ui - uv[j], p);
      const double* wr = tri + si * n - si * (si + 1) / 2;
      for (size_t j = si + 1; j < n; ++j) acc += wr[j - si - 1] * phi_p(ui - uv[j], p);
      acc += K.tail(i) * phi_p(ui - u_far, p);
    }
    out[r] = 2.0 * acc;
  }
}

GridFunction apply_operator(const KernelMatrix& K, const GridFunction& u, double u_far) {
  if (u.grid_id != K.grid_id() || u.size() != K.size())
    throw Error(ErrorCode::GridMismatch, "function and kernel live on different grids");
  GridFunction Lu{std::vector<double>(u.values.size(), 0.0), u.grid_id, 0.0};
  std::vector<double> vals(K.interior().size());
  operator_rows(K, u, u_far, K.interior(), vals.data());
  for (size_t k = 0; k < vals.size(); ++k) Lu[K.interior()[k]] = vals[k];
  return Lu;
}

AnnulusResult annulus_integral(const Point& x0, const Point& y0, double r0, double eps,
                               double beta, const Params& params) {
  params.validate();
  const double ps = params.p * params.s;
  const double p = params.p;
  if (!(eps > 0.0 && eps < r0))
    throw Error(ErrorCode::Geometry, "need 0 < eps < r0");
  if (!(beta > ps / (p - 1.0)))
    throw Error(ErrorCode::Geometry, "need beta > ps/(p-1)");
  const double sep = dist(x0, y0);
  if (sep > 0.0 && !(r0 < 0.5 * sep))
    throw Error(ErrorCode::Geometry, "need r0 < |x0-y0|/2 when x0 != y0");

  const double c0 = std::pow(sep, beta);
  const double nps = static_cast<double>(params.n) + ps;
  double integral;
  if (params.n == 1) {
    auto f = [&](double t) {
      const double up = std::pow(std::abs(y0[0] + t - x0[0]), beta) - c0;
      const double dn = std::pow(std::abs(y0[0] - t - x0[0]), beta) - c0;
      return (phi_p(up, p) + phi_p(dn, p)) * std::pow(t, -nps);
    };
    integral = adaptive_simpson(f, eps, r0, 1e-11);
  } else {
    auto ring = [&](double rho) {
      double acc = 0.0;
      const int panels = 4;
      for (int k = 0; k < panels; ++k) {
        acc += gauss(
            [&](double th) {
              const Point y{y0[0] + rho * std::cos(th), y0[1] + rho * std::sin(th)};
              return phi_p(std::pow(dist(y, x0), beta) - c0, p);
            },
            2.0 * kPi * k / panels, 2.0 * kPi * (k + 1) / panels, kGauss16Nodes,
            kGauss16Weights);
      }
      return acc * std::pow(rho, -nps) * rho;
    };
    integral = adaptive_simpson(ring, eps, r0, 1e-11);
  }

  const double ball1 = params.n == 1 ? 2.0 : kPi;
  return {integral, ball1 * std::pow(r0, beta * (p - 1.0) - ps)};
}

namespace {

struct CacheHeader {
  char magic[8];
  uint32_t version;
  uint32_t n;
  double s;
  double p;
  uint64_t node_count;
};
constexpr char kMagic[8] = {'F', 'R', 'A', 'C', 'K', 'R', 'N', 'L'};

}  // namespace

void save_kernel_cache(const KernelMatrix& K, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot open kernel cache for writing: " + path);
  CacheHeader hd{};
  std::memcpy(hd.magic, kMagic, 8);
  hd.version = 1;
  hd.n = static_cast<uint32_t>(K.params().n);
  hd.s = K.params().s;
  hd.p = K.params().p;
  hd.node_count = static_cast<uint64_t>(K.size());
  out.write(reinterpret_cast<const char*>(&hd), sizeof(hd));
  out.write(reinterpret_cast<const char*>(K.packed_upper().data()),
            static_cast<std::streamsize>(K.packed_upper().size() * sizeof(double)));
  if (!out) throw Error(ErrorCode::Io, "short write on kernel cache: " + path);
}

KernelMatrix load_kernel_cache(const std::string& path, const Grid& grid,
                               const Params& params) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open kernel cache: " + path);
  CacheHeader hd{};
  in.read(reinterpret_cast<char*>(&hd), sizeof(hd));
  if (!in || std::memcmp(hd.magic, kMagic, 8) != 0 || hd.version != 1)
    throw Error(ErrorCode::Io, "bad kernel cache header: " + path);
  if (hd.n != static_cast<uint32_t>(params.n) || hd.s != params.s || hd.p != params.p ||
      hd.node_count != static_cast<uint64_t>(grid.size()))
    throw Error(ErrorCode::Io, "kernel cache does not match grid/params: " + path);

  KernelMatrix K;
  K.n_nodes_ = grid.size();
  K.vol_ = grid.vol;
  K.grid_id_ = grid.hash();
  K.params_ = params;
  K.interior_.assign(grid.interior.begin(), grid.interior.end());
  const size_t n = static_cast<size_t>(grid.size());
  K.tri_.resize(n * (n - 1) / 2);
  in.read(reinterpret_cast<char*>(K.tri_.data()),
          static_cast<std::streamsize>(K.tri_.size() * sizeof(double)));
  if (!in) throw Error(ErrorCode::Io, "truncated kernel cache: " + path);
  K.tail_ = compute_tails(grid, params);
  return K;
}

}  // namespace fraclab
