#include "fraclab/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

#include "descent_detail.hpp"

namespace fraclab {

namespace {

using detail::partial_energy;

void check_pair(const KernelMatrix& K, const GridFunction& u) {
  if (u.grid_id != K.grid_id() || u.size() != K.size())
    throw Error(ErrorCode::GridMismatch, "function and kernel live on different grids");
}

std::vector<uint8_t> interior_mask(const KernelMatrix& K) {
  std::vector<uint8_t> var(static_cast<size_t>(K.size()), 0);
  for (int i : K.interior()) var[static_cast<size_t>(i)] = 1;
  return var;
}

double max_row_sum(const KernelMatrix& K) {
  double m = 0.0;
  for (int i : K.interior()) m = std::max(m, K.row_sum(i));
  return m;
}

void trace_header(const SolverConfig& cfg) {
  if (cfg.verbosity >= 2 && cfg.trace) {
    cfg.trace->precision(17);
    *cfg.trace << "iter,objective,residual\n";
  }
}

void trace_row(const SolverConfig& cfg, int it, double obj, double res) {
  if (cfg.verbosity >= 2 && cfg.trace) *cfg.trace << it << ',' << obj << ',' << res << '\n';
}

}  // namespace

void SolverConfig::validate() const {
  if (max_iters < 1) throw Error(ErrorCode::Validation, "max_iters must be at least 1");
  if (!(tol_grad > 0.0)) throw Error(ErrorCode::Validation, "tol_grad must be positive");
  if (!(tol_step >= 0.0)) throw Error(ErrorCode::Validation, "tol_step must be nonnegative");
  if (!(armijo_c > 0.0 && armijo_c < 1.0))
    throw Error(ErrorCode::Validation, "armijo_c must lie in (0,1)");
  if (!(backtrack > 0.0 && backtrack < 1.0))
    throw Error(ErrorCode::Validation, "backtrack factor must lie in (0,1)");
}

DirichletResult solve_dirichlet(const KernelMatrix& K, const GridFunction& f,
                                const GridFunction& g, const SolverConfig& cfg) {
  cfg.validate();
  check_pair(K, f);
  check_pair(K, g);

  const auto interior = K.interior();
  const size_t m = interior.size();
  const double p = K.params().p;
  const double vol = K.vol();
  const std::vector<uint8_t> var = interior_mask(K);

  double f_sup = 0.0;
  for (int i : interior) f_sup = std::max(f_sup, std::abs(f[i]));
  const double tol = cfg.tol_grad * (1.0 + f_sup);

  GridFunction u = g;
  auto objective = [&](const GridFunction& w) {
    double lin = 0.0;
    for (int i : interior) lin += f[i] * w[i];
    return partial_energy(K, w, var) / p - vol * lin;
  };
  std::vector<double> rows(m);
  // returns the residual sup |L w - f| and fills gr = vol (L w - f) on interior
  auto gradient = [&](const GridFunction& w, std::vector<double>& gr) {
    operator_rows(K, w, w.far_value, interior, rows.data());
    double res = 0.0;
    for (size_t k = 0; k < m; ++k) {
      const double d = rows[k] - f[interior[k]];
      gr[k] = vol * d;
      res = std::max(res, std::abs(d));
    }
    return res;
  };

  const double tau0 = 1.0 / (2.0 * vol * std::max(max_row_sum(K), 1e-300));
  double tau = tau0;
  double F = objective(u);
  std::vector<double> gr(m), gn(m);
  double res = gradient(u, gr);

  trace_header(cfg);
  GridFunction best = u;
  double best_res = res;
  bool converged = res <= tol;
  int it = 0;
  GridFunction un = u;
  for (; it < cfg.max_iters && !converged; ++it) {
    trace_row(cfg, it, F, res);
    double gnorm2 = 0.0;
    for (double v : gr) gnorm2 += v * v;
    if (gnorm2 == 0.0) break;

    double t = tau;
    bool accepted = false;
    double Fn = F;
    // allow roundoff-sized increases so the descent can polish the residual
    // past the precision floor of the objective
    const double slack = 1e-14 * (1.0 + std::abs(F));
    for (int bt = 0; bt < 80; ++bt) {
      for (size_t k = 0; k < m; ++k) un[interior[k]] = u[interior[k]] - t * gr[k];
      Fn = objective(un);
      if (Fn <= F - cfg.armijo_c * t * gnorm2 + slack) {
        accepted = true;
        break;
      }
      t *= cfg.backtrack;
      if (t * std::sqrt(gnorm2) < cfg.tol_step) break;
    }
    if (!accepted) break;

    const double resn = gradient(un, gn);
    // Barzilai-Borwein step from the accepted move, safeguarded
    double ss = 0.0, sy = 0.0;
    for (size_t k = 0; k < m; ++k) {
      const double sk = -t * gr[k];
      ss += sk * sk;
      sy += sk * (gn[k] - gr[k]);
    }
    tau = sy > 0.0 ? std::clamp(ss / sy, 1e-6 * tau0, 1e10 * tau0) : 2.0 * t;

    u.values.swap(un.values);
    F = Fn;
    gr.swap(gn);
    res = resn;
    if (res < best_res) {
      best = u;
      best_res = res;
    }
    converged = res <= tol;
  }
  if (converged) return {std::move(u), true, it, res};
  return {std::move(best), false, it, best_res};
}

DirichletResult solve_torsion(const KernelMatrix& K, const SolverConfig& cfg) {
  GridFunction f{std::vector<double>(static_cast<size_t>(K.size()), 0.0), K.grid_id(), 0.0};
  for (int i : K.interior()) f[i] = 1.0;
  GridFunction g{std::vector<double>(static_cast<size_t>(K.size()), 0.0), K.grid_id(), 0.0};
  return solve_dirichlet(K, f, g, cfg);
}

namespace {

void project_odd(GridFunction& u, const std::vector<int>& map) {
  std::vector<double> proj(u.values.size());
  for (size_t i = 0; i < u.values.size(); ++i)
    proj[i] = 0.5 * (u.values[i] - u.values[static_cast<size_t>(map[i])]);
  u.values.swap(proj);
}

}  // namespace

EigenResult solve_first_eigenpair(const KernelMatrix& K, double q, const SolverConfig& cfg,
                                  const EigenInit& init) {
  cfg.validate();
  Params pr = K.params();
  pr.q = q;
  pr.validate_eigen_q();

  const auto interior = K.interior();
  const size_t m = interior.size();
  const double vol = K.vol();
  const std::vector<uint8_t> var = interior_mask(K);

  GridFunction u{std::vector<double>(static_cast<size_t>(K.size()), 0.0), K.grid_id(), 0.0};
  if (init.u0) {
    check_pair(K, *init.u0);
    for (int i : interior) u[i] = (*init.u0)[i];
    bool all_zero = true;
    for (int i : interior)
      if (u[i] != 0.0) {
        all_zero = false;
        break;
      }
    if (all_zero) {
      auto tor = solve_torsion(K, cfg);
      for (int i : interior) u[i] = tor.u[i];
    }
  } else {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int i : interior) u[i] = unit(rng);
  }
  if (init.odd_projection) project_odd(u, *init.odd_projection);

  const double nq0 = lq_norm(K, u, q);
  if (nq0 == 0.0)
    throw Error(ErrorCode::ZeroFunction, "eigen initialization vanishes identically");
  for (int i : interior) u[i] /= nq0;

  double E = partial_energy(K, u, var);  // equals the full energy: zero exterior
  double lambda = E;

  std::vector<double> rows(m), gr(m), gn(m);
  auto residual_and_gradient = [&](const GridFunction& w, double lam, std::vector<double>& g) {
    operator_rows(K, w, 0.0, interior, rows.data());
    double res = 0.0;
    for (size_t k = 0; k < m; ++k) {
      const double d = rows[k] - lam * phi_p(w[interior[k]], q);
      g[k] = vol * d;
      res = std::max(res, std::abs(d));
    }
    return res;
  };

  const double tau0 = 1.0 / (2.0 * vol * std::max(max_row_sum(K), 1e-300));
  double tau = tau0;
  trace_header(cfg);

  double res = residual_and_gradient(u, lambda, gr);
  bool converged = res <= cfg.tol_grad * (1.0 + std::abs(lambda));
  int it = 0;
  GridFunction un = u;
  for (; it < cfg.max_iters && !converged; ++it) {
    trace_row(cfg, it, lambda, res);
    double gnorm2 = 0.0;
    for (double v : gr) gnorm2 += v * v;
    if (gnorm2 == 0.0) break;

    double t = tau;
    bool accepted = false;
    double En = E;
    const double slack = 1e-14 * (1.0 + std::abs(E));
    for (int bt = 0; bt < 60; ++bt) {
      for (size_t k = 0; k < m; ++k) un[interior[k]] = u[interior[k]] - t * gr[k];
      if (init.odd_projection) project_odd(un, *init.odd_projection);
      const double nq = lq_norm(K, un, q);
      if (nq > 0.0) {
        for (int i : interior) un[i] /= nq;
        En = partial_energy(K, un, var);
        if (En < E - cfg.armijo_c * t * gnorm2 + slack) {
          accepted = true;
          break;
        }
      }
      t *= cfg.backtrack;
      if (t * std::sqrt(gnorm2) < cfg.tol_step) break;
    }
    if (!accepted) break;

    const double resn = residual_and_gradient(un, En, gn);
    // Barzilai-Borwein step from the projected move, safeguarded
    double ss = 0.0, sy = 0.0;
    for (size_t k = 0; k < m; ++k) {
      const double sk = un[interior[k]] - u[interior[k]];
      ss += sk * sk;
      sy += sk * (gn[k] - gr[k]);
    }
    tau = sy > 0.0 ? std::clamp(ss / sy, 1e-6 * tau0, 1e10 * tau0) : 1.5 * t;

    u.values.swap(un.values);
    E = En;
    lambda = En;  // q-norm is one after each accepted step
    gr.swap(gn);
    res = resn;
    converged = res <= cfg.tol_grad * (1.0 + std::abs(lambda));
  }

  // sign normalization: the node carrying the sup is positive
  double amax = 0.0;
  int kmax = interior.empty() ? -1 : interior[0];
  for (int i : interior)
    if (std::abs(u[i]) > amax) {
      amax = std::abs(u[i]);
      kmax = i;
    }
  if (kmax >= 0 && u[kmax] < 0.0)
    for (int i : interior) u[i] = -u[i];
  double lo = 0.0, hi = 0.0;
  for (int i : interior) {
    lo = std::min(lo, u[i]);
    hi = std::max(hi, u[i]);
  }
  const bool sign_definite = lo * hi >= -1e-6 * amax * amax;

  EigenResult out;
  out.lambda = lambda;
  out.u = std::move(u);
  out.residual = res;
  out.sign_definite = sign_definite;
  out.converged = converged;
  out.iters = it;
  return out;
}

}  // namespace fraclab
