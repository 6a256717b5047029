#include "fraclab/capacity.hpp"

#include <algorithm>
#include <cmath>

#include "descent_detail.hpp"

namespace fraclab {

namespace {

using detail::partial_energy;

constexpr double kLn2 = 0.69314718055994530942;

// KKT violation in operator-row units: interior stationarity off the bounds,
// one-sided slackness on them.
double kkt_residual(const std::vector<double>& rows, const GridFunction& v,
                    const std::vector<int>& free_nodes) {
  double res = 0.0;
  for (size_t k = 0; k < free_nodes.size(); ++k) {
    const double x = v[free_nodes[k]];
    const double r = rows[k];
    double viol;
    if (x <= 1e-12)
      viol = std::max(-r, 0.0);
    else if (x >= 1.0 - 1e-12)
      viol = std::max(r, 0.0);
    else
      viol = std::abs(r);
    res = std::max(res, viol);
  }
  return res;
}

}  // namespace

CapacityResult capacity(const Grid& grid, const std::vector<int>& E_nodes, const Point& xi0,
                        double r, const KernelMatrix& K, const SolverConfig& cfg) {
  cfg.validate();
  if (K.grid_id() != grid.hash())
    throw Error(ErrorCode::GridMismatch, "kernel was assembled on a different grid");
  if (!(r > 0.0)) throw Error(ErrorCode::Validation, "condenser radius must be positive");
  if (r < 8.0 * grid.h)
    throw Error(ErrorCode::UnresolvedRadius, "need at least 8 grid cells across r");

  const int N = grid.size();
  std::vector<uint8_t> pinned_one(static_cast<size_t>(N), 0);
  for (int i : E_nodes) {
    if (i < 0 || i >= N)
      throw Error(ErrorCode::Validation, "E contains an out-of-range node index");
    if (dist(grid.nodes[static_cast<size_t>(i)], xi0) > 2.0 * r)
      throw Error(ErrorCode::Geometry, "E must sit inside the condenser ball B(xi0, 2r)");
    pinned_one[static_cast<size_t>(i)] = 1;
  }

  GridFunction v{std::vector<double>(static_cast<size_t>(N), 0.0), grid.hash(), 0.0};
  std::vector<uint8_t> var(static_cast<size_t>(N), 0);
  std::vector<int> free_nodes;
  for (int i = 0; i < N; ++i) {
    if (pinned_one[static_cast<size_t>(i)]) {
      v[i] = 1.0;
    } else if (dist(grid.nodes[static_cast<size_t>(i)], xi0) <= 2.0 * r) {
      var[static_cast<size_t>(i)] = 1;
      free_nodes.push_back(i);
    }
  }

  CapacityResult out;
  out.r = r;
  out.xi0 = xi0;
  if (E_nodes.empty()) {  // nothing to charge: the zero potential is exact
    out.potential = std::move(v);
    out.converged = true;
    return out;
  }

  const size_t m = free_nodes.size();
  const double p = K.params().p;
  const double vol = K.vol();
  double maxrow = 0.0;
  for (int i : free_nodes) maxrow = std::max(maxrow, K.row_sum(i));
  const double tol = cfg.tol_grad * (1.0 + 2.0 * maxrow);
  const double tau0 = 1.0 / (2.0 * vol * std::max(maxrow, 1e-300));

  std::vector<double> rows(m), gr(m), gn(m);
  auto refresh = [&](const GridFunction& w, std::vector<double>& g) {
    operator_rows(K, w, 0.0, free_nodes, rows.data());
    for (size_t k = 0; k < m; ++k) g[k] = vol * rows[k];
    return kkt_residual(rows, w, free_nodes);
  };
  auto objective = [&](const GridFunction& w) { return partial_energy(K, w, var) / p; };

  double F = objective(v);
  double res = refresh(v, gr);
  double tau = tau0;
  bool converged = res <= tol;
  int it = 0;
  GridFunction vn = v;
  for (; it < cfg.max_iters && !converged && m > 0; ++it) {
    double t = tau;
    bool accepted = false;
    double Fn = F, move2 = 0.0;
    // roundoff-sized slack keeps the projected descent moving at the
    // precision floor of the energy
    const double slack = 1e-14 * (1.0 + std::abs(F));
    for (int bt = 0; bt < 80; ++bt) {
      move2 = 0.0;
      for (size_t k = 0; k < m; ++k) {
        const int i = free_nodes[k];
        const double x = std::clamp(v[i] - t * gr[k], 0.0, 1.0);
        vn[i] = x;
        move2 += (x - v[i]) * (x - v[i]);
      }
      if (move2 == 0.0) break;
      Fn = objective(vn);
      // proximal-form sufficient decrease for the projected step
      if (Fn <= F - cfg.armijo_c / t * move2 + slack) {
        accepted = true;
        break;
      }
      t *= cfg.backtrack;
    }
    if (!accepted) break;

    const double resn = refresh(vn, gn);
    double ss = 0.0, sy = 0.0;
    for (size_t k = 0; k < m; ++k) {
      const double sk = vn[free_nodes[k]] - v[free_nodes[k]];
      ss += sk * sk;
      sy += sk * (gn[k] - gr[k]);
    }
    tau = sy > 0.0 ? std::clamp(ss / sy, 1e-6 * tau0, 1e10 * tau0) : 2.0 * t;

    v.values.swap(vn.values);
    F = Fn;
    gr.swap(gn);
    res = resn;
    converged = res <= tol;
  }

  out.value = gagliardo_energy(K, v);
  out.potential = std::move(v);
  out.converged = converged;
  out.iters = it;
  out.residual = res;
  return out;
}

WienerReport wiener_integrand(const Domain& domain, const Point& xi0, double r0, int k_max,
                              const Params& params, const SolverConfig& cfg,
                              const WienerOptions& opts) {
  params.validate();
  cfg.validate();
  if (!(r0 > 0.0)) throw Error(ErrorCode::Validation, "r0 must be positive");
  if (k_max < 1) throw Error(ErrorCode::Validation, "k_max must be at least 1");
  if (opts.cells_per_radius < 8)
    throw Error(ErrorCode::UnresolvedRadius, "need at least 8 grid cells across each radius");
  if (domain.contains(xi0) || domain.dist_to_closure(xi0) > 1e-9 * domain.diameter())
    throw Error(ErrorCode::Geometry, "xi0 must lie on the boundary of Omega");

  const int n = domain.dim();
  const double e = static_cast<double>(n) - params.p * params.s;
  WienerReport rep;

  for (int k = 0; k < k_max; ++k) {
    const double rk = r0 * std::pow(2.0, -k);
    const double h = rk / static_cast<double>(opts.cells_per_radius);

    // rescaled local condenser: everything lives in coordinates shifted so
    // that xi0 sits at the origin; the geometry is scale-invariant across k,
    // so integrand ratios are untouched by the truncation choice
    Domain cond(n, Shape{Ball{{0.0, 0.0}, 2.0 * rk}}, rk, 8.0 * rk);
    Grid grid = build_grid(cond, h, params);
    KernelMatrix K = assemble_kernel(grid, params);

    std::vector<int> E;
    for (int i : grid.interior) {
      const Point& y = grid.nodes[static_cast<size_t>(i)];
      if (norm(y) > rk) continue;
      const Point phys{xi0[0] + y[0], n == 2 ? xi0[1] + y[1] : 0.0};
      if (!domain.contains(phys)) E.push_back(i);
    }

    CapacityResult cap = capacity(grid, E, {0.0, 0.0}, rk, K, cfg);
    const double integ = std::pow(std::max(cap.value, 0.0) / std::pow(rk, e),
                                  1.0 / (params.p - 1.0));
    rep.radii.push_back(rk);
    rep.cap.push_back(cap.value);
    rep.integrand.push_back(integ);
    rep.usable.push_back(cap.converged);
    if (cap.converged) rep.dyadic_sum += integ * kLn2;
    rep.partial_sum.push_back(rep.dyadic_sum);
  }

  std::vector<double> good;
  for (size_t k = 0; k < rep.integrand.size(); ++k)
    if (rep.usable[k]) good.push_back(rep.integrand[k]);
  if (good.size() >= 3) {
    const size_t third = std::max<size_t>(1, good.size() / 3);
    double first = 0.0, last = 0.0;
    for (size_t k = 0; k < third; ++k) first += good[k];
    for (size_t k = good.size() - third; k < good.size(); ++k) last += good[k];
    first /= static_cast<double>(third);
    last /= static_cast<double>(third);
    rep.diverging = first > 0.0 && last >= 0.5 * first;
  }
  // least-squares slope of log integrand against k, positive entries only
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int cnt = 0;
  for (size_t k = 0; k < rep.integrand.size(); ++k) {
    if (!rep.usable[k] || !(rep.integrand[k] > 0.0)) continue;
    const double x = static_cast<double>(k), y = std::log(rep.integrand[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  if (cnt >= 2) {
    const double den = cnt * sxx - sx * sx;
    if (den > 0.0) rep.growth_slope = (cnt * sxy - sx * sy) / den;
  }
  return rep;
}

}  // namespace fraclab
