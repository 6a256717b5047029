#include "fraclab/theorem_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace fraclab {

namespace {

void check_pair(const KernelMatrix& K, const GridFunction& u) {
  if (u.grid_id != K.grid_id() || u.size() != K.size())
    throw Error(ErrorCode::GridMismatch, "function and kernel live on different grids");
}

void require_interior_positive(const KernelMatrix& K, const GridFunction& u,
                               const char* what) {
  for (int i : K.interior())
    if (!(u[i] > 0.0))
      throw Error(ErrorCode::NonpositiveInput, std::string(what) + " must be positive on interior nodes");
}

}  // namespace

HopfReport hopf_constant(const KernelMatrix& K, const GridFunction& u,
                         const GridFunction& u_tor) {
  check_pair(K, u);
  check_pair(K, u_tor);
  require_interior_positive(K, u_tor, "torsion profile");

  HopfReport rep;
  rep.positive = true;
  double best = std::numeric_limits<double>::infinity();
  for (int i : K.interior()) {
    if (!(u[i] > 0.0)) rep.positive = false;
    const double ratio = u[i] / u_tor[i];
    if (ratio < best) {
      best = ratio;
      rep.argmin_node = i;
    }
  }
  rep.C = best;
  return rep;
}

HarnackReport harnack_bounds(const KernelMatrix& K, const Grid& grid, const Domain& domain,
                             const GridFunction& u, const GridFunction& v,
                             std::vector<int> K_core) {
  check_pair(K, u);
  check_pair(K, v);
  check_same_grid(grid, u);
  require_interior_positive(K, u, "u");
  require_interior_positive(K, v, "v");

  if (K_core.empty()) {
    double depth_max = 0.0;
    for (int i : K.interior())
      depth_max = std::max(depth_max, domain.dist_to_boundary(grid.nodes[static_cast<size_t>(i)]));
    for (int i : K.interior())
      if (domain.dist_to_boundary(grid.nodes[static_cast<size_t>(i)]) >= 0.5 * depth_max)
        K_core.push_back(i);
  }
  for (int i : K_core)
    if (i < 0 || i >= K.size() || grid.cls[static_cast<size_t>(i)] != NodeClass::Interior)
      throw Error(ErrorCode::Validation, "K_core must consist of interior nodes");

  HarnackReport rep;
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (int i : K.interior()) {
    const double ratio = u[i] / v[i];
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  rep.C1 = lo;
  rep.C2 = hi;

  // hypothesis audit: -2 diam^{-(n+ps)} int_{K_core} w^{p-1} <= L w <= 1
  const Params& pr = K.params();
  const double pm1 = pr.p - 1.0;
  const double coef = 2.0 * std::pow(grid.diam, -(static_cast<double>(pr.n) + pr.p * pr.s));
  auto audit = [&](const GridFunction& w) {
    double mass = 0.0;
    for (int i : K_core) mass += std::pow(w[i], pm1);
    const double lower = -coef * K.vol() * mass;
    GridFunction Lw = apply_operator(K, w, w.far_value);
    double worst = 0.0;
    for (int i : K.interior()) {
      worst = std::max(worst, lower - Lw[i]);
      worst = std::max(worst, Lw[i] - 1.0);
    }
    return worst;
  };
  rep.audit_u = audit(u);
  rep.audit_v = audit(v);
  rep.K_core = std::move(K_core);
  return rep;
}

MinPrincipleAudit min_principle_check(const KernelMatrix& K, const GridFunction& u,
                                      const GridFunction& f, double tol) {
  check_pair(K, u);
  check_pair(K, f);

  MinPrincipleAudit audit;
  double umin = u.far_value;
  int node = -1;
  for (int i = 0; i < K.size(); ++i)
    if (u[i] < umin) {
      umin = u[i];
      node = i;
    }
  if (node < 0) {  // the far constant is the minimum
    audit.min_interior = false;
    return audit;
  }
  audit.node = node;
  bool interior = false;
  for (int i : K.interior())
    if (i == node) {
      interior = true;
      break;
    }
  audit.min_interior = interior;
  const int rows[1] = {node};
  double val = 0.0;
  operator_rows(K, u, u.far_value, rows, &val);
  audit.operator_value = val;
  audit.slack = val - f[node];
  audit.pass = interior && audit.slack >= -tol;
  return audit;
}

ConvexityRecord hidden_convexity_check(const KernelMatrix& K, const GridFunction& u,
                                       const GridFunction& v, double t, double q) {
  check_pair(K, u);
  check_pair(K, v);
  if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorCode::Validation, "t must lie in [0,1]");
  if (!(q > 1.0)) throw Error(ErrorCode::InvalidQ, "hidden convexity needs q > 1");
  for (int i : K.interior())
    if (u[i] < 0.0 || v[i] < 0.0)
      throw Error(ErrorCode::NonpositiveInput, "hidden convexity needs nonnegative inputs");

  GridFunction sigma{std::vector<double>(u.values.size(), 0.0), u.grid_id, 0.0};
  for (int i : K.interior())
    sigma[i] = std::pow(t * std::pow(u[i], q) + (1.0 - t) * std::pow(v[i], q), 1.0 / q);

  ConvexityRecord rec;
  rec.lhs = gagliardo_energy(K, sigma);
  rec.rhs = t * gagliardo_energy(K, u) + (1.0 - t) * gagliardo_energy(K, v);
  rec.slack = rec.rhs - rec.lhs;
  rec.holds = rec.slack >= -1e-10 * std::max(1.0, std::abs(rec.rhs));
  return rec;
}

IsolationReport isolation_experiment(const KernelMatrix& K, const Grid& grid, double q,
                                     int trials, const SolverConfig& cfg, double gap_frac) {
  if (trials < 1) throw Error(ErrorCode::Validation, "need at least one trial");
  if (K.grid_id() != grid.hash())
    throw Error(ErrorCode::GridMismatch, "kernel was assembled on a different grid");

  const auto reflection = grid.reflection_map();

  IsolationReport rep;
  rep.trials = trials;
  rep.gap_frac = gap_frac;
  struct Hit {
    int trial;
    double lambda;
    double residual;
    bool sign_definite;
  };
  std::vector<Hit> hits;
  for (int trial = 0; trial < trials; ++trial) {
    SolverConfig c = cfg;
    c.seed = cfg.seed ^ (0x9e3779b97f4a7c15ull * static_cast<uint64_t>(trial + 1));
    EigenInit init;
    if (trial % 2 == 1 && reflection) init.odd_projection = &*reflection;
    EigenResult r = solve_first_eigenpair(K, q, c, init);
    if (!r.converged) continue;
    hits.push_back({trial, r.lambda, r.residual, r.sign_definite});
    rep.lambdas.push_back(r.lambda);
    rep.sign_definite.push_back(r.sign_definite);
  }
  rep.converged_count = static_cast<int>(hits.size());
  if (hits.empty()) return rep;

  double lmin = hits[0].lambda;
  for (const Hit& h : hits) lmin = std::min(lmin, h.lambda);
  rep.lambda_min = lmin;

  double second = std::numeric_limits<double>::infinity();
  for (const Hit& h : hits) {
    if (h.sign_definite) continue;
    second = std::min(second, h.lambda);
    if (h.lambda <= lmin * (1.0 + gap_frac))
      rep.offenders.push_back({h.trial, h.lambda, h.residual});
  }
  if (std::isfinite(second)) {
    rep.gap = second - lmin;
    rep.gap_defined = true;
  }
  return rep;
}

}  // namespace fraclab
