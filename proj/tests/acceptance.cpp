// Acceptance gate: one line per criterion, process exit code = number of
// failures. Tolerances are pinned here and nowhere else.

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fraclab/io.hpp"
#include "fraclab/theorem_lab.hpp"

using namespace fraclab;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int idx, const char* name, bool pass, const std::string& detail) {
  std::printf("%s %2d. %s  [%s]\n", pass ? "PASS" : "FAIL", idx, name, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

void guarded(int idx, const char* name, const std::function<std::pair<bool, std::string>()>& f) {
  try {
    auto [pass, detail] = f();
    report(idx, name, pass, detail);
  } catch (const std::exception& e) {
    report(idx, name, false, std::string("exception: ") + e.what());
  }
}

struct Lab {
  Grid grid;
  KernelMatrix K;
};

Lab make(double h, Params pr = {}, double trunc = 0.0) {
  Domain dom(1, Shape{Interval{-1.0, 1.0}}, 0.0, trunc);
  Grid g = build_grid(dom, h, pr);
  KernelMatrix K = assemble_kernel(g, pr);
  return {std::move(g), std::move(K)};
}

std::string fmt(const char* f, ...) {
  char buf[256];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof(buf), f, ap);
  va_end(ap);
  return buf;
}

// ---- criteria ----

std::pair<bool, std::string> c1_operator_identities() {
  Params pr;
  Lab lab = make(1.0 / 16.0);  // 256 nodes across the truncation ball

  GridFunction c = GridFunction::constant(lab.grid, 11.0 / 7.0);
  GridFunction Lc = apply_operator(lab.K, c, c.far_value);
  double const_sup = 0.0;
  for (double v : Lc.values) const_sup = std::max(const_sup, std::abs(v));

  Params p3 = pr;
  p3.p = 3.0;
  KernelMatrix K3 = assemble_kernel(lab.grid, p3);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  GridFunction u = GridFunction::zeros(lab.grid);
  for (int i : lab.grid.interior) u[i] = unit(rng);
  GridFunction u2 = u;
  for (double& v : u2.values) v *= 2.0;
  GridFunction Lu = apply_operator(K3, u, 0.0);
  GridFunction Lu2 = apply_operator(K3, u2, 0.0);
  double hom_err = 0.0;
  const double hom_c = std::pow(2.0, p3.p - 1.0);
  for (int i : lab.grid.interior)
    hom_err = std::max(hom_err, std::abs(Lu2[i] - hom_c * Lu[i]) /
                                    std::max(1e-300, std::abs(hom_c * Lu[i])));

  GridFunction v = GridFunction::zeros(lab.grid);
  for (int i : lab.grid.interior) v[i] = unit(rng);
  GridFunction w = u;
  for (size_t k = 0; k < w.values.size(); ++k) w.values[k] += v.values[k];
  GridFunction Au = apply_operator(lab.K, u, 0.0);
  GridFunction Av = apply_operator(lab.K, v, 0.0);
  GridFunction Aw = apply_operator(lab.K, w, 0.0);
  double scale = 0.0, add_err = 0.0;
  for (int i : lab.grid.interior) scale = std::max(scale, std::abs(Au[i]) + std::abs(Av[i]));
  for (int i : lab.grid.interior)
    add_err = std::max(add_err, std::abs(Aw[i] - Au[i] - Av[i]) / scale);

  const bool pass = const_sup == 0.0 && hom_err <= 1e-12 && add_err <= 1e-10;
  return {pass, fmt("const sup=%.1e, hom rel=%.2e, add rel=%.2e", const_sup, hom_err, add_err)};
}

std::pair<bool, std::string> c2_gradient_fd() {
  double worst_all = 0.0;
  for (double pval : {1.5, 2.0, 3.0}) {
    Params pr;
    pr.p = pval;
    Domain dom(1, Shape{Interval{-1.0, 1.0}}, 0.75, 3.25);  // ~50 nodes
    Grid g = build_grid(dom, 1.0 / 8.0, pr);
    KernelMatrix K = assemble_kernel(g, pr);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(pval < 2.0 ? 0.1 : -1.0, 1.0);
    GridFunction u = GridFunction::zeros(g);
    for (double& x : u.values) x = unit(rng);
    GridFunction grad = energy_gradient(K, u);
    double scale = 0.0;
    for (double x : grad.values) scale = std::max(scale, std::abs(x));
    const double dh = 1e-6;
    for (int i = 0; i < g.size(); ++i) {
      GridFunction up = u, dn = u;
      up[i] += dh;
      dn[i] -= dh;
      const double fd =
          (gagliardo_energy(K, up) - gagliardo_energy(K, dn)) / (2.0 * dh * pval);
      worst_all = std::max(worst_all, std::abs(fd - grad[i]) / scale);
    }
  }
  return {worst_all < 1e-5, fmt("max rel err=%.2e over p in {1.5,2,3}", worst_all)};
}

std::pair<bool, std::string> c3_torsion_oracle() {
  Lab lab = make(1.0 / 256.0);
  SolverConfig cfg;
  DirichletResult r = solve_torsion(lab.K, cfg);
  if (!r.converged) return {false, "torsion solve did not converge"};
  double lo = 1e300, hi = 0.0, sum = 0.0;
  int cnt = 0;
  for (int i : lab.grid.interior) {
    const double x = lab.grid.nodes[static_cast<size_t>(i)][0];
    if (std::abs(x) > 0.8) continue;
    const double ratio = r.u[i] / std::sqrt(1.0 - x * x);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    sum += ratio;
    ++cnt;
  }
  const double mean = sum / cnt;
  const double spread = (hi - lo) / mean;
  return {spread < 0.02,
          fmt("ratio mean=%.5f (1/2pi=%.5f), spread=%.3f%%", mean,
              1.0 / (2.0 * 3.14159265358979323846), 100.0 * spread)};
}

std::pair<bool, std::string> c4_eigen_richardson() {
  SolverConfig cfg;
  cfg.tol_grad = 1e-7;
  cfg.seed = 4;
  std::vector<double> lam;
  for (double h : {1.0 / 64.0, 1.0 / 128.0, 1.0 / 256.0}) {
    Lab lab = make(h);
    EigenResult r = solve_first_eigenpair(lab.K, 2.0, cfg);
    if (!r.converged) return {false, fmt("eigen solve at h=%g did not converge", h)};
    lam.push_back(r.lambda);
  }
  const double d1 = lam[0] - lam[1], d2 = lam[1] - lam[2];
  if (d2 == 0.0) return {false, "degenerate refinement differences"};
  const double rate = d1 / d2;  // ~2^order
  const double extrap = lam[2] + d2 / (rate - 1.0);
  const double resid = std::abs(extrap - lam[2]) / extrap;
  const bool pass = extrap > 0.0 && rate > 1.0 && resid < 0.01;
  return {pass, fmt("lambda=%.5f/%.5f/%.5f, rate=%.2f, extrap resid=%.3f%%", lam[0], lam[1],
                    lam[2], rate, 100.0 * resid)};
}

std::pair<bool, std::string> c5_simplicity() {
  Lab lab = make(1.0 / 64.0);
  SolverConfig cfg;
  cfg.tol_grad = 1e-7;
  std::vector<GridFunction> states;
  for (uint64_t seed = 100; seed < 110; ++seed) {
    cfg.seed = seed;
    EigenResult r = solve_first_eigenpair(lab.K, 2.0, cfg);
    if (!r.converged) return {false, fmt("seed %llu did not converge", (unsigned long long)seed)};
    if (!r.sign_definite) return {false, fmt("seed %llu is sign-changing", (unsigned long long)seed)};
    states.push_back(std::move(r.u));
  }
  double dsup = 0.0;
  for (size_t k = 1; k < states.size(); ++k)
    for (int i : lab.grid.interior)
      dsup = std::max(dsup, std::abs(states[k][i] - states[0][i]));
  return {dsup <= 1e-4, fmt("10/10 converged sign-definite, sup disagreement=%.2e", dsup)};
}

std::pair<bool, std::string> c6_hidden_convexity() {
  Lab lab = make(1.0 / 32.0);
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> unit(0.02, 1.0);
  double worst = 1e300;
  for (int rep = 0; rep < 100; ++rep) {
    GridFunction u = GridFunction::zeros(lab.grid), v = GridFunction::zeros(lab.grid);
    for (int i : lab.grid.interior) {
      u[i] = unit(rng);
      v[i] = unit(rng);
    }
    for (double t : {0.25, 0.5, 0.75}) {
      ConvexityRecord rec = hidden_convexity_check(lab.K, u, v, t, 2.0);
      const double scaled = rec.slack / std::max(1.0, std::abs(rec.rhs));
      worst = std::min(worst, scaled);
    }
  }
  return {worst >= -1e-12, fmt("300 checks, worst scaled slack=%.2e", worst)};
}

std::pair<bool, std::string> c7_hopf() {
  SolverConfig cfg;
  cfg.tol_grad = 1e-6;
  cfg.seed = 7;
  std::vector<double> C;
  for (double h : {1.0 / 64.0, 1.0 / 128.0}) {
    Lab lab = make(h);
    DirichletResult tor = solve_torsion(lab.K, cfg);
    EigenResult eig = solve_first_eigenpair(lab.K, 2.0, cfg);
    if (!tor.converged || !eig.converged) return {false, "solve did not converge"};
    HopfReport rep = hopf_constant(lab.K, eig.u, tor.u);
    if (!(rep.positive && rep.C > 0.0)) return {false, "eigenfunction not positive"};
    C.push_back(rep.C);
  }
  const double drift = std::abs(C[1] - C[0]) / C[0];
  return {drift <= 0.15, fmt("C=%.4f -> %.4f, drift=%.2f%%", C[0], C[1], 100.0 * drift)};
}

std::pair<bool, std::string> c8_harnack() {
  SolverConfig cfg;
  cfg.tol_grad = 1e-6;
  cfg.seed = 8;
  std::vector<double> C1, C2;
  for (double h : {1.0 / 64.0, 1.0 / 128.0}) {
    Params pr;
    Domain dom(1, Shape{Interval{-1.0, 1.0}});
    Grid g = build_grid(dom, h, pr);
    KernelMatrix K = assemble_kernel(g, pr);
    DirichletResult tor = solve_torsion(K, cfg);
    EigenResult eig = solve_first_eigenpair(K, 2.0, cfg);
    if (!tor.converged || !eig.converged) return {false, "solve did not converge"};
    HarnackReport rep = harnack_bounds(K, g, dom, tor.u, eig.u);
    if (!(rep.C1 > 0.0 && std::isfinite(rep.C2) && rep.C2 >= rep.C1))
      return {false, "quotient bounds not finite/ordered"};
    C1.push_back(rep.C1);
    C2.push_back(rep.C2);
  }
  const double d1 = std::abs(C1[1] - C1[0]) / C1[0];
  const double d2 = std::abs(C2[1] - C2[0]) / C2[0];
  const bool pass = d1 <= 0.15 && d2 <= 0.15;
  return {pass, fmt("C1=%.4f->%.4f (%.2f%%), C2=%.4f->%.4f (%.2f%%)", C1[0], C1[1],
                    100.0 * d1, C2[0], C2[1], 100.0 * d2)};
}

std::pair<bool, std::string> c9_annulus() {
  Params pr;  // n=1, s=0.5, p=2
  const double ps = pr.p * pr.s;
  const double beta = (ps + 1.0) / (pr.p - 1.0);  // exponent where the bound is exact
  double worst = 0.0, prev = 1e300;
  bool decreasing = true;
  for (double r0 : {0.4, 0.2, 0.1, 0.05}) {
    AnnulusResult res = annulus_integral({0.0, 0.0}, {0.0, 0.0}, r0, 1e-4 * r0, beta, pr);
    worst = std::max(worst, std::abs(res.integral - res.bound) / res.bound);
    if (res.integral >= prev) decreasing = false;
    prev = res.integral;
  }
  const bool pass = worst < 0.005 && decreasing;
  return {pass, fmt("max |quad-closed|/closed=%.4f%%, monotone=%s", 100.0 * worst,
                    decreasing ? "yes" : "no")};
}

std::pair<bool, std::string> c10_sharpness() {
  double worst = 0.0;
  std::string detail;
  for (double pval : {2.0, 3.0}) {
    Params pr;
    pr.p = pval;
    const double ps = pr.p * pr.s;
    const double beta = (ps + 1.0) / (pr.p - 1.0);
    // modest truncation keeps the h = 1/512 kernel small; u vanishes outside
    // (-1,1) anyway
    Lab lab = make(1.0 / 512.0, pr, 2.5);
    GridFunction u = GridFunction::zeros(lab.grid);
    for (int i : lab.grid.interior)
      u[i] = std::pow(std::abs(lab.grid.nodes[static_cast<size_t>(i)][0]), beta);
    int node = lab.grid.interior[0];
    for (int i : lab.grid.interior)
      if (std::abs(lab.grid.nodes[static_cast<size_t>(i)][0]) <
          std::abs(lab.grid.nodes[static_cast<size_t>(node)][0]))
        node = i;
    const int rows[1] = {node};
    double val = 0.0;
    operator_rows(lab.K, u, 0.0, rows, &val);
    // oracle: -2 int_{|y|<1} u^{p-1} |y|^{-(1+ps)} dy = -4/e, e = beta(p-1)-ps
    const double e = beta * (pr.p - 1.0) - ps;
    const double oracle = -4.0 / e;
    const double err = std::abs(val - oracle) / std::abs(oracle);
    worst = std::max(worst, err);
    detail += fmt("p=%g: L=%.5f vs %.5f (%.3f%%)  ", pval, val, oracle, 100.0 * err);
  }
  return {worst < 0.02, detail};
}

std::pair<bool, std::string> c11_capacity() {
  SolverConfig cfg;
  cfg.tol_grad = 1e-7;

  Params pr;
  Lab lab = make(1.0 / 32.0);
  CapacityResult empty = capacity(lab.grid, {}, {0.0, 0.0}, 0.5, lab.K, cfg);
  if (empty.value != 0.0) return {false, "empty set has nonzero capacity"};

  bool monotone = true;
  double prev = -1.0;
  for (int k = 1; k <= 10; ++k) {
    std::vector<int> E;
    const double rE = 0.04 * k;
    for (int i = 0; i < lab.grid.size(); ++i)
      if (std::abs(lab.grid.nodes[static_cast<size_t>(i)][0]) <= rE) E.push_back(i);
    CapacityResult res = capacity(lab.grid, E, {0.0, 0.0}, 0.45, lab.K, cfg);
    if (!res.converged) return {false, fmt("nested solve %d did not converge", k)};
    if (res.value < prev - 1e-10) monotone = false;
    prev = res.value;
  }

  // ball scaling on per-radius rescaled condensers, s = 0.25 so n - ps = 1/2
  Params ps25;
  ps25.s = 0.25;
  std::vector<double> ratio;
  for (double r : {0.2, 0.1, 0.05}) {
    Domain cond(1, Shape{Ball{{0.0, 0.0}, 2.0 * r}}, r, 8.0 * r);
    Grid g = build_grid(cond, r / 16.0, ps25);
    KernelMatrix K = assemble_kernel(g, ps25);
    std::vector<int> E;
    for (int i : g.interior)
      if (norm(g.nodes[static_cast<size_t>(i)]) <= 0.5 * r) E.push_back(i);
    CapacityResult res = capacity(g, E, {0.0, 0.0}, r, K, cfg);
    if (!res.converged) return {false, fmt("scaling solve r=%g did not converge", r)};
    ratio.push_back(res.value / std::pow(r, 1.0 - ps25.p * ps25.s));
  }
  double rlo = ratio[0], rhi = ratio[0];
  for (double x : ratio) {
    rlo = std::min(rlo, x);
    rhi = std::max(rhi, x);
  }
  const double spread = (rhi - rlo) / rlo;
  const bool pass = monotone && spread <= 0.10;
  return {pass, fmt("monotone=%s, scaling ratio spread=%.3f%%", monotone ? "yes" : "no",
                    100.0 * spread)};
}

std::pair<bool, std::string> c12_isolation() {
  std::string detail;
  bool pass = true;

  {  // p = q = 2
    Lab lab = make(1.0 / 64.0);
    SolverConfig cfg;
    cfg.tol_grad = 1e-6;
    cfg.seed = 12;
    IsolationReport rep = isolation_experiment(lab.K, lab.grid, 2.0, 50, cfg, 0.10);
    pass = pass && rep.converged_count == 50 && rep.offenders.empty() && rep.gap_defined &&
           rep.gap > 0.0;
    detail += fmt("p=2: %d/50 conv, gap=%.3f, offenders=%zu  ", rep.converged_count, rep.gap,
                  rep.offenders.size());
  }
  {  // p = 3, q = 2 on a lighter grid
    Params pr;
    pr.p = 3.0;
    Lab lab = make(1.0 / 32.0, pr, 4.0);
    SolverConfig cfg;
    cfg.tol_grad = 1e-5;
    cfg.seed = 13;
    IsolationReport rep = isolation_experiment(lab.K, lab.grid, 2.0, 50, cfg, 0.10);
    pass = pass && rep.converged_count == 50 && rep.offenders.empty() && rep.gap_defined &&
           rep.gap > 0.0;
    detail += fmt("p=3: %d/50 conv, gap=%.3f, offenders=%zu", rep.converged_count, rep.gap,
                  rep.offenders.size());
  }
  return {pass, detail};
}

std::pair<bool, std::string> c13_reproducibility() {
  const char* config = R"({
    "params": {"n": 1, "s": 0.5, "p": 2.0, "q": 2.0},
    "domain": {"shape": {"type": "interval", "a": -1.0, "b": 1.0}},
    "grid": {"h": 0.03125},
    "solver": {"tol_grad": 1e-6},
    "seed": 13
  })";
  fs::path dir = fs::temp_directory_path() / "fraclab_acceptance_repro";
  fs::remove_all(dir);
  fs::create_directories(dir / "a");
  fs::create_directories(dir / "b");
  fs::path cfg = dir / "cfg.json";
  std::ofstream(cfg, std::ios::binary) << config;

  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  std::ostringstream diag;
  for (const char* sub : {"torsion", "eigen"}) {
    if (run_subcommand(sub, cfg.string(), (dir / "a").string(), std::nullopt, 0, diag) != 0)
      return {false, fmt("%s run failed: %s", sub, diag.str().c_str())};
    if (run_subcommand(sub, cfg.string(), (dir / "b").string(), std::nullopt, 0, diag) != 0)
      return {false, fmt("%s rerun failed", sub)};
    for (const char* ext : {".csv", ".json"}) {
      const std::string name = std::string(sub) + ext;
      if (slurp(dir / "a" / name) != slurp(dir / "b" / name))
        return {false, name + " differs between identical runs"};
    }
  }
  fs::remove_all(dir);
  return {true, "torsion and eigen reports byte-identical across reruns"};
}

}  // namespace

int main() {
  guarded(1, "operator identities", c1_operator_identities);
  guarded(2, "energy gradient vs finite differences", c2_gradient_fd);
  guarded(3, "torsion profile oracle", c3_torsion_oracle);
  guarded(4, "eigenvalue Richardson consistency", c4_eigen_richardson);
  guarded(5, "ground-state simplicity surrogate", c5_simplicity);
  guarded(6, "hidden convexity", c6_hidden_convexity);
  guarded(7, "Hopf constant stability", c7_hopf);
  guarded(8, "boundary Harnack quotient stability", c8_harnack);
  guarded(9, "annulus quadrature vs closed form", c9_annulus);
  guarded(10, "sharpness example operator value", c10_sharpness);
  guarded(11, "capacity: empty set, monotonicity, scaling", c11_capacity);
  guarded(12, "isolation sweep", c12_isolation);
  guarded(13, "byte reproducibility", c13_reproducibility);
  std::printf("%d/13 criteria passed\n", 13 - failures);
  return failures;
}
