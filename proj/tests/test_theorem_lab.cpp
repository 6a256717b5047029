#include <cmath>
#include <random>

#include "doctest.h"
#include "fraclab/theorem_lab.hpp"

using namespace fraclab;

namespace {

struct Lab {
  Domain dom;
  Grid grid;
  KernelMatrix K;
  DirichletResult tor;
  EigenResult eig;
};

Lab make_lab(double h) {
  Params pr;
  Domain dom(1, Shape{Interval{-1.0, 1.0}});
  Grid grid = build_grid(dom, h, pr);
  KernelMatrix K = assemble_kernel(grid, pr);
  SolverConfig cfg;
  cfg.tol_grad = 1e-6;
  cfg.seed = 99;
  DirichletResult tor = solve_torsion(K, cfg);
  EigenResult eig = solve_first_eigenpair(K, 2.0, cfg);
  REQUIRE(tor.converged);
  REQUIRE(eig.converged);
  return {std::move(dom), std::move(grid), std::move(K), std::move(tor), std::move(eig)};
}

}  // namespace

TEST_CASE("hopf constant of the ground state is positive") {
  Lab lab = make_lab(1.0 / 32.0);
  HopfReport rep = hopf_constant(lab.K, lab.eig.u, lab.tor.u);
  CHECK(rep.positive);
  CHECK(rep.C > 0.0);
  CHECK(rep.argmin_node >= 0);
  // C is the infimum: u >= C u_tor everywhere inside
  for (int i : lab.grid.interior)
    CHECK(lab.eig.u[i] >= rep.C * lab.tor.u[i] - 1e-12);

  GridFunction flat = GridFunction::zeros(lab.grid);
  try {
    hopf_constant(lab.K, lab.eig.u, flat);
    FAIL("expected NONPOSITIVE_INPUT");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonpositiveInput);
  }
}

TEST_CASE("harnack quotient bounds bracket the ratio") {
  Lab lab = make_lab(1.0 / 32.0);
  HarnackReport rep = harnack_bounds(lab.K, lab.grid, lab.dom, lab.tor.u, lab.eig.u);
  CHECK(rep.C1 > 0.0);
  CHECK(rep.C2 >= rep.C1);
  CHECK(std::isfinite(rep.C2));
  REQUIRE(!rep.K_core.empty());
  double depth_max = 0.0;
  for (int i : lab.grid.interior)
    depth_max = std::max(depth_max,
                         lab.dom.dist_to_boundary(lab.grid.nodes[static_cast<size_t>(i)]));
  for (int i : rep.K_core) {
    CHECK(lab.grid.cls[static_cast<size_t>(i)] == NodeClass::Interior);
    CHECK(lab.dom.dist_to_boundary(lab.grid.nodes[static_cast<size_t>(i)]) >=
          0.5 * depth_max - 1e-12);
  }
  for (int i : lab.grid.interior) {
    const double q = lab.tor.u[i] / lab.eig.u[i];
    CHECK(q >= rep.C1 - 1e-12);
    CHECK(q <= rep.C2 + 1e-12);
  }
  // the torsion function satisfies L u = 1, so both sides of the audit hold
  CHECK(rep.audit_u <= 1e-6);
}

TEST_CASE("minimum principle audit at the minimizing node") {
  Lab lab = make_lab(1.0 / 32.0);

  // dig a pit at one interior node: the minimum is interior and L u there is
  // strongly negative, so the supersolution check against f = L u passes with
  // zero slack and fails against anything larger
  GridFunction u = GridFunction::zeros(lab.grid);
  const int pit = lab.grid.interior[lab.grid.interior.size() / 2];
  u[pit] = -1.0;
  GridFunction Lu = apply_operator(lab.K, u, 0.0);

  MinPrincipleAudit ok = min_principle_check(lab.K, u, Lu);
  CHECK(ok.min_interior);
  CHECK(ok.node == pit);
  CHECK(ok.operator_value == doctest::Approx(Lu[pit]));
  CHECK(ok.pass);
  CHECK(std::abs(ok.slack) <= 1e-12);

  GridFunction f = GridFunction::constant(lab.grid, Lu[pit] + 1.0);
  MinPrincipleAudit bad = min_principle_check(lab.K, u, f);
  CHECK(bad.min_interior);
  CHECK(!bad.pass);

  // nonnegative u with zero exterior: the minimum is not interior
  MinPrincipleAudit premise = min_principle_check(lab.K, lab.tor.u, Lu);
  CHECK(!premise.pass);
}

TEST_CASE("hidden convexity along the q-mean path") {
  Lab lab = make_lab(1.0 / 32.0);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    GridFunction u = GridFunction::zeros(lab.grid), v = GridFunction::zeros(lab.grid);
    for (int i : lab.grid.interior) {
      u[i] = unit(rng);
      v[i] = unit(rng);
    }
    for (double t : {0.25, 0.5, 0.75}) {
      ConvexityRecord rec = hidden_convexity_check(lab.K, u, v, t, 2.0);
      CHECK(rec.holds);
      CHECK(rec.slack >= -1e-12 * std::max(1.0, std::abs(rec.rhs)));
    }
  }
  // t = 0 and t = 1 recover the endpoints exactly
  ConvexityRecord end = hidden_convexity_check(lab.K, lab.eig.u, lab.eig.u, 1.0, 2.0);
  CHECK(end.lhs == doctest::Approx(end.rhs));

  GridFunction neg = GridFunction::zeros(lab.grid);
  neg[lab.grid.interior[0]] = -1.0;
  try {
    hidden_convexity_check(lab.K, neg, lab.eig.u, 0.5, 2.0);
    FAIL("expected NONPOSITIVE_INPUT");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonpositiveInput);
  }
}

TEST_CASE("isolation sweep separates the ground state") {
  Params pr;
  Domain dom(1, Shape{Interval{-1.0, 1.0}});
  Grid grid = build_grid(dom, 1.0 / 32.0, pr);
  KernelMatrix K = assemble_kernel(grid, pr);
  SolverConfig cfg;
  cfg.tol_grad = 1e-6;
  cfg.seed = 2024;
  IsolationReport rep = isolation_experiment(K, grid, 2.0, 6, cfg);
  CHECK(rep.trials == 6);
  CHECK(rep.converged_count == 6);
  CHECK(rep.lambda_min > 0.0);
  REQUIRE(rep.gap_defined);
  CHECK(rep.gap > 0.5 * rep.lambda_min);
  CHECK(rep.offenders.empty());
  // even trials land on the sign-definite ground state, odd ones above it
  REQUIRE(rep.lambdas.size() == 6);
  for (size_t k = 0; k < rep.lambdas.size(); ++k) {
    if (rep.sign_definite[k])
      CHECK(rep.lambdas[k] == doctest::Approx(rep.lambda_min).epsilon(1e-8));
    else
      CHECK(rep.lambdas[k] >= rep.lambda_min + rep.gap - 1e-8);
  }
}
