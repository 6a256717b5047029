#include <cmath>

#include "doctest.h"
#include "fraclab/capacity.hpp"

using namespace fraclab;

namespace {

struct Setup {
  Grid grid;
  KernelMatrix K;
};

Setup make(double h, Params pr = {}) {
  Domain dom(1, Shape{Interval{-1.0, 1.0}});
  Grid g = build_grid(dom, h, pr);
  KernelMatrix K = assemble_kernel(g, pr);
  return {std::move(g), std::move(K)};
}

std::vector<int> ball_nodes(const Grid& g, const Point& xi0, double radius) {
  std::vector<int> out;
  for (int i = 0; i < g.size(); ++i)
    if (dist(g.nodes[static_cast<size_t>(i)], xi0) <= radius) out.push_back(i);
  return out;
}

}  // namespace

TEST_CASE("capacity of the empty set is exactly zero") {
  auto [g, K] = make(1.0 / 32.0);
  SolverConfig cfg;
  CapacityResult r = capacity(g, {}, {0.0, 0.0}, 0.5, K, cfg);
  CHECK(r.value == 0.0);
  CHECK(r.converged);
  for (double v : r.potential.values) CHECK(v == 0.0);
}

TEST_CASE("potential respects pins and box constraints") {
  auto [g, K] = make(1.0 / 32.0);
  SolverConfig cfg;
  cfg.tol_grad = 1e-7;
  const Point xi0{0.0, 0.0};
  const double r = 0.5;
  std::vector<int> E = ball_nodes(g, xi0, 0.2);
  CapacityResult res = capacity(g, E, xi0, r, K, cfg);
  REQUIRE(res.converged);
  CHECK(res.value > 0.0);
  for (int i : E) CHECK(res.potential[i] == 1.0);
  for (int i = 0; i < g.size(); ++i) {
    CHECK(res.potential[i] >= 0.0);
    CHECK(res.potential[i] <= 1.0);
    if (dist(g.nodes[static_cast<size_t>(i)], xi0) > 2.0 * r)
      CHECK(res.potential[i] == 0.0);
  }
  CHECK(res.potential.far_value == 0.0);
}

TEST_CASE("capacity is monotone in the charged set") {
  auto [g, K] = make(1.0 / 32.0);
  SolverConfig cfg;
  cfg.tol_grad = 1e-7;
  const Point xi0{0.0, 0.0};
  double prev = 0.0;
  for (int k = 1; k <= 6; ++k) {
    std::vector<int> E = ball_nodes(g, xi0, 0.05 * k);
    CapacityResult res = capacity(g, E, xi0, 0.45, K, cfg);
    REQUIRE(res.converged);
    CHECK(res.value >= prev - 1e-10);
    prev = res.value;
  }
}

TEST_CASE("unresolved radii are rejected") {
  auto [g, K] = make(1.0 / 32.0);
  SolverConfig cfg;
  try {
    capacity(g, {0}, {0.0, 0.0}, 4.0 * g.h, K, cfg);
    FAIL("expected UNRESOLVED_RADIUS");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnresolvedRadius);
  }
}

TEST_CASE("charged nodes must fit in the condenser ball") {
  auto [g, K] = make(1.0 / 32.0);
  SolverConfig cfg;
  std::vector<int> E = {g.interior.front()};  // near x = -1, far from xi0
  try {
    capacity(g, E, {0.9, 0.0}, 0.3, K, cfg);
    FAIL("expected GEOMETRY");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Geometry);
  }
}

TEST_CASE("wiener integrand at a flat boundary point") {
  Params pr;  // n=1, s=0.5, p=2: n - ps = 0, the borderline case
  Domain dom(1, Shape{Interval{-1.0, 1.0}});
  SolverConfig cfg;
  cfg.tol_grad = 1e-7;
  WienerOptions opts;
  opts.cells_per_radius = 16;
  WienerReport rep = wiener_integrand(dom, {1.0, 0.0}, 0.25, 5, pr, cfg, opts);

  REQUIRE(rep.radii.size() == 5);
  for (size_t k = 0; k < rep.radii.size(); ++k) {
    CHECK(rep.usable[k]);
    CHECK(rep.radii[k] == doctest::Approx(0.25 * std::pow(2.0, -double(k))));
  }
  // the rescaled local solves are exact replicas of each other here, so the
  // integrand is constant to rounding and the dyadic sum grows linearly
  for (size_t k = 1; k < rep.integrand.size(); ++k)
    CHECK(rep.integrand[k] == doctest::Approx(rep.integrand[0]).epsilon(1e-11));
  CHECK(rep.diverging);
  CHECK(rep.dyadic_sum ==
        doctest::Approx(5.0 * rep.integrand[0] * std::log(2.0)).epsilon(1e-10));
  CHECK(std::abs(rep.growth_slope) < 1e-10);
}

TEST_CASE("wiener requires a boundary point and resolved radii") {
  Params pr;
  Domain dom(1, Shape{Interval{-1.0, 1.0}});
  SolverConfig cfg;
  try {
    wiener_integrand(dom, {0.0, 0.0}, 0.25, 3, pr, cfg);
    FAIL("expected GEOMETRY");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Geometry);
  }
  WienerOptions coarse;
  coarse.cells_per_radius = 4;
  try {
    wiener_integrand(dom, {1.0, 0.0}, 0.25, 3, pr, cfg, coarse);
    FAIL("expected UNRESOLVED_RADIUS");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnresolvedRadius);
  }
}
