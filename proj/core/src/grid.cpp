#include "fraclab/grid.hpp"

#include <cmath>
#include <cstring>
#include <unordered_map>

#include "fraclab/grid_function.hpp"

namespace fraclab {

namespace {

uint64_t fnv1a(const void* data, size_t len, uint64_t h = 1469598103934665603ull) {
  const auto* b = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < len; ++i) {
    h ^= b[i];
    h *= 1099511628211ull;
  }
  return h;
}

int64_t lattice_key(double coord, double h) {
  return static_cast<int64_t>(std::llround(coord / h - 0.5));
}

}  // namespace

uint64_t Grid::hash() const {
  uint64_t acc = fnv1a(&n, sizeof(n));
  acc = fnv1a(&h, sizeof(h), acc);
  acc = fnv1a(&trunc_radius, sizeof(trunc_radius), acc);
  if (!nodes.empty())
    acc = fnv1a(nodes.data(), nodes.size() * sizeof(Point), acc);
  if (!cls.empty()) acc = fnv1a(cls.data(), cls.size() * sizeof(NodeClass), acc);
  return acc;
}

std::optional<std::vector<int>> Grid::reflection_map() const {
  std::unordered_map<int64_t, int> index;
  index.reserve(nodes.size());
  auto key = [&](const Point& x) {
    const int64_t kx = lattice_key(x[0], h);
    const int64_t ky = n == 2 ? lattice_key(x[1], h) : 0;
    return kx * 2000003 + ky;
  };
  for (int i = 0; i < size(); ++i) index[key(nodes[static_cast<size_t>(i)])] = i;
  std::vector<int> map(nodes.size());
  for (int i = 0; i < size(); ++i) {
    Point m{-nodes[static_cast<size_t>(i)][0], -nodes[static_cast<size_t>(i)][1]};
    auto it = index.find(key(m));
    if (it == index.end()) return std::nullopt;
    if (cls[static_cast<size_t>(it->second)] != cls[static_cast<size_t>(i)]) return std::nullopt;
    map[static_cast<size_t>(i)] = it->second;
  }
  return map;
}

Grid build_grid(const Domain& domain, double h, const Params& params) {
  params.validate();
  if (!(h > 0.0)) throw Error(ErrorCode::Validation, "grid spacing must be positive");
  const double delta = domain.collar_delta();
  if (!(h < delta / 4.0))
    throw Error(ErrorCode::SpacingTooCoarse,
                "collar needs at least four node layers: require h < delta/4");

  Grid g;
  g.n = domain.dim();
  g.h = h;
  g.vol = g.n == 1 ? h : h * h;
  g.diam = domain.diameter();
  g.trunc_radius = domain.trunc_radius();
  g.approx_distance = domain.approx_distance();

  const double R = g.trunc_radius;
  const double cover = R + 0.5 * h * std::sqrt(static_cast<double>(g.n));
  const int64_t kmax = static_cast<int64_t>(std::ceil(cover / h));

  for (int64_t kx = -kmax; kx < kmax; ++kx) {
    const double x = (static_cast<double>(kx) + 0.5) * h;
    if (g.n == 1) {
      if (std::abs(x) > cover) continue;
      g.nodes.push_back({x, 0.0});
    } else {
      for (int64_t ky = -kmax; ky < kmax; ++ky) {
        const double y = (static_cast<double>(ky) + 0.5) * h;
        if (std::sqrt(x * x + y * y) > cover) continue;
        g.nodes.push_back({x, y});
      }
    }
  }

  g.cls.resize(g.nodes.size());
  for (size_t i = 0; i < g.nodes.size(); ++i) {
    const Point& x = g.nodes[i];
    if (domain.contains(x)) {
      g.cls[i] = NodeClass::Interior;
      g.interior.push_back(static_cast<int>(i));
    } else if (domain.dist_to_closure(x) < delta) {
      g.cls[i] = NodeClass::Collar;
    } else {
      g.cls[i] = NodeClass::Far;
    }
  }
  if (g.interior.empty())
    throw Error(ErrorCode::DomainEmpty, "no cell center falls inside Omega");
  return g;
}

GridFunction dist_to_boundary(const Grid& grid, const Domain& domain) {
  GridFunction d = GridFunction::zeros(grid);
  for (int i : grid.interior)
    d[i] = domain.dist_to_boundary(grid.nodes[static_cast<size_t>(i)]);
  return d;
}

void check_same_grid(const Grid& grid, const GridFunction& u) {
  if (u.grid_id != grid.hash() || u.size() != grid.size())
    throw Error(ErrorCode::GridMismatch, "grid function does not belong to this grid");
}

}  // namespace fraclab
