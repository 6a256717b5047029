#include "fraclab/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fraclab {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_primitive(const Shape& s) {
  return !std::holds_alternative<ShapeUnion>(s.v) &&
         !std::holds_alternative<ShapeDifference>(s.v);
}

bool contains_open(const Shape& s, const Point& x, int n);

bool contains_closed(const Shape& s, const Point& x, int n) {
  return std::visit(
      [&](const auto& sh) -> bool {
        using T = std::decay_t<decltype(sh)>;
        if constexpr (std::is_same_v<T, Interval>) {
          return x[0] >= sh.a && x[0] <= sh.b;
        } else if constexpr (std::is_same_v<T, Ball>) {
          return dist(x, sh.center) <= sh.radius;
        } else if constexpr (std::is_same_v<T, Rectangle>) {
          for (int d = 0; d < n; ++d)
            if (x[d] < sh.lo[d] || x[d] > sh.hi[d]) return false;
          return true;
        } else if constexpr (std::is_same_v<T, ShapeUnion>) {
          return contains_closed(*sh.a, x, n) || contains_closed(*sh.b, x, n);
        } else {
          return contains_closed(*sh.a, x, n) && !contains_open(*sh.b, x, n);
        }
      },
      s.v);
}

bool contains_open(const Shape& s, const Point& x, int n) {
  return std::visit(
      [&](const auto& sh) -> bool {
        using T = std::decay_t<decltype(sh)>;
        if constexpr (std::is_same_v<T, Interval>) {
          return x[0] > sh.a && x[0] < sh.b;
        } else if constexpr (std::is_same_v<T, Ball>) {
          return dist(x, sh.center) < sh.radius;
        } else if constexpr (std::is_same_v<T, Rectangle>) {
          for (int d = 0; d < n; ++d)
            if (x[d] <= sh.lo[d] || x[d] >= sh.hi[d]) return false;
          return true;
        } else if constexpr (std::is_same_v<T, ShapeUnion>) {
          return contains_open(*sh.a, x, n) || contains_open(*sh.b, x, n);
        } else {
          return contains_open(*sh.a, x, n) && !contains_closed(*sh.b, x, n);
        }
      },
      s.v);
}

// Exact signed distance for primitives (negative inside).
double signed_distance(const Shape& s, const Point& x, int n) {
  return std::visit(
      [&](const auto& sh) -> double {
        using T = std::decay_t<decltype(sh)>;
        if constexpr (std::is_same_v<T, Interval>) {
          return std::max(sh.a - x[0], x[0] - sh.b);
        } else if constexpr (std::is_same_v<T, Ball>) {
          return dist(x, sh.center) - sh.radius;
        } else if constexpr (std::is_same_v<T, Rectangle>) {
          double inside = -std::numeric_limits<double>::infinity();
          double out2 = 0.0;
          for (int d = 0; d < n; ++d) {
            const double c = 0.5 * (sh.lo[d] + sh.hi[d]);
            const double half = 0.5 * (sh.hi[d] - sh.lo[d]);
            const double qd = std::abs(x[d] - c) - half;
            inside = std::max(inside, qd);
            if (qd > 0.0) out2 += qd * qd;
          }
          return out2 > 0.0 ? std::sqrt(out2) : inside;
        } else {
          return 0.0;  // composites handled through boundary samples
        }
      },
      s.v);
}

double primitive_diameter(const Shape& s, int n) {
  return std::visit(
      [&](const auto& sh) -> double {
        using T = std::decay_t<decltype(sh)>;
        if constexpr (std::is_same_v<T, Interval>) {
          return sh.b - sh.a;
        } else if constexpr (std::is_same_v<T, Ball>) {
          return 2.0 * sh.radius;
        } else if constexpr (std::is_same_v<T, Rectangle>) {
          double d2 = 0.0;
          for (int d = 0; d < n; ++d) d2 += (sh.hi[d] - sh.lo[d]) * (sh.hi[d] - sh.lo[d]);
          return std::sqrt(d2);
        } else {
          return 0.0;
        }
      },
      s.v);
}

void primitive_boundary_samples(const Shape& s, int n, std::vector<Point>& out) {
  std::visit(
      [&](const auto& sh) {
        using T = std::decay_t<decltype(sh)>;
        if constexpr (std::is_same_v<T, Interval>) {
          out.push_back({sh.a, 0.0});
          out.push_back({sh.b, 0.0});
        } else if constexpr (std::is_same_v<T, Ball>) {
          if (n == 1) {
            out.push_back({sh.center[0] - sh.radius, 0.0});
            out.push_back({sh.center[0] + sh.radius, 0.0});
          } else {
            const int m = 2048;
            for (int k = 0; k < m; ++k) {
              const double th = 2.0 * kPi * k / m;
              out.push_back({sh.center[0] + sh.radius * std::cos(th),
                             sh.center[1] + sh.radius * std::sin(th)});
            }
          }
        } else if constexpr (std::is_same_v<T, Rectangle>) {
          if (n == 1) {
            out.push_back({sh.lo[0], 0.0});
            out.push_back({sh.hi[0], 0.0});
          } else {
            const int m = 512;
            for (int k = 0; k < m; ++k) {
              const double t = static_cast<double>(k) / m;
              out.push_back({sh.lo[0] + t * (sh.hi[0] - sh.lo[0]), sh.lo[1]});
              out.push_back({sh.lo[0] + t * (sh.hi[0] - sh.lo[0]), sh.hi[1]});
              out.push_back({sh.lo[0], sh.lo[1] + t * (sh.hi[1] - sh.lo[1])});
              out.push_back({sh.hi[0], sh.lo[1] + t * (sh.hi[1] - sh.lo[1])});
            }
          }
        } else if constexpr (std::is_same_v<T, ShapeUnion>) {
          primitive_boundary_samples(*sh.a, n, out);
          primitive_boundary_samples(*sh.b, n, out);
        } else {
          primitive_boundary_samples(*sh.a, n, out);
          primitive_boundary_samples(*sh.b, n, out);
        }
      },
      s.v);
}

double max_norm_on_boundary(const std::vector<Point>& samples) {
  double m = 0.0;
  for (const auto& b : samples) m = std::max(m, norm(b));
  return m;
}

}  // namespace

Domain::Domain(int n, Shape shape, double collar_delta, double trunc_radius)
    : n_(n), shape_(std::move(shape)), collar_delta_(collar_delta), trunc_radius_(trunc_radius) {
  if (n_ != 1 && n_ != 2)
    throw Error(ErrorCode::Validation, "domain dimension must be 1 or 2");

  approx_ = !is_primitive(shape_);
  std::vector<Point> raw;
  primitive_boundary_samples(shape_, n_, raw);
  if (raw.empty()) throw Error(ErrorCode::UnsupportedShape, "shape has no boundary");

  if (approx_) {
    // keep only candidate points that actually sit on the composite boundary:
    // some probe direction lands inside and some outside
    const double probe = 1e-7 * std::max(1.0, max_norm_on_boundary(raw));
    for (const auto& b : raw) {
      bool in = false, out = false;
      const int ndir = (n_ == 1) ? 2 : 8;
      for (int k = 0; k < ndir; ++k) {
        const double th = 2.0 * kPi * k / ndir;
        Point y{b[0] + probe * std::cos(th), n_ == 2 ? b[1] + probe * std::sin(th) : 0.0};
        (contains_open(shape_, y, n_) ? in : out) = true;
      }
      if (in && out) boundary_samples_.push_back(b);
    }
    if (boundary_samples_.empty())
      throw Error(ErrorCode::DomainEmpty, "composite shape has empty boundary");
    double d = 0.0;
    for (size_t i = 0; i < boundary_samples_.size(); ++i)
      for (size_t j = i + 1; j < boundary_samples_.size(); ++j)
        d = std::max(d, dist(boundary_samples_[i], boundary_samples_[j]));
    diam_ = d;
  } else {
    diam_ = primitive_diameter(shape_, n_);
  }
  if (!(diam_ > 0.0)) throw Error(ErrorCode::DomainEmpty, "domain has zero extent");

  if (collar_delta_ <= 0.0) collar_delta_ = 0.25 * diam_;
  if (trunc_radius_ <= 0.0) trunc_radius_ = 4.0 * diam_;

  const double reach = approx_ ? max_norm_on_boundary(boundary_samples_)
                               : max_norm_on_boundary(raw);
  if (reach > 0.5 * trunc_radius_)
    throw Error(ErrorCode::Geometry,
                "closure of Omega must fit inside ball(0, trunc_radius/2)");
}

bool Domain::contains(const Point& x) const { return contains_open(shape_, x, n_); }

double Domain::dist_to_boundary(const Point& x) const {
  if (!contains(x)) return 0.0;
  if (!approx_) return -signed_distance(shape_, x, n_);
  double d = std::numeric_limits<double>::infinity();
  for (const auto& b : boundary_samples_) d = std::min(d, dist(x, b));
  return d;
}

double Domain::dist_to_closure(const Point& x) const {
  if (contains_closed(shape_, x, n_)) return 0.0;
  if (!approx_) return signed_distance(shape_, x, n_);
  double d = std::numeric_limits<double>::infinity();
  for (const auto& b : boundary_samples_) d = std::min(d, dist(x, b));
  return d;
}

}  // namespace fraclab
