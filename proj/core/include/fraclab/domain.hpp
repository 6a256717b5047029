#pragma once

#include <array>
#include <cmath>
#include <memory>
#include <variant>
#include <vector>

#include "fraclab/params.hpp"

namespace fraclab {

// Point in R^n with n in {1,2}; the second coordinate is 0 when n == 1.
using Point = std::array<double, 2>;

inline double dist(const Point& a, const Point& b) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  return std::sqrt(dx * dx + dy * dy);
}

inline double norm(const Point& a) { return std::sqrt(a[0] * a[0] + a[1] * a[1]); }

struct Shape;

struct Interval {
  double a = -1.0, b = 1.0;
};

struct Ball {
  Point center{0.0, 0.0};
  double radius = 1.0;
};

struct Rectangle {
  Point lo{0.0, 0.0};
  Point hi{1.0, 1.0};
};

struct ShapeUnion {
  std::shared_ptr<Shape> a, b;
};

struct ShapeDifference {
  std::shared_ptr<Shape> a, b;  // a minus closure(b)
};

struct Shape {
  std::variant<Interval, Ball, Rectangle, ShapeUnion, ShapeDifference> v;
};

// Bounded open set Omega together with the collar width delta and the
// truncation radius beyond which the far field is handled analytically.
class Domain {
 public:
  // collar_delta <= 0 picks 0.25*diam, trunc_radius <= 0 picks 4*diam.
  Domain(int n, Shape shape, double collar_delta = 0.0, double trunc_radius = 0.0);

  int dim() const { return n_; }
  const Shape& shape() const { return shape_; }
  double collar_delta() const { return collar_delta_; }
  double trunc_radius() const { return trunc_radius_; }
  double diameter() const { return diam_; }

  bool contains(const Point& x) const;  // open-set membership

  // Distance from x in Omega to the boundary; 0 on exterior points.
  // Closed form for primitives, boundary-sample fallback for composites.
  double dist_to_boundary(const Point& x) const;

  // Distance from x to the closure of Omega; 0 inside.
  double dist_to_closure(const Point& x) const;

  // True when a composite shape forced the sampled-boundary fallback.
  bool approx_distance() const { return approx_; }

 private:
  int n_;
  Shape shape_;
  double collar_delta_;
  double trunc_radius_;
  double diam_;
  bool approx_ = false;
  std::vector<Point> boundary_samples_;  // only for composites
};

}  // namespace fraclab
