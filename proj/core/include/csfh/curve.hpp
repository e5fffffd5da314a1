#pragma once

#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace csfh::sim {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  Vec2& operator-=(Vec2 o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  friend Vec2 operator+(Vec2 a, Vec2 b) { return a += b; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return a -= b; }
  friend Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
  friend bool operator==(Vec2, Vec2) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
/// Rotation by +90 degrees; for a counterclockwise curve this maps the unit
/// tangent to the inward normal.
inline Vec2 perp(Vec2 v) { return {-v.y, v.x}; }

/// Closed planar polygon; point N-1 connects back to point 0.
///
/// Construction enforces N >= 16 and distinct consecutive points.
/// `from_points` additionally checks simplicity and orients the curve
/// counterclockwise.
class Curve {
 public:
  static constexpr std::size_t kMinPoints = 16;

  explicit Curve(std::vector<Vec2> points);

  /// Full ingestion check: the polygon must be simple. Clockwise input is
  /// reversed so that the stored curve is counterclockwise.
  static Curve from_points(std::vector<Vec2> points);

  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<Vec2>& points() const noexcept { return points_; }
  const Vec2& operator[](std::size_t i) const { return points_[i]; }

  /// Periodic neighbour access.
  const Vec2& next(std::size_t i) const { return points_[i + 1 == points_.size() ? 0 : i + 1]; }
  const Vec2& prev(std::size_t i) const { return points_[i == 0 ? points_.size() - 1 : i - 1]; }

  /// Length of segment i (from point i to point i+1).
  double segment(std::size_t i) const { return norm(next(i) - points_[i]); }
  std::vector<double> segments() const;
  double length() const;
  /// Shoelace area; positive for counterclockwise orientation.
  double signed_area() const;
  /// Cumulative arc length at each point, starting at 0.
  std::vector<double> arclength() const;
  Vec2 centroid() const;

 private:
  std::vector<Vec2> points_;
};

/// True when no two non-adjacent edges intersect.
bool is_simple(const Curve& curve);

/// Signed circumscribed-circle curvature at every point; positive on a convex
/// counterclockwise curve, exactly 1/R on a regular polygon inscribed in a
/// circle of radius R. Throws GeometryError on coincident neighbours.
std::vector<double> discrete_curvature(const Curve& curve);

/// Same stencil on an open polyline (the first and last entries are NaN).
std::vector<double> discrete_curvature_open(std::span<const Vec2> points);

/// Unit inward normal at each point (perpendicular to the centred chord).
std::vector<Vec2> inward_normals(const Curve& curve);

// Generators, sampled uniformly in the natural angle parameter.
Curve make_circle(double radius, std::size_t n, Vec2 center = {});
Curve make_ellipse(double a, double b, std::size_t n);
/// Four-fold symmetric square-ish curve r(theta) = 1 + delta cos(4 theta);
/// strictly convex for delta < 1/17.
Curve make_rounded_square(double delta, std::size_t n);

/// Parses `circle:R=1,N=256`, `ellipse:a=2,b=1,N=256` or
/// `rsquare:delta=0.04,N=256`. Throws ConfigError on unknown shapes or keys.
Curve parse_generator(std::string_view spec);

/// True when `text` looks like a generator spec rather than a file path.
bool is_generator_spec(std::string_view text);

}  // namespace csfh::sim
