#include "csfh/curve.hpp"

#include "csfh/errors.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

namespace csfh::sim {

Curve::Curve(std::vector<Vec2> points) : points_(std::move(points)) {
  if (points_.size() < kMinPoints) {
    throw GeometryError("a curve needs at least " + std::to_string(kMinPoints) + " points, got " +
                        std::to_string(points_.size()));
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i].x) || !std::isfinite(points_[i].y)) {
      throw GeometryError("non-finite coordinate at point " + std::to_string(i));
    }
    if (points_[i] == next(i)) {
      throw GeometryError("consecutive points " + std::to_string(i) + " coincide");
    }
  }
}

Curve Curve::from_points(std::vector<Vec2> points) {
  Curve curve(std::move(points));
  if (!is_simple(curve)) throw GeometryError("polygon is self-intersecting");
  if (curve.signed_area() < 0) {
    std::vector<Vec2> reversed(curve.points_.rbegin(), curve.points_.rend());
    std::rotate(reversed.begin(), reversed.end() - 1, reversed.end());  // keep point 0 first
    return Curve(std::move(reversed));
  }
  return curve;
}

std::vector<double> Curve::segments() const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = segment(i);
  return out;
}

double Curve::length() const {
  double total = 0.0;
  for (std::size_t i = 0; i < size(); ++i) total += segment(i);
  return total;
}

double Curve::signed_area() const {
  double twice = 0.0;
  for (std::size_t i = 0; i < size(); ++i) twice += cross(points_[i], next(i));
  return 0.5 * twice;
}

std::vector<double> Curve::arclength() const {
  std::vector<double> s(size(), 0.0);
  for (std::size_t i = 1; i < size(); ++i) s[i] = s[i - 1] + segment(i - 1);
  return s;
}

Vec2 Curve::centroid() const {
  Vec2 c;
  for (const auto& p : points_) c += p;
  return (1.0 / static_cast<double>(size())) * c;
}

namespace {

int orientation(Vec2 a, Vec2 b, Vec2 c) {
  const double v = cross(b - a, c - a);
  return (v > 0) - (v < 0);
}

bool on_segment(Vec2 a, Vec2 b, Vec2 p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

bool segments_intersect(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2) {
  const int o1 = orientation(p1, p2, q1), o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1), o4 = orientation(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

double menger(Vec2 a, Vec2 b, Vec2 c) {
  const Vec2 u = b - a, v = c - b, w = c - a;
  const double denom = norm(u) * norm(v) * norm(w);
  if (denom == 0.0) throw GeometryError("degenerate spacing: coincident neighbouring points");
  return 2.0 * cross(u, v) / denom;
}

}  // namespace

bool is_simple(const Curve& curve) {
  const std::size_t n = curve.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent through the closure
      if (segments_intersect(curve[i], curve.next(i), curve[j], curve.next(j))) return false;
    }
  }
  return true;
}

std::vector<double> discrete_curvature(const Curve& curve) {
  std::vector<double> kappa(curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) kappa[i] = menger(curve.prev(i), curve[i], curve.next(i));
  return kappa;
}

std::vector<double> discrete_curvature_open(std::span<const Vec2> points) {
  std::vector<double> kappa(points.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 1; i + 1 < points.size(); ++i) kappa[i] = menger(points[i - 1], points[i], points[i + 1]);
  return kappa;
}

std::vector<Vec2> inward_normals(const Curve& curve) {
  std::vector<Vec2> normals(curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const Vec2 chord = curve.next(i) - curve.prev(i);
    normals[i] = (1.0 / norm(chord)) * perp(chord);
  }
  return normals;
}

Curve make_circle(double radius, std::size_t n, Vec2 center) {
  if (!(radius > 0)) throw ConfigError("circle radius must be positive");
  std::vector<Vec2> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    pts[i] = {center.x + radius * std::cos(theta), center.y + radius * std::sin(theta)};
  }
  return Curve(std::move(pts));
}

Curve make_ellipse(double a, double b, std::size_t n) {
  if (!(a > 0 && b > 0)) throw ConfigError("ellipse semi-axes must be positive");
  std::vector<Vec2> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    pts[i] = {a * std::cos(theta), b * std::sin(theta)};
  }
  return Curve(std::move(pts));
}

Curve make_rounded_square(double delta, std::size_t n) {
  if (!(delta >= 0 && delta < 1.0 / 17.0)) throw ConfigError("rsquare needs 0 <= delta < 1/17 to stay convex");
  std::vector<Vec2> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    const double r = 1.0 + delta * std::cos(4.0 * theta);
    pts[i] = {r * std::cos(theta), r * std::sin(theta)};
  }
  return Curve(std::move(pts));
}

namespace {

std::map<std::string, double> parse_keys(std::string_view body, std::string_view spec) {
  std::map<std::string, double> out;
  std::size_t pos = 0;
  while (pos < body.size()) {
    std::size_t comma = body.find(',', pos);
    if (comma == std::string_view::npos) comma = body.size();
    const std::string_view item = body.substr(pos, comma - pos);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected key=value in '" + std::string(spec) + "'");
    const std::string key(item.substr(0, eq));
    const std::string value(item.substr(eq + 1));
    try {
      std::size_t used = 0;
      out[key] = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw ConfigError("bad number '" + value + "' in '" + std::string(spec) + "'");
    }
    pos = comma + 1;
  }
  return out;
}

double take(std::map<std::string, double>& keys, const std::string& name, double fallback) {
  auto it = keys.find(name);
  if (it == keys.end()) return fallback;
  const double v = it->second;
  keys.erase(it);
  return v;
}

std::size_t take_count(std::map<std::string, double>& keys) {
  const double n = take(keys, "N", 256);
  if (n < static_cast<double>(Curve::kMinPoints) || n != std::floor(n)) {
    throw ConfigError("N must be an integer >= 16");
  }
  return static_cast<std::size_t>(n);
}

}  // namespace

bool is_generator_spec(std::string_view text) {
  return text.starts_with("circle:") || text.starts_with("ellipse:") || text.starts_with("rsquare:") ||
         text == "circle" || text == "ellipse" || text == "rsquare";
}

Curve parse_generator(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view shape = spec.substr(0, colon);
  auto keys = parse_keys(colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1), spec);

  Curve curve = [&] {
    if (shape == "circle") {
      const double r = take(keys, "R", 1.0);
      const Vec2 c{take(keys, "cx", 0.0), take(keys, "cy", 0.0)};
      return make_circle(r, take_count(keys), c);
    }
    if (shape == "ellipse") {
      const double a = take(keys, "a", 2.0);
      const double b = take(keys, "b", 1.0);
      return make_ellipse(a, b, take_count(keys));
    }
    if (shape == "rsquare") {
      const double delta = take(keys, "delta", 0.04);
      return make_rounded_square(delta, take_count(keys));
    }
    throw ConfigError("unknown curve generator '" + std::string(shape) + "'");
  }();
  if (!keys.empty()) throw ConfigError("unknown key '" + keys.begin()->first + "' in '" + std::string(spec) + "'");
  return curve;
}

}  // namespace csfh::sim
