#pragma once

#include "csfh/curve.hpp"

#include <vector>

namespace csfh::sim {

/// Periodic C2 cubic spline through the points of a closed curve,
/// parametrised by cumulative chord length.
class PeriodicSpline {
 public:
  explicit PeriodicSpline(const Curve& curve);

  /// Parameter period (the polygon length of the source curve).
  double period() const noexcept { return knots_.back(); }
  std::size_t segments() const noexcept { return points_.size(); }
  double knot(std::size_t i) const { return knots_[i]; }

  /// Position and derivative; tau is reduced modulo the period.
  Vec2 at(double tau) const;
  Vec2 derivative(double tau) const;

  /// Arc length of the spline between parameters lo <= hi (hi - lo <= period).
  double arc_length(double lo, double hi) const;
  double length() const { return arc_length(0.0, period()); }

 private:
  std::size_t locate(double tau, double& local) const;
  double segment_arc(std::size_t seg, double t0, double t1) const;

  std::vector<Vec2> points_;
  std::vector<Vec2> second_;  // second derivatives at the knots
  std::vector<double> knots_;  // size n + 1, knots_[n] = period
};

}  // namespace csfh::sim
