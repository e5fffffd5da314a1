#pragma once

// Lagrangian integrator for the curve shortening flow gamma_t = kappa N on
// closed convex curves. Points move along the inward normal with speed equal
// to the discrete curvature and are periodically redistributed to equal
// chord length, so that snapshots carry a uniform arc-length grid.

#include "csfh/curve.hpp"

#include <string>
#include <vector>

namespace csfh::sim {

enum class Integrator { Euler, Heun };

struct FlowConfig {
  /// Upper bound on the time step; the adaptive cap cfl * ds_min^2 applies too.
  double dt = 1e-3;
  int resample_every = 10;
  double t_end = 1.0;
  /// Stop once max kappa reaches this value.
  double kappa_max = 100.0;
  std::size_t n_points = 256;
  /// Time between recorded snapshots; 0 records every step.
  double snapshot_interval = 0.01;
  /// When false, `dt` is used as-is and a stability violation is an error.
  bool adaptive = true;
  Integrator integrator = Integrator::Euler;
  double cfl = 0.4;
  /// Stop once max kappa * ds exceeds this (stencils no longer resolve).
  double resolution_limit = 0.5;

  void validate() const;
};

struct Snapshot {
  double t = 0.0;
  Curve curve;
  std::vector<double> kappa;
  std::vector<double> arclen;
  double length = 0.0;
  double area = 0.0;
};

enum class StopReason { ReachedEnd, KappaMax, ResolutionExhausted, ConvexityLost, LengthIncreased };

std::string to_string(StopReason reason);

struct FlowTrace {
  std::vector<Snapshot> snapshots;
  StopReason stop = StopReason::ReachedEnd;
  std::size_t steps = 0;
  std::string message;

  /// Convexity loss or length growth: the discretisation broke an invariant
  /// of the continuous flow.
  bool numerical_failure() const {
    return stop == StopReason::ConvexityLost || stop == StopReason::LengthIncreased;
  }
  double t_end() const { return snapshots.empty() ? 0.0 : snapshots.back().t; }
};

/// Builds a snapshot (curvature, arc length, length, area) for a curve.
Snapshot make_snapshot(double t, Curve curve);

/// cfl * (min segment length)^2.
double stable_dt(const Curve& curve, double cfl = 0.4);

/// One explicit step of gamma_t = kappa N. Throws StabilityError carrying the
/// admissible step when dt exceeds stable_dt(curve, cfl).
Curve step(const Curve& curve, double dt, Integrator integrator = Integrator::Euler, double cfl = 0.4);

/// Redistributes n points along the periodic cubic interpolant so that all
/// chords are equal; point 0 is kept. Throws ConfigError for n < 16.
Curve resample(const Curve& curve, std::size_t n);

/// Integrates from t = 0 until t_end or a stopping rule fires. The initial
/// curve must be convex (all discrete curvatures positive), otherwise a
/// GeometryError is thrown.
FlowTrace run(const Curve& initial, const FlowConfig& config);

/// L^2 / (4 pi A).
double isoperimetric_ratio(const Snapshot& snapshot);

}  // namespace csfh::sim
