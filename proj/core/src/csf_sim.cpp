#include "csfh/csf_sim.hpp"

#include "csfh/errors.hpp"
#include "csfh/spline.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace csfh::sim {

void FlowConfig::validate() const {
  if (!(dt > 0)) throw ConfigError("dt must be positive");
  if (resample_every < 1) throw ConfigError("resample_every must be >= 1");
  if (!(t_end > 0)) throw ConfigError("t_end must be positive");
  if (!(kappa_max > 0)) throw ConfigError("kappa_max must be positive");
  if (n_points < Curve::kMinPoints) throw ConfigError("N must be >= 16");
  if (snapshot_interval < 0) throw ConfigError("snapshot interval must be non-negative");
  if (!(cfl > 0 && cfl <= 0.5)) throw ConfigError("cfl must lie in (0, 0.5]");
  if (!(resolution_limit > 0)) throw ConfigError("resolution limit must be positive");
}

std::string to_string(StopReason reason) {
  switch (reason) {
    case StopReason::ReachedEnd:
      return "reached_end";
    case StopReason::KappaMax:
      return "kappa_max";
    case StopReason::ResolutionExhausted:
      return "resolution_exhausted";
    case StopReason::ConvexityLost:
      return "convexity_lost";
    case StopReason::LengthIncreased:
      return "length_increased";
  }
  return "unknown";
}

Snapshot make_snapshot(double t, Curve curve) {
  std::vector<double> kappa = discrete_curvature(curve);
  std::vector<double> s = curve.arclength();
  const double length = curve.length();
  const double area = curve.signed_area();
  return Snapshot{t, std::move(curve), std::move(kappa), std::move(s), length, area};
}

double stable_dt(const Curve& curve, double cfl) {
  const auto seg = curve.segments();
  const double ds = *std::min_element(seg.begin(), seg.end());
  return cfl * ds * ds;
}

namespace {

std::vector<Vec2> velocity(const Curve& curve) {
  const auto kappa = discrete_curvature(curve);
  const auto normals = inward_normals(curve);
  std::vector<Vec2> v(curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) v[i] = kappa[i] * normals[i];
  return v;
}

std::vector<Vec2> advance(const Curve& curve, const std::vector<Vec2>& v, double dt) {
  std::vector<Vec2> pts = curve.points();
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i] += dt * v[i];
  return pts;
}

}  // namespace

Curve step(const Curve& curve, double dt, Integrator integrator, double cfl) {
  const double limit = stable_dt(curve, cfl);
  if (dt > limit * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "time step " << dt << " exceeds the stability bound " << limit;
    throw StabilityError(os.str(), limit);
  }
  const auto v1 = velocity(curve);
  if (integrator == Integrator::Euler) return Curve(advance(curve, v1, dt));

  const Curve predictor(advance(curve, v1, dt));
  const auto v2 = velocity(predictor);
  std::vector<Vec2> avg(v1.size());
  for (std::size_t i = 0; i < v1.size(); ++i) avg[i] = 0.5 * (v1[i] + v2[i]);
  return Curve(advance(curve, avg, dt));
}

// ---------------------------------------------------------------------------
// Equal-chord resampling

namespace {

// Smallest tau > from with |S(tau) - S(from)| = chord, for a convex-ish curve
// where the distance grows along the first part of the walk.
double next_chord_point(const PeriodicSpline& spline, double from, double chord) {
  const Vec2 anchor = spline.at(from);
  auto f = [&](double tau) { return norm(spline.at(tau) - anchor) - chord; };

  const double speed = std::max(norm(spline.derivative(from)), 1e-300);
  double lo = from;
  double hi = from + chord / speed;
  double fhi = f(hi);
  int grow = 0;
  while (fhi < 0) {
    lo = hi;
    hi = from + 2.0 * (hi - from);
    fhi = f(hi);
    if (++grow > 60) throw GeometryError("equal-chord resampling failed to bracket");
  }

  // Bracketed Newton; once |f| is below 1e-9 chord a single further step
  // reaches rounding level by quadratic convergence.
  double tau = hi;
  double ftau = fhi;
  bool polish = false;
  for (int it = 0; it < 100; ++it) {
    const Vec2 diff = spline.at(tau) - anchor;
    const double slope = dot(diff, spline.derivative(tau)) / norm(diff);
    double next = slope > 0 ? tau - ftau / slope : 0.5 * (lo + hi);
    if (!(next >= lo && next <= hi)) next = 0.5 * (lo + hi);
    if (polish) return next;
    ftau = f(next);
    if (ftau < 0) {
      lo = next;
    } else {
      hi = next;
    }
    tau = next;
    polish = std::abs(ftau) <= 1e-9 * chord;
  }
  return tau;
}

// Walks n chords from tau = 0; returns the overshoot past one period.
double closure_residual(const PeriodicSpline& spline, std::size_t n, double chord, std::vector<double>* taus) {
  double tau = 0.0;
  if (taus) taus->assign(1, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    tau = next_chord_point(spline, tau, chord);
    if (taus && k + 1 < n) taus->push_back(tau);
  }
  return tau - spline.period();
}

}  // namespace

Curve resample(const Curve& curve, std::size_t n) {
  if (n < Curve::kMinPoints) throw ConfigError("resample needs N >= 16, got " + std::to_string(n));
  const PeriodicSpline spline(curve);
  const double period = spline.period();
  const double nd = static_cast<double>(n);

  // The residual is increasing in the chord with slope close to n.
  double c0 = period / nd;
  double r0 = closure_residual(spline, n, c0, nullptr);
  double c1 = c0 - r0 / nd;
  double r1 = closure_residual(spline, n, c1, nullptr);
  for (int it = 0; it < 60 && std::abs(r1) > 1e-14 * period; ++it) {
    const double slope = (r1 - r0) / (c1 - c0);
    const double c2 = (std::isfinite(slope) && slope > 0) ? c1 - r1 / slope : c1 - r1 / nd;
    c0 = c1;
    r0 = r1;
    c1 = c2;
    r1 = closure_residual(spline, n, c1, nullptr);
    if (c1 == c0) break;
  }
  if (std::abs(r1) > 1e-10 * period) {
    throw GeometryError("equal-chord resampling did not close (residual " + std::to_string(r1) + ")");
  }

  std::vector<double> taus;
  closure_residual(spline, n, c1, &taus);
  std::vector<Vec2> pts(n);
  pts[0] = curve[0];
  for (std::size_t k = 1; k < n; ++k) pts[k] = spline.at(taus[k]);
  return Curve(std::move(pts));
}

// ---------------------------------------------------------------------------
// Driver

FlowTrace run(const Curve& initial, const FlowConfig& config) {
  config.validate();
  Curve curve = resample(initial, config.n_points);
  {
    const auto kappa = discrete_curvature(curve);
    const double min_kappa = *std::min_element(kappa.begin(), kappa.end());
    if (!(min_kappa > 0)) {
      throw GeometryError("initial curve is not strictly convex (min curvature " + std::to_string(min_kappa) + ")");
    }
  }

  FlowTrace trace;
  trace.snapshots.push_back(make_snapshot(0.0, curve));

  double t = 0.0;
  std::size_t snapshot_index = 1;
  const auto next_snapshot_time = [&] {
    return config.snapshot_interval > 0 ? std::min(config.t_end, snapshot_index * config.snapshot_interval)
                                        : config.t_end;
  };
  double length = curve.length();
  bool dirty = false;  // moved since the last recorded snapshot

  while (t < config.t_end) {
    const auto kappa = discrete_curvature(curve);
    const auto seg = curve.segments();
    double max_kappa = 0.0, max_resolution = 0.0;
    for (std::size_t i = 0; i < kappa.size(); ++i) {
      max_kappa = std::max(max_kappa, kappa[i]);
      max_resolution = std::max(max_resolution, kappa[i] * std::max(seg[i], curve.segment(i == 0 ? seg.size() - 1 : i - 1)));
    }
    if (max_kappa >= config.kappa_max) {
      trace.stop = StopReason::KappaMax;
      break;
    }
    if (max_resolution > config.resolution_limit) {
      trace.stop = StopReason::ResolutionExhausted;
      break;
    }

    double dt = config.adaptive ? std::min(config.dt, stable_dt(curve, config.cfl)) : config.dt;
    const double target = next_snapshot_time();
    bool hits_target = false;
    if (t + dt >= target || target - (t + dt) <= 1e-12 * std::max(1.0, target)) {
      dt = target - t;
      hits_target = true;
    }

    Curve moved = step(curve, dt, config.integrator, config.cfl);
    const double moved_length = moved.length();
    if (!(moved_length < length)) {
      trace.stop = StopReason::LengthIncreased;
      trace.message = "total length did not decrease at t = " + std::to_string(t);
      curve = std::move(moved);
      t += dt;
      dirty = true;
      break;
    }
    const auto moved_kappa = discrete_curvature(moved);
    curve = std::move(moved);
    t = hits_target ? target : t + dt;
    ++trace.steps;
    dirty = true;
    if (*std::min_element(moved_kappa.begin(), moved_kappa.end()) <= 0) {
      trace.stop = StopReason::ConvexityLost;
      trace.message = "discrete curvature became non-positive at t = " + std::to_string(t);
      break;
    }

    if (hits_target || config.snapshot_interval == 0) {
      curve = resample(curve, config.n_points);
      trace.snapshots.push_back(make_snapshot(t, curve));
      dirty = false;
      if (hits_target) ++snapshot_index;
    } else if (trace.steps % static_cast<std::size_t>(config.resample_every) == 0) {
      curve = resample(curve, config.n_points);
    }
    length = curve.length();
  }

  if (dirty && t > trace.snapshots.back().t) {
    if (!trace.numerical_failure()) curve = resample(curve, config.n_points);
    trace.snapshots.push_back(make_snapshot(t, curve));
  }
  return trace;
}

double isoperimetric_ratio(const Snapshot& snapshot) {
  return snapshot.length * snapshot.length / (4.0 * std::numbers::pi * snapshot.area);
}

}  // namespace csfh::sim
