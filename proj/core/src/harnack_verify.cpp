#include "csfh/harnack_verify.hpp"

#include "csfh/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace csfh::verify {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double max_or_nan(double current, double value) {
  if (std::isnan(value)) return current;
  return std::isnan(current) ? value : std::max(current, value);
}

void require_positive(const std::vector<double>& kappa, double t) {
  for (std::size_t i = 0; i < kappa.size(); ++i) {
    if (!(kappa[i] > 0)) {
      throw DomainError("kappa <= 0 at t = " + std::to_string(t) + ", index " + std::to_string(i) +
                        "; log kappa is undefined");
    }
  }
}

}  // namespace

void HarnackParams::validate() const {
  if (!(epsilon > 0)) throw ParameterError("epsilon must be positive");
}

std::vector<double> centred_first(const std::vector<double>& f, double ds) {
  const std::size_t n = f.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = (f[(i + 1) % n] - f[(i + n - 1) % n]) / (2.0 * ds);
  }
  return out;
}

std::vector<double> centred_second(const std::vector<double>& f, double ds) {
  const std::size_t n = f.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = (f[(i + 1) % n] - 2.0 * f[i] + f[(i + n - 1) % n]) / (ds * ds);
  }
  return out;
}

HarnackDiagnostics evaluate_h(const sim::FlowTrace& trace, const HarnackParams& params) {
  params.validate();
  const auto& snaps = trace.snapshots;
  for (const auto& snap : snaps) require_positive(snap.kappa, snap.t);

  const bool time_form =
      snaps.size() >= 2 && std::all_of(snaps.begin(), snaps.end(), [&](const sim::Snapshot& s) {
        return s.kappa.size() == snaps.front().kappa.size();
      });

  const double weight = 0.5 + params.epsilon;
  HarnackDiagnostics out;
  out.epsilon = params.epsilon;
  out.time_form_available = time_form;
  out.global_min = std::numeric_limits<double>::infinity();
  out.max_timediff_gap = time_form ? 0.0 : kNaN;
  out.max_pde_residual = time_form ? 0.0 : kNaN;

  for (std::size_t k = 0; k < snaps.size(); ++k) {
    const auto& snap = snaps[k];
    if (!(snap.t > 0)) continue;
    const std::size_t n = snap.kappa.size();
    const double ds = snap.length / static_cast<double>(n);
    const auto& kappa = snap.kappa;

    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = std::log(kappa[i]);
    const auto u_ss = centred_second(u, ds);
    const auto k_s = centred_first(kappa, ds);
    const auto k_ss = centred_second(kappa, ds);

    std::vector<double> k_t;
    if (time_form) {
      const std::size_t other = k == 0 ? 1 : k - 1;
      const double dt = snap.t - snaps[other].t;
      k_t.resize(n);
      for (std::size_t i = 0; i < n; ++i) k_t[i] = (kappa[i] - snaps[other].kappa[i]) / dt;
    }

    SnapshotDiagnostics d;
    d.t = snap.t;
    d.kappa = kappa;
    d.u_ss = u_ss;
    d.u_ss_quotient.resize(n);
    d.h_spatial.resize(n);
    d.timediff_gap = time_form ? 0.0 : kNaN;
    d.pde_residual = time_form ? 0.0 : kNaN;
    if (time_form) d.h_timediff.resize(n);
    d.min_h = std::numeric_limits<double>::infinity();

    for (std::size_t i = 0; i < n; ++i) {
      const double kap = kappa[i];
      const double e = kap * kap;
      const double drift = weight / snap.t;
      d.u_ss_quotient[i] = (kap * k_ss[i] - k_s[i] * k_s[i]) / e;
      d.h_spatial[i] = u_ss[i] + e + drift;
      if (d.h_spatial[i] < d.min_h) {
        d.min_h = d.h_spatial[i];
        d.argmin = i;
      }

      const double kappa_t_spatial = k_ss[i] + kap * e;
      const double tail = drift * kap - k_s[i] * k_s[i] / kap;
      const double quotient_lhs = kap * (d.u_ss_quotient[i] + e + drift);
      d.spatial_gap = std::max(d.spatial_gap, std::abs(quotient_lhs - (kappa_t_spatial + tail)));
      d.stencil_gap = std::max(d.stencil_gap, std::abs(kap * d.h_spatial[i] - (kappa_t_spatial + tail)));
      if (time_form) {
        d.h_timediff[i] = (k_t[i] + tail) / kap;
        d.timediff_gap = std::max(d.timediff_gap, std::abs(quotient_lhs - (k_t[i] + tail)));
        d.pde_residual = std::max(d.pde_residual, std::abs(k_t[i] - kappa_t_spatial));
      }
    }

    if (d.min_h < out.global_min) {
      out.global_min = d.min_h;
      out.t_at_min = d.t;
      out.index_at_min = d.argmin;
    }
    out.max_spatial_gap = std::max(out.max_spatial_gap, d.spatial_gap);
    out.max_stencil_gap = std::max(out.max_stencil_gap, d.stencil_gap);
    out.max_timediff_gap = max_or_nan(out.max_timediff_gap, d.timediff_gap);
    out.max_pde_residual = max_or_nan(out.max_pde_residual, d.pde_residual);
    out.snapshots.push_back(std::move(d));
  }

  if (out.snapshots.empty()) throw DomainError("trace has no snapshot with t > 0");
  return out;
}

double equivalence_check(const sim::FlowTrace& trace, const HarnackParams& params) {
  return evaluate_h(trace, params).max_spatial_gap;
}

SolitonSides grim_reaper_sides(double x) {
  const double c = std::cos(x), s = std::sin(x);
  const double kappa = c;
  const double kappa_s = -s * c;
  const double kappa_ss = -std::cos(2.0 * x) * c;  // d/dx (-sin x cos x) * dx/ds, dx/ds = cos x
  return {kappa_ss + kappa * kappa * kappa, kappa_s * kappa_s / kappa};
}

double soliton_stencil_oracle(std::size_t n, double window) {
  if (!(window > 0 && window < std::numbers::pi / 2)) {
    throw DomainError("grim reaper window must lie in (0, pi/2); curvature vanishes at |x| = pi/2");
  }
  if (n < 8) throw ParameterError("soliton oracle needs at least 8 points");

  // Arc length from the vertex is asinh(tan x); its inverse is atan(sinh s).
  const double s_max = std::asinh(std::tan(window));
  const double ds = 2.0 * s_max / static_cast<double>(n - 1);
  std::vector<sim::Vec2> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::atan(std::sinh(-s_max + ds * static_cast<double>(i)));
    pts[i] = {x, -std::log(std::cos(x))};
  }
  const auto kappa = sim::discrete_curvature_open(pts);

  double worst = 0.0;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const double k_s = (kappa[i + 1] - kappa[i - 1]) / (2.0 * ds);
    const double k_ss = (kappa[i + 1] - 2.0 * kappa[i] + kappa[i - 1]) / (ds * ds);
    const double k = kappa[i];
    worst = std::max(worst, std::abs(k_ss + k * k * k - k_s * k_s / k));
  }
  return worst;
}

}  // namespace csfh::verify
