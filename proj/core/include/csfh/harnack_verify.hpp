#pragma once

// Numerical evaluation of the Harnack quantity
//
//   h_eps = u_ss + e^{2u} + (1/2 + eps) / t,   u = log kappa,
//
// along a simulated flow, and of its curvature form
//
//   kappa h_eps = kappa_t + (1/2 + eps) kappa / t - kappa_s^2 / kappa.
//
// All spatial derivatives are periodic centred differences on the uniform
// arc-length grid ds = L / N of each snapshot.

#include "csfh/csf_sim.hpp"

#include <cstddef>
#include <vector>

namespace csfh::verify {

struct HarnackParams {
  double epsilon = 0.01;

  /// Throws ParameterError unless epsilon > 0.
  void validate() const;
};

/// Periodic centred first and second differences with spacing ds.
std::vector<double> centred_first(const std::vector<double>& f, double ds);
std::vector<double> centred_second(const std::vector<double>& f, double ds);

/// Per-point quantities on one snapshot.
struct SnapshotDiagnostics {
  double t = 0.0;
  std::vector<double> kappa;
  /// Centred second difference of log kappa.
  std::vector<double> u_ss;
  /// (kappa kappa_ss - kappa_s^2) / kappa^2 from centred differences of kappa.
  std::vector<double> u_ss_quotient;
  /// Primary form built from u_ss.
  std::vector<double> h_spatial;
  /// (kappa_t + (1/2+eps) kappa / t - kappa_s^2 / kappa) / kappa with kappa_t
  /// from differences across snapshots; empty when unavailable.
  std::vector<double> h_timediff;
  double min_h = 0.0;
  std::size_t argmin = 0;
  /// max |kappa h - curvature form| with kappa_t = kappa_ss + kappa^3 and the
  /// quotient u_ss (an algebraic identity, so rounding level).
  double spatial_gap = 0.0;
  /// Same with kappa h from the log-difference u_ss (stencil level).
  double stencil_gap = 0.0;
  /// Same with kappa_t from time differences; NaN when unavailable.
  double timediff_gap = 0.0;
  /// max |kappa_t(time differences) - (kappa_ss + kappa^3)|; NaN when unavailable.
  double pde_residual = 0.0;
};

struct HarnackDiagnostics {
  double epsilon = 0.0;
  std::vector<SnapshotDiagnostics> snapshots;
  double global_min = 0.0;
  double t_at_min = 0.0;
  std::size_t index_at_min = 0;
  bool time_form_available = false;
  double max_spatial_gap = 0.0;
  double max_stencil_gap = 0.0;
  /// NaN when the time form is unavailable.
  double max_timediff_gap = 0.0;
  double max_pde_residual = 0.0;
};

/// Evaluates h_eps on every snapshot with t > 0.
///
/// kappa_t along the time path is the first-order difference at fixed grid
/// index against the previous snapshot (the next one for the first). It
/// needs at least two snapshots sharing the same point count; otherwise only
/// the spatial form is produced.
///
/// Throws DomainError when some kappa <= 0 or no snapshot has t > 0, and
/// ParameterError for eps <= 0.
HarnackDiagnostics evaluate_h(const sim::FlowTrace& trace, const HarnackParams& params);

/// Maximum over the grid of the spatial-path equivalence gap.
double equivalence_check(const sim::FlowTrace& trace, const HarnackParams& params);

/// Analytic sides of kappa_ss + kappa^3 = kappa_s^2 / kappa on the grim reaper
/// y = -log cos x, where kappa = cos x.
struct SolitonSides {
  double lhs = 0.0;
  double rhs = 0.0;
};
SolitonSides grim_reaper_sides(double x);

/// Samples the grim reaper at n points equally spaced in arc length over
/// x in [-window, window], takes circumscribed-circle curvature and centred
/// differences, and returns the max residual of kappa_ss + kappa^3 -
/// kappa_s^2 / kappa over the interior. DomainError unless 0 < window < pi/2;
/// ParameterError for n < 8.
double soliton_stencil_oracle(std::size_t n, double window);

}  // namespace csfh::verify
