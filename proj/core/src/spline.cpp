#include "csfh/spline.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace csfh::sim {

namespace {

// Solves the cyclic tridiagonal system
//   lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i]  (indices mod n)
// by Sherman-Morrison on top of the Thomas algorithm.
std::vector<Vec2> solve_cyclic(std::vector<double> lower, std::vector<double> diag, std::vector<double> upper,
                               const std::vector<Vec2>& rhs) {
  const std::size_t n = diag.size();
  const double alpha = upper[n - 1];  // corner (n-1, 0)
  const double beta = lower[0];       // corner (0, n-1)
  const double gamma = -diag[0];
  diag[0] -= gamma;
  diag[n - 1] -= alpha * beta / gamma;

  auto thomas = [&](auto rhs_at, auto& out) {
    std::vector<double> c(n);
    using T = std::decay_t<decltype(out[0])>;
    std::vector<T> d(n);
    c[0] = upper[0] / diag[0];
    d[0] = (1.0 / diag[0]) * rhs_at(0);
    for (std::size_t i = 1; i < n; ++i) {
      const double m = diag[i] - lower[i] * c[i - 1];
      c[i] = upper[i] / m;
      d[i] = (1.0 / m) * (rhs_at(i) - lower[i] * d[i - 1]);
    }
    out[n - 1] = d[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) out[i] = d[i] - c[i] * out[i + 1];
  };

  std::vector<Vec2> x(n);
  thomas([&](std::size_t i) { return rhs[i]; }, x);
  std::vector<double> z(n);
  thomas(
      [&](std::size_t i) {
        if (i == 0) return gamma;
        if (i == n - 1) return alpha;
        return 0.0;
      },
      z);
  const double factor_den = 1.0 + z[0] + beta * z[n - 1] / gamma;
  const Vec2 factor = (1.0 / factor_den) * (x[0] + (beta / gamma) * x[n - 1]);
  for (std::size_t i = 0; i < n; ++i) x[i] = x[i] - z[i] * factor;
  return x;
}

// 10-point Gauss-Legendre nodes and weights on [-1, 1].
constexpr std::array<double, 5> kGaussX{0.1488743389816312, 0.4333953941292472, 0.6794095682990244,
                                        0.8650633666889845, 0.9739065285171717};
constexpr std::array<double, 5> kGaussW{0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
                                        0.1494513491505806, 0.0666713443086881};

}  // namespace

PeriodicSpline::PeriodicSpline(const Curve& curve) : points_(curve.points()) {
  const std::size_t n = points_.size();
  knots_.assign(n + 1, 0.0);
  std::vector<double> h(n);
  for (std::size_t i = 0; i < n; ++i) {
    h[i] = curve.segment(i);
    knots_[i + 1] = knots_[i] + h[i];
  }

  std::vector<double> lower(n), diag(n), upper(n);
  std::vector<Vec2> rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t im = i == 0 ? n - 1 : i - 1;
    const std::size_t ip = i + 1 == n ? 0 : i + 1;
    lower[i] = h[im];
    diag[i] = 2.0 * (h[im] + h[i]);
    upper[i] = h[i];
    rhs[i] = 6.0 * ((1.0 / h[i]) * (points_[ip] - points_[i]) - (1.0 / h[im]) * (points_[i] - points_[im]));
  }
  second_ = solve_cyclic(std::move(lower), std::move(diag), std::move(upper), rhs);
}

std::size_t PeriodicSpline::locate(double tau, double& local) const {
  const double T = period();
  tau = std::fmod(tau, T);
  if (tau < 0) tau += T;
  auto it = std::upper_bound(knots_.begin(), knots_.end(), tau);
  std::size_t seg = static_cast<std::size_t>(std::distance(knots_.begin(), it));
  seg = seg == 0 ? 0 : seg - 1;
  seg = std::min(seg, points_.size() - 1);
  local = tau - knots_[seg];
  return seg;
}

Vec2 PeriodicSpline::at(double tau) const {
  double t = 0.0;
  const std::size_t i = locate(tau, t);
  const std::size_t ip = i + 1 == points_.size() ? 0 : i + 1;
  const double h = knots_[i + 1] - knots_[i];
  const double u = h - t;
  return (u * u * u / (6.0 * h)) * second_[i] + (t * t * t / (6.0 * h)) * second_[ip] +
         (u / h) * (points_[i] - (h * h / 6.0) * second_[i]) + (t / h) * (points_[ip] - (h * h / 6.0) * second_[ip]);
}

Vec2 PeriodicSpline::derivative(double tau) const {
  double t = 0.0;
  const std::size_t i = locate(tau, t);
  const std::size_t ip = i + 1 == points_.size() ? 0 : i + 1;
  const double h = knots_[i + 1] - knots_[i];
  const double u = h - t;
  return (-u * u / (2.0 * h)) * second_[i] + (t * t / (2.0 * h)) * second_[ip] +
         (1.0 / h) * ((points_[ip] - (h * h / 6.0) * second_[ip]) - (points_[i] - (h * h / 6.0) * second_[i]));
}

double PeriodicSpline::segment_arc(std::size_t seg, double t0, double t1) const {
  const double mid = 0.5 * (t0 + t1), half = 0.5 * (t1 - t0);
  double sum = 0.0;
  for (std::size_t k = 0; k < kGaussX.size(); ++k) {
    sum += kGaussW[k] * (norm(derivative(knots_[seg] + mid + half * kGaussX[k])) +
                         norm(derivative(knots_[seg] + mid - half * kGaussX[k])));
  }
  return half * sum;
}

double PeriodicSpline::arc_length(double lo, double hi) const {
  if (hi <= lo) return 0.0;
  double total = 0.0;
  double cursor = lo;
  while (cursor < hi) {
    double t = 0.0;
    const std::size_t seg = locate(cursor, t);
    const double h = knots_[seg + 1] - knots_[seg];
    const double step = std::min(h - t, hi - cursor);
    if (step <= 0.0) break;
    total += segment_arc(seg, t, t + step);
    cursor += step;
  }
  return total;
}

}  // namespace csfh::sim
