#include "csfh/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace csfh::cli {

namespace {

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!std::isfinite(lo)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
      const double half = std::max(0.5 * std::abs(hi), 0.5);
      lo -= half;
      hi += half;
    }
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", std::abs(v) < 1e-14 ? 0.0 : v);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

std::vector<double> ticks(double lo, double hi) {
  const double raw = (hi - lo) / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (step >= raw) break;
  }
  std::vector<double> out;
  for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * step; v += step) out.push_back(v);
  return out;
}

}  // namespace

std::string ramp_colour(std::size_t i, std::size_t n) {
  const double f = n <= 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
  const int r = static_cast<int>(std::lround(40 + 200 * f));
  const int b = static_cast<int>(std::lround(220 - 180 * f));
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, 70, b);
  return buf;
}

std::string render_svg(const PlotSpec& spec, const std::vector<Series>& series) {
  Range xr, yr;
  for (const auto& s : series) {
    for (double v : s.x) xr.add(v);
    for (double v : s.y) yr.add(v);
  }
  xr.pad();
  yr.pad();

  const double left = 70, right = 20, top = 40, bottom = 55;
  const double pw = spec.width - left - right;
  const double ph = spec.height - top - bottom;
  if (spec.equal_aspect) {
    // Widen whichever range is short so one unit has the same pixel size.
    const double scale = std::max((xr.hi - xr.lo) / pw, (yr.hi - yr.lo) / ph);
    const double cx = 0.5 * (xr.lo + xr.hi), cy = 0.5 * (yr.lo + yr.hi);
    xr = {cx - 0.5 * scale * pw, cx + 0.5 * scale * pw};
    yr = {cy - 0.5 * scale * ph, cy + 0.5 * scale * ph};
  }
  auto px = [&](double x) { return left + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto py = [&](double y) { return top + (yr.hi - y) / (yr.hi - yr.lo) * ph; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\"" << spec.height
      << "\" viewBox=\"0 0 " << spec.width << ' ' << spec.height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << fmt(spec.width / 2.0) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"15\">" << escape(spec.title) << "</text>\n";

  svg << "<g font-family=\"sans-serif\" font-size=\"11\" stroke-width=\"1\">\n";
  for (double t : ticks(xr.lo, xr.hi)) {
    svg << "<line x1=\"" << fmt(px(t)) << "\" y1=\"" << fmt(top) << "\" x2=\"" << fmt(px(t)) << "\" y2=\""
        << fmt(top + ph) << "\" stroke=\"#e4e4e4\"/>\n";
    svg << "<text x=\"" << fmt(px(t)) << "\" y=\"" << fmt(top + ph + 16) << "\" text-anchor=\"middle\">"
        << tick_label(t) << "</text>\n";
  }
  for (double t : ticks(yr.lo, yr.hi)) {
    svg << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(py(t)) << "\" x2=\"" << fmt(left + pw) << "\" y2=\""
        << fmt(py(t)) << "\" stroke=\"#e4e4e4\"/>\n";
    svg << "<text x=\"" << fmt(left - 6) << "\" y=\"" << fmt(py(t) + 4) << "\" text-anchor=\"end\">"
        << tick_label(t) << "</text>\n";
  }
  svg << "<rect x=\"" << fmt(left) << "\" y=\"" << fmt(top) << "\" width=\"" << fmt(pw) << "\" height=\"" << fmt(ph)
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << fmt(left + pw / 2) << "\" y=\"" << fmt(spec.height - 12.0)
      << "\" text-anchor=\"middle\" font-size=\"13\">" << escape(spec.x_label) << "</text>\n";
  svg << "<text transform=\"translate(16 " << fmt(top + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\" "
      << "font-size=\"13\">" << escape(spec.y_label) << "</text>\n";
  svg << "</g>\n";

  for (const auto& s : series) {
    std::ostringstream pts;
    auto flush = [&](bool close) {
      const std::string text = pts.str();
      if (!text.empty()) {
        svg << (close ? "<polygon" : "<polyline") << " fill=\"none\" stroke=\"" << s.colour
            << "\" stroke-width=\"1.2\" points=\"" << text << "\"/>\n";
      }
      pts.str("");
    };
    bool broken = false;
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
        flush(false);
        broken = true;
        continue;
      }
      pts << fmt(px(s.x[i])) << ',' << fmt(py(s.y[i])) << ' ';
    }
    flush(s.closed && !broken);
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace csfh::cli
