#pragma once

#include <string>
#include <vector>

namespace csfh::cli {

struct Series {
  std::vector<double> x;
  std::vector<double> y;
  std::string colour;
  bool closed = false;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  /// Same scale on both axes (curve overlays).
  bool equal_aspect = false;
  int width = 640;
  int height = 480;
};

/// Renders line series into a standalone SVG document with axes, ticks and
/// labels. Non-finite samples break a line.
std::string render_svg(const PlotSpec& spec, const std::vector<Series>& series);

/// Colour for item i of n on a blue-to-red ramp.
std::string ramp_colour(std::size_t i, std::size_t n);

}  // namespace csfh::cli
