#pragma once

// Text formats for curves, flow traces and Harnack diagnostics.
//
//   curve JSON      {"name": ..., "points": [[x, y], ...]}
//   trace CSV       t,index,x,y,kappa,arclen        (one row per point per snapshot)
//   trace JSON-L    {"t":..,"index":..,"x":..,"y":..,"kappa":..,"arclen":..} per line
//   diagnostics CSV t,s_index,kappa,u_ss,h_eps_spatial,h_eps_timediff
//
// Floating-point fields in CSV are printed with 17 significant digits so
// that a write/read cycle reproduces every double exactly.

#include "csfh/csf_sim.hpp"
#include "csfh/harnack_verify.hpp"

#include <iosfwd>
#include <string>

namespace csfh::io {

enum class TraceFormat { Csv, JsonLines };

/// Parses "csv" or "json-lines"; ConfigError otherwise.
TraceFormat parse_trace_format(const std::string& text);

/// "%.17g".
std::string format_double(double value);

struct NamedCurve {
  std::string name;
  sim::Curve curve;
};

/// Reads a curve document and runs the full ingestion check
/// (Curve::from_points). FormatError on malformed JSON or missing fields.
NamedCurve read_curve_json(std::istream& in);
void write_curve_json(std::ostream& out, const std::string& name, const sim::Curve& curve);

void write_trace(std::ostream& out, const sim::FlowTrace& trace, TraceFormat format);

/// Reads either trace format (detected from the first non-blank character).
/// Snapshot length and area are recomputed from the points; kappa and arclen
/// are taken from the file. FormatError on missing columns, malformed
/// numbers, or an empty trace.
sim::FlowTrace read_trace(std::istream& in);

struct TraceSummary {
  double t_end = 0.0;
  double min_kappa = 0.0;
  /// (A(t_end) - A(0)) / t_end from the shoelace areas.
  double area_rate = 0.0;
  double length_final = 0.0;
  /// Mean distance of the final points from their centroid.
  double radius_final = 0.0;
  std::string stop;
  std::size_t steps = 0;
};

TraceSummary summarize(const sim::FlowTrace& trace);
void write_summary_json(std::ostream& out, const TraceSummary& summary);

void write_diagnostics(std::ostream& out, const verify::HarnackDiagnostics& diag, TraceFormat format);
void write_diagnostics_summary_json(std::ostream& out, const verify::HarnackDiagnostics& diag, double tolerance);

}  // namespace csfh::io
