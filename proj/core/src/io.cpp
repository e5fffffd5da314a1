#include "csfh/io.hpp"

#include "csfh/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

namespace csfh::io {

using nlohmann::json;

TraceFormat parse_trace_format(const std::string& text) {
  if (text == "csv") return TraceFormat::Csv;
  if (text == "json-lines") return TraceFormat::JsonLines;
  throw ConfigError("unknown format '" + text + "' (expected csv or json-lines)");
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

// ---------------------------------------------------------------------------
// Curves

NamedCurve read_curve_json(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(std::string("curve document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("points") || !doc["points"].is_array()) {
    throw FormatError("curve document needs a 'points' array");
  }
  std::vector<sim::Vec2> pts;
  for (const auto& p : doc["points"]) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      throw FormatError("each point must be a two-element numeric array");
    }
    pts.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  std::string name = doc.contains("name") && doc["name"].is_string() ? doc["name"].get<std::string>() : "curve";
  return {std::move(name), sim::Curve::from_points(std::move(pts))};
}

void write_curve_json(std::ostream& out, const std::string& name, const sim::Curve& curve) {
  json doc;
  doc["name"] = name;
  doc["points"] = json::array();
  for (const auto& p : curve.points()) doc["points"].push_back({p.x, p.y});
  out << doc.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Traces

void write_trace(std::ostream& out, const sim::FlowTrace& trace, TraceFormat format) {
  if (format == TraceFormat::Csv) out << "t,index,x,y,kappa,arclen\n";
  for (const auto& snap : trace.snapshots) {
    for (std::size_t i = 0; i < snap.curve.size(); ++i) {
      const auto& p = snap.curve[i];
      if (format == TraceFormat::Csv) {
        out << format_double(snap.t) << ',' << i << ',' << format_double(p.x) << ',' << format_double(p.y) << ','
            << format_double(snap.kappa[i]) << ',' << format_double(snap.arclen[i]) << '\n';
      } else {
        json row{{"t", snap.t}, {"index", i}, {"x", p.x}, {"y", p.y}, {"kappa", snap.kappa[i]},
                 {"arclen", snap.arclen[i]}};
        out << row.dump() << '\n';
      }
    }
  }
}

namespace {

struct TraceRow {
  double t, x, y, kappa, arclen;
  long index;
};

double parse_number(const std::string& field, std::size_t line) {
  const char* begin = field.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (field.empty() || end != begin + field.size()) {
    throw FormatError("line " + std::to_string(line) + ": malformed number '" + field + "'");
  }
  return v;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::vector<TraceRow> read_csv_rows(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("trace is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_csv(line);
  std::map<std::string, std::size_t> column;
  for (std::size_t i = 0; i < header.size(); ++i) column[header[i]] = i;
  const char* required[] = {"t", "index", "x", "y", "kappa", "arclen"};
  for (const char* name : required) {
    if (!column.count(name)) throw FormatError(std::string("trace is missing column '") + name + "'");
  }

  std::vector<TraceRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != header.size()) {
      throw FormatError("line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                        " fields, got " + std::to_string(fields.size()));
    }
    auto get = [&](const char* name) { return parse_number(fields[column[name]], line_no); };
    const double index = get("index");
    rows.push_back({get("t"), get("x"), get("y"), get("kappa"), get("arclen"), static_cast<long>(index)});
    if (index != std::floor(index)) throw FormatError("line " + std::to_string(line_no) + ": non-integer index");
  }
  return rows;
}

std::vector<TraceRow> read_jsonl_rows(std::istream& in) {
  std::vector<TraceRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json row;
    try {
      row = json::parse(line);
    } catch (const json::exception&) {
      throw FormatError("line " + std::to_string(line_no) + ": not a JSON object");
    }
    auto get = [&](const char* key) {
      if (!row.contains(key) || !row[key].is_number()) {
        throw FormatError("line " + std::to_string(line_no) + ": missing numeric field '" + key + "'");
      }
      return row[key].get<double>();
    };
    rows.push_back({get("t"), get("x"), get("y"), get("kappa"), get("arclen"), static_cast<long>(get("index"))});
  }
  return rows;
}

}  // namespace

sim::FlowTrace read_trace(std::istream& in) {
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto first = content.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw FormatError("trace is empty");
  std::istringstream body(content);
  const auto rows = content[first] == '{' ? read_jsonl_rows(body) : read_csv_rows(body);
  if (rows.empty()) throw FormatError("trace has no rows");

  sim::FlowTrace trace;
  std::size_t start = 0;
  while (start < rows.size()) {
    std::size_t end = start;
    while (end < rows.size() && rows[end].t == rows[start].t) ++end;
    std::vector<sim::Vec2> pts;
    std::vector<double> kappa, arclen;
    for (std::size_t r = start; r < end; ++r) {
      if (rows[r].index != static_cast<long>(r - start)) {
        throw FormatError("snapshot at t = " + format_double(rows[start].t) + " has out-of-order indices");
      }
      pts.push_back({rows[r].x, rows[r].y});
      kappa.push_back(rows[r].kappa);
      arclen.push_back(rows[r].arclen);
    }
    if (!trace.snapshots.empty() && !(rows[start].t > trace.snapshots.back().t)) {
      throw FormatError("snapshot times must be strictly increasing");
    }
    sim::Curve curve(std::move(pts));
    const double length = curve.length();
    const double area = curve.signed_area();
    trace.snapshots.push_back({rows[start].t, std::move(curve), std::move(kappa), std::move(arclen), length, area});
    start = end;
  }
  return trace;
}

TraceSummary summarize(const sim::FlowTrace& trace) {
  if (trace.snapshots.empty()) throw FormatError("trace is empty");
  TraceSummary s;
  const auto& first = trace.snapshots.front();
  const auto& last = trace.snapshots.back();
  s.t_end = last.t;
  s.min_kappa = std::numeric_limits<double>::infinity();
  for (const auto& snap : trace.snapshots) {
    s.min_kappa = std::min(s.min_kappa, *std::min_element(snap.kappa.begin(), snap.kappa.end()));
  }
  s.area_rate = last.t > first.t ? (last.area - first.area) / (last.t - first.t) : 0.0;
  s.length_final = last.length;
  const sim::Vec2 c = last.curve.centroid();
  for (const auto& p : last.curve.points()) s.radius_final += norm(p - c);
  s.radius_final /= static_cast<double>(last.curve.size());
  s.stop = sim::to_string(trace.stop);
  s.steps = trace.steps;
  return s;
}

void write_summary_json(std::ostream& out, const TraceSummary& summary) {
  json doc{{"t_end", summary.t_end},
           {"min_kappa", summary.min_kappa},
           {"area_rate", summary.area_rate},
           {"length_final", summary.length_final},
           {"radius_final", summary.radius_final},
           {"stop", summary.stop},
           {"steps", summary.steps}};
  out << doc.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Diagnostics

void write_diagnostics(std::ostream& out, const verify::HarnackDiagnostics& diag, TraceFormat format) {
  if (format == TraceFormat::Csv) out << "t,s_index,kappa,u_ss,h_eps_spatial,h_eps_timediff\n";
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& snap : diag.snapshots) {
    for (std::size_t i = 0; i < snap.kappa.size(); ++i) {
      const double td = snap.h_timediff.empty() ? nan : snap.h_timediff[i];
      if (format == TraceFormat::Csv) {
        out << format_double(snap.t) << ',' << i << ',' << format_double(snap.kappa[i]) << ','
            << format_double(snap.u_ss[i]) << ',' << format_double(snap.h_spatial[i]) << ',' << format_double(td)
            << '\n';
      } else {
        json row{{"t", snap.t},         {"s_index", i},
                 {"kappa", snap.kappa[i]}, {"u_ss", snap.u_ss[i]},
                 {"h_eps_spatial", snap.h_spatial[i]}};
        row["h_eps_timediff"] = std::isnan(td) ? json(nullptr) : json(td);
        out << row.dump() << '\n';
      }
    }
  }
}

void write_diagnostics_summary_json(std::ostream& out, const verify::HarnackDiagnostics& diag, double tolerance) {
  auto number_or_null = [](double v) { return std::isnan(v) ? json(nullptr) : json(v); };
  json doc{{"epsilon", diag.epsilon},
           {"global_min", diag.global_min},
           {"t_at_min", diag.t_at_min},
           {"index_at_min", diag.index_at_min},
           {"tolerance", tolerance},
           {"nonnegative", diag.global_min >= -tolerance},
           {"time_form_available", diag.time_form_available},
           {"max_spatial_gap", diag.max_spatial_gap},
           {"max_stencil_gap", diag.max_stencil_gap},
           {"max_timediff_gap", number_or_null(diag.max_timediff_gap)},
           {"max_pde_residual", number_or_null(diag.max_pde_residual)}};
  json per = json::array();
  for (const auto& snap : diag.snapshots) per.push_back({{"t", snap.t}, {"min_h", snap.min_h}, {"argmin", snap.argmin}});
  doc["snapshots"] = std::move(per);
  out << doc.dump(2) << '\n';
}

}  // namespace csfh::io
