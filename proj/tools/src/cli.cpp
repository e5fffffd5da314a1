#include "csfh/cli/cli.hpp"

#include "csfh/cli/svg.hpp"
#include "csfh/derivation.hpp"
#include "csfh/diffpoly.hpp"
#include "csfh/errors.hpp"
#include "csfh/harnack_search.hpp"
#include "csfh/harnack_verify.hpp"
#include "csfh/io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace csfh::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Globals {
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  std::string format = "csv";
};

struct DeriveOptions {
  bool show_remainder = false;
  bool verbose = false;
  std::string params;
  std::string eps = "1/100";
};

struct SearchOptions {
  int samples = 20;
  int span = 9;
};

struct SimulateOptions {
  std::string input;
  std::string name;
  double t_end = 1.0;
  double dt = 1e-3;
  std::size_t n = 0;
  int resample_every = 10;
  double kappa_max = 100.0;
  double snapshot_interval = 0.01;
  double cfl = 0.4;
  bool fixed_dt = false;
  bool heun = false;
};

struct VerifyOptions {
  std::string trace;
  double eps = 0.01;
  double tolerance = 1e-2;
};

struct PlotOptions {
  std::string trace;
  std::string field = "curve";
  double eps = 0.01;
  std::size_t max_snapshots = 20;
};

fs::path prepare_out(const Globals& g) {
  fs::path dir(g.out_dir);
  fs::create_directories(dir);
  return dir;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path.string());
  return f;
}

std::string trace_extension(io::TraceFormat format) { return format == io::TraceFormat::Csv ? ".csv" : ".jsonl"; }

sim::FlowTrace load_trace(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open trace " + path);
  return io::read_trace(in);
}

std::vector<std::size_t> pick_evenly(std::size_t count, std::size_t limit) {
  std::vector<std::size_t> out;
  if (count == 0) return out;
  if (count <= limit) {
    for (std::size_t i = 0; i < count; ++i) out.push_back(i);
    return out;
  }
  for (std::size_t k = 0; k < limit; ++k) out.push_back(k * (count - 1) / (limit - 1));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// derive

int cmd_derive(const Globals& g, const DeriveOptions& o, std::ostream& out) {
  const Rational eps = parse_rational(o.eps);
  if (eps < 0) throw ParameterError("eps must be non-negative");

  if (o.show_remainder) {
    out << general_remainder_text() << '\n';
    return kOk;
  }

  if (!o.params.empty()) {
    std::vector<Rational> values;
    std::stringstream ss(o.params);
    std::string item;
    while (std::getline(ss, item, ',')) values.push_back(parse_rational(item));
    if (values.size() != 3) throw ConfigError("--params expects a,b,c");
    const search::AnsatzParams p{values[0], values[1], values[2]};
    const auto qf = search::critical_substitute(heat_remainder(search::ansatz(p)), p);
    const auto report = search::derive_conditions(qf, p);
    out << "ansatz a = " << to_string(p.a) << ", b = " << to_string(p.b) << ", c = " << to_string(p.c) << '\n';
    for (const auto& cond : report.conditions) {
      out << "  " << cond.name << "  " << cond.inequality << "  " << search::to_string(cond.verdict);
      if (!cond.detail.empty()) out << "  (" << cond.detail << ")";
      out << '\n';
    }
    if (report.interval) {
      out << "c-interval [" << to_string(report.interval->lower) << ", " << to_string(report.interval->upper) << "]"
          << (report.interval->empty() ? " is empty" : "") << '\n';
    }
    if (report.feasible) {
      out << "feasible\n";
    } else {
      out << "infeasible: violated " << report.violated() << '\n';
    }
    return kOk;
  }

  const auto steps = run_derivation(eps);
  bool all = true;
  json doc;
  doc["epsilon"] = to_string(eps);
  doc["steps"] = json::array();
  for (const auto& step : steps) {
    all = all && step.match;
    out << (step.match ? "PASS" : "FAIL") << "  [" << step.id << "] " << step.title << '\n';
    if (o.verbose || !step.match) {
      out << "      expected: " << step.expected << '\n' << "      engine:   " << step.engine << '\n';
    }
    doc["steps"].push_back(
        {{"id", step.id}, {"title", step.title}, {"expected", step.expected}, {"engine", step.engine},
         {"match", step.match}});
  }
  out << search::kHarnackText << '\n';
  doc["harnack"] = search::kHarnackText;
  doc["all_match"] = all;

  auto f = open_output(prepare_out(g) / "derive.json");
  f << doc.dump(2) << '\n';
  return all ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------------------
// search

int cmd_search(const Globals& g, const SearchOptions& o, std::ostream& out) {
  if (o.samples < 1) throw ConfigError("--samples must be >= 1");
  if (o.span < 1) throw ConfigError("--span must be >= 1");
  const auto format = io::parse_trace_format(g.format);
  std::mt19937_64 rng(g.seed);
  std::uniform_int_distribution<int> num(-o.span, o.span), pos(1, o.span);

  auto f = open_output(prepare_out(g) / ("search" + trace_extension(format)));
  if (format == io::TraceFormat::Csv) {
    const std::string header = "a,b,c,feasible,violated,c_lower,c_upper\n";
    out << header;
    f << header;
  }
  for (int k = 0; k < o.samples; ++k) {
    const search::AnsatzParams p{Rational(pos(rng), pos(rng)), Rational(num(rng), pos(rng)),
                                 Rational(pos(rng), pos(rng))};
    const auto report = search::derive_conditions(search::closed_form_quadform(p), p);
    std::string line;
    if (format == io::TraceFormat::Csv) {
      line = to_string(p.a) + ',' + to_string(p.b) + ',' + to_string(p.c) + ',' +
             (report.feasible ? "true" : "false") + ",\"" + report.violated() + "\"," +
             (report.interval ? to_string(report.interval->lower) + ',' + to_string(report.interval->upper) : ",");
    } else {
      json rec{{"a", to_string(p.a)}, {"b", to_string(p.b)}, {"c", to_string(p.c)}, {"feasible", report.feasible}};
      json conds = json::array();
      for (const auto& cond : report.conditions) {
        conds.push_back({{"name", cond.name},
                         {"inequality", cond.inequality},
                         {"verdict", search::to_string(cond.verdict)},
                         {"detail", cond.detail}});
      }
      rec["conditions"] = std::move(conds);
      rec["interval"] = report.interval ? json{{"lower", to_string(report.interval->lower)},
                                               {"upper", to_string(report.interval->upper)}}
                                        : json(nullptr);
      line = rec.dump();
    }
    out << line << '\n';
    f << line << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// simulate

int cmd_simulate(const Globals& g, const SimulateOptions& o, std::ostream& out) {
  const auto format = io::parse_trace_format(g.format);
  io::NamedCurve input = [&]() -> io::NamedCurve {
    if (sim::is_generator_spec(o.input)) {
      const auto colon = o.input.find(':');
      return {o.input.substr(0, colon), sim::Curve::from_points(sim::parse_generator(o.input).points())};
    }
    std::ifstream in(o.input, std::ios::binary);
    if (!in) throw FormatError("cannot open curve file " + o.input);
    return io::read_curve_json(in);
  }();

  sim::FlowConfig cfg;
  cfg.dt = o.dt;
  cfg.t_end = o.t_end;
  cfg.kappa_max = o.kappa_max;
  cfg.resample_every = o.resample_every;
  cfg.snapshot_interval = o.snapshot_interval;
  cfg.cfl = o.cfl;
  cfg.adaptive = !o.fixed_dt;
  cfg.integrator = o.heun ? sim::Integrator::Heun : sim::Integrator::Euler;
  cfg.n_points = o.n == 0 ? input.curve.size() : o.n;

  const auto trace = sim::run(input.curve, cfg);
  const auto dir = prepare_out(g);
  {
    auto f = open_output(dir / ("trace" + trace_extension(format)));
    io::write_trace(f, trace, format);
  }
  const auto summary = io::summarize(trace);
  {
    auto f = open_output(dir / "summary.json");
    io::write_summary_json(f, summary);
  }
  {
    auto f = open_output(dir / "invariants.csv");
    f << "t,length,area,isoperimetric_ratio,min_kappa,max_kappa\n";
    for (const auto& snap : trace.snapshots) {
      const auto [lo, hi] = std::minmax_element(snap.kappa.begin(), snap.kappa.end());
      f << io::format_double(snap.t) << ',' << io::format_double(snap.length) << ',' << io::format_double(snap.area)
        << ',' << io::format_double(sim::isoperimetric_ratio(snap)) << ',' << io::format_double(*lo) << ','
        << io::format_double(*hi) << '\n';
    }
  }

  const std::string name = o.name.empty() ? input.name : o.name;
  out << "curve        " << name << " (N = " << cfg.n_points << ")\n"
      << "stop         " << summary.stop << " after " << summary.steps << " steps\n"
      << "t_end        " << io::format_double(summary.t_end) << '\n'
      << "min_kappa    " << io::format_double(summary.min_kappa) << '\n'
      << "area_rate    " << io::format_double(summary.area_rate) << '\n'
      << "length_final " << io::format_double(summary.length_final) << '\n'
      << "radius_final " << io::format_double(summary.radius_final) << '\n';
  if (trace.numerical_failure()) {
    out << "numerical failure: " << trace.message << '\n';
    return kCheckFailed;
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(const Globals& g, const VerifyOptions& o, std::ostream& out) {
  const auto format = io::parse_trace_format(g.format);
  const auto trace = load_trace(o.trace);
  const auto diag = verify::evaluate_h(trace, {o.eps});
  const auto dir = prepare_out(g);
  {
    auto f = open_output(dir / ("diagnostics" + trace_extension(format)));
    io::write_diagnostics(f, diag, format);
  }
  {
    auto f = open_output(dir / "diagnostics_summary.json");
    io::write_diagnostics_summary_json(f, diag, o.tolerance);
  }
  const bool ok = diag.global_min >= -o.tolerance;
  out << "epsilon          " << io::format_double(diag.epsilon) << '\n'
      << "global_min h     " << io::format_double(diag.global_min) << " at t = " << io::format_double(diag.t_at_min)
      << ", index " << diag.index_at_min << '\n'
      << "spatial gap      " << io::format_double(diag.max_spatial_gap) << '\n'
      << "time-diff gap    "
      << (diag.time_form_available ? io::format_double(diag.max_timediff_gap) : std::string("unavailable")) << '\n'
      << (ok ? "PASS" : "FAIL") << "  min h >= -" << io::format_double(o.tolerance) << '\n';
  return ok ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------------------
// plot

int cmd_plot(const Globals& g, const PlotOptions& o, std::ostream& out, std::ostream& err) {
  if (o.field != "curve" && o.field != "kappa") throw ConfigError("--field must be curve or kappa");
  if (o.max_snapshots < 2) throw ConfigError("--max-snapshots must be >= 2");
  const auto trace = load_trace(o.trace);
  const auto dir = prepare_out(g);
  const auto picks = pick_evenly(trace.snapshots.size(), o.max_snapshots);

  std::vector<Series> series;
  for (std::size_t k = 0; k < picks.size(); ++k) {
    const auto& snap = trace.snapshots[picks[k]];
    Series s;
    s.colour = ramp_colour(k, picks.size());
    if (o.field == "curve") {
      for (const auto& p : snap.curve.points()) {
        s.x.push_back(p.x);
        s.y.push_back(p.y);
      }
      s.closed = true;
    } else {
      s.x = snap.arclen;
      s.y = snap.kappa;
    }
    series.push_back(std::move(s));
  }
  const std::string main_name = o.field == "curve" ? "overlay.svg" : "kappa.svg";
  {
    PlotSpec spec;
    if (o.field == "curve") {
      spec = {"curve snapshots (blue = early, red = late)", "x", "y", true};
    } else {
      spec = {"curvature along the curve per snapshot", "arc length s", "kappa", false};
    }
    auto f = open_output(dir / main_name);
    f << render_svg(spec, series);
  }
  out << "wrote " << (dir / main_name).string() << '\n';

  try {
    const auto diag = verify::evaluate_h(trace, {o.eps});
    Series s;
    s.colour = "#1f4e9c";
    for (const auto& snap : diag.snapshots) {
      s.x.push_back(snap.t);
      s.y.push_back(snap.min_h);
    }
    std::ostringstream title;
    title << "min over s of h_eps, eps = " << o.eps;
    auto f = open_output(dir / "min_h.svg");
    f << render_svg({title.str(), "t", "min h_eps", false}, {s});
    out << "wrote " << (dir / "min_h.svg").string() << '\n';
  } catch (const DomainError& e) {
    err << "skipping min_h.svg: " << e.what() << '\n';
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Curve shortening flow: symbolic Harnack derivation, simulation and verification", "csfh"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML/INI configuration file; command-line flags take precedence");

  Globals g;
  app.add_option("--out", g.out_dir, "Output directory (created if absent)")->capture_default_str();
  app.add_option("--seed", g.seed, "Seed for randomised sweeps")->capture_default_str();
  app.add_option("--format", g.format, "Record format")
      ->check(CLI::IsMember({"csv", "json-lines"}))
      ->capture_default_str();

  DeriveOptions derive;
  auto* derive_cmd = app.add_subcommand("derive", "Recompute the symbolic derivation and compare each step");
  derive_cmd->add_flag("--show-remainder", derive.show_remainder, "Print the general heat remainder and exit");
  derive_cmd->add_flag("--verbose", derive.verbose, "Print expected and recomputed forms for every step");
  derive_cmd->add_option("--params", derive.params, "Report the constraints for a fixed ansatz a,b,c");
  derive_cmd->add_option("--eps", derive.eps, "Rational eps for the specialised step")->capture_default_str();

  SearchOptions search;
  auto* search_cmd = app.add_subcommand("search", "Sample random ansatz parameters and report the constraints");
  search_cmd->add_option("--samples", search.samples, "Number of samples")->capture_default_str();
  search_cmd->add_option("--span", search.span, "Numerators and denominators are drawn up to this bound")
      ->capture_default_str();

  SimulateOptions simulate;
  auto* sim_cmd = app.add_subcommand("simulate", "Run the flow from a generator spec or a curve JSON file");
  sim_cmd->add_option("input", simulate.input, "circle:R=1,N=256 | ellipse:a=2,b=1,N=256 | rsquare:delta=0.04 | file")
      ->required();
  sim_cmd->add_option("--name", simulate.name, "Label for the run");
  sim_cmd->add_option("--t-end", simulate.t_end, "Final time")->capture_default_str();
  sim_cmd->add_option("--dt", simulate.dt, "Upper bound on the time step")->capture_default_str();
  sim_cmd->add_option("--n", simulate.n, "Point count after resampling (0 keeps the input count)")
      ->capture_default_str();
  sim_cmd->add_option("--resample-every", simulate.resample_every, "Steps between resamplings")
      ->capture_default_str();
  sim_cmd->add_option("--kappa-max", simulate.kappa_max, "Stop when max kappa reaches this")->capture_default_str();
  sim_cmd->add_option("--snapshot-interval", simulate.snapshot_interval, "Time between snapshots (0: every step)")
      ->capture_default_str();
  sim_cmd->add_option("--cfl", simulate.cfl, "Stability factor in dt <= cfl * ds^2")->capture_default_str();
  sim_cmd->add_flag("--fixed-dt", simulate.fixed_dt, "Use --dt as given; refuse if it violates the bound");
  sim_cmd->add_flag("--heun", simulate.heun, "Second-order Heun time stepping");

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Evaluate the Harnack quantity along a trace");
  verify_cmd->add_option("trace", verify.trace, "Trace file written by simulate")->required();
  verify_cmd->add_option("--eps", verify.eps, "eps > 0")->capture_default_str();
  verify_cmd->add_option("--tolerance", verify.tolerance, "Pass when min h >= -tolerance")->capture_default_str();

  PlotOptions plot;
  auto* plot_cmd = app.add_subcommand("plot", "Write SVG plots for a trace");
  plot_cmd->add_option("trace", plot.trace, "Trace file written by simulate")->required();
  plot_cmd->add_option("--field", plot.field, "curve (overlay) or kappa (kappa against s)")
      ->check(CLI::IsMember({"curve", "kappa"}))
      ->capture_default_str();
  plot_cmd->add_option("--eps", plot.eps, "eps for the min-h plot")->capture_default_str();
  plot_cmd->add_option("--max-snapshots", plot.max_snapshots, "Snapshots drawn in the main plot")
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (derive_cmd->parsed()) return cmd_derive(g, derive, out);
    if (search_cmd->parsed()) return cmd_search(g, search, out);
    if (sim_cmd->parsed()) {
      try {
        return cmd_simulate(g, simulate, out);
      } catch (const GeometryError& e) {
        err << "error: " << e.what() << '\n';
        return kNotConvex;
      }
    }
    if (verify_cmd->parsed()) return cmd_verify(g, verify, out);
    if (plot_cmd->parsed()) return cmd_plot(g, plot, out, err);
  } catch (const StabilityError& e) {
    err << "error: " << e.what() << " (use a time step <= " << e.required_dt() << ")\n";
    return kStabilityRefused;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace csfh::cli
