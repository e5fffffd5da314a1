#include "csfh/errors.hpp"
#include "csfh/io.hpp"

#include <doctest.h>

#include <cstring>
#include <sstream>

using namespace csfh;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

sim::FlowTrace small_trace() {
  sim::FlowConfig cfg;
  cfg.n_points = 64;
  cfg.t_end = 0.05;
  cfg.snapshot_interval = 0.01;
  return sim::run(sim::make_ellipse(2.0, 1.0, 64), cfg);
}

void check_same(const sim::FlowTrace& a, const sim::FlowTrace& b) {
  REQUIRE(a.snapshots.size() == b.snapshots.size());
  for (std::size_t k = 0; k < a.snapshots.size(); ++k) {
    const auto& sa = a.snapshots[k];
    const auto& sb = b.snapshots[k];
    CHECK(same_bits(sa.t, sb.t));
    REQUIRE(sa.curve.size() == sb.curve.size());
    for (std::size_t i = 0; i < sa.curve.size(); ++i) {
      CHECK(same_bits(sa.curve[i].x, sb.curve[i].x));
      CHECK(same_bits(sa.curve[i].y, sb.curve[i].y));
      CHECK(same_bits(sa.kappa[i], sb.kappa[i]));
      CHECK(same_bits(sa.arclen[i], sb.arclen[i]));
    }
    CHECK(same_bits(sa.length, sb.length));
    CHECK(same_bits(sa.area, sb.area));
  }
}

}  // namespace

TEST_CASE("doubles print with 17 significant digits") {
  CHECK(io::format_double(0.1) == "0.10000000000000001");
  CHECK(io::format_double(2.0) == "2");
  CHECK(io::format_double(-1.5e-300) == "-1.5000000000000001e-300");
}

TEST_CASE("trace round-trips exactly through both formats") {
  const auto trace = small_trace();
  REQUIRE(trace.snapshots.size() == 6);
  for (auto format : {io::TraceFormat::Csv, io::TraceFormat::JsonLines}) {
    std::stringstream buf;
    io::write_trace(buf, trace, format);
    check_same(trace, io::read_trace(buf));
  }
}

TEST_CASE("trace CSV layout") {
  std::stringstream buf;
  io::write_trace(buf, small_trace(), io::TraceFormat::Csv);
  std::string header, first;
  std::getline(buf, header);
  std::getline(buf, first);
  CHECK(header == "t,index,x,y,kappa,arclen");
  CHECK(first.rfind("0,0,2,0,", 0) == 0);
}

TEST_CASE("malformed traces are format errors") {
  auto read = [](const std::string& text) {
    std::istringstream in(text);
    return io::read_trace(in);
  };
  CHECK_THROWS_AS(read(""), FormatError);
  CHECK_THROWS_AS(read("t,index,x,y,kappa\n0,0,1,0,1\n"), FormatError);
  CHECK_THROWS_AS(read("t,index,x,y,kappa,arclen\n"), FormatError);
  CHECK_THROWS_AS(read("t,index,x,y,kappa,arclen\n0,0,1,zero,1,0\n"), FormatError);
  CHECK_THROWS_AS(read("t,index,x,y,kappa,arclen\n0,1,1,0,1,0\n"), FormatError);
  CHECK_THROWS_AS(read("{\"t\":0,\"index\":0,\"x\":1}\n"), FormatError);
  CHECK_THROWS_AS(io::parse_trace_format("xml"), ConfigError);
}

TEST_CASE("curve documents") {
  const auto circle = sim::make_circle(1.5, 24);
  std::stringstream buf;
  io::write_curve_json(buf, "c", circle);
  const auto back = io::read_curve_json(buf);
  CHECK(back.name == "c");
  REQUIRE(back.curve.size() == 24);
  for (std::size_t i = 0; i < 24; ++i) CHECK(back.curve[i] == circle[i]);

  std::istringstream no_points("{\"name\": \"x\"}");
  CHECK_THROWS_AS(io::read_curve_json(no_points), FormatError);
  std::istringstream broken("{\"points\": [[1, 2], [3]]}");
  CHECK_THROWS_AS(io::read_curve_json(broken), FormatError);
  std::istringstream not_json("points: 1");
  CHECK_THROWS_AS(io::read_curve_json(not_json), FormatError);
}

TEST_CASE("summary record") {
  const auto trace = small_trace();
  const auto s = io::summarize(trace);
  CHECK(s.t_end == doctest::Approx(0.05));
  CHECK(s.area_rate == doctest::Approx(-2.0 * 3.141592653589793).epsilon(0.01));
  CHECK(s.min_kappa > 0);
  CHECK(s.length_final == trace.snapshots.back().length);
  std::stringstream buf;
  io::write_summary_json(buf, s);
  for (const char* key : {"t_end", "min_kappa", "area_rate", "length_final"}) {
    CHECK(buf.str().find(std::string("\"") + key + "\"") != std::string::npos);
  }
}

TEST_CASE("diagnostics CSV carries NaN when the time form is missing") {
  sim::FlowTrace trace;
  trace.snapshots.push_back(sim::make_snapshot(0.1, sim::make_circle(1.0, 16)));
  const auto diag = verify::evaluate_h(trace, {0.01});
  std::stringstream buf;
  io::write_diagnostics(buf, diag, io::TraceFormat::Csv);
  std::string header, row;
  std::getline(buf, header);
  std::getline(buf, row);
  CHECK(header == "t,s_index,kappa,u_ss,h_eps_spatial,h_eps_timediff");
  CHECK(row.substr(row.rfind(',') + 1) == "nan");
}
