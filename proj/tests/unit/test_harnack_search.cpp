#include "csfh/derivation.hpp"
#include "csfh/errors.hpp"
#include "csfh/harnack_search.hpp"
#include "support/random_poly.hpp"

#include <doctest.h>

#include <random>

using csfh::DiffPoly;
using csfh::Rational;
using namespace csfh::search;

namespace {

Verdict verdict(const ConstraintReport& report, const std::string& name) {
  for (const auto& cond : report.conditions) {
    if (cond.name == name) return cond.verdict;
  }
  FAIL("missing condition " << name);
  return Verdict::Fails;
}

ConstraintReport conditions_for(const AnsatzParams& p) {
  return derive_conditions(critical_substitute(csfh::heat_remainder(ansatz(p)), p), p);
}

AnsatzParams random_params(std::mt19937_64& rng) {
  return {csfh::testing::random_rational(rng), Rational(std::uniform_int_distribution<int>(-6, 6)(rng), 3),
          csfh::testing::random_rational(rng)};
}

}  // namespace

TEST_CASE("critical_substitute: a = c = 1, b = 0 leaves only 2 phi^2") {
  const AnsatzParams p{1, 0, 1};
  const QuadForm qf = critical_substitute(csfh::heat_remainder(ansatz(p)), p);
  CHECK(qf.yy == 0);
  CHECK(qf.xx == 0);
  CHECK(qf.xy == 0);
  CHECK(qf.phi_x == 0);
  CHECK(qf.phi_y == 0);
  CHECK(qf.phi_phi == 2);
  CHECK(qf.residual == DiffPoly::parse("-phi_ss + phi_t - 2 * phi_s * u_s"));
}

TEST_CASE("critical_substitute: a = b kills the 2(a-b)/a^2 factor") {
  for (int c : {-2, 0, 5}) {
    const AnsatzParams p{1, 1, c};
    const QuadForm qf = critical_substitute(csfh::heat_remainder(ansatz(p)), p);
    CHECK(qf.phi_phi == 0);
    CHECK(qf.yy == 0);
    CHECK(qf.phi_y == 0);
  }
}

TEST_CASE("critical_substitute: a = 0 is a parameter error") {
  const AnsatzParams p{0, 1, 1};
  CHECK_THROWS_AS(critical_substitute(csfh::heat_remainder(ansatz(p)), p), csfh::ParameterError);
  CHECK_THROWS_AS(derive_conditions(QuadForm{}, p), csfh::ParameterError);
}

TEST_CASE("property: quadratic form reconstructs the substituted remainder") {
  std::mt19937_64 rng(17);
  const DiffPoly residual = DiffPoly::parse("-phi_ss + phi_t - 2 * phi_s * u_s");
  for (int i = 0; i < 100; ++i) {
    const AnsatzParams p = random_params(rng);
    const DiffPoly remainder = csfh::heat_remainder(ansatz(p));
    const QuadForm qf = critical_substitute(remainder, p);
    CHECK(qf.to_diffpoly() == remainder.substitute(csfh::Generator::u(2), critical_value(p)));
    CHECK(qf.residual == residual);
    const QuadForm expected = closed_form_quadform(p);
    CHECK(qf.yy == expected.yy);
    CHECK(qf.xx == expected.xx);
    CHECK(qf.xy == expected.xy);
    CHECK(qf.phi_x == expected.phi_x);
    CHECK(qf.phi_y == expected.phi_y);
    CHECK(qf.phi_phi == expected.phi_phi);
  }
}

TEST_CASE("symbolic critical substitution matches the expanded quadratic form") {
  const DiffPoly scaled = scaled_symbolic_critical(csfh::heat_remainder(symbolic_ansatz()));
  const DiffPoly expected = DiffPoly::parse(
      "2*(a-b)*b^2*u_s^4 + (2*(a-b)*c^2 - 2*c*a^2)*E^2 + ((6*a+2*b-6*c)*a^2 + 4*(a-b)*b*c)*E*u_s^2"
      " + (4*c*(a-b) - 4*a^2)*phi*E + 4*b*(a-b)*phi*u_s^2 + 2*(a-b)*phi^2"
      " + a^2*(-phi_ss + phi_t - 2*phi_s*u_s)");
  CHECK(scaled == expected);
}

TEST_CASE("derive_conditions") {
  SUBCASE("(1,0): interval collapses to c = 1") {
    const auto report = conditions_for({1, 0, 1});
    REQUIRE(report.interval);
    CHECK(report.interval->lower == 1);
    CHECK(report.interval->upper == 1);
    CHECK(report.feasible);
    CHECK_FALSE(conditions_for({1, 0, Rational(11, 10)}).feasible);
    CHECK_FALSE(conditions_for({1, 0, Rational(9, 10)}).feasible);
  }
  SUBCASE("(2,1): empty interval") {
    const auto report = conditions_for({2, 1, 3});
    REQUIRE(report.interval);
    CHECK(report.interval->lower == 4);
    CHECK(report.interval->upper == Rational(28, 10));
    CHECK(report.interval->empty());
    CHECK_FALSE(report.feasible);
    CHECK(verdict(report, "(iii)") == Verdict::Fails);
    CHECK(verdict(report, "(iv)") == Verdict::Fails);
    CHECK(report.violated().find("(c-interval)") != std::string::npos);
  }
  SUBCASE("(1,1): a > b violated") {
    const auto report = conditions_for({1, 1, 1});
    CHECK(verdict(report, "(i)") == Verdict::Fails);
    CHECK(verdict(report, "(ii)") == Verdict::Vacuous);
    CHECK_FALSE(report.feasible);
  }
  SUBCASE("boundary values classify as holds") {
    const auto report = conditions_for({2, 0, 2});
    CHECK(verdict(report, "(iii)") == Verdict::Holds);
    CHECK(verdict(report, "(iv)") == Verdict::Holds);
    CHECK(report.feasible);
  }
  SUBCASE("feasible iff every condition holds or is vacuous") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 200; ++i) {
      const auto report = conditions_for(random_params(rng));
      bool all_ok = true;
      for (const auto& cond : report.conditions) all_ok = all_ok && cond.verdict != Verdict::Fails;
      CHECK(report.feasible == all_ok);
    }
  }
}

TEST_CASE("property: feasibility is invariant under positive rescaling") {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 100; ++i) {
    AnsatzParams p = random_params(rng);
    if (i % 4 == 0) p = {abs(p.a), 0, abs(p.a)};  // feasible family
    const Rational lambda = abs(csfh::testing::random_rational(rng));
    const AnsatzParams scaled{lambda * p.a, lambda * p.b, lambda * p.c};
    CHECK(conditions_for(p).feasible == conditions_for(scaled).feasible);
    const PhiAnsatz phi{p.a / 2 + Rational(1, 100), 0};
    const PhiAnsatz scaled_phi{lambda * phi.alpha, 0};
    CHECK(phi_conditions(p, phi).feasible == phi_conditions(scaled, scaled_phi).feasible);
  }
}

TEST_CASE("property: the c interval is empty for every a > b > 0") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> num(1, 1000);
  for (int i = 0; i < 1000; ++i) {
    Rational x(num(rng), num(rng)), y(num(rng), num(rng));
    if (x == y) continue;
    const Rational a = x > y ? x : y;
    const Rational b = x > y ? y : x;
    const auto interval = c_interval(a, b);
    REQUIRE(interval);
    CHECK(interval->empty());
    // lower - upper = 3 a^2 b^2 / ((a-b)(3a^2 - 2ab + 2b^2))
    CHECK(interval->lower - interval->upper ==
          3 * a * a * b * b / ((a - b) * (3 * a * a - 2 * a * b + 2 * b * b)));
  }
}

TEST_CASE("phi_conditions") {
  SUBCASE("b = 0 branch") {
    CHECK(phi_conditions({1, 0, 1}, {Rational(1, 2) + Rational(1, 100), 0}).feasible);
    CHECK_FALSE(phi_conditions({1, 0, 1}, {Rational(1, 2), 0}).feasible);
    const auto report = phi_conditions({1, 0, 1}, {1, 1});
    CHECK_FALSE(report.feasible);
    CHECK(verdict(report, "(beta)") == Verdict::Fails);
    bool explained = false;
    for (const auto& cond : report.conditions) {
      explained = explained || cond.detail.find("B undefined at b=0") != std::string::npos;
    }
    CHECK(explained);
  }
  SUBCASE("b > 0 branch uses 1/A and (6+4B)/A") {
    // (a, b) = (3, 1): 1/A = 9/4, (6+4B)/A = 189/8
    CHECK(phi_conditions({3, 1, 0}, {Rational(9, 4), Rational(190, 8)}).feasible);
    CHECK(phi_conditions({3, 1, 0}, {Rational(10, 4), Rational(189, 8)}).feasible);
    CHECK_FALSE(phi_conditions({3, 1, 0}, {Rational(9, 4), Rational(189, 8)}).feasible);
    CHECK_FALSE(phi_conditions({3, 1, 0}, {Rational(2), Rational(30)}).feasible);
  }
  SUBCASE("negative potential coefficients fail") {
    CHECK_FALSE(phi_conditions({1, 0, 1}, {-1, 0}).feasible);
  }
  SUBCASE("property: summarised beta bound and positive lower bound") {
    std::mt19937_64 rng(37);
    std::uniform_int_distribution<int> num(1, 50);
    for (int i = 0; i < 200; ++i) {
      Rational x(num(rng), num(rng)), y(num(rng), num(rng));
      if (x == y) continue;
      const Rational a = x > y ? x : y, b = x > y ? y : x;
      const Rational A = 2 * (a - b) / (a * a);
      const Rational B = a * a / (4 * b * (a - b));
      CHECK((6 + 4 * B) / A == a * a * (a * a + 6 * b * (a - b)) / (2 * b * (a - b) * (a - b)));
      const PhiAnsatz phi{1 / A + Rational(num(rng), 7), (6 + 4 * B) / A + Rational(num(rng), 7)};
      REQUIRE(phi_conditions({a, b, 0}, phi).feasible);
      const PhiLowerBound lb = phi_lower_bound({a, b, 0}, phi);
      CHECK(lb.t2 > 0);
      CHECK(lb.ts2 > 0);
      CHECK(lb.s4 > 0);
    }
  }
}

TEST_CASE("solve_family") {
  const FamilySolution family = solve_family();
  CHECK(family.collapse_polynomial == DiffPoly::parse("3 * a^2 * b^2"));
  CHECK(family.ok());
  CHECK(family.grid_points == 9);
  CHECK(family.grid_nonempty == 0);
  CHECK(family.harnack == DiffPoly::parse("u_ss + E + (1/2 + eps) * inv_t"));

  SUBCASE("b = 0, a = 7 before rescaling") {
    const auto interval = c_interval(7, 0);
    REQUIRE(interval);
    CHECK(interval->lower == 7);
    CHECK(interval->upper == 7);
    CHECK(phi_conditions({7, 0, 7}, {Rational(7, 2) + Rational(1, 1000), 0}).feasible);
    CHECK_FALSE(phi_conditions({7, 0, 7}, {Rational(7, 2), 0}).feasible);
  }
}

TEST_CASE("verify_specialized_remainder") {
  const struct {
    Rational eps;
    Rational expected;
  } cases[] = {{Rational(1, 100), Rational(51, 5000)}, {0, 0}, {1, 3}, {Rational(7, 3), Rational(119, 9)}};
  for (const auto& c : cases) {
    const SpecializedCheck check = verify_specialized_remainder(c.eps);
    CHECK(check.identity_holds());
    CHECK(check.contradiction == c.expected);
    CHECK(check.contradiction_matches());
  }
  CHECK_THROWS_AS(verify_specialized_remainder(-1), csfh::ParameterError);

  // the epsilon-free display: -2/t E - 1/(2 t^2)
  const auto half = verify_specialized_remainder(0);
  CHECK(half.direct == DiffPoly::parse("2 * u_ss^2 - 2 * E^2 - 2 * inv_t * E - 1/2 * inv_t^2"));
}

TEST_CASE("derivation report: every step matches") {
  const auto steps = csfh::run_derivation();
  REQUIRE(steps.size() == 8);
  for (const auto& step : steps) {
    INFO(step.id << " " << step.title << "\n expected " << step.expected << "\n engine   " << step.engine);
    CHECK(step.match);
  }
}
