#include "csfh/harnack_search.hpp"

#include "csfh/errors.hpp"

#include <sstream>
#include <stdexcept>

namespace csfh::search {

namespace {

const Generator kUs = Generator::u(1);
const Generator kUss = Generator::u(2);
const Generator kE = Generator::e();
const Generator kPhi = Generator::phi();

DiffPoly X() { return DiffPoly::E(); }
DiffPoly Y() { return DiffPoly::u(1).pow(2); }

std::string q(const Rational& r) { return csfh::to_string(r); }

void require_nonzero_a(const Rational& a) {
  if (a == 0) throw ParameterError("ansatz parameter a must be non-zero");
}

}  // namespace

Generator inv_t() { return Generator::symbol("inv_t"); }
DiffPoly sym_a() { return DiffPoly::sym("a"); }
DiffPoly sym_b() { return DiffPoly::sym("b"); }
DiffPoly sym_c() { return DiffPoly::sym("c"); }
DiffPoly sym_eps() { return DiffPoly::sym("eps"); }

DiffPoly ansatz(const AnsatzParams& p) {
  return p.a * DiffPoly::u(2) + p.b * Y() + p.c * X() + DiffPoly::phi();
}

DiffPoly symbolic_ansatz() {
  return sym_a() * DiffPoly::u(2) + sym_b() * Y() + sym_c() * X() + DiffPoly::phi();
}

DiffPoly explicit_time_remainder(const DiffPoly& h) {
  const DiffPoly T = DiffPoly::gen(inv_t());
  return heat_remainder(h) - h.partial(inv_t()) * T.pow(2);
}

// ---------------------------------------------------------------------------
// Quadratic form

DiffPoly QuadForm::to_diffpoly() const {
  const DiffPoly phi = DiffPoly::phi();
  return yy * Y().pow(2) + xx * X().pow(2) + xy * X() * Y() + phi_x * phi * X() + phi_y * phi * Y() +
         phi_phi * phi.pow(2) + residual;
}

DiffPoly critical_value(const AnsatzParams& p) {
  require_nonzero_a(p.a);
  return -(Rational(1) / p.a) * (p.b * Y() + p.c * X() + DiffPoly::phi());
}

QuadForm critical_substitute(const DiffPoly& remainder, const AnsatzParams& params) {
  const DiffPoly reduced = remainder.substitute(kUss, critical_value(params));

  QuadForm qf;
  qf.yy = reduced.coefficient({{kUs, 4}});
  qf.xx = reduced.coefficient({{kE, 2}});
  qf.xy = reduced.coefficient({{kUs, 2}, {kE, 1}});
  qf.phi_x = reduced.coefficient({{kE, 1}, {kPhi, 1}});
  qf.phi_y = reduced.coefficient({{kUs, 2}, {kPhi, 1}});
  qf.phi_phi = reduced.coefficient({{kPhi, 2}});

  QuadForm quadratic_part = qf;
  quadratic_part.residual = DiffPoly();
  qf.residual = reduced - quadratic_part.to_diffpoly();
  return qf;
}

QuadForm closed_form_quadform(const AnsatzParams& p) {
  require_nonzero_a(p.a);
  const Rational& a = p.a;
  const Rational& b = p.b;
  const Rational& c = p.c;
  const Rational a2 = a * a;
  QuadForm qf;
  qf.phi_phi = 2 * (a - b) / a2;
  qf.yy = qf.phi_phi * b * b;
  // 2(a-b)/a^2 (c^2 - c a^2/(a-b)), written without dividing by a-b.
  qf.xx = (2 * (a - b) * c * c - 2 * c * a2) / a2;
  qf.xy = 6 * a + 2 * b - 6 * c + 4 * (a - b) * b * c / a2;
  qf.phi_x = 4 * c * (a - b) / a2 - 4;
  qf.phi_y = 4 * b * (a - b) / a2;
  return qf;
}

DiffPoly scaled_symbolic_critical(const DiffPoly& remainder) {
  if (remainder.degree_in(kUss) > 2) {
    throw DomainError("critical substitution expects u_ss with degree <= 2");
  }
  const DiffPoly a = sym_a();
  const DiffPoly n = sym_b() * Y() + sym_c() * X() + DiffPoly::phi();
  const DiffPoly r2 = remainder.coefficient_of(kUss, 2);
  const DiffPoly r1 = remainder.coefficient_of(kUss, 1);
  const DiffPoly r0 = remainder.coefficient_of(kUss, 0);
  return r2 * n.pow(2) - a * r1 * n + a.pow(2) * r0;
}

// ---------------------------------------------------------------------------
// Conditions

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds:
      return "holds";
    case Verdict::Fails:
      return "fails";
    case Verdict::Vacuous:
      return "vacuous";
  }
  return {};
}

std::string ConstraintReport::violated() const {
  std::string out;
  for (const auto& cond : conditions) {
    if (cond.verdict != Verdict::Fails) continue;
    if (!out.empty()) out += ", ";
    out += cond.name;
  }
  return out;
}

std::optional<CInterval> c_interval(const Rational& a, const Rational& b) {
  if (!(a > b) || a == 0) return std::nullopt;
  const Rational a2 = a * a;
  return CInterval{a2 / (a - b), (3 * a + b) * a2 / (3 * a2 - 2 * a * b + 2 * b * b)};
}

namespace {

Verdict verdict_of(bool holds) { return holds ? Verdict::Holds : Verdict::Fails; }

bool finalize(ConstraintReport& report) {
  report.feasible = true;
  for (const auto& cond : report.conditions) {
    if (cond.verdict == Verdict::Fails) report.feasible = false;
  }
  return report.feasible;
}

void require_consistent(bool from_form, bool from_bound, const char* which) {
  if (from_form != from_bound) {
    throw std::logic_error(std::string("quadratic form sign disagrees with closed-form bound for ") + which);
  }
}

}  // namespace

ConstraintReport derive_conditions(const QuadForm& qf, const AnsatzParams& params) {
  require_nonzero_a(params.a);
  const Rational& a = params.a;
  const Rational& b = params.b;
  const Rational& c = params.c;
  const bool ordered = a > b && b >= 0;
  const auto interval = c_interval(a, b);

  ConstraintReport report;
  report.interval = interval;

  report.conditions.push_back({"(i)", "a > b >= 0", verdict_of(ordered),
                               "a = " + q(a) + ", b = " + q(b)});

  if (a > b) {
    const Rational lower = interval->lower;
    const bool from_form = qf.xx >= 0 && qf.yy >= 0 && qf.phi_phi > 0;
    const bool from_bound = c <= 0 || c >= lower;
    require_consistent(from_form, from_bound, "(ii)");
    report.conditions.push_back({"(ii)", "c <= 0 or c >= a^2/(a-b)", verdict_of(from_form),
                                 "a^2/(a-b) = " + q(lower) + ", c = " + q(c)});
  } else {
    report.conditions.push_back({"(ii)", "c <= 0 or c >= a^2/(a-b)", Verdict::Vacuous,
                                 "a <= b: leading factor 2(a-b)/a^2 is not positive"});
  }

  {
    // 3a^2 - 2ab + 2b^2 = 2a^2 + b^2 + (a-b)^2 > 0 whenever a != 0.
    const Rational a2 = a * a;
    const Rational upper = (3 * a + b) * a2 / (3 * a2 - 2 * a * b + 2 * b * b);
    const bool from_form = qf.xy >= 0;
    require_consistent(from_form, c <= upper, "(iii)");
    report.conditions.push_back({"(iii)", "c <= (3a+b)a^2/(3a^2-2ab+2b^2)", verdict_of(from_form),
                                 "upper bound = " + q(upper) + ", c = " + q(c)});
  }

  if (a > b) {
    const bool from_form = qf.phi_x >= 0;
    require_consistent(from_form, c >= interval->lower, "(iv)");
    report.conditions.push_back({"(iv)", "c >= a^2/(a-b)", verdict_of(from_form),
                                 "lower bound = " + q(interval->lower) + ", c = " + q(c)});
    std::string detail = "[" + q(interval->lower) + ", " + q(interval->upper) + "]";
    if (interval->empty()) detail += " is empty";
    const bool inside = interval->lower <= c && c <= interval->upper;
    report.conditions.push_back({"(c-interval)", "a^2/(a-b) <= c <= (3a+b)a^2/(3a^2-2ab+2b^2)",
                                 verdict_of(inside), detail});
  } else {
    report.conditions.push_back({"(iv)", "c >= a^2/(a-b)", Verdict::Vacuous, "a <= b: bound undefined"});
    report.conditions.push_back({"(c-interval)", "a^2/(a-b) <= c <= (3a+b)a^2/(3a^2-2ab+2b^2)",
                                 Verdict::Vacuous, "a <= b: bound undefined"});
  }

  finalize(report);
  return report;
}

ConstraintReport phi_conditions(const AnsatzParams& params, const PhiAnsatz& phi) {
  require_nonzero_a(params.a);
  const Rational& a = params.a;
  const Rational& b = params.b;
  const Rational& alpha = phi.alpha;
  const Rational& beta = phi.beta;

  ConstraintReport report;
  report.conditions.push_back({"(phi-sign)", "alpha >= 0 and beta >= 0", verdict_of(alpha >= 0 && beta >= 0),
                               "alpha = " + q(alpha) + ", beta = " + q(beta)});

  if (!(a > b && b >= 0)) {
    report.conditions.push_back({"(i)", "a > b >= 0", Verdict::Fails, "A or B undefined"});
    finalize(report);
    return report;
  }

  if (b == 0) {
    report.conditions.push_back({"(beta)", "beta = 0", verdict_of(beta == 0),
                                 beta == 0 ? "B undefined at b=0" : "B undefined at b=0; beta must vanish"});
    const Rational bound = a / 2;
    report.conditions.push_back({"(alpha)", "alpha > a/2", verdict_of(alpha > bound),
                                 "a/2 = " + q(bound) + ", alpha = " + q(alpha)});
    finalize(report);
    return report;
  }

  const Rational A = 2 * (a - b) / (a * a);
  const Rational B = a * a / (4 * b * (a - b));
  const Rational alpha_min = 1 / A;
  const Rational beta_min = (6 + 4 * B) / A;
  report.conditions.push_back({"(alpha)", "alpha >= 1/A = a^2/(2(a-b))", verdict_of(alpha >= alpha_min),
                               "1/A = " + q(alpha_min) + ", alpha = " + q(alpha)});
  report.conditions.push_back({"(beta)", "beta >= (6+4B)/A = a^2(a^2+6b(a-b))/(2b(a-b)^2)",
                               verdict_of(beta >= beta_min),
                               "(6+4B)/A = " + q(beta_min) + ", beta = " + q(beta)});
  report.conditions.push_back({"(strict)", "alpha > 1/A or beta > (6+4B)/A",
                               verdict_of(alpha > alpha_min || beta > beta_min), ""});
  finalize(report);
  return report;
}

PhiLowerBound phi_lower_bound(const AnsatzParams& params, const PhiAnsatz& phi) {
  const Rational& a = params.a;
  const Rational& b = params.b;
  if (!(a > b && b > 0)) throw ParameterError("phi lower bound requires a > b > 0");
  const Rational A = 2 * (a - b) / (a * a);
  const Rational B = a * a / (4 * b * (a - b));
  return {A * phi.alpha * phi.alpha - phi.alpha, 2 * A * phi.alpha * phi.beta,
          A * phi.beta * phi.beta - 6 * phi.beta - 4 * B * phi.beta};
}

// ---------------------------------------------------------------------------
// Collapse

FamilySolution solve_family(int grid_denominator) {
  const DiffPoly a = sym_a();
  const DiffPoly b = sym_b();
  const DiffPoly lower_num = a.pow(2);
  const DiffPoly lower_den = a - b;
  const DiffPoly upper_num = (3 * a + b) * a.pow(2);
  const DiffPoly upper_den = 3 * a.pow(2) - 2 * a * b + 2 * b.pow(2);

  FamilySolution out;
  // lower <= upper  <=>  lower_num * upper_den <= upper_num * lower_den, both
  // denominators being positive for a > b.
  out.collapse_polynomial = lower_num * upper_den - upper_num * lower_den;
  out.collapse_is_3a2b2 = out.collapse_polynomial == 3 * a.pow(2) * b.pow(2);
  out.conclusions.push_back("interval non-empty <=> " + out.collapse_polynomial.to_string() +
                            " <= 0 <=> b = 0 (a != 0)");

  const Generator gb = Generator::symbol("b");
  const DiffPoly zero;
  const auto at_b0 = [&](const DiffPoly& p) { return p.substitute(gb, zero); };
  // c = a satisfies both bounds exactly at b = 0.
  out.c_equals_a_at_b0 = at_b0(lower_num - a * lower_den).is_zero() && at_b0(upper_num - a * upper_den).is_zero();
  out.conclusions.push_back("b = 0 => a^2/(a-b) = (3a+b)a^2/(3a^2-2ab+2b^2) = a, so c = a");

  // 1/A = a^2 / (2(a-b)) equals a/2 at b = 0.
  out.alpha_bound_is_half_a = at_b0(2 * a.pow(2) - a * 2 * (a - b)).is_zero();
  out.conclusions.push_back("b = 0 => B = a^2/(4b(a-b)) undefined, so beta = 0");
  out.conclusions.push_back("b = 0 => alpha > 1/A = a/2, alpha = a/2 + eps");

  for (int k = 1; k < grid_denominator; ++k) {
    const auto interval = c_interval(Rational(1), Rational(k, grid_denominator));
    ++out.grid_points;
    if (interval && !interval->empty()) ++out.grid_nonempty;
  }

  // h = a u_ss + a E + (a/2 + eps)/t, rescaled to a = 1.
  const DiffPoly T = DiffPoly::gen(inv_t());
  out.harnack = DiffPoly::u(2) + DiffPoly::E() + (Rational(1, 2) + sym_eps()) * T;
  out.conclusions.push_back(std::string("rescale a = 1: ") + kHarnackText);
  return out;
}

SpecializedCheck verify_specialized_remainder(const Rational& epsilon) {
  if (epsilon < 0) throw ParameterError("epsilon must be non-negative");
  const Rational k = Rational(1, 2) + epsilon;
  const DiffPoly T = DiffPoly::gen(inv_t());

  SpecializedCheck out;
  out.epsilon = epsilon;
  out.direct = explicit_time_remainder(DiffPoly::u(2) + DiffPoly::E() + k * T);

  out.from_general = heat_remainder(ansatz({1, 0, 1}))
                         .substitute(Generator::phi(0, 0), k * T)
                         .substitute(Generator::phi(0, 1), -k * T.pow(2))
                         .substitute(Generator::phi(1, 0), DiffPoly())
                         .substitute(Generator::phi(2, 0), DiffPoly());

  out.reduced = out.direct.substitute(kUss, -DiffPoly::E() - k * T);
  out.contradiction = out.reduced.coefficient({{inv_t(), 2}});
  if (out.reduced != out.contradiction * T.pow(2)) {
    throw std::logic_error("critical reduction left terms other than 1/t^2: " + out.reduced.to_string());
  }
  return out;
}

}  // namespace csfh::search
