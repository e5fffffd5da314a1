#pragma once

// Constraint derivation for the Harnack ansatz
//
//   h = a u_ss + b u_s^2 + c E + phi,   phi = alpha / t + beta / s^2.
//
// At a first zero of h the critical relation a u_ss = -(b Y + c X + phi) with
// X = E and Y = u_s^2 turns the heat remainder into a quadratic form in
// (X, Y, phi). Requiring each coefficient to be non-negative yields the
// conditions on (a, b, c, alpha, beta); they collapse to b = 0, c = a,
// beta = 0, alpha > a/2.

#include "csfh/diffpoly.hpp"
#include "csfh/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace csfh::search {

struct AnsatzParams {
  Rational a;
  Rational b;
  Rational c;
};

struct PhiAnsatz {
  Rational alpha;
  Rational beta;
};

/// Explicit-time symbol standing for 1/t, with d/dt(1/t) = -(1/t)^2.
Generator inv_t();
/// Free parameter symbols used by the symbolic derivation.
DiffPoly sym_a();
DiffPoly sym_b();
DiffPoly sym_c();
DiffPoly sym_eps();

/// a u_ss + b u_s^2 + c E + phi for numeric parameters.
DiffPoly ansatz(const AnsatzParams& params);
/// Same with a, b, c left as symbols.
DiffPoly symbolic_ansatz();

/// Heat remainder of a polynomial that may contain inv_t: the flow rules of
/// d_t plus the explicit rule d_t(inv_t) = -inv_t^2.
DiffPoly explicit_time_remainder(const DiffPoly& h);

/// Coefficients of the reduced remainder in X = E, Y = u_s^2 and phi.
struct QuadForm {
  Rational yy;
  Rational xx;
  Rational xy;
  Rational phi_x;
  Rational phi_y;
  Rational phi_phi;
  /// Everything that is not one of the six quadratic terms; for the ansatz
  /// this is -phi_ss + phi_t - 2 phi_s u_s.
  DiffPoly residual;

  DiffPoly to_diffpoly() const;
};

/// The value -(b u_s^2 + c E + phi) / a that u_ss takes where h = 0.
DiffPoly critical_value(const AnsatzParams& params);

/// Substitutes the critical relation into `remainder` and splits the result
/// into a QuadForm. Throws ParameterError when a = 0.
QuadForm critical_substitute(const DiffPoly& remainder, const AnsatzParams& params);

/// Closed-form coefficients (the expected QuadForm without the residual).
QuadForm closed_form_quadform(const AnsatzParams& params);

/// Symbolic variant: for a remainder in the symbols a, b, c returns
/// a^2 * remainder evaluated at u_ss = -(b Y + c X + phi)/a, which is again a
/// polynomial.
DiffPoly scaled_symbolic_critical(const DiffPoly& remainder);

enum class Verdict { Holds, Fails, Vacuous };

std::string to_string(Verdict v);

struct Condition {
  std::string name;
  std::string inequality;
  Verdict verdict;
  std::string detail;
};

/// Closed interval for c; empty when lower > upper.
struct CInterval {
  Rational lower;
  Rational upper;
  bool empty() const { return lower > upper; }
};

/// a^2/(a-b) <= c <= (3a+b) a^2 / (3a^2 - 2ab + 2b^2). Requires a > b.
std::optional<CInterval> c_interval(const Rational& a, const Rational& b);

struct ConstraintReport {
  std::vector<Condition> conditions;
  bool feasible = false;
  std::optional<CInterval> interval;

  /// Names of failing conditions, comma separated.
  std::string violated() const;
};

/// Conditions (i) a > b >= 0, (ii) c <= 0 or c >= a^2/(a-b),
/// (iii) c <= (3a+b)a^2/(3a^2-2ab+2b^2), (iv) c >= a^2/(a-b) and the combined
/// interval. Signs are read off the quadratic form and cross-checked against
/// the closed-form bounds.
ConstraintReport derive_conditions(const QuadForm& qf, const AnsatzParams& params);

/// Conditions on the potential. For b > 0: alpha >= 1/A, beta >= (6+4B)/A with
/// A = 2(a-b)/a^2, B = a^2/(4b(a-b)), one of them strict. For b = 0: beta = 0
/// and alpha > a/2.
ConstraintReport phi_conditions(const AnsatzParams& params, const PhiAnsatz& phi);

/// Coefficients of 1/t^2, 1/(t s^2) and 1/s^4 in the lower bound for the phi
/// terms: A alpha^2 - alpha, 2 A alpha beta, A beta^2 - 6 beta - 4 B beta.
/// Requires a > b > 0.
struct PhiLowerBound {
  Rational t2;
  Rational ts2;
  Rational s4;
};
PhiLowerBound phi_lower_bound(const AnsatzParams& params, const PhiAnsatz& phi);

struct FamilySolution {
  /// a^2 (3a^2 - 2ab + 2b^2) - (3a+b) a^2 (a-b): the interval is non-empty iff
  /// this is <= 0.
  DiffPoly collapse_polynomial;
  bool collapse_is_3a2b2 = false;
  bool c_equals_a_at_b0 = false;
  bool alpha_bound_is_half_a = false;
  std::size_t grid_points = 0;
  std::size_t grid_nonempty = 0;
  /// u_ss + E + (1/2 + eps) inv_t
  DiffPoly harnack;
  std::vector<std::string> conclusions;

  bool ok() const {
    return collapse_is_3a2b2 && c_equals_a_at_b0 && alpha_bound_is_half_a && grid_nonempty == 0;
  }
};

/// Runs the collapse argument; the grid scans b = k/d, a = 1 for k = 1..d-1.
FamilySolution solve_family(int grid_denominator = 10);

/// Human-readable form of the final quantity.
inline constexpr const char* kHarnackText = "h = u_ss + e^{2u} + (1/2+eps)/t";

struct SpecializedCheck {
  Rational epsilon;
  /// Remainder of h = u_ss + E + (1/2+eps)/t computed directly.
  DiffPoly direct;
  /// General remainder at (a,b,c) = (1,0,1) with phi = (1/2+eps)/t.
  DiffPoly from_general;
  /// direct after u_ss = -E - (1/2+eps)/t.
  DiffPoly reduced;
  Rational contradiction;

  bool identity_holds() const { return direct == from_general; }
  bool contradiction_matches() const {
    return contradiction == 2 * epsilon * epsilon + epsilon;
  }
};

/// Specialised remainder check for the final quantity. Throws ParameterError
/// for epsilon < 0.
SpecializedCheck verify_specialized_remainder(const Rational& epsilon);

}  // namespace csfh::search
