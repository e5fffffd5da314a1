#pragma once

// Exact differential polynomials in the derivatives of u = log(kappa), the
// curvature power E = e^{2u} = kappa^2, and an opaque potential phi(s,t).
//
// Spatial and temporal derivatives follow the curve shortening flow rules:
//   d_s u^(k) = u^(k+1),  d_s E = 2 u_s E,  d_s phi^(j) = phi^(j+1)
//   d_t u^(k+1) = d_s d_t u^(k) + E u^(k+1),  d_t u = u_ss + u_s^2 + E
//   d_t E = 2 E (u_ss + u_s^2 + E),  d_t phi = phi_t
// u_t is eliminated eagerly, so every result is again a DiffPoly.

#include "csfh/rational.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace csfh {

enum class GeneratorKind : std::uint8_t { UDeriv, E, Phi, Symbol };

/// One indeterminate of the polynomial ring.
///
/// Canonical order: u_s < u_ss < u_s3 < ... < E < phi < phi_s < ... < phi_t
/// < named symbols (alphabetical). Named symbols are constants with respect
/// to both d_s and d_t; they carry free parameters such as a, b, c.
class Generator {
 public:
  /// u differentiated `order` times in s; order >= 1.
  static Generator u(int order);
  static Generator e();
  /// phi with `s_order` spatial and `t_order` temporal derivatives.
  /// t_order <= 1, and t_order == 1 requires s_order == 0.
  static Generator phi(int s_order = 0, int t_order = 0);
  static Generator symbol(std::string name);

  /// Inverse of name(): `u_s`, `u_ss`, `u_s3`, `E`, `phi_ss`, `phi_t`, or any
  /// other identifier as a symbol.
  static Generator parse(std::string_view name);

  GeneratorKind kind() const noexcept { return kind_; }
  int s_order() const noexcept { return s_order_; }
  int t_order() const noexcept { return t_order_; }
  const std::string& symbol_name() const noexcept { return name_; }

  std::string name() const;

  friend auto operator<=>(const Generator&, const Generator&) = default;
  friend bool operator==(const Generator&, const Generator&) = default;

 private:
  Generator(GeneratorKind kind, int t_order, int s_order, std::string name)
      : kind_(kind), t_order_(t_order), s_order_(s_order), name_(std::move(name)) {}

  // Member order defines the canonical generator order.
  GeneratorKind kind_;
  int t_order_;
  int s_order_;
  std::string name_;
};

/// Exponent map with no zero entries.
using Powers = std::map<Generator, int>;

int total_degree(const Powers& powers);

/// Graded order: higher total degree first, then lexicographic on exponent
/// vectors with generators in canonical order.
struct TermOrder {
  bool operator()(const Powers& lhs, const Powers& rhs) const;
};

struct Monomial {
  Rational coeff;
  Powers powers;
};

class DiffPoly {
 public:
  using TermMap = std::map<Powers, Rational, TermOrder>;

  DiffPoly() = default;
  DiffPoly(Rational constant);  // NOLINT(google-explicit-constructor)
  DiffPoly(int constant) : DiffPoly(Rational(constant)) {}  // NOLINT

  static DiffPoly gen(const Generator& g, int power = 1);
  static DiffPoly monomial(Rational coeff, Powers powers);

  // Shorthands for the common generators.
  static DiffPoly u(int order) { return gen(Generator::u(order)); }
  static DiffPoly E() { return gen(Generator::e()); }
  static DiffPoly phi(int s_order = 0, int t_order = 0) {
    return gen(Generator::phi(s_order, t_order));
  }
  static DiffPoly sym(std::string name) { return gen(Generator::symbol(std::move(name))); }

  const TermMap& terms() const noexcept { return terms_; }
  std::vector<Monomial> monomials() const;
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  /// Coefficient of an exact monomial (zero if absent).
  Rational coefficient(const Powers& powers) const;

  DiffPoly& operator+=(const DiffPoly& rhs);
  DiffPoly& operator-=(const DiffPoly& rhs);
  DiffPoly& operator*=(const DiffPoly& rhs);

  friend DiffPoly operator+(DiffPoly lhs, const DiffPoly& rhs) { return lhs += rhs; }
  friend DiffPoly operator-(DiffPoly lhs, const DiffPoly& rhs) { return lhs -= rhs; }
  friend DiffPoly operator*(const DiffPoly& lhs, const DiffPoly& rhs);
  friend DiffPoly operator-(const DiffPoly& p);
  friend bool operator==(const DiffPoly&, const DiffPoly&) = default;

  DiffPoly pow(int exponent) const;

  /// Highest power of g appearing in any term.
  int degree_in(const Generator& g) const;
  /// Coefficient of g^k, as a polynomial in the remaining generators.
  DiffPoly coefficient_of(const Generator& g, int k) const;
  bool contains(const Generator& g) const { return degree_in(g) > 0; }

  /// Replaces every occurrence of g by `value`.
  DiffPoly substitute(const Generator& g, const DiffPoly& value) const;
  /// Formal partial derivative with respect to g.
  DiffPoly partial(const Generator& g) const;

  /// Numeric evaluation; `value` supplies a double for every generator.
  double evaluate(const std::function<double(const Generator&)>& value) const;

  /// Canonical text: `coeff * gen^pow * ...` terms joined by ` + ` / ` - `.
  std::string to_string() const;
  static DiffPoly parse(std::string_view text);

 private:
  void add_term(const Powers& powers, const Rational& coeff);

  TermMap terms_;
};

/// Spatial derivative d/ds.
DiffPoly d_s(const DiffPoly& p);

/// Time derivative under the flow, with u_t eliminated. Throws DomainError on
/// phi_s, phi_ss, ... or phi_t, whose time derivatives are not defined here.
DiffPoly d_t(const DiffPoly& p);

/// Right-hand side u_t = u_ss + u_s^2 + E of the log-curvature equation.
DiffPoly u_t_rhs();

/// R = d_t h - d_s d_s h - 2 * coupling * d_s h - 4 E h.
/// With the default coupling u_s this is the reaction part of h's evolution.
DiffPoly heat_remainder(const DiffPoly& h, const DiffPoly& coupling = DiffPoly::u(1));

}  // namespace csfh
