#include "csfh/diffpoly.hpp"

#include "csfh/errors.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace csfh {

// ---------------------------------------------------------------------------
// Generator

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char ch : s) {
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') return false;
  }
  return true;
}

// Names in the u_* / phi* / E families are reserved for flow generators.
bool is_reserved(std::string_view s) {
  return s == "E" || s.starts_with("u_") || s == "u" || s.starts_with("phi");
}

// Parses the derivative suffix "s", "ss" or "s<k>" into an order.
int parse_s_suffix(std::string_view suffix) {
  if (suffix == "s") return 1;
  if (suffix == "ss") return 2;
  if (suffix.size() > 1 && suffix[0] == 's' && all_digits(suffix.substr(1))) {
    return std::stoi(std::string(suffix.substr(1)));
  }
  return -1;
}

std::string s_suffix(int order) {
  if (order == 1) return "s";
  if (order == 2) return "ss";
  return "s" + std::to_string(order);
}

}  // namespace

Generator Generator::u(int order) {
  if (order < 1) throw DomainError("u derivative order must be >= 1, got " + std::to_string(order));
  return Generator(GeneratorKind::UDeriv, 0, order, {});
}

Generator Generator::e() { return Generator(GeneratorKind::E, 0, 0, {}); }

Generator Generator::phi(int s_order, int t_order) {
  if (s_order < 0 || t_order < 0 || t_order > 1) {
    throw DomainError("phi derivative orders out of range");
  }
  if (t_order == 1 && s_order != 0) {
    throw DomainError("mixed derivatives of phi are not represented");
  }
  return Generator(GeneratorKind::Phi, t_order, s_order, {});
}

Generator Generator::symbol(std::string name) {
  if (!is_identifier(name) || is_reserved(name)) {
    throw FormatError("invalid symbol name '" + name + "'");
  }
  return Generator(GeneratorKind::Symbol, 0, 0, std::move(name));
}

Generator Generator::parse(std::string_view name) {
  if (name == "E") return e();
  if (name.starts_with("u_")) {
    const int order = parse_s_suffix(name.substr(2));
    if (order >= 1) return u(order);
    throw FormatError("unknown generator '" + std::string(name) + "'");
  }
  if (name == "phi") return phi(0, 0);
  if (name == "phi_t") return phi(0, 1);
  if (name.starts_with("phi_")) {
    const int order = parse_s_suffix(name.substr(4));
    if (order >= 1) return phi(order, 0);
    throw FormatError("unknown generator '" + std::string(name) + "'");
  }
  return symbol(std::string(name));
}

std::string Generator::name() const {
  switch (kind_) {
    case GeneratorKind::UDeriv:
      return "u_" + s_suffix(s_order_);
    case GeneratorKind::E:
      return "E";
    case GeneratorKind::Phi:
      if (t_order_ == 1) return "phi_t";
      if (s_order_ == 0) return "phi";
      return "phi_" + s_suffix(s_order_);
    case GeneratorKind::Symbol:
      return name_;
  }
  return {};
}

// ---------------------------------------------------------------------------
// Term order

int total_degree(const Powers& powers) {
  int degree = 0;
  for (const auto& [g, k] : powers) degree += k;
  return degree;
}

bool TermOrder::operator()(const Powers& lhs, const Powers& rhs) const {
  const int dl = total_degree(lhs);
  const int dr = total_degree(rhs);
  if (dl != dr) return dl > dr;
  auto il = lhs.begin();
  auto ir = rhs.begin();
  for (; il != lhs.end() && ir != rhs.end(); ++il, ++ir) {
    if (il->first != ir->first) return il->first < ir->first;
    if (il->second != ir->second) return il->second > ir->second;
  }
  // Equal degree and equal prefix means equal maps.
  return false;
}

// ---------------------------------------------------------------------------
// DiffPoly

DiffPoly::DiffPoly(Rational constant) {
  if (constant != 0) terms_.emplace(Powers{}, std::move(constant));
}

DiffPoly DiffPoly::gen(const Generator& g, int power) {
  if (power < 0) throw DomainError("negative exponent");
  if (power == 0) return DiffPoly(1);
  return monomial(1, Powers{{g, power}});
}

DiffPoly DiffPoly::monomial(Rational coeff, Powers powers) {
  for (auto it = powers.begin(); it != powers.end();) {
    if (it->second < 0) throw DomainError("negative exponent");
    it = it->second == 0 ? powers.erase(it) : std::next(it);
  }
  DiffPoly p;
  p.add_term(powers, coeff);
  return p;
}

std::vector<Monomial> DiffPoly::monomials() const {
  std::vector<Monomial> out;
  out.reserve(terms_.size());
  for (const auto& [powers, coeff] : terms_) out.push_back({coeff, powers});
  return out;
}

Rational DiffPoly::coefficient(const Powers& powers) const {
  auto it = terms_.find(powers);
  return it == terms_.end() ? Rational(0) : it->second;
}

void DiffPoly::add_term(const Powers& powers, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(powers, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& rhs) {
  for (const auto& [powers, coeff] : rhs.terms_) add_term(powers, coeff);
  return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& rhs) {
  for (const auto& [powers, coeff] : rhs.terms_) add_term(powers, -coeff);
  return *this;
}

DiffPoly operator*(const DiffPoly& lhs, const DiffPoly& rhs) {
  DiffPoly out;
  for (const auto& [pl, cl] : lhs.terms_) {
    for (const auto& [pr, cr] : rhs.terms_) {
      Powers powers = pl;
      for (const auto& [g, k] : pr) powers[g] += k;
      out.add_term(powers, cl * cr);
    }
  }
  return out;
}

DiffPoly& DiffPoly::operator*=(const DiffPoly& rhs) { return *this = *this * rhs; }

DiffPoly operator-(const DiffPoly& p) {
  DiffPoly out = p;
  for (auto& [powers, coeff] : out.terms_) coeff = -coeff;
  return out;
}

DiffPoly DiffPoly::pow(int exponent) const {
  if (exponent < 0) throw DomainError("negative exponent");
  DiffPoly result(1);
  DiffPoly base = *this;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    exponent >>= 1;
    if (exponent > 0) base *= base;
  }
  return result;
}

int DiffPoly::degree_in(const Generator& g) const {
  int degree = 0;
  for (const auto& [powers, coeff] : terms_) {
    auto it = powers.find(g);
    if (it != powers.end()) degree = std::max(degree, it->second);
  }
  return degree;
}

DiffPoly DiffPoly::coefficient_of(const Generator& g, int k) const {
  DiffPoly out;
  for (const auto& [powers, coeff] : terms_) {
    auto it = powers.find(g);
    const int have = it == powers.end() ? 0 : it->second;
    if (have != k) continue;
    Powers rest = powers;
    rest.erase(g);
    out.add_term(rest, coeff);
  }
  return out;
}

DiffPoly DiffPoly::substitute(const Generator& g, const DiffPoly& value) const {
  const int max_degree = degree_in(g);
  std::vector<DiffPoly> value_powers{DiffPoly(1)};
  for (int k = 1; k <= max_degree; ++k) value_powers.push_back(value_powers.back() * value);

  DiffPoly out;
  for (const auto& [powers, coeff] : terms_) {
    auto it = powers.find(g);
    if (it == powers.end()) {
      out.add_term(powers, coeff);
      continue;
    }
    Powers rest = powers;
    rest.erase(g);
    out += monomial(coeff, rest) * value_powers[static_cast<std::size_t>(it->second)];
  }
  return out;
}

DiffPoly DiffPoly::partial(const Generator& g) const {
  DiffPoly out;
  for (const auto& [powers, coeff] : terms_) {
    auto it = powers.find(g);
    if (it == powers.end()) continue;
    Powers rest = powers;
    const int k = it->second;
    if (k == 1) {
      rest.erase(g);
    } else {
      rest[g] = k - 1;
    }
    out.add_term(rest, coeff * k);
  }
  return out;
}

double DiffPoly::evaluate(const std::function<double(const Generator&)>& value) const {
  double sum = 0.0;
  for (const auto& [powers, coeff] : terms_) {
    double term = to_double(coeff);
    for (const auto& [g, k] : powers) term *= std::pow(value(g), k);
    sum += term;
  }
  return sum;
}

std::string DiffPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [powers, coeff] : terms_) {
    const bool negative = coeff < 0;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    os << csfh::to_string(negative ? Rational(-coeff) : coeff);
    for (const auto& [g, k] : powers) {
      os << " * " << g.name();
      if (k != 1) os << '^' << k;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Parser: sums of products of rationals, generators, powers and parentheses.

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  DiffPoly parse_all() {
    DiffPoly p = parse_sum();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw FormatError("cannot parse polynomial at offset " + std::to_string(pos_) + ": " + why +
                      " in '" + std::string(text_) + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char ch) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  DiffPoly parse_sum() {
    DiffPoly sum;
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    for (;;) {
      DiffPoly term = parse_product();
      sum += negate ? -term : term;
      if (accept('+')) {
        negate = false;
      } else if (accept('-')) {
        negate = true;
      } else {
        return sum;
      }
    }
  }

  DiffPoly parse_product() {
    DiffPoly product = parse_power();
    while (accept('*')) product *= parse_power();
    return product;
  }

  DiffPoly parse_power() {
    DiffPoly base = parse_atom();
    if (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      base = base.pow(std::stoi(std::string(text_.substr(start, pos_ - start))));
    }
    return base;
  }

  DiffPoly parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end");
    const char ch = text_[pos_];
    if (ch == '(') {
      ++pos_;
      DiffPoly inner = parse_sum();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::string literal = read_while([](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
      if (accept('/')) {
        skip_ws();
        literal += '/' + read_while([](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
      }
      return DiffPoly(parse_rational(literal));
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      const std::string name =
          read_while([](char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; });
      return DiffPoly::gen(Generator::parse(name));
    }
    fail(std::string("unexpected character '") + ch + "'");
  }

  template <typename Pred>
  std::string read_while(Pred pred) {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && pred(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

DiffPoly DiffPoly::parse(std::string_view text) { return Parser(text).parse_all(); }

// ---------------------------------------------------------------------------
// Derivatives

namespace {

// Applies a derivation defined on generators, extended by Leibniz and linearity.
template <typename Rule>
DiffPoly derive(const DiffPoly& p, Rule&& rule) {
  DiffPoly out;
  for (const auto& [powers, coeff] : p.terms()) {
    for (const auto& [g, k] : powers) {
      DiffPoly dg = rule(g);
      if (dg.is_zero()) continue;
      Powers rest = powers;
      if (k == 1) {
        rest.erase(g);
      } else {
        rest[g] = k - 1;
      }
      out += DiffPoly::monomial(coeff * k, rest) * dg;
    }
  }
  return out;
}

DiffPoly d_s_generator(const Generator& g) {
  switch (g.kind()) {
    case GeneratorKind::UDeriv:
      return DiffPoly::u(g.s_order() + 1);
    case GeneratorKind::E:
      return 2 * DiffPoly::E() * DiffPoly::u(1);
    case GeneratorKind::Phi:
      if (g.t_order() != 0) throw DomainError("d_s(phi_t) is not represented");
      return DiffPoly::phi(g.s_order() + 1, 0);
    case GeneratorKind::Symbol:
      return {};
  }
  return {};
}

// d_t u^(k) via the commutator [d_t, d_s] = E d_s.
DiffPoly d_t_u(int order) {
  DiffPoly result = d_s(u_t_rhs()) + DiffPoly::E() * DiffPoly::u(1);
  for (int k = 2; k <= order; ++k) result = d_s(result) + DiffPoly::E() * DiffPoly::u(k);
  return result;
}

DiffPoly d_t_generator(const Generator& g) {
  switch (g.kind()) {
    case GeneratorKind::UDeriv:
      return d_t_u(g.s_order());
    case GeneratorKind::E:
      return 2 * DiffPoly::E() * u_t_rhs();
    case GeneratorKind::Phi:
      if (g.t_order() == 0 && g.s_order() == 0) return DiffPoly::phi(0, 1);
      throw DomainError("d_t(" + g.name() + ") is undefined: only phi itself has a time derivative");
    case GeneratorKind::Symbol:
      return {};
  }
  return {};
}

}  // namespace

DiffPoly d_s(const DiffPoly& p) { return derive(p, d_s_generator); }

DiffPoly d_t(const DiffPoly& p) { return derive(p, d_t_generator); }

DiffPoly u_t_rhs() { return DiffPoly::u(2) + DiffPoly::u(1).pow(2) + DiffPoly::E(); }

DiffPoly heat_remainder(const DiffPoly& h, const DiffPoly& coupling) {
  const DiffPoly hs = d_s(h);
  return d_t(h) - d_s(hs) - 2 * coupling * hs - 4 * DiffPoly::E() * h;
}

}  // namespace csfh
