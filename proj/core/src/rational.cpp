#include "csfh/rational.hpp"

#include "csfh/errors.hpp"

#include <cctype>

namespace csfh {

std::string to_string(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
  if (text.empty()) throw FormatError("empty integer in rational '" + std::string(whole) + "'");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) throw FormatError("bad rational '" + std::string(whole) + "'");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw FormatError("bad rational '" + std::string(whole) + "'");
    }
  }
  BigInt value(std::string(text.substr(start)));
  return text[0] == '-' ? BigInt(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  const BigInt num = parse_integer(text.substr(0, slash), text);
  const BigInt den = parse_integer(text.substr(slash + 1), text);
  if (den == 0) throw FormatError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace csfh
