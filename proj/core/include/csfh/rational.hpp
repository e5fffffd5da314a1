#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace csfh {

/// Arbitrary-precision exact rational. Expression templates are off so that
/// mixed expressions with DiffPoly resolve to plain values.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

/// Formats as `p` or `p/q` in lowest terms.
std::string to_string(const Rational& q);

/// Parses `p`, `-p`, `p/q`. Throws FormatError on bad input or zero denominator.
Rational parse_rational(std::string_view text);

double to_double(const Rational& q);

}  // namespace csfh
