#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <optional>
#include <string>

namespace tw {

/// Exact rational scalar. GMP keeps values in lowest terms with a positive
/// denominator after every operation, so equality and ordering are exact.
/// Expression templates are off: arithmetic yields plain values that mix
/// freely with std::min/max and the containers.
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                  boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

/// Parses "p", "p/q" or a plain integer string. Rejects zero denominators,
/// signs inside the denominator and any trailing garbage.
std::optional<Rational> parse_rational(const std::string& text);

/// Canonical rendering: "p" when the denominator is 1, else "p/q".
std::string format_rational(const Rational& value);

inline Rational rational_abs(const Rational& v) { return v < 0 ? Rational(-v) : v; }

inline int rational_sign(const Rational& v) { return v < 0 ? -1 : (v > 0 ? 1 : 0); }

}  // namespace tw
