#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "qlm/errors.hpp"

namespace qlm {

// Exact arbitrary-precision rational scalar, always in lowest terms with
// positive denominator (maintained by the backend). The ground field
// everywhere; no floating point appears in the algebra core.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline Integer rat_num(const Rational& r) { return numerator(r); }
inline Integer rat_den(const Rational& r) { return denominator(r); }

inline Rational rat_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

// Serialized form "p/q" (or "p" when q == 1); rationals are never written as
// floats so files stay exact and byte-stable.
std::string rat_str(const Rational& r);

// Parses "p", "p/q", with optional leading sign. Throws ValidationError.
Rational rat_parse(const std::string& text);

}  // namespace qlm
