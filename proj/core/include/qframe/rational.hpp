#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>

namespace qframe {

// Arbitrary-precision rational used wherever verdicts must be exact
// (linear-program certificates, probability tables given as fractions).
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Exact conversion: every finite double is a dyadic rational.
Rational rational_from_double(double x);

double rational_to_double(const Rational& r);

// Accepts "p/q", plain integers, and terminating decimals ("0.25", "-1.5").
std::optional<Rational> rational_from_string(const std::string& s);

// Renders as a terminating decimal when the reduced denominator is of the
// form 2^a 5^b, otherwise as "p/q".
std::string rational_to_string(const Rational& r);

}  // namespace qframe
