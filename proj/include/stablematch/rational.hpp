#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace stablematch {

// Exact rational arithmetic. Every quantity in the divisible-worker market
// (consumption times, subpopulation masses, simplex pivots) is an exact
// rational; there is no floating point anywhere in the solver.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Renders in lowest terms: "3", "-1/2". Denominator 1 prints without "/q".
std::string to_string(const Rational& q);

/// Accepts "p", "p/q", and exact decimal literals like "0.5" or "-1.25".
/// Throws std::invalid_argument on anything else (q == 0 included).
Rational rational_from_string(std::string_view text);

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

std::string to_string(const std::vector<Rational>& v);

}  // namespace stablematch
