#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace toric {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

using IntVector = std::vector<std::int64_t>;
using RationalVector = std::vector<Rational>;
// Row-major dense matrix of rationals.
using RationalMatrix = std::vector<RationalVector>;

// Parses "p/q", "-7", "0.125", "1e-3", "2.5E+2" exactly. Throws
// ToricError(ParseError) on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

double to_double(const Rational& q);

// Exact determinant by fraction-free Gaussian elimination.
Rational determinant(RationalMatrix m);

// Exact rank.
std::size_t rank(RationalMatrix m);

// Solves the square system m·x = b exactly; returns false when m is singular.
bool solve_exact(RationalMatrix m, RationalVector b, RationalVector& x);

// Basis of {x : m·x = 0}, exact.
std::vector<RationalVector> nullspace(RationalMatrix m);

std::int64_t gcd_of(const IntVector& v);

}  // namespace toric
