#pragma once

// Exact integer/rational scalars shared by every module.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace newtonpoly {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exponent vectors and lattice points are small; derived quantities
/// (dot products, determinants, normals) are computed in Integer.
using IntVector = std::vector<std::int64_t>;
using ExponentVector = IntVector;
using LatticePoint = IntVector;

using IntegerVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;

/// Parses `p`, `p/q`, or a decimal such as `-1.25e-3` exactly.
Rational parse_rational(std::string_view text);

/// `p` for integers, `p/q` otherwise.
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

double to_double(const Rational& value);

/// Exact value of a finite double (a dyadic rational).
Rational exact_rational(double value);

/// Nearest integer, ties away from zero.
Integer round_nearest(const Rational& value);
Integer floor(const Rational& value);
Integer ceil(const Rational& value);

std::int64_t to_int64(const Integer& value);

/// Divides out the gcd of the entries; zero vectors are returned unchanged.
IntegerVector make_primitive(IntegerVector v);

/// Clears denominators and makes the result primitive.
IntegerVector integerize(std::span<const Rational> v);

IntegerVector to_integer_vector(std::span<const std::int64_t> v);
RationalVector to_rational_vector(std::span<const std::int64_t> v);
RationalVector to_rational_vector(std::span<const Integer> v);

Integer dot(std::span<const Integer> a, std::span<const std::int64_t> b);
Rational dot(std::span<const Rational> a, std::span<const std::int64_t> b);
double dot(std::span<const double> a, std::span<const std::int64_t> b);

std::int64_t degree(std::span<const std::int64_t> alpha);

}  // namespace newtonpoly
