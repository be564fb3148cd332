#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace ffrad {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt big_pow(std::uint64_t base, unsigned exp);

/// n choose 2 as an exact integer.
BigInt pairs(std::uint64_t n);

/// Always "a/b", including integers ("3/1").
std::string to_fraction_string(const Rational& r);

/// Accepts "a/b", "a" or a terminating decimal such as "1.5".
Rational parse_rational(std::string_view text);

/// Largest integer <= r.
BigInt floor_of(const Rational& r);

/// Smallest integer >= r.
BigInt ceil_of(const Rational& r);

}  // namespace ffrad
