#ifndef PPA_NUMERIC_HPP
#define PPA_NUMERIC_HPP

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace ppa {

// Arbitrary-precision naturals and rationals. Every modulus is computed in
// these types; only trajectories use floating point.
using Nat = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// Default exact-size budget for any single intermediate (2^26 bits, ~8 MiB).
inline constexpr std::uint64_t kDefaultMaxBits = std::uint64_t{1} << 26;

// Truncated subtraction: max(a - b, 0).
Nat monus(const Nat& a, const Nat& b);

Nat ceil(const Rational& q);
Nat floor(const Rational& q);

// Least s with s*s >= n.
Nat isqrt_ceil(const Nat& n);

// Number of significant bits; 0 for 0.
std::uint64_t bit_length(const Nat& n);

bool is_integer(const Rational& q);

// Accepts "p/q", an integer "p", or a plain decimal "1.25". Throws
// InvalidArgument on malformed input or zero denominator.
Rational parse_rational(std::string_view text);

// "p/q" with q > 1, or "p" for integers.
std::string to_string(const Rational& q);
std::string to_string(const Nat& n);

double to_double(const Rational& q);

// Throws InvalidArgument unless n fits in 64 bits.
std::uint64_t to_u64(const Nat& n);
bool fits_u64(const Nat& n);

}  // namespace ppa

#endif  // PPA_NUMERIC_HPP
