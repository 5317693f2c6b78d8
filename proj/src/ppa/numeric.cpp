#include "ppa/numeric.hpp"

#include "ppa/error.hpp"

#include <cctype>

namespace ppa {

Nat monus(const Nat& a, const Nat& b) {
  if (a <= b) return Nat(0);
  return a - b;
}

Nat floor(const Rational& q) {
  Nat num = boost::multiprecision::numerator(q);
  Nat den = boost::multiprecision::denominator(q);
  Nat quot, rem;
  boost::multiprecision::divide_qr(num, den, quot, rem);
  // divide_qr truncates toward zero.
  if (rem != 0 && num < 0) quot -= 1;
  return quot;
}

Nat ceil(const Rational& q) {
  Nat num = boost::multiprecision::numerator(q);
  Nat den = boost::multiprecision::denominator(q);
  Nat quot, rem;
  boost::multiprecision::divide_qr(num, den, quot, rem);
  if (rem != 0 && num > 0) quot += 1;
  return quot;
}

Nat isqrt_ceil(const Nat& n) {
  if (n < 0) throw InvalidArgument("isqrt_ceil of a negative number");
  Nat s = boost::multiprecision::sqrt(n);
  if (s * s < n) s += 1;
  return s;
}

std::uint64_t bit_length(const Nat& n) {
  if (n == 0) return 0;
  return static_cast<std::uint64_t>(mpz_sizeinbase(n.backend().data(), 2));
}

bool is_integer(const Rational& q) {
  return boost::multiprecision::denominator(q) == 1;
}

namespace {

Nat parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) {
    throw InvalidArgument("malformed rational '" + std::string(whole) + "'");
  }
  for (char ch : digits) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
      throw InvalidArgument("malformed rational '" + std::string(whole) + "'");
    }
  }
  return Nat(std::string(digits));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  while (!body.empty() && std::isspace(static_cast<unsigned char>(body.front())))
    body.remove_prefix(1);
  while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back())))
    body.remove_suffix(1);

  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  Rational value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    Nat num = parse_integer(body.substr(0, slash), text);
    Nat den = parse_integer(body.substr(slash + 1), text);
    if (den == 0) {
      throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
    }
    value = Rational(num, den);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = body.substr(0, dot);
    std::string_view frac_part = body.substr(dot + 1);
    Nat whole = int_part.empty() ? Nat(0) : parse_integer(int_part, text);
    Nat frac = parse_integer(frac_part, text);
    Nat scale = boost::multiprecision::pow(Nat(10),
                                           static_cast<unsigned>(frac_part.size()));
    value = Rational(whole * scale + frac, scale);
  } else {
    value = Rational(parse_integer(body, text));
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& q) {
  if (is_integer(q)) return boost::multiprecision::numerator(q).str();
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

std::string to_string(const Nat& n) { return n.str(); }

double to_double(const Rational& q) { return q.convert_to<double>(); }

bool fits_u64(const Nat& n) {
  return n >= 0 && bit_length(n) <= 64;
}

std::uint64_t to_u64(const Nat& n) {
  if (!fits_u64(n)) {
    throw InvalidArgument("value " + n.str() + " does not fit in 64 bits");
  }
  return n.convert_to<std::uint64_t>();
}

}  // namespace ppa
