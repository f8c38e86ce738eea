#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace g13 {

// Always canonical: gmpxx keeps mpq_class in lowest terms with a positive
// denominator as long as every constructor path calls canonicalize().
using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(long num, long den = 1);

// "p/q", or "n" when the denominator is 1.
std::string to_string(const Rational& r);

// Accepts "n", "-n", "p/q". Throws std::invalid_argument on malformed input
// or a zero denominator.
Rational parse_rational(std::string_view text);

bool is_integer(const Rational& r);

Integer factorial(unsigned n);
Integer binomial(unsigned n, unsigned k);

Rational pow(const Rational& base, unsigned e);

}  // namespace g13
