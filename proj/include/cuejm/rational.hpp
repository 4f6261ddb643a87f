#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <span>
#include <string>
#include <string_view>

namespace cuejm {

// Arbitrary-precision integers and rationals (GMP-backed).
// Rationals are kept canonical: reduced to lowest terms, denominator > 0,
// so operator== is structural equality.
using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// n!, memoized. Safe for concurrent callers; the returned reference
/// stays valid for the lifetime of the program.
const Integer& factorial(int n);

/// 1/n! as a rational. n < 0 yields 0 (the reciprocal-Gamma convention,
/// which is what the determinant identities expect for out-of-range cells).
Rational reciprocal_factorial(int n);

/// n! / (parts_0! ... parts_{m-1}!). Throws std::invalid_argument unless
/// all parts are non-negative and sum to n.
Integer multinomial(int n, std::span<const int> parts);

Integer binomial(int n, int k);

/// base^exp for integer exp (negative exp inverts; throws std::domain_error
/// on 0^negative).
Rational pow_rational(const Rational& base, long exp);

Rational make_rational(const Integer& num, const Integer& den);

/// Interchange format: "p/q" in decimal, or plain "p" when q == 1.
std::string to_string(const Rational& r);
std::string to_string(const Integer& n);

/// Parses "p", "-p", "p/q". Throws std::invalid_argument on malformed input
/// or zero denominator.
Rational parse_rational(std::string_view text);

inline int sign_pow(long exp) { return (exp % 2 == 0) ? 1 : -1; }

} // namespace cuejm
