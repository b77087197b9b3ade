#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace tsppsd {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Exact factorial, memoized up to 512; larger arguments are computed on demand.
BigInt factorial(long n);

/// Binomial coefficient with the combinatorial convention C(a, b) = 0 whenever
/// b < 0 or b > a (including negative a).
BigInt binomial(long a, long b);

BigInt pow2(long e);

/// num/den in lowest terms. Use this rather than Rational(num, den), which skips canonicalization.
Rational ratio(const BigInt& num, const BigInt& den);

/// Falling factorial a (a-1) ... (a-count+1); 1 when count == 0.
BigInt falling_factorial(long a, long count);

/// "p/q" form. Integers are written with a unit denominator ("3/1").
std::string to_pq_string(const Rational& q);

/// Accepts "p/q", "p", and an optional leading sign. Throws InvalidArgument.
Rational parse_rational(std::string_view text);

double to_double(const Rational& q);

int sign(const Rational& q);

}  // namespace tsppsd
