#include <doctest.h>

#include "tsppsd/errors.hpp"
#include "tsppsd/numbers.hpp"

using namespace tsppsd;

TEST_CASE("factorial and binomial") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(10) == 3628800);
  // 20! fits in 64 bits; check against a plain loop.
  unsigned long long p = 1;
  for (int i = 2; i <= 20; ++i) p *= static_cast<unsigned long long>(i);
  CHECK(factorial(20) == BigInt(std::to_string(p)));
  CHECK(factorial(600) == factorial(599) * 600);

  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(5, 0) == 1);
  // Outside 0 <= b <= a the count is zero, including negative tops.
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(4, -1) == 0);
  CHECK(binomial(-2, 1) == 0);
  for (long a = 0; a < 12; ++a) {
    for (long b = 1; b <= a; ++b) CHECK(binomial(a, b) == binomial(a - 1, b - 1) + binomial(a - 1, b));
  }
}

TEST_CASE("falling factorial and powers") {
  CHECK(falling_factorial(7, 0) == 1);
  CHECK(falling_factorial(7, 3) == 210);
  CHECK(pow2(10) == 1024);
}

TEST_CASE("ratio canonicalizes") {
  const Rational q = ratio(-4, 2);
  CHECK(q == -2);
  CHECK(q.get_den() == 1);
  CHECK(ratio(6, -8) == Rational(-3, 4));
  CHECK_THROWS_AS(ratio(1, 0), InvalidArgument);
}

TEST_CASE("p/q text round trip") {
  CHECK(to_pq_string(Rational(3)) == "3/1");
  CHECK(to_pq_string(ratio(-10, 4)) == "-5/2");
  CHECK(parse_rational("5/8") == Rational(5, 8));
  CHECK(parse_rational("-6/4") == Rational(-3, 2));
  CHECK(parse_rational("+7") == 7);
  CHECK(parse_rational(to_pq_string(ratio(123456789, 1000))) == ratio(123456789, 1000));
  CHECK_THROWS_AS(parse_rational("1/0"), InvalidArgument);
  CHECK_THROWS_AS(parse_rational("abc"), InvalidArgument);
  CHECK_THROWS_AS(parse_rational(""), InvalidArgument);
  CHECK(sign(Rational(-1, 3)) == -1);
  CHECK(to_double(Rational(1, 4)) == doctest::Approx(0.25));
}
