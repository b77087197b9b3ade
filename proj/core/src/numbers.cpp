#include "tsppsd/numbers.hpp"

#include <array>
#include <cctype>
#include <vector>

#include "tsppsd/errors.hpp"

namespace tsppsd {

namespace {

constexpr long kFactorialMemo = 512;

const std::vector<BigInt>& factorial_table() {
  static const std::vector<BigInt> table = [] {
    std::vector<BigInt> t(kFactorialMemo + 1);
    t[0] = 1;
    for (long i = 1; i <= kFactorialMemo; ++i) t[i] = t[i - 1] * i;
    return t;
  }();
  return table;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

BigInt factorial(long n) {
  if (n < 0) throw InvalidArgument("factorial of negative number " + std::to_string(n));
  if (n <= kFactorialMemo) return factorial_table()[static_cast<std::size_t>(n)];
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

BigInt binomial(long a, long b) {
  if (b < 0 || a < 0 || b > a) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
  return r;
}

BigInt pow2(long e) {
  if (e < 0) throw InvalidArgument("negative power of two");
  BigInt r = 1;
  r <<= static_cast<mp_bitcnt_t>(e);
  return r;
}

BigInt falling_factorial(long a, long count) {
  BigInt r = 1;
  for (long i = 0; i < count; ++i) r *= (a - i);
  return r;
}

Rational ratio(const BigInt& num, const BigInt& den) {
  if (den == 0) throw InvalidArgument("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_pq_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw InvalidArgument("malformed rational '" + std::string(text) + "' (expected \"p/q\")");
  }
  BigInt p{std::string(num)};
  BigInt q{std::string(den)};
  if (q == 0) throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
  Rational r(p, q);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

double to_double(const Rational& q) { return q.get_d(); }

int sign(const Rational& q) { return sgn(q); }

}  // namespace tsppsd
