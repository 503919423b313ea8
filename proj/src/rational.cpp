#include "walshlab/rational.hpp"

#include <stdexcept>

namespace walshlab {

Rational rat(long num, long den) {
  if (den == 0) throw std::invalid_argument("rat: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational ratio(std::uint64_t a, std::uint64_t b) {
  if (b == 0) throw std::invalid_argument("ratio: zero denominator");
  Rational q(BigInt(static_cast<unsigned long>(a)), BigInt(static_cast<unsigned long>(b)));
  q.canonicalize();
  return q;
}

Rational pow2(long e) {
  BigInt one = 1;
  BigInt p;
  if (e >= 0) {
    mpz_mul_2exp(p.get_mpz_t(), one.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
    return Rational(p);
  }
  mpz_mul_2exp(p.get_mpz_t(), one.get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
  return Rational(BigInt(1), p);
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto dot = s.find('.');
  Rational q;
  if (dot != std::string::npos) {
    if (s.find('/') != std::string::npos)
      throw std::invalid_argument("malformed rational: " + s);
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac = s.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+")
      throw std::invalid_argument("malformed rational: " + s);
    if (digits[0] == '+') digits.erase(0, 1);
    BigInt num;
    if (num.set_str(digits, 10) != 0)
      throw std::invalid_argument("malformed rational: " + s);
    BigInt den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
    q = Rational(num, den);
  } else {
    if (s[0] == '+') s.erase(0, 1);
    if (q.set_str(s, 10) != 0)
      throw std::invalid_argument("malformed rational: " + std::string(text));
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  }
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

bool is_integer(const Rational& q) { return q.get_den() == 1; }

Rational ipow(const Rational& q, unsigned long e) {
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), e);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

namespace {

double tree_sum(const double* v, std::size_t n) {
  if (n == 0) return 0.0;
  if (n == 1) return v[0];
  std::size_t half = n / 2;
  return tree_sum(v, half) + tree_sum(v + half, n - half);
}

}  // namespace

double pairwise_sum(std::span<const double> values) {
  return tree_sum(values.data(), values.size());
}

}  // namespace walshlab
