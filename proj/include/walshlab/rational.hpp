#pragma once

// Exact scalar support. Exact-mode samples, coefficients and exponents are
// GMP rationals; float mode uses double with a fixed summation order.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace walshlab {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Canonical num/den.
Rational rat(long num, long den = 1);

/// Canonical a/b for unsigned counts.
Rational ratio(std::uint64_t a, std::uint64_t b);

/// Exact 2^e for any integer e.
Rational pow2(long e);

/// Parses "3", "-1/4", "0.25" (finite decimals are converted exactly).
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

bool is_integer(const Rational& q);

/// q^e for a nonnegative integer exponent.
Rational ipow(const Rational& q, unsigned long e);

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double v) { return v; }

inline Rational abs_value(const Rational& q) { return abs(q); }
inline double abs_value(double v) { return std::fabs(v); }

/// Sum in a balanced binary tree over index-ascending halves. The result
/// depends only on the input order, never on the thread count.
double pairwise_sum(std::span<const double> values);

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* mode = "exact";
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr const char* mode = "float";
};

/// Converts an exact value to T (identity for Rational).
template <class T>
T from_rational(const Rational& q) {
  if constexpr (ScalarTraits<T>::exact) {
    return q;
  } else {
    return q.get_d();
  }
}

}  // namespace walshlab
