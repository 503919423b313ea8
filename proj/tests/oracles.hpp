#pragma once

// Brute-force reference computations for the tests. Everything here works
// pointwise from the definitions and shares no code path with the fast
// transforms.

#include "walshlab/walsh_systems.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace oracle {

using walshlab::ExactFunction;
using walshlab::GroupPoint;
using walshlab::Index;
using walshlab::Rational;
using walshlab::System;

/// w_n(x) as the product of Rademacher factors r_k(x)^{n_k}.
inline int paley(Index n, Index x) {
  int s = 1;
  for (int k = 0; k < 64; ++k)
    if (((n >> k) & 1U) && ((x >> k) & 1U)) s = -s;
  return s;
}

/// kappa_n(x) = r_{|n|}(x) prod_k r_{|n|-1-k}(x)^{n_k}.
inline int kaczmarz(Index n, Index x) {
  if (n == 0) return 1;
  int top = 63;
  while (!((n >> top) & 1U)) --top;
  int s = ((x >> top) & 1U) ? -1 : 1;
  for (int k = 0; k < top; ++k)
    if (((n >> k) & 1U) && ((x >> (top - 1 - k)) & 1U)) s = -s;
  return s;
}

inline int value(System system, Index n, Index x) {
  return system == System::paley ? paley(n, x) : kaczmarz(n, x);
}

/// D_n by summing characters pointwise.
inline std::vector<long> dirichlet(System system, Index n, int N) {
  std::vector<long> d(Index{1} << N, 0);
  for (Index x = 0; x < d.size(); ++x)
    for (Index k = 0; k < n; ++k) d[x] += value(system, k, x);
  return d;
}

/// n K_n = sum_{k=1}^n D_k, pointwise.
inline std::vector<long> fejer_numerator(System system, Index n, int N) {
  std::vector<long> s(Index{1} << N, 0);
  for (Index k = 1; k <= n; ++k) {
    const auto d = oracle::dirichlet(system, k, N);
    for (Index x = 0; x < s.size(); ++x) s[x] += d[x];
  }
  return s;
}

/// f^(i) = 2^{-N} sum_x f(x) alpha_i(x), O(4^N).
inline std::vector<Rational> coefficients(const ExactFunction& f, System system) {
  const Index size = f.size();
  std::vector<Rational> c(size);
  for (Index i = 0; i < size; ++i) {
    Rational s = 0;
    for (Index x = 0; x < size; ++x) s += value(system, i, x) * f[x];
    c[i] = s / Rational(static_cast<unsigned long>(size));
  }
  return c;
}

/// sum_i c_i alpha_i, pointwise.
inline ExactFunction synthesize(const std::vector<Rational>& c, System system, int N) {
  ExactFunction f(N);
  for (Index x = 0; x < f.size(); ++x) {
    Rational s = 0;
    for (Index i = 0; i < c.size(); ++i) s += value(system, i, x) * c[i];
    f[x] = s;
  }
  return f;
}

/// sup over lambda of lambda mu{|f| > lambda}^{1/p}, scanning lambda just
/// below each attained value (left limit approximated with a relative step).
inline double weak_norm_scan(const std::vector<double>& v, double p) {
  double best = 0.0;
  const double size = static_cast<double>(v.size());
  for (double a : v) {
    const double target = std::fabs(a);
    if (target == 0) continue;
    for (double eps : {1e-9, 1e-12}) {
      const double lambda = target * (1 - eps);
      double count = 0;
      for (double b : v) count += std::fabs(b) > lambda ? 1 : 0;
      best = std::max(best, lambda * std::pow(count / size, 1.0 / p));
    }
  }
  return best;
}

}  // namespace oracle
