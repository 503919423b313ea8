#pragma once

// Partial sums S_n, Fejer means sigma_n and the weighted Fejer maximal
// operator, acting through coefficient multipliers.

#include "walshlab/hardy_martingale.hpp"
#include "walshlab/walsh_systems.hpp"

#include <cmath>

namespace walshlab {

/// f^(i) in the given system; for Kaczmarz, f^kappa(i) = f^w(sigma(i)).
template <class T>
CoefficientSequence<T> coefficients(const DyadicMartingale<T>& f, System system) {
  return reorder(f.coefficients(), system);
}

template <class T>
CoefficientSequence<T> coefficients(const SampledFunction<T>& f, System system) {
  return fwht(f, system);
}

namespace detail {

inline void check_spectral_order(Index n, int resolution, const char* what) {
  if (n > cell_count(resolution))
    throw std::out_of_range(std::string(what) + ": order exceeds 2^resolution");
}

}  // namespace detail

/// S_n^alpha f = sum_{i<n} f^(i) alpha_i.
template <class T>
SampledFunction<T> partial_sum(const SampledFunction<T>& f, System system, Index n) {
  detail::check_spectral_order(n, f.resolution(), "partial_sum");
  auto c = fwht(f, system);
  for (Index i = n; i < c.size(); ++i) c.coeffs[i] = T(0);
  return inverse_fwht(c);
}

template <class T>
SampledFunction<T> partial_sum(const DyadicMartingale<T>& f, System system, Index n) {
  return partial_sum(f.terminal(), system, n);
}

/// sigma_n^alpha f with coefficient i (in the acting order) weighted by
/// (n - i)/n for i < n.
template <class T>
SampledFunction<T> fejer_mean(const SampledFunction<T>& f, System system, Index n) {
  if (n == 0) throw std::invalid_argument("fejer_mean: sigma_0 is undefined");
  detail::check_spectral_order(n, f.resolution(), "fejer_mean");
  auto c = fwht(f, system);
  for (Index i = 0; i < c.size(); ++i) {
    if (i >= n) {
      c.coeffs[i] = T(0);
    } else if constexpr (ScalarTraits<T>::exact) {
      c.coeffs[i] *= ratio(n - i, n);
    } else {
      c.coeffs[i] *= static_cast<double>(n - i) / static_cast<double>(n);
    }
  }
  return inverse_fwht(c);
}

template <class T>
SampledFunction<T> fejer_mean(const DyadicMartingale<T>& f, System system, Index n) {
  return fejer_mean(f.terminal(), system, n);
}

/// sigma_n^alpha f = (1/n) sum_{j=1}^n S_j^alpha f, summing characters one at
/// a time. O(n 2^N); kept as the reference path.
template <class T>
SampledFunction<T> fejer_mean_definitional(const SampledFunction<T>& f, System system, Index n) {
  if (n == 0) throw std::invalid_argument("fejer_mean: sigma_0 is undefined");
  detail::check_spectral_order(n, f.resolution(), "fejer_mean");
  const auto c = fwht(f, system);
  const int N = f.resolution();
  SampledFunction<T> partial(N);
  SampledFunction<T> running(N);
  for (Index j = 1; j <= n; ++j) {
    const Index k = j - 1;
    const Index paley = system == System::paley ? k : kaczmarz_paley_index(k);
    const T& a = c.coeffs[k];
    for (Index x = 0; x < partial.size(); ++x) {
      if (paley_sign(paley, x) > 0) partial[x] += a;
      else partial[x] -= a;
      running[x] += partial[x];
    }
  }
  if constexpr (ScalarTraits<T>::exact) {
    running *= ratio(1, n);
  } else {
    running *= 1.0 / static_cast<double>(n);
  }
  return running;
}

/// (n+1)^{1/p-2} log2^{2[1/2+p]}(n+1) for 0 < p <= 1/2.
double fejer_weight(const Rational& p, Index n);

/// max_{1<=n<=n_max} |sigma_n^kappa f| / fejer_weight(p, n), pointwise.
FloatFunction weighted_maximal(const FloatFunction& f, const Rational& p, Index n_max);

inline FloatFunction weighted_maximal(const ExactFunction& f, const Rational& p, Index n_max) {
  return weighted_maximal(to_float(f), p, n_max);
}

}  // namespace walshlab
