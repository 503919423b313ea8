#pragma once

// L_p quasi-norms, weak-L_p, translation and dyadic moduli of continuity for
// cell-constant functions.

#include "walshlab/parallel.hpp"
#include "walshlab/rational.hpp"
#include "walshlab/walsh_systems.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

namespace walshlab {

struct QuasiNormValue {
  Rational p;
  double value = 0.0;
  /// Integral of |f|^p (or, for weak norms, value^p).
  double power_sum = 0.0;
  /// Exact integral of |f|^p, kept when p is a positive integer in exact mode.
  std::optional<Rational> exact_power_sum;
  /// Exact norm value when it is rational.
  std::optional<Rational> exact_value;
  bool exact = false;
};

namespace detail {

inline void require_positive(const Rational& p) {
  if (sgn(p) <= 0) throw std::invalid_argument("exponent p must be positive");
}

/// |v|^p with exact fast paths for the common integer and half exponents.
class PowerAbs {
 public:
  explicit PowerAbs(const Rational& p) : p_(p.get_d()) {
    if (p == 1) kind_ = Kind::one;
    else if (p == 2) kind_ = Kind::two;
    else if (p == 4) kind_ = Kind::four;
    else if (p == Rational(1, 2)) kind_ = Kind::half;
  }
  double operator()(double v) const {
    v = std::fabs(v);
    switch (kind_) {
      case Kind::one: return v;
      case Kind::two: return v * v;
      case Kind::four: { double s = v * v; return s * s; }
      case Kind::half: return std::sqrt(v);
      default: return std::pow(v, p_);
    }
  }

 private:
  enum class Kind { general, one, two, four, half };
  double p_;
  Kind kind_ = Kind::general;
};

inline double root(double power_sum, const Rational& p) {
  if (p == 1) return power_sum;
  if (p == 2) return std::sqrt(power_sum);
  if (p == Rational(1, 2)) return power_sum * power_sum;
  return std::pow(power_sum, 1.0 / p.get_d());
}

/// Distinct absolute values in ascending order with their multiplicities.
inline std::vector<std::pair<Rational, Index>> abs_histogram(const std::vector<Rational>& values) {
  std::vector<Rational> a;
  a.reserve(values.size());
  for (const auto& v : values) a.push_back(abs(v));
  std::sort(a.begin(), a.end());
  std::vector<std::pair<Rational, Index>> out;
  for (auto& v : a) {
    if (!out.empty() && out.back().first == v) ++out.back().second;
    else out.emplace_back(v, 1);
  }
  return out;
}

}  // namespace detail

/// (2^{-N} sum_j |f(j)|^p)^{1/p}. In exact mode the p-th-power sum is exact
/// for integer p; otherwise it is accumulated over the sorted distinct
/// values, so the result is invariant under any rearrangement of f.
template <class T>
QuasiNormValue lp_quasinorm(const SampledFunction<T>& f, const Rational& p) {
  detail::require_positive(p);
  QuasiNormValue out;
  out.p = p;
  const int N = f.resolution();
  if constexpr (ScalarTraits<T>::exact) {
    if (is_integer(p)) {
      const unsigned long e = p.get_num().get_ui();
      Rational s = 0;
      for (const auto& v : f.values()) s += ipow(abs(v), e);
      mpq_div_2exp(s.get_mpq_t(), s.get_mpq_t(), N);
      out.exact_power_sum = s;
      out.power_sum = s.get_d();
      out.exact = true;
      if (e == 1) out.exact_value = s;
      out.value = detail::root(out.power_sum, p);
      return out;
    }
    detail::PowerAbs pw(p);
    std::vector<double> terms;
    for (const auto& [v, count] : detail::abs_histogram(f.values()))
      terms.push_back(static_cast<double>(count) * pw(v.get_d()));
    out.power_sum = std::ldexp(pairwise_sum(terms), -N);
  } else {
    detail::PowerAbs pw(p);
    std::vector<double> terms(f.size());
    for (Index j = 0; j < f.size(); ++j) terms[j] = pw(f[j]);
    out.power_sum = std::ldexp(pairwise_sum(terms), -N);
  }
  out.value = detail::root(out.power_sum, p);
  return out;
}

/// sup_{lambda>0} lambda mu{|f| > lambda}^{1/p}, evaluated as the maximum of
/// v mu{|f| >= v}^{1/p} over the distinct values v of |f|.
template <class T>
QuasiNormValue weak_lp(const SampledFunction<T>& f, const Rational& p) {
  detail::require_positive(p);
  QuasiNormValue out;
  out.p = p;
  const int N = f.resolution();
  const Rational inv_p = 1 / p;
  std::vector<std::pair<T, Index>> hist;  // ascending distinct |f| with counts
  if constexpr (ScalarTraits<T>::exact) {
    for (auto& [v, c] : detail::abs_histogram(f.values())) hist.emplace_back(v, c);
  } else {
    std::vector<double> a(f.size());
    for (Index j = 0; j < f.size(); ++j) a[j] = std::fabs(f[j]);
    std::sort(a.begin(), a.end());
    for (double v : a) {
      if (!hist.empty() && hist.back().first == v) ++hist.back().second;
      else hist.emplace_back(v, 1);
    }
  }
  Index at_least = 0;
  if constexpr (ScalarTraits<T>::exact) {
    if (is_integer(inv_p)) {
      const unsigned long k = inv_p.get_num().get_ui();
      Rational best = 0;
      for (auto it = hist.rbegin(); it != hist.rend(); ++it) {
        at_least += it->second;
        if (sgn(it->first) == 0) continue;
        Rational measure(BigInt(static_cast<unsigned long>(at_least)));
        mpq_div_2exp(measure.get_mpq_t(), measure.get_mpq_t(), N);
        Rational candidate = it->first * ipow(measure, k);
        if (candidate > best) best = candidate;
      }
      out.exact_value = best;
      out.exact = true;
      out.value = best.get_d();
      out.power_sum = std::pow(out.value, p.get_d());
      return out;
    }
  }
  const double inv = inv_p.get_d();
  double best = 0.0;
  for (auto it = hist.rbegin(); it != hist.rend(); ++it) {
    at_least += it->second;
    const double v = to_double(it->first);
    if (v == 0.0) continue;
    const double measure = std::ldexp(static_cast<double>(at_least), -N);
    best = std::max(best, v * std::pow(measure, inv));
  }
  out.value = best;
  out.power_sum = std::pow(best, p.get_d());
  return out;
}

/// f(. + h): result[j] = f[j xor h].
template <class T>
SampledFunction<T> translate(const SampledFunction<T>& f, const GroupPoint& h) {
  if (h.resolution() != f.resolution())
    throw std::invalid_argument("translate: resolution mismatch");
  SampledFunction<T> out(f.resolution());
  for (Index j = 0; j < f.size(); ++j) out[j] = f[j ^ h.index()];
  return out;
}

/// omega_p(2^{-n}, f) for every n = 0..N. Entry n is the maximum over the
/// shifts h in I_n (low n bits zero) of ||f(. + h) - f||_p.
template <class T>
std::vector<double> modulus_lp_profile(const SampledFunction<T>& f, const Rational& p) {
  detail::require_positive(p);
  const int N = f.resolution();
  const Index size = f.size();
  std::vector<double> per_shift(size, 0.0);
  if constexpr (ScalarTraits<T>::exact) {
    parallel_for(size, [&](std::size_t h) {
      per_shift[h] = lp_quasinorm(translate(f, GroupPoint(N, h)) - f, p).value;
    });
  } else {
    const detail::PowerAbs pw(p);
    parallel_for(size, [&](std::size_t h) {
      std::vector<double> terms(size);
      for (Index j = 0; j < size; ++j) terms[j] = pw(f[j ^ h] - f[j]);
      per_shift[h] = detail::root(std::ldexp(pairwise_sum(terms), -N), p);
    });
  }
  std::vector<double> profile(N + 1, 0.0);
  for (Index h = 0; h < size; ++h) {
    const int rank = h == 0 ? N : std::countr_zero(h);
    // h lies in I_n for every n <= rank.
    for (int n = 0; n <= std::min(rank, N); ++n) profile[n] = std::max(profile[n], per_shift[h]);
  }
  return profile;
}

template <class T>
double modulus_lp(const SampledFunction<T>& f, int n, const Rational& p) {
  if (n < 0 || n > f.resolution())
    throw std::out_of_range("modulus_lp: n outside 0..N");
  return modulus_lp_profile(f, p)[n];
}

/// S_{2^n} f: keeps the Paley coefficients below 2^n.
template <class T>
SampledFunction<T> truncate_spectrum(const SampledFunction<T>& f, int n) {
  if (n < 0 || n > f.resolution())
    throw std::out_of_range("S_{2^n}: n outside 0..N");
  auto c = fwht(f);
  for (Index i = cell_count(n); i < c.size(); ++i) c.coeffs[i] = T(0);
  return inverse_fwht(c);
}

struct ApproximationBracket {
  int n = 0;
  Rational p;
  /// ||f - S_{2^n} f||_p.
  double tail_norm = 0.0;
  /// Bracket for E_{2^n}(f, L_p): [tail/2, tail].
  double lower = 0.0;
  double upper = 0.0;
  double modulus = 0.0;
  /// omega/2 <= tail <= omega.
  bool modulus_bracket_holds = false;
  /// p = 2: E_{2^n} by orthogonal projection, from the tail coefficients.
  std::optional<double> exact_l2;
};

/// Best-approximation bracket from the spectral tail; p >= 1 only.
/// `tolerance` is a relative slack applied to the float comparisons.
template <class T>
ApproximationBracket approx_bracket(const SampledFunction<T>& f, int n, const Rational& p,
                                    double tolerance = 0.0) {
  if (p < 1) throw std::invalid_argument("approx_bracket requires p >= 1");
  ApproximationBracket b;
  b.n = n;
  b.p = p;
  const auto tail = f - truncate_spectrum(f, n);
  b.tail_norm = lp_quasinorm(tail, p).value;
  b.lower = b.tail_norm / 2;
  b.upper = b.tail_norm;
  b.modulus = modulus_lp(f, n, p);
  const double slack = tolerance * std::max(1.0, b.modulus);
  b.modulus_bracket_holds =
      b.modulus / 2 <= b.tail_norm + slack && b.tail_norm <= b.modulus + slack;
  if (p == 2) {
    const auto c = fwht(f);
    std::vector<double> energy;
    for (Index i = cell_count(n); i < c.size(); ++i) {
      const double v = to_double(c.coeffs[i]);
      energy.push_back(v * v);
    }
    b.exact_l2 = std::sqrt(pairwise_sum(energy));
  }
  return b;
}

}  // namespace walshlab
