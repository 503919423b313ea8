#pragma once

// Finite dyadic martingales f^(0), ..., f^(M) stored through their terminal
// level, with f^(n) = S_{2^n} f^(M).

#include "walshlab/function_space.hpp"
#include "walshlab/walsh_systems.hpp"

#include <span>
#include <string>

namespace walshlab {

template <class T>
class DyadicMartingale {
 public:
  explicit DyadicMartingale(CoefficientSequence<T> terminal)
      : coeffs_(reorder(terminal, System::paley)), values_(inverse_fwht(coeffs_)) {}

  static DyadicMartingale from_terminal(const SampledFunction<T>& values) {
    return DyadicMartingale(fwht(values));
  }

  int depth() const { return coeffs_.resolution; }
  /// Paley coefficients of the terminal level.
  const CoefficientSequence<T>& coefficients() const { return coeffs_; }
  const SampledFunction<T>& terminal() const { return values_; }

  /// f^(n) sampled at resolution M.
  SampledFunction<T> level(int n) const {
    if (n < 0 || n > depth()) throw std::out_of_range("martingale level outside 0..M");
    return truncate_spectrum(values_, n);
  }

 private:
  CoefficientSequence<T> coeffs_;
  SampledFunction<T> values_;
};

using ExactMartingale = DyadicMartingale<Rational>;
using FloatMartingale = DyadicMartingale<double>;

/// S_{2^n} f by coefficient truncation.
template <class T>
SampledFunction<T> s2n(const SampledFunction<T>& f, int n) {
  return truncate_spectrum(f, n);
}

template <class T>
SampledFunction<T> s2n(const DyadicMartingale<T>& f, int n) {
  if (n < 0 || n > f.depth()) throw std::out_of_range("S_{2^n}: n exceeds martingale depth");
  return truncate_spectrum(f.terminal(), n);
}

/// S_{2^n} f as the conditional expectation onto F_n: each value replaced by
/// the mean over its rank-n cell.
template <class T>
SampledFunction<T> s2n_by_averaging(const SampledFunction<T>& f, int n) {
  const int N = f.resolution();
  if (n < 0 || n > N) throw std::out_of_range("S_{2^n}: n outside 0..N");
  const Index mask = cell_count(n) - 1;
  std::vector<T> sums(cell_count(n), T(0));
  for (Index j = 0; j < f.size(); ++j) sums[j & mask] += f[j];
  SampledFunction<T> out(N);
  for (Index j = 0; j < f.size(); ++j) {
    T v = sums[j & mask];
    if constexpr (ScalarTraits<T>::exact) {
      mpq_div_2exp(v.get_mpq_t(), v.get_mpq_t(), N - n);
    } else {
      v = std::ldexp(v, -(N - n));
    }
    out[j] = v;
  }
  return out;
}

/// f* = max_{0<=n<=M} |f^(n)|, built by halving the cell rank from the top.
template <class T>
SampledFunction<T> maximal(const DyadicMartingale<T>& f) {
  SampledFunction<T> level = f.terminal();
  SampledFunction<T> out(level.resolution());
  for (Index j = 0; j < out.size(); ++j) out[j] = abs_value(level[j]);
  for (int n = f.depth() - 1; n >= 0; --n) {
    const Index bit = Index{1} << n;
    for (Index j = 0; j < level.size(); ++j) {
      if (j & bit) continue;
      T avg = level[j] + level[j | bit];
      if constexpr (ScalarTraits<T>::exact) {
        mpq_div_2exp(avg.get_mpq_t(), avg.get_mpq_t(), 1);
      } else {
        avg *= 0.5;
      }
      level[j] = avg;
      level[j | bit] = avg;
      const T a = abs_value(avg);
      if (out[j] < a) out[j] = a;
      if (out[j | bit] < a) out[j | bit] = a;
    }
  }
  return out;
}

/// f*(x) = sup_n mu(I_n(x))^{-1} |integral over I_n(x) of f^(M)|, computed
/// from the dyadic intervals directly.
template <class T>
SampledFunction<T> maximal_by_interval_averages(const SampledFunction<T>& terminal) {
  const int N = terminal.resolution();
  SampledFunction<T> out(N);
  for (Index x = 0; x < terminal.size(); ++x) {
    const GroupPoint point(N, x);
    T best = T(0);
    for (int n = 0; n <= N; ++n) {
      T sum = T(0);
      for (Index j : interval_indices(DyadicInterval(n, point), N)) sum += terminal[j];
      T avg = sum;
      if constexpr (ScalarTraits<T>::exact) {
        mpq_div_2exp(avg.get_mpq_t(), avg.get_mpq_t(), N - n);
      } else {
        avg = std::ldexp(avg, -(N - n));
      }
      const T a = abs_value(avg);
      if (best < a) best = a;
    }
    out[x] = best;
  }
  return out;
}

/// ||f||_{H_p} = ||f*||_p.
template <class T>
QuasiNormValue hardy_quasinorm(const DyadicMartingale<T>& f, const Rational& p) {
  return lp_quasinorm(maximal(f), p);
}

/// omega_{H_p}(2^{-n}, f) = ||f - S_{2^n} f||_{H_p}.
template <class T>
QuasiNormValue modulus_hp(const DyadicMartingale<T>& f, int n, const Rational& p) {
  if (n < 0 || n > f.depth()) throw std::out_of_range("modulus_hp: n exceeds depth");
  auto c = f.coefficients();
  for (Index i = 0; i < cell_count(n); ++i) c.coeffs[i] = T(0);
  return hardy_quasinorm(DyadicMartingale<T>(std::move(c)), p);
}

enum class AtomClause { none, support, mean, sup_bound };

std::string_view to_string(AtomClause clause);

struct PAtomCertificate {
  ExactFunction candidate;
  DyadicInterval interval;
  Rational p;
  /// The candidate is taken as 2^{log2_scale} times the stored samples.
  Rational log2_scale;
  bool passed = false;
  AtomClause violated = AtomClause::none;
  std::string detail;
};

/// Checks supp(a) in I, integral of a over I is 0, and ||a||_inf <= mu(I)^{-1/p},
/// all exactly. The scale factor lets atoms with irrational amplitude
/// 2^{log2_scale} be certified without rounding.
PAtomCertificate is_p_atom(const ExactFunction& a, const DyadicInterval& interval,
                           const Rational& p, const Rational& log2_scale = 0);

/// (sum_k |mu_k|^p)^{1/p}.
double atomic_norm_bound(std::span<const double> weights, const Rational& p);

/// Multiplies the n-th martingale difference by r_n(t), n = 0..M; the 0-th
/// difference is the constant term. Needs t at resolution >= M + 1.
ExactMartingale conjugate(const ExactMartingale& f, const GroupPoint& t);

/// The shift t' with t'_{n-1} = t_n for n = 1..M, which flips the leading
/// Rademacher factor of each difference that conjugation negates.
GroupPoint conjugate_shift(const GroupPoint& t, int depth);

/// translate(f^(M), conjugate_shift(t)).
ExactFunction conjugate_by_translation(const ExactMartingale& f, const GroupPoint& t);

}  // namespace walshlab
