#pragma once

// Walsh-Paley and Walsh-Kaczmarz systems on sampled functions.
//
// A SampledFunction at resolution N is constant on the 2^N rank-N cells and
// is stored by its cell values; index j carries coordinates x_k = bit k of j.
// The scalar type is the arithmetic mode: Rational (exact) or double (float).

#include "walshlab/dyadic_group.hpp"
#include "walshlab/rational.hpp"

#include <bit>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace walshlab {

enum class System { paley, kaczmarz };

std::string_view to_string(System system);
System parse_system(std::string_view text);

template <class T>
class SampledFunction {
 public:
  using value_type = T;

  SampledFunction() = default;
  explicit SampledFunction(int resolution)
      : resolution_(resolution), values_((check_resolution(resolution), cell_count(resolution))) {}
  SampledFunction(int resolution, std::vector<T> values)
      : resolution_(resolution), values_(std::move(values)) {
    check_resolution(resolution);
    if (values_.size() != cell_count(resolution))
      throw std::invalid_argument("sample count must equal 2^resolution");
  }

  static SampledFunction constant(int resolution, const T& c) {
    SampledFunction f(resolution);
    for (auto& v : f.values_) v = c;
    return f;
  }

  static constexpr bool exact() { return ScalarTraits<T>::exact; }

  int resolution() const { return resolution_; }
  Index size() const { return values_.size(); }
  const std::vector<T>& values() const { return values_; }
  const T& operator[](Index j) const { return values_[j]; }
  T& operator[](Index j) { return values_[j]; }
  const T& at(const GroupPoint& x) const {
    if (x.resolution() != resolution_)
      throw std::invalid_argument("evaluation point resolution mismatch");
    return values_[x.index()];
  }

  /// Integral over G: 2^{-N} times the sum of cell values.
  T integral() const {
    if constexpr (exact()) {
      Rational s = 0;
      for (const auto& v : values_) s += v;
      mpq_div_2exp(s.get_mpq_t(), s.get_mpq_t(), resolution_);
      return s;
    } else {
      return std::ldexp(pairwise_sum(values_), -resolution_);
    }
  }

  SampledFunction& operator+=(const SampledFunction& o) {
    check_same(o);
    for (Index j = 0; j < size(); ++j) values_[j] += o.values_[j];
    return *this;
  }
  SampledFunction& operator-=(const SampledFunction& o) {
    check_same(o);
    for (Index j = 0; j < size(); ++j) values_[j] -= o.values_[j];
    return *this;
  }
  SampledFunction& operator*=(const T& c) {
    for (auto& v : values_) v *= c;
    return *this;
  }

  friend SampledFunction operator+(SampledFunction a, const SampledFunction& b) { return a += b; }
  friend SampledFunction operator-(SampledFunction a, const SampledFunction& b) { return a -= b; }
  friend SampledFunction operator*(SampledFunction a, const T& c) { return a *= c; }
  friend SampledFunction operator*(const T& c, SampledFunction a) { return a *= c; }
  friend SampledFunction operator-(SampledFunction a) {
    for (auto& v : a.values_) v = -v;
    return a;
  }

  /// Pointwise product.
  SampledFunction times(const SampledFunction& o) const {
    check_same(o);
    SampledFunction r = *this;
    for (Index j = 0; j < size(); ++j) r.values_[j] *= o.values_[j];
    return r;
  }

  friend bool operator==(const SampledFunction& a, const SampledFunction& b) {
    return a.resolution_ == b.resolution_ && a.values_ == b.values_;
  }

 private:
  void check_same(const SampledFunction& o) const {
    if (o.resolution_ != resolution_)
      throw std::invalid_argument("sampled functions at different resolutions");
  }

  int resolution_ = 0;
  std::vector<T> values_ = std::vector<T>(1);
};

using ExactFunction = SampledFunction<Rational>;
using FloatFunction = SampledFunction<double>;

FloatFunction to_float(const ExactFunction& f);

/// Fourier coefficients f^(i), i < 2^N, enumerated in the given system.
template <class T>
struct CoefficientSequence {
  int resolution = 0;
  System ordering = System::paley;
  std::vector<T> coeffs;

  Index size() const { return coeffs.size(); }
  friend bool operator==(const CoefficientSequence&, const CoefficientSequence&) = default;
};

using ExactCoefficients = CoefficientSequence<Rational>;
using FloatCoefficients = CoefficientSequence<double>;

/// w_n evaluated at index j: (-1)^{popcount(n & j)}.
inline int paley_sign(Index n, Index j) { return (std::popcount(n & j) & 1) ? -1 : 1; }

int walsh_paley(Index n, const GroupPoint& x);

/// kappa_n from its product definition (kappa_0 = 1).
int kaczmarz(Index n, const GroupPoint& x);

int system_value(System system, Index n, const GroupPoint& x);

/// sigma(n) with kappa_n = w_{sigma(n)}: identity on 0, otherwise
/// 2^{|n|} + (n - 2^{|n|}) with its |n| low bits reversed.
Index kaczmarz_paley_index(Index n);

/// The sampled character alpha_n at resolution N (values +-1).
ExactFunction character(System system, Index n, int resolution);

template <class T>
CoefficientSequence<T> reorder(const CoefficientSequence<T>& c, System target) {
  if (c.ordering == target) return c;
  CoefficientSequence<T> out{c.resolution, target, std::vector<T>(c.size())};
  // sigma is an involution, so the map is the same in both directions.
  for (Index i = 0; i < c.size(); ++i) out.coeffs[i] = c.coeffs[kaczmarz_paley_index(i)];
  return out;
}

/// In-place unnormalised Walsh-Hadamard butterfly in Paley order.
template <class T>
void hadamard_butterfly(std::vector<T>& a) {
  const Index n = a.size();
  for (Index h = 1; h < n; h <<= 1) {
    for (Index i = 0; i < n; i += h << 1) {
      for (Index j = i; j < i + h; ++j) {
        T x = a[j];
        T y = a[j + h];
        a[j] = x + y;
        a[j + h] = x - y;
      }
    }
  }
}

/// coeffs[i] = 2^{-N} sum_j f(j) w_i(j), returned in the requested order.
template <class T>
CoefficientSequence<T> fwht(const SampledFunction<T>& f, System ordering = System::paley) {
  std::vector<T> a = f.values();
  hadamard_butterfly(a);
  const int N = f.resolution();
  for (auto& v : a) {
    if constexpr (ScalarTraits<T>::exact) {
      mpq_div_2exp(v.get_mpq_t(), v.get_mpq_t(), N);
    } else {
      v = std::ldexp(v, -N);
    }
  }
  CoefficientSequence<T> c{N, System::paley, std::move(a)};
  return reorder(c, ordering);
}

template <class T>
SampledFunction<T> inverse_fwht(const CoefficientSequence<T>& c) {
  if (c.size() != cell_count(c.resolution))
    throw std::invalid_argument("coefficient count must equal 2^resolution");
  std::vector<T> a = reorder(c, System::paley).coeffs;
  hadamard_butterfly(a);
  return SampledFunction<T>(c.resolution, std::move(a));
}

/// D_n = sum_{k<n} alpha_k at resolution N (D_0 = 0). Integer valued.
ExactFunction dirichlet(System system, Index n, int resolution);

/// K_n = (1/n) sum_{k=1}^n D_k, via the weights (n - i)/n on alpha_i.
ExactFunction fejer(System system, Index n, int resolution);

/// Walks n = 1, 2, ... keeping D_n and n K_n as integer samples.
class KernelFamily {
 public:
  KernelFamily(System system, int resolution);

  System system() const { return system_; }
  int resolution() const { return resolution_; }
  Index order() const { return n_; }

  /// Moves from order n to n + 1.
  void advance();
  void advance_to(Index n);

  ExactFunction dirichlet() const;
  ExactFunction fejer() const;
  /// n K_n, an integer-valued function.
  const std::vector<std::int64_t>& fejer_numerators() const { return fejer_num_; }
  const std::vector<std::int64_t>& dirichlet_values() const { return dirichlet_; }
  /// ||K_n||_1 exactly.
  Rational fejer_l1() const;

 private:
  System system_;
  int resolution_;
  Index n_ = 0;
  std::vector<std::int64_t> dirichlet_;
  std::vector<std::int64_t> fejer_num_;
};

}  // namespace walshlab
