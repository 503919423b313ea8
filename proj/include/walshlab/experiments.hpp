#pragma once

// Counterexample martingales and the verification procedures built on them.

#include "walshlab/hardy_martingale.hpp"
#include "walshlab/operators.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace walshlab {

/// q_A = 4^A + 4^{A-1} + ... + 1.
Index q_seq(int A);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct Witness {
  std::optional<Index> point;
  std::optional<Index> n;
  std::string value;
  std::string note;
};

struct VerificationReport {
  std::string claim;
  std::vector<std::pair<std::string, std::string>> parameters;
  bool passed = false;
  /// Extremal witness; always present on failure.
  std::optional<Witness> witness;
  std::string mode = "exact";
  std::vector<std::pair<std::string, std::string>> metrics;
  std::optional<Table> table;
  /// Wall time. Printed in summaries, never written to report files.
  double runtime_seconds = 0.0;
};

enum class FamilyKind { theorem1, theorem2 };

/// One term mu_k a_k of an atomic decomposition. The atom is
/// 2^{log2_scale} * base and mu_k = 2^{log2_weight}.
struct AtomTerm {
  int block = 0;
  ExactFunction base;
  DyadicInterval support;
  Rational log2_scale;
  Rational log2_weight;
  double weight = 0.0;
};

struct CounterexampleFamily {
  FamilyKind kind;
  Rational p;
  int levels;
  int depth;
  ExactMartingale martingale;
  std::vector<AtomTerm> atoms;

  std::vector<double> weights() const;
};

/// f = sum_{i<=L} 2^{-(1/p-2)i} a_i with a_i = 2^{i(1/p-1)}(D_{2^{i+1}} - D_{2^i});
/// Paley coefficients are 2^i on the block [2^i, 2^{i+1}).
CounterexampleFamily build_t1(const Rational& p, int levels, int depth);

/// f = sum_{i=1}^{L} 2^{-2i} a_i with a_i = 2^{2^i}(D_{2^{2^i+1}} - D_{2^{2^i}});
/// Paley coefficients are 2^{2^i}/2^{2i} on [2^{2^i}, 2^{2^i+1}).
CounterexampleFamily build_t2(int levels, int depth);

/// Expected Paley coefficient of the family at index j.
Rational family_coefficient(FamilyKind kind, int levels, Index j);

/// Coefficients against the closed forms, every atom certified, and the
/// atomic sum reproducing the terminal level.
VerificationReport audit_family(const CounterexampleFamily& family);

VerificationReport verify_yano(Index n_max, int resolution);

VerificationReport verify_lemma2(int A);

struct DivergenceT1Row {
  int n = 0;
  double weak_error = 0.0;
  double weak_error_next_depth = 0.0;
  double kappa_weak = 0.0;
  double sigma_weak = 0.0;
  double partial_weak = 0.0;
  Rational factor;  // 2^n / (2^n + 1)
};

std::vector<DivergenceT1Row> divergence_t1_rows(const Rational& p, const std::vector<int>& n_list,
                                                int depth);
VerificationReport divergence_t1(const Rational& p, const std::vector<int>& n_list, int depth,
                                 double lower_bound = 0.5);

struct DivergenceT2Row {
  int i = 0;
  Index q = 0;
  /// Integral of |sigma_q f - f^(M)|^{1/2}, and the quasi-norm itself.
  double half_power = 0.0;
  double half_norm = 0.0;
  double half_power_next_depth = 0.0;
  /// Kernel order read as q_{2^{i-1}-1}, and as q_{2^{i-1}} - 1.
  Index kernel_order = 0;
  double kernel_integral = 0.0;
  Index alt_kernel_order = 0;
  double alt_kernel_integral = 0.0;
  /// ||sigma_{2^{2^i}} f - f||_{1/2}^{1/2} and ||S_{2^{2^i}} f - f||_{1/2}^{1/2}.
  double sigma_block_power = 0.0;
  double partial_block_power = 0.0;
};

/// Integral of |q K_q^w(tau_A(x))|^{1/2} at the given resolution.
double kernel_half_integral(Index q, int A, int resolution);

std::vector<DivergenceT2Row> divergence_t2_rows(const std::vector<int>& i_list, int depth);
VerificationReport divergence_t2(const std::vector<int>& i_list, int depth,
                                 double growth_factor = 1.5);

struct ConvergenceRow {
  Index n = 0;
  double modulus = 0.0;
  double threshold = 0.0;
  double error_norm = 0.0;
};

/// Rows n = 1..n_max of (omega_{H_p}(2^{-k}, f), rate threshold, ||sigma_n^kappa f - f||_{H_p})
/// with k = floor(log2 n). The threshold is 2^{-k(1/p-2)} for p < 1/2 and k^{-2}
/// at p = 1/2 (infinite at k = 0).
template <class T>
std::vector<ConvergenceRow> convergence_rows(const DyadicMartingale<T>& f, const Rational& p,
                                             Index n_max);

/// ||sigma_{2^n}^kappa f - f^(M)||_{H_p} for n = 0..M.
template <class T>
std::vector<double> dyadic_fejer_errors(const DyadicMartingale<T>& f, const Rational& p);

template <class T>
VerificationReport convergence_table(const DyadicMartingale<T>& f, const Rational& p, Index n_max);

/// Closed form of D_{2^m}, permutation equivalence, the Fejer proof
/// identity, the Kaczmarz kernel decomposition and conjugate/translation
/// equivalence. Random inputs are drawn from `seed`.
std::vector<VerificationReport> verify_identities(int resolution, std::uint64_t seed, bool exact);

/// Portable generator helpers: identical streams on every platform.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [lo, hi].
  long uniform_int(long lo, long hi);
  /// Uniform double in [0, 1) from 53 random bits.
  double uniform01();

 private:
  std::mt19937_64 engine_;
};

/// Values k / 2^denominator_bits with |k| <= magnitude.
ExactFunction random_exact_function(int resolution, SplitRng& rng, long magnitude = 8,
                                    int denominator_bits = 2);
FloatFunction random_float_function(int resolution, SplitRng& rng);

/// Martingale with Paley coefficients u_i 2^{-decay |i|}, u_i uniform in
/// {-m..m}/m, and f^(0) drawn the same way.
ExactMartingale random_decaying_martingale(int depth, SplitRng& rng, int decay = 2,
                                           long magnitude = 8);

}  // namespace walshlab

namespace walshlab {

/// For every sample and every t at resolution M + 1: conjugate(f, t) against
/// the translate f(. + t'), and ||conjugate(f, t)||_{H_p} against ||f||_{H_p}.
VerificationReport conjugate_translation_check(const std::vector<ExactMartingale>& samples,
                                               const std::vector<Rational>& exponents);

/// sigma_n^kappa commutes with every conjugate transform.
VerificationReport conjugate_fejer_commutation(const std::vector<ExactMartingale>& samples);

}  // namespace walshlab
