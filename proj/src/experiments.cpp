#include "walshlab/experiments.hpp"

#include "walshlab/parallel.hpp"
#include "walshlab/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace walshlab {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string str(long v) { return std::to_string(v); }
std::string str(Index v) { return std::to_string(v); }
std::string str(int v) { return std::to_string(v); }

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
  return s;
}

ExactFunction block_difference(Index lower_order, int resolution) {
  return dirichlet(System::paley, 2 * lower_order, resolution) -
         dirichlet(System::paley, lower_order, resolution);
}

}  // namespace

Index q_seq(int A) {
  if (A < 0) throw std::invalid_argument("q_A needs A >= 0");
  if (A > 30) throw CapacityError("q_A overflows 64 bits");
  return ((Index{1} << (2 * A + 2)) - 1) / 3;
}

std::vector<double> CounterexampleFamily::weights() const {
  std::vector<double> w;
  for (const auto& a : atoms) w.push_back(a.weight);
  return w;
}

CounterexampleFamily build_t1(const Rational& p, int levels, int depth) {
  if (sgn(p) <= 0 || p >= Rational(1, 2))
    throw std::invalid_argument("build_t1: p must lie in (0, 1/2)");
  if (levels < 0 || levels >= depth)
    throw std::invalid_argument("build_t1: need 0 <= L < M");
  check_resolution(depth);
  ExactCoefficients c{depth, System::paley, std::vector<Rational>(cell_count(depth))};
  std::vector<AtomTerm> atoms;
  const Rational inv_p = 1 / p;
  for (int i = 0; i <= levels; ++i) {
    const Rational amplitude = pow2(i);
    for (Index j = cell_count(i); j < cell_count(i + 1); ++j) c.coeffs[j] = amplitude;
    AtomTerm term{i, block_difference(cell_count(i), depth), DyadicInterval::at_zero(i, depth),
                  Rational(i) * (inv_p - 1), -Rational(i) * (inv_p - 2), 0.0};
    term.weight = std::exp2(term.log2_weight.get_d());
    atoms.push_back(std::move(term));
  }
  return {FamilyKind::theorem1, p, levels, depth, ExactMartingale(std::move(c)), std::move(atoms)};
}

CounterexampleFamily build_t2(int levels, int depth) {
  if (levels < 1) throw std::invalid_argument("build_t2: need L >= 1");
  if (levels > 4 || (1 << levels) + 1 > depth)
    throw CapacityError("build_t2: block 2^L needs depth >= 2^L + 1");
  check_resolution(depth);
  ExactCoefficients c{depth, System::paley, std::vector<Rational>(cell_count(depth))};
  std::vector<AtomTerm> atoms;
  for (int i = 1; i <= levels; ++i) {
    const int level = 1 << i;
    const Rational amplitude = pow2(level - 2 * i);
    for (Index j = cell_count(level); j < cell_count(level + 1); ++j) c.coeffs[j] = amplitude;
    AtomTerm term{i, block_difference(cell_count(level), depth),
                  DyadicInterval::at_zero(level, depth), Rational(level), Rational(-2 * i), 0.0};
    term.weight = std::exp2(-2.0 * i);
    atoms.push_back(std::move(term));
  }
  return {FamilyKind::theorem2, Rational(1, 2), levels, depth, ExactMartingale(std::move(c)),
          std::move(atoms)};
}

Rational family_coefficient(FamilyKind kind, int levels, Index j) {
  if (j == 0) return 0;
  const int block = msb(j);
  if (kind == FamilyKind::theorem1) return block <= levels ? pow2(block) : Rational(0);
  for (int i = 1; i <= levels; ++i)
    if (block == (1 << i)) return pow2((1 << i) - 2 * i);
  return 0;
}

VerificationReport audit_family(const CounterexampleFamily& family) {
  const auto start = Clock::now();
  VerificationReport r;
  r.claim = family.kind == FamilyKind::theorem1 ? "counterexample_t1_audit" : "counterexample_t2_audit";
  r.parameters = {{"p", to_string(family.p)}, {"levels", str(family.levels)}, {"depth", str(family.depth)}};
  r.passed = true;

  const auto& c = family.martingale.coefficients().coeffs;
  Index mismatches = 0;
  for (Index j = 0; j < c.size(); ++j) {
    const Rational expected = family_coefficient(family.kind, family.levels, j);
    if (c[j] != expected) {
      if (mismatches++ == 0)
        r.witness = Witness{std::nullopt, j, to_string(c[j]), "expected " + to_string(expected)};
    }
  }
  r.metrics.emplace_back("coefficient_mismatches", str(mismatches));
  if (mismatches) r.passed = false;

  int failed_atoms = 0;
  ExactFunction sum(family.depth);
  for (const auto& atom : family.atoms) {
    const auto cert = is_p_atom(atom.base, atom.support, family.p, atom.log2_scale);
    if (!cert.passed) {
      if (failed_atoms++ == 0 && r.passed)
        r.witness = Witness{std::nullopt, static_cast<Index>(atom.block), std::string(to_string(cert.violated)),
                            cert.detail};
      r.passed = false;
    }
    // mu_k a_k = 2^{log2_weight + log2_scale} base, an integer power of two here.
    const Rational exponent = atom.log2_weight + atom.log2_scale;
    if (!is_integer(exponent)) throw std::logic_error("atomic sum exponent is not an integer");
    sum += atom.base * pow2(exponent.get_num().get_si());
  }
  r.metrics.emplace_back("atoms", str(static_cast<Index>(family.atoms.size())));
  r.metrics.emplace_back("failed_atoms", str(failed_atoms));
  const bool sum_ok = sum == family.martingale.terminal();
  r.metrics.emplace_back("atomic_sum_matches_terminal", sum_ok ? "true" : "false");
  if (!sum_ok) {
    if (r.passed) r.witness = Witness{std::nullopt, std::nullopt, "atomic sum", "differs from f^(M)"};
    r.passed = false;
  }
  const auto w = family.weights();
  r.metrics.emplace_back("atomic_norm_bound", format_double(atomic_norm_bound(w, family.p)));
  r.metrics.emplace_back("hardy_quasinorm", format_double(hardy_quasinorm(family.martingale, family.p).value));
  if (!r.witness)
    r.witness = Witness{std::nullopt, static_cast<Index>(family.levels), "0", "no mismatch"};
  r.runtime_seconds = seconds_since(start);
  return r;
}

VerificationReport verify_yano(Index n_max, int resolution) {
  const auto start = Clock::now();
  check_resolution(resolution);
  if (n_max < 1 || n_max > cell_count(resolution))
    throw std::out_of_range("verify_yano: need 1 <= n_max <= 2^N");
  VerificationReport r;
  r.claim = "yano_fejer_l1_bound";
  r.parameters = {{"n_max", str(n_max)}, {"resolution", str(resolution)}, {"bound", "2"}};
  Table table{{"n", "l1_norm_numerator", "l1_norm_denominator", "l1_norm"}, {}};
  KernelFamily family(System::paley, resolution);
  Rational best = -1;
  Index argmax = 0;
  for (Index n = 1; n <= n_max; ++n) {
    family.advance();
    const Rational norm = family.fejer_l1();
    if (norm > best) {
      best = norm;
      argmax = n;
    }
    table.rows.push_back({str(n), norm.get_num().get_str(), norm.get_den().get_str(),
                          format_double(norm.get_d())});
  }
  r.passed = best <= 2;
  r.witness = Witness{std::nullopt, argmax, to_string(best), "maximal ||K_n||_1"};
  r.metrics = {{"max_l1", to_string(best)}, {"max_l1_float", format_double(best.get_d())},
               {"argmax", str(argmax)}};
  r.table = std::move(table);
  r.runtime_seconds = seconds_since(start);
  return r;
}

VerificationReport verify_lemma2(int A) {
  const auto start = Clock::now();
  if (A < 3) throw std::invalid_argument("verify_lemma2: A >= 3 required (empty parameter set)");
  const int N = 2 * A;
  check_resolution(N);
  const Index q = q_seq(A - 1);
  KernelFamily family(System::paley, N);
  family.advance_to(q);
  const auto& numer = family.fejer_numerators();  // q K_q

  struct Cell {
    int m, s;
  };
  std::vector<Cell> cells;
  for (int m = 0; m <= A - 3; ++m)
    for (int s = m + 2; s <= A - 1; ++s) cells.push_back({m, s});

  struct CellResult {
    std::int64_t min_slack = std::numeric_limits<std::int64_t>::max();
    Index argmin = 0;
    std::int64_t bound = 0;
    Index points = 0;
  };
  std::vector<CellResult> results(cells.size());
  parallel_for(cells.size(), [&](std::size_t k) {
    const auto [m, s] = cells[k];
    CellResult& out = results[k];
    out.bound = std::int64_t{1} << (2 * m + 2 * s - 3);
    const int free_bits = 2 * A - 1 - 2 * s;
    for (Index tail = 0; tail < cell_count(free_bits); ++tail) {
      const Index x = (Index{1} << (2 * m)) | (Index{1} << (2 * s)) | (tail << (2 * s + 1));
      const std::int64_t slack = std::llabs(numer[x]) - out.bound;
      ++out.points;
      if (slack < out.min_slack) {
        out.min_slack = slack;
        out.argmin = x;
      }
    }
  });

  VerificationReport r;
  r.claim = "lemma2_fejer_lower_bound";
  r.parameters = {{"A", str(A)}, {"resolution", str(N)}, {"q", str(q)}};
  Table table{{"m", "s", "bound", "points", "min_abs_qK", "min_slack", "argmin_index"}, {}};
  std::int64_t min_slack = std::numeric_limits<std::int64_t>::max();
  Index total_points = 0;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const auto& c = results[k];
    total_points += c.points;
    table.rows.push_back({str(cells[k].m), str(cells[k].s), std::to_string(c.bound), str(c.points),
                          std::to_string(c.min_slack + c.bound), std::to_string(c.min_slack),
                          str(c.argmin)});
    if (c.min_slack < min_slack) {
      min_slack = c.min_slack;
      r.witness = Witness{c.argmin, q, std::to_string(std::llabs(numer[c.argmin])),
                          "m=" + str(cells[k].m) + " s=" + str(cells[k].s) +
                              " bound=" + std::to_string(c.bound)};
    }
  }
  r.passed = min_slack >= 0;
  r.metrics = {{"cells", str(static_cast<Index>(cells.size()))},
               {"points", str(total_points)},
               {"min_slack", std::to_string(min_slack)}};
  r.table = std::move(table);
  r.runtime_seconds = seconds_since(start);
  return r;
}

std::vector<DivergenceT1Row> divergence_t1_rows(const Rational& p, const std::vector<int>& n_list,
                                                int depth) {
  if (n_list.empty()) throw std::invalid_argument("divergence_t1: empty n list");
  const int n_hi = *std::max_element(n_list.begin(), n_list.end());
  if (n_hi >= depth) throw std::out_of_range("divergence_t1: need max(n) < M");
  const auto family = build_t1(p, depth - 1, depth);
  const auto next = build_t1(p, depth, depth + 1);
  const auto& f = family.martingale.terminal();
  const auto& g = next.martingale.terminal();
  std::vector<DivergenceT1Row> rows(n_list.size());
  parallel_for(n_list.size(), [&](std::size_t k) {
    const int n = n_list[k];
    if (n < 0) throw std::out_of_range("divergence_t1: negative n");
    const Index order = cell_count(n);
    DivergenceT1Row row;
    row.n = n;
    row.weak_error = weak_lp(fejer_mean(f, System::kaczmarz, order + 1) - f, p).value;
    row.weak_error_next_depth = weak_lp(fejer_mean(g, System::kaczmarz, order + 1) - g, p).value;
    row.kappa_weak = weak_lp(character(System::kaczmarz, order, depth), p).value;
    row.sigma_weak = weak_lp(fejer_mean(f, System::kaczmarz, order) - f, p).value;
    row.partial_weak = weak_lp(s2n(f, n) - f, p).value;
    row.factor = ratio(order, order + 1);
    rows[k] = std::move(row);
  });
  return rows;
}

VerificationReport divergence_t1(const Rational& p, const std::vector<int>& n_list, int depth,
                                 double lower_bound) {
  const auto start = Clock::now();
  const auto rows = divergence_t1_rows(p, n_list, depth);
  VerificationReport r;
  r.claim = "divergence_t1_weak_lp";
  r.mode = is_integer(1 / p) ? "exact" : "float";
  r.parameters = {{"p", to_string(p)}, {"n_list", join(n_list)}, {"depth", str(depth)},
                  {"levels", str(depth - 1)}, {"lower_bound", format_double(lower_bound)}};
  Table table{{"n", "weak_error", "weak_error_depth_plus_1", "relative_depth_change",
               "kappa_weak", "sigma_2n_weak", "s2n_weak", "factor"},
              {}};
  double min_value = std::numeric_limits<double>::infinity();
  r.passed = true;
  for (const auto& row : rows) {
    const double change = std::fabs(row.weak_error_next_depth - row.weak_error) / row.weak_error;
    table.rows.push_back({str(row.n), format_double(row.weak_error),
                          format_double(row.weak_error_next_depth), format_double(change),
                          format_double(row.kappa_weak), format_double(row.sigma_weak),
                          format_double(row.partial_weak), to_string(row.factor)});
    if (row.weak_error < min_value) {
      min_value = row.weak_error;
      r.witness = Witness{std::nullopt, cell_count(row.n) + 1, format_double(row.weak_error),
                          "smallest ||sigma_{2^n+1} f - f||_{p,inf}"};
    }
    if (!(row.weak_error >= lower_bound)) r.passed = false;
  }
  r.metrics = {{"min_weak_error", format_double(min_value)}};
  r.table = std::move(table);
  r.runtime_seconds = seconds_since(start);
  return r;
}

double kernel_half_integral(Index q, int A, int resolution) {
  check_resolution(resolution);
  if (A > resolution) throw std::out_of_range("kernel_half_integral: tau_A needs A <= N");
  KernelFamily family(System::paley, resolution);
  family.advance_to(q);
  const auto& numer = family.fejer_numerators();
  ExactFunction composed(resolution);
  for (Index x = 0; x < composed.size(); ++x)
    composed[x] = static_cast<long>(numer[reverse_low_bits(x, A)]);
  return lp_quasinorm(composed, Rational(1, 2)).power_sum;
}

std::vector<DivergenceT2Row> divergence_t2_rows(const std::vector<int>& i_list, int depth) {
  if (i_list.empty()) throw std::invalid_argument("divergence_t2: empty i list");
  int levels = 1;
  while (levels < 4 && (1 << (levels + 1)) + 1 <= depth) ++levels;
  const auto family = build_t2(levels, depth);
  int next_levels = 1;
  while (next_levels < 4 && (1 << (next_levels + 1)) + 1 <= depth + 1) ++next_levels;
  const auto next = build_t2(next_levels, depth + 1);
  const auto& f = family.martingale.terminal();
  const auto& g = next.martingale.terminal();
  const Rational half(1, 2);
  std::vector<DivergenceT2Row> rows(i_list.size());
  for (std::size_t k = 0; k < i_list.size(); ++k) {
    const int i = i_list[k];
    if (i < 1) throw std::out_of_range("divergence_t2: i >= 1 required");
    const int A = 1 << (i - 1);
    const Index q = q_seq(A);
    if (q > cell_count(depth) || (1 << i) > depth)
      throw CapacityError("divergence_t2: depth " + str(depth) + " too small for i = " + str(i));
    DivergenceT2Row row;
    row.i = i;
    row.q = q;
    const auto err = lp_quasinorm(fejer_mean(f, System::kaczmarz, q) - f, half);
    row.half_power = err.power_sum;
    row.half_norm = err.value;
    row.half_power_next_depth =
        lp_quasinorm(fejer_mean(g, System::kaczmarz, q) - g, half).power_sum;
    row.kernel_order = q_seq(A - 1);
    row.kernel_integral = kernel_half_integral(row.kernel_order, 1 << i, depth);
    row.alt_kernel_order = q - 1;
    row.alt_kernel_integral = kernel_half_integral(row.alt_kernel_order, 1 << i, depth);
    const Index block = cell_count(1 << i);
    row.sigma_block_power = lp_quasinorm(fejer_mean(f, System::kaczmarz, block) - f, half).power_sum;
    row.partial_block_power = lp_quasinorm(s2n(f, 1 << i) - f, half).power_sum;
    rows[k] = row;
  }
  return rows;
}

VerificationReport divergence_t2(const std::vector<int>& i_list, int depth, double growth_factor) {
  const auto start = Clock::now();
  const auto rows = divergence_t2_rows(i_list, depth);
  VerificationReport r;
  r.claim = "divergence_t2_half_norm";
  r.mode = "exact-input/float-norm";
  r.parameters = {{"i_list", join(i_list)}, {"depth", str(depth)},
                  {"growth_factor", format_double(growth_factor)}};
  Table table{{"i", "q", "half_power", "half_norm", "half_power_depth_plus_1", "kernel_order",
               "kernel_integral", "alt_kernel_order", "alt_kernel_integral", "sigma_block_power",
               "partial_block_power"},
              {}};
  r.passed = true;
  double min_power = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& row = rows[k];
    table.rows.push_back({str(row.i), str(row.q), format_double(row.half_power),
                          format_double(row.half_norm), format_double(row.half_power_next_depth),
                          str(row.kernel_order), format_double(row.kernel_integral),
                          str(row.alt_kernel_order), format_double(row.alt_kernel_integral),
                          format_double(row.sigma_block_power), format_double(row.partial_block_power)});
    if (row.half_power < min_power) {
      min_power = row.half_power;
      r.witness = Witness{std::nullopt, row.q, format_double(row.half_norm),
                          "smallest ||sigma_q f - f||_{1/2}"};
    }
    if (!(row.half_power > 0)) r.passed = false;
    if (k > 0) {
      const double ratio = row.kernel_integral / rows[k - 1].kernel_integral;
      r.metrics.emplace_back("kernel_growth_" + str(rows[k - 1].i) + "_" + str(row.i),
                             format_double(ratio));
      r.metrics.emplace_back(
          "alt_kernel_growth_" + str(rows[k - 1].i) + "_" + str(row.i),
          format_double(row.alt_kernel_integral / rows[k - 1].alt_kernel_integral));
      if (!(ratio >= growth_factor)) {
        r.passed = false;
        r.witness = Witness{std::nullopt, row.kernel_order, format_double(ratio),
                            "kernel integral growth below factor"};
      }
    }
  }
  r.metrics.emplace_back("min_half_power", format_double(min_power));
  r.table = std::move(table);
  r.runtime_seconds = seconds_since(start);
  return r;
}

template <class T>
std::vector<ConvergenceRow> convergence_rows(const DyadicMartingale<T>& f, const Rational& p,
                                             Index n_max) {
  const int M = f.depth();
  if (n_max < 1 || n_max > cell_count(M))
    throw std::out_of_range("convergence_table: need 1 <= n_max <= 2^M");
  const bool half = p == Rational(1, 2);
  const double rate = Rational(1 / p - 2).get_d();
  std::vector<double> modulus(M + 1);
  for (int k = 0; k <= M; ++k) modulus[k] = modulus_hp(f, k, p).value;
  std::vector<ConvergenceRow> rows(n_max);
  parallel_for(n_max, [&](std::size_t idx) {
    const Index n = idx + 1;
    const int k = msb(n);
    ConvergenceRow row;
    row.n = n;
    row.modulus = modulus[k];
    if (half) {
      row.threshold = k == 0 ? std::numeric_limits<double>::infinity() : 1.0 / (double(k) * k);
    } else {
      row.threshold = std::exp2(-k * rate);
    }
    const auto err = fejer_mean(f.terminal(), System::kaczmarz, n) - f.terminal();
    row.error_norm = hardy_quasinorm(DyadicMartingale<T>::from_terminal(err), p).value;
    rows[idx] = row;
  });
  return rows;
}

template <class T>
std::vector<double> dyadic_fejer_errors(const DyadicMartingale<T>& f, const Rational& p) {
  std::vector<double> out(f.depth() + 1);
  parallel_for(out.size(), [&](std::size_t n) {
    const auto err = fejer_mean(f.terminal(), System::kaczmarz, cell_count(static_cast<int>(n))) -
                     f.terminal();
    out[n] = hardy_quasinorm(DyadicMartingale<T>::from_terminal(err), p).value;
  });
  return out;
}

template <class T>
VerificationReport convergence_table(const DyadicMartingale<T>& f, const Rational& p, Index n_max) {
  const auto start = Clock::now();
  VerificationReport r;
  r.claim = "convergence_table";
  r.mode = ScalarTraits<T>::mode;
  r.parameters = {{"p", to_string(p)}, {"depth", str(f.depth())}, {"n_max", str(n_max)},
                  {"log_base", "2"}};
  const auto rows = convergence_rows(f, p, n_max);
  Table table{{"n", "modulus", "threshold", "error_norm"}, {}};
  for (const auto& row : rows)
    table.rows.push_back({str(row.n), format_double(row.modulus), format_double(row.threshold),
                          format_double(row.error_norm)});
  const auto dyadic = dyadic_fejer_errors(f, p);
  for (std::size_t n = 0; n < dyadic.size(); ++n)
    r.metrics.emplace_back("dyadic_error_" + std::to_string(n), format_double(dyadic[n]));
  // Tabulation always succeeds; the dyadic column must end no higher than it starts.
  r.passed = dyadic.back() <= dyadic.front();
  r.witness = Witness{std::nullopt, cell_count(f.depth()), format_double(dyadic.back()),
                      "||sigma_{2^M} f - f||_{H_p}"};
  r.table = std::move(table);
  r.runtime_seconds = seconds_since(start);
  return r;
}

template std::vector<ConvergenceRow> convergence_rows(const ExactMartingale&, const Rational&, Index);
template std::vector<ConvergenceRow> convergence_rows(const FloatMartingale&, const Rational&, Index);
template std::vector<double> dyadic_fejer_errors(const ExactMartingale&, const Rational&);
template std::vector<double> dyadic_fejer_errors(const FloatMartingale&, const Rational&);
template VerificationReport convergence_table(const ExactMartingale&, const Rational&, Index);
template VerificationReport convergence_table(const FloatMartingale&, const Rational&, Index);

long SplitRng::uniform_int(long lo, long hi) {
  if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  // Rejection sampling keeps the draw unbiased and platform independent.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t v;
  do {
    v = next();
  } while (v >= limit);
  return lo + static_cast<long>(v % span);
}

double SplitRng::uniform01() { return std::ldexp(static_cast<double>(next() >> 11), -53); }

ExactFunction random_exact_function(int resolution, SplitRng& rng, long magnitude,
                                    int denominator_bits) {
  ExactFunction f(resolution);
  for (Index j = 0; j < f.size(); ++j) {
    Rational v(rng.uniform_int(-magnitude, magnitude));
    mpq_div_2exp(v.get_mpq_t(), v.get_mpq_t(), denominator_bits);
    f[j] = v;
  }
  return f;
}

FloatFunction random_float_function(int resolution, SplitRng& rng) {
  FloatFunction f(resolution);
  for (Index j = 0; j < f.size(); ++j) f[j] = 2.0 * rng.uniform01() - 1.0;
  return f;
}

ExactMartingale random_decaying_martingale(int depth, SplitRng& rng, int decay, long magnitude) {
  check_resolution(depth);
  ExactCoefficients c{depth, System::paley, std::vector<Rational>(cell_count(depth))};
  for (Index i = 0; i < c.size(); ++i) {
    const int block = i == 0 ? 0 : msb(i);
    Rational v = rat(rng.uniform_int(-magnitude, magnitude), magnitude);
    mpq_div_2exp(v.get_mpq_t(), v.get_mpq_t(), static_cast<mp_bitcnt_t>(decay * block));
    c.coeffs[i] = v;
  }
  return ExactMartingale(std::move(c));
}

}  // namespace walshlab
