#include "walshlab/walsh_systems.hpp"

#include <cstdlib>
#include <string>

namespace walshlab {

std::string_view to_string(System system) {
  return system == System::paley ? "paley" : "kaczmarz";
}

System parse_system(std::string_view text) {
  if (text == "paley" || text == "w") return System::paley;
  if (text == "kaczmarz" || text == "kappa") return System::kaczmarz;
  throw std::invalid_argument("unknown system: " + std::string(text));
}

FloatFunction to_float(const ExactFunction& f) {
  std::vector<double> v(f.size());
  for (Index j = 0; j < f.size(); ++j) v[j] = f[j].get_d();
  return FloatFunction(f.resolution(), std::move(v));
}

namespace {

void check_order(Index n, int resolution) {
  if (n >= cell_count(resolution))
    throw std::out_of_range("index " + std::to_string(n) + " does not fit resolution " +
                            std::to_string(resolution));
}

}  // namespace

int walsh_paley(Index n, const GroupPoint& x) {
  check_order(n, x.resolution());
  int sign = 1;
  for (int k = 0; k < x.resolution(); ++k)
    if ((n >> k) & 1U) sign *= rademacher(k, x);
  return sign;
}

int kaczmarz(Index n, const GroupPoint& x) {
  check_order(n, x.resolution());
  if (n == 0) return 1;
  const int top = msb(n);
  int sign = rademacher(top, x);
  for (int k = 0; k < top; ++k)
    if ((n >> k) & 1U) sign *= rademacher(top - 1 - k, x);
  return sign;
}

int system_value(System system, Index n, const GroupPoint& x) {
  return system == System::paley ? walsh_paley(n, x) : kaczmarz(n, x);
}

Index kaczmarz_paley_index(Index n) {
  if (n == 0) return 0;
  const int top = msb(n);
  const Index block = Index{1} << top;
  return block + reverse_low_bits(n - block, top);
}

ExactFunction character(System system, Index n, int resolution) {
  check_resolution(resolution);
  check_order(n, resolution);
  const Index paley = system == System::paley ? n : kaczmarz_paley_index(n);
  ExactFunction f(resolution);
  for (Index j = 0; j < f.size(); ++j) f[j] = paley_sign(paley, j);
  return f;
}

ExactFunction dirichlet(System system, Index n, int resolution) {
  check_resolution(resolution);
  if (n > cell_count(resolution))
    throw std::out_of_range("Dirichlet order " + std::to_string(n) +
                            " overflows the spectrum at resolution " + std::to_string(resolution));
  ExactCoefficients c{resolution, system, std::vector<Rational>(cell_count(resolution))};
  for (Index i = 0; i < n; ++i) c.coeffs[i] = 1;
  return inverse_fwht(c);
}

ExactFunction fejer(System system, Index n, int resolution) {
  check_resolution(resolution);
  if (n == 0) throw std::invalid_argument("Fejer kernel K_0 is undefined");
  if (n > cell_count(resolution))
    throw std::out_of_range("Fejer order " + std::to_string(n) +
                            " overflows the spectrum at resolution " + std::to_string(resolution));
  ExactCoefficients c{resolution, system, std::vector<Rational>(cell_count(resolution))};
  const Rational nn(static_cast<unsigned long>(n));
  for (Index i = 0; i < n; ++i) c.coeffs[i] = Rational(static_cast<unsigned long>(n - i)) / nn;
  return inverse_fwht(c);
}

KernelFamily::KernelFamily(System system, int resolution)
    : system_(system), resolution_(resolution) {
  check_resolution(resolution);
  dirichlet_.assign(cell_count(resolution), 0);
  fejer_num_.assign(cell_count(resolution), 0);
}

void KernelFamily::advance() {
  if (n_ >= cell_count(resolution_))
    throw std::out_of_range("kernel order overflows the spectrum");
  const Index paley = system_ == System::paley ? n_ : kaczmarz_paley_index(n_);
  for (Index j = 0; j < dirichlet_.size(); ++j) {
    dirichlet_[j] += paley_sign(paley, j);
    fejer_num_[j] += dirichlet_[j];
  }
  ++n_;
}

void KernelFamily::advance_to(Index n) {
  if (n < n_) throw std::invalid_argument("kernel family only moves forward");
  while (n_ < n) advance();
}

ExactFunction KernelFamily::dirichlet() const {
  ExactFunction f(resolution_);
  for (Index j = 0; j < f.size(); ++j) f[j] = static_cast<long>(dirichlet_[j]);
  return f;
}

ExactFunction KernelFamily::fejer() const {
  if (n_ == 0) throw std::invalid_argument("Fejer kernel K_0 is undefined");
  ExactFunction f(resolution_);
  for (Index j = 0; j < f.size(); ++j) f[j] = rat(static_cast<long>(fejer_num_[j]), static_cast<long>(n_));
  return f;
}

Rational KernelFamily::fejer_l1() const {
  if (n_ == 0) throw std::invalid_argument("Fejer kernel K_0 is undefined");
  BigInt total = 0;
  for (auto v : fejer_num_) total += static_cast<long>(std::llabs(v));
  Rational r(total, BigInt(static_cast<unsigned long>(n_)));
  r.canonicalize();
  mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), resolution_);
  return r;
}

}  // namespace walshlab
