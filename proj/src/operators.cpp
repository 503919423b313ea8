#include "walshlab/operators.hpp"

#include <algorithm>

namespace walshlab {

double fejer_weight(const Rational& p, Index n) {
  if (sgn(p) <= 0 || p > Rational(1, 2))
    throw std::invalid_argument("fejer_weight: p must lie in (0, 1/2]");
  const double base = static_cast<double>(n) + 1.0;
  const Rational exponent = 1 / p - 2;
  // [1/2 + p] is 1 exactly at p = 1/2 and 0 below it.
  const bool log_factor = p == Rational(1, 2);
  double w = exponent == 0 ? 1.0 : std::pow(base, exponent.get_d());
  if (log_factor) {
    const double l = std::log2(base);
    w *= l * l;
  }
  return w;
}

FloatFunction weighted_maximal(const FloatFunction& f, const Rational& p, Index n_max) {
  if (sgn(p) <= 0 || p > Rational(1, 2))
    throw std::invalid_argument("weighted_maximal: p must lie in (0, 1/2]");
  if (n_max == 0) throw std::invalid_argument("weighted_maximal: n_max must be >= 1");
  detail::check_spectral_order(n_max, f.resolution(), "weighted_maximal");
  const auto c = fwht(f, System::kaczmarz);
  const Index size = f.size();
  std::vector<double> partial(size, 0.0), running(size, 0.0), best(size, 0.0);
  for (Index n = 1; n <= n_max; ++n) {
    const Index paley = kaczmarz_paley_index(n - 1);
    const double a = c.coeffs[n - 1];
    const double scale = 1.0 / (static_cast<double>(n) * fejer_weight(p, n));
    for (Index x = 0; x < size; ++x) {
      partial[x] += paley_sign(paley, x) > 0 ? a : -a;
      running[x] += partial[x];
      best[x] = std::max(best[x], std::fabs(running[x]) * scale);
    }
  }
  return FloatFunction(f.resolution(), std::move(best));
}

}  // namespace walshlab
