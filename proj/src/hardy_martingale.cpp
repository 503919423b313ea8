#include "walshlab/hardy_martingale.hpp"

namespace walshlab {

std::string_view to_string(AtomClause clause) {
  switch (clause) {
    case AtomClause::none: return "none";
    case AtomClause::support: return "support";
    case AtomClause::mean: return "mean";
    case AtomClause::sup_bound: return "sup_bound";
  }
  return "unknown";
}

PAtomCertificate is_p_atom(const ExactFunction& a, const DyadicInterval& interval,
                           const Rational& p, const Rational& log2_scale) {
  if (sgn(p) <= 0) throw std::invalid_argument("is_p_atom: p must be positive");
  if (interval.rank() > a.resolution())
    throw std::invalid_argument("is_p_atom: interval finer than the candidate's resolution");
  PAtomCertificate cert{a, interval, p, log2_scale, false, AtomClause::none, {}};

  Rational inside_sum = 0;
  Rational sup = 0;
  for (Index j = 0; j < a.size(); ++j) {
    const bool inside = interval.contains_index(j);
    if (!inside && sgn(a[j]) != 0) {
      cert.violated = AtomClause::support;
      cert.detail = "nonzero at index " + std::to_string(j) + " outside I";
      return cert;
    }
    if (inside) inside_sum += a[j];
    const Rational v = abs(a[j]);
    if (v > sup) sup = v;
  }
  if (sgn(inside_sum) != 0) {
    cert.violated = AtomClause::mean;
    cert.detail = "integral over I is nonzero";
    return cert;
  }
  // sup <= 2^e with e = rank/p - log2_scale = c/d, i.e. sup^d <= 2^c.
  if (sgn(sup) != 0) {
    Rational e = Rational(interval.rank()) / p - log2_scale;
    e.canonicalize();
    const unsigned long d = e.get_den().get_ui();
    const long c = e.get_num().get_si();
    BigInt lhs, rhs;
    mpz_pow_ui(lhs.get_mpz_t(), sup.get_num_mpz_t(), d);
    mpz_pow_ui(rhs.get_mpz_t(), sup.get_den_mpz_t(), d);
    if (c >= 0) mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), static_cast<mp_bitcnt_t>(c));
    else mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), static_cast<mp_bitcnt_t>(-c));
    if (lhs > rhs) {
      cert.violated = AtomClause::sup_bound;
      cert.detail = "sup norm " + to_string(sup) + " * 2^" + to_string(log2_scale) +
                    " exceeds mu(I)^{-1/p}";
      return cert;
    }
  }
  cert.passed = true;
  return cert;
}

double atomic_norm_bound(std::span<const double> weights, const Rational& p) {
  if (sgn(p) <= 0) throw std::invalid_argument("atomic_norm_bound: p must be positive");
  detail::PowerAbs pw(p);
  std::vector<double> terms;
  terms.reserve(weights.size());
  for (double w : weights) terms.push_back(pw(w));
  return detail::root(pairwise_sum(terms), p);
}

namespace {

void check_conjugate_point(const GroupPoint& t, int depth) {
  if (t.resolution() < depth + 1)
    throw std::invalid_argument("conjugate: t needs coordinates 0..M (resolution >= M + 1)");
}

}  // namespace

ExactMartingale conjugate(const ExactMartingale& f, const GroupPoint& t) {
  const int M = f.depth();
  check_conjugate_point(t, M);
  auto c = f.coefficients();
  if (rademacher(0, t) < 0) c.coeffs[0] = -c.coeffs[0];
  for (int n = 1; n <= M; ++n) {
    if (rademacher(n, t) > 0) continue;
    for (Index i = cell_count(n - 1); i < cell_count(n); ++i) c.coeffs[i] = -c.coeffs[i];
  }
  return ExactMartingale(std::move(c));
}

GroupPoint conjugate_shift(const GroupPoint& t, int depth) {
  check_conjugate_point(t, depth);
  Index shift = 0;
  for (int n = 1; n <= depth; ++n)
    if (t.coord(n)) shift |= Index{1} << (n - 1);
  return GroupPoint(depth, shift);
}

ExactFunction conjugate_by_translation(const ExactMartingale& f, const GroupPoint& t) {
  return translate(f.terminal(), conjugate_shift(t, f.depth()));
}

}  // namespace walshlab
