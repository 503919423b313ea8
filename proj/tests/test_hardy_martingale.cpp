#include "doctest.h"

#include "walshlab/experiments.hpp"
#include "walshlab/hardy_martingale.hpp"

using namespace walshlab;

TEST_CASE("levels are conditional averages") {
  SplitRng rng(2);
  const auto f = random_decaying_martingale(6, rng);
  for (int n = 0; n <= 6; ++n) {
    REQUIRE(f.level(n) == s2n_by_averaging(f.terminal(), n));
    REQUIRE(s2n(f, n) == f.level(n));
  }
  CHECK(f.level(6) == f.terminal());
  CHECK(f.level(0) == ExactFunction::constant(6, f.coefficients().coeffs[0]));
  CHECK_THROWS(f.level(7));
  CHECK_THROWS(s2n(f, -1));
}

TEST_CASE("from_terminal round trip") {
  SplitRng rng(4);
  const auto g = random_exact_function(5, rng);
  const auto f = ExactMartingale::from_terminal(g);
  CHECK(f.terminal() == g);
  CHECK(f.depth() == 5);
}

TEST_CASE("maximal function against interval averages") {
  SplitRng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = ExactMartingale::from_terminal(random_exact_function(6, rng));
    REQUIRE(maximal(f) == maximal_by_interval_averages(f.terminal()));
  }
  const auto g = FloatMartingale::from_terminal(random_float_function(7, rng));
  const auto a = maximal(g);
  const auto b = maximal_by_interval_averages(g.terminal());
  for (Index j = 0; j < a.size(); ++j) REQUIRE(a[j] == doctest::Approx(b[j]).epsilon(1e-12));
}

TEST_CASE("maximal function dominates every level") {
  SplitRng rng(8);
  const auto f = random_decaying_martingale(7, rng, 1);
  const auto star = maximal(f);
  for (int n = 0; n <= 7; ++n) {
    const auto lv = f.level(n);
    for (Index j = 0; j < lv.size(); ++j) REQUIRE(abs(lv[j]) <= star[j]);
  }
  CHECK(hardy_quasinorm(f, 1).value >= lp_quasinorm(f.terminal(), 1).value);
}

TEST_CASE("hardy norm of a dirichlet difference") {
  // D_{2^{n+1}} - D_{2^n} = 2^n on I_n with sign r_n; its maximal function
  // is 2^n on I_n and vanishes elsewhere, so ||.||_{H_p}^p = 2^{n(p-1)}.
  const int N = 6;
  for (int n = 0; n < N; ++n) {
    const auto f = ExactMartingale::from_terminal(dirichlet(System::paley, Index{2} << n, N) -
                                                  dirichlet(System::paley, Index{1} << n, N));
    CHECK(*hardy_quasinorm(f, 1).exact_value == 1);
    CHECK(hardy_quasinorm(f, rat(1, 2)).power_sum == doctest::Approx(std::pow(2.0, -n / 2.0)));
  }
}

TEST_CASE("modulus_hp drops the low spectrum") {
  SplitRng rng(10);
  const auto f = random_decaying_martingale(6, rng);
  CHECK(modulus_hp(f, 6, 1).value == 0);
  auto c = f.coefficients();
  for (Index i = 0; i < 8; ++i) c.coeffs[i] = 0;
  CHECK(modulus_hp(f, 3, rat(1, 2)).value == hardy_quasinorm(ExactMartingale(c), rat(1, 2)).value);
  CHECK_THROWS(modulus_hp(f, 7, 1));
}

TEST_CASE("p-atom certificates") {
  const int N = 5;
  const auto I = DyadicInterval::at_zero(2, N);
  // r_2 on I_2 with amplitude mu(I)^{-1/p}: p = 1 gives 4, p = 1/2 gives 16.
  ExactFunction a(N);
  for (Index j : interval_indices(I, N)) a[j] = (j & 4) ? -4 : 4;
  CHECK(is_p_atom(a, I, 1).passed);
  auto over = a * Rational(2);
  CHECK(is_p_atom(over, I, 1).violated == AtomClause::sup_bound);
  CHECK(is_p_atom(a * Rational(4), I, rat(1, 2)).passed);
  CHECK(!is_p_atom(a * Rational(5), I, rat(1, 2)).passed);
  // Scaled by 2^{1/3}: sup = 4 * 2^{1/3} > 4 fails at p = 1, passes with
  // a 2^{-1/3} companion.
  CHECK(!is_p_atom(a, I, 1, rat(1, 3)).passed);
  CHECK(is_p_atom(a * Rational(1, 2), I, 1, rat(1, 3)).passed);

  ExactFunction shifted = a;
  shifted[1] = 1;
  CHECK(is_p_atom(shifted, I, 1).violated == AtomClause::support);
  ExactFunction biased = a;
  biased[0] = 3;
  CHECK(is_p_atom(biased, I, 1).violated == AtomClause::mean);
}

TEST_CASE("atomic norm bound") {
  const std::vector<double> w{1, 1, 1, 1};
  CHECK(atomic_norm_bound(w, 1) == doctest::Approx(4));
  CHECK(atomic_norm_bound(w, rat(1, 2)) == doctest::Approx(16));
}

TEST_CASE("conjugation flipping only the top block is a translation") {
  SplitRng rng(12);
  for (int M = 1; M <= 5; ++M) {
    const auto f = random_decaying_martingale(M, rng, 0);
    const GroupPoint t = GroupPoint::unit(M, M + 1);
    CHECK(conjugate(f, t).terminal() == conjugate_by_translation(f, t));
    CHECK(conjugate(f, GroupPoint::zero(M + 1)).terminal() == f.terminal());
  }
}

TEST_CASE("conjugation is not a translation in general") {
  // t = e_1 negates only the w_1 coefficient, while the matching shift e_0
  // negates every odd Paley index.
  SplitRng rng(14);
  const auto f = random_decaying_martingale(3, rng, 0);
  auto c = f.coefficients();
  c.coeffs[3] = 1;  // make the odd index 3 nonzero
  const ExactMartingale g(c);
  const GroupPoint t = GroupPoint::unit(1, 4);
  CHECK(conjugate(g, t).terminal() != conjugate_by_translation(g, t));
  // The constant term flips under t_0 and no translation moves it.
  const auto h = conjugate(g, GroupPoint::unit(0, 4));
  CHECK(h.coefficients().coeffs[0] == -c.coeffs[0]);
}

TEST_CASE("conjugation preserves L2 and is an involution") {
  SplitRng rng(16);
  const auto f = random_decaying_martingale(4, rng, 0);
  for (Index t = 0; t < 32; ++t) {
    const GroupPoint pt(5, t);
    const auto g = conjugate(f, pt);
    REQUIRE(*lp_quasinorm(g.terminal(), 2).exact_power_sum ==
            *lp_quasinorm(f.terminal(), 2).exact_power_sum);
    REQUIRE(conjugate(g, pt).terminal() == f.terminal());
  }
  CHECK_THROWS(conjugate(f, GroupPoint(4, 0)));
}
