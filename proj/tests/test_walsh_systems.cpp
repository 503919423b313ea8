#include "doctest.h"

#include "oracles.hpp"
#include "walshlab/experiments.hpp"
#include "walshlab/walsh_systems.hpp"

using namespace walshlab;

TEST_CASE("character values") {
  const std::vector<int> p11{1, 1};
  CHECK(walsh_paley(3, GroupPoint::from_coords(p11)) == 1);
  CHECK(walsh_paley(0, GroupPoint(3, 5)) == 1);
  CHECK(kaczmarz_paley_index(5) == 6);
  CHECK(kaczmarz_paley_index(6) == 5);
  CHECK(kaczmarz_paley_index(0) == 0);
  CHECK(kaczmarz_paley_index(1) == 1);
  CHECK_THROWS(walsh_paley(8, GroupPoint(3, 0)));
}

TEST_CASE("characters match the product definitions, N = 8") {
  const int N = 8;
  for (Index n = 0; n < cell_count(N); ++n)
    for (Index x = 0; x < cell_count(N); ++x) {
      const GroupPoint pt(N, x);
      REQUIRE(walsh_paley(n, pt) == oracle::paley(n, x));
      REQUIRE(kaczmarz(n, pt) == oracle::kaczmarz(n, x));
      REQUIRE(kaczmarz(n, pt) == walsh_paley(kaczmarz_paley_index(n), pt));
    }
}

TEST_CASE("kaczmarz index map is an involution on each dyadic block") {
  for (Index n = 0; n < 4096; ++n) {
    const Index s = kaczmarz_paley_index(n);
    REQUIRE(kaczmarz_paley_index(s) == n);
    if (n > 0) REQUIRE(msb(s) == msb(n));
  }
}

TEST_CASE("kaczmarz via tau agrees with the definition") {
  // kappa_n = r_{|n|} (w_{n - 2^{|n|}} o tau_{|n|}).
  const int N = 7;
  for (Index n = 1; n < cell_count(N); ++n) {
    const int A = msb(n);
    for (Index x = 0; x < cell_count(N); ++x) {
      const GroupPoint pt(N, x);
      const int expected = rademacher(A, pt) * walsh_paley(n - (Index{1} << A), tau(A, pt));
      REQUIRE(kaczmarz(n, pt) == expected);
    }
  }
}

TEST_CASE("orthonormality at N = 5") {
  const int N = 5;
  for (auto sys : {System::paley, System::kaczmarz})
    for (Index a = 0; a < cell_count(N); ++a)
      for (Index b = 0; b < cell_count(N); ++b) {
        const auto prod = character(sys, a, N).times(character(sys, b, N));
        REQUIRE(prod.integral() == (a == b ? 1 : 0));
      }
}

TEST_CASE("fwht round trip and oracle coefficients") {
  SplitRng rng(7);
  for (int N : {0, 1, 3, 6}) {
    const auto f = random_exact_function(N, rng);
    for (auto sys : {System::paley, System::kaczmarz}) {
      const auto c = fwht(f, sys);
      CHECK(c.coeffs == oracle::coefficients(f, sys));
      CHECK(inverse_fwht(c) == f);
      CHECK(oracle::synthesize(c.coeffs, sys, N) == f);
    }
  }
}

TEST_CASE("float fwht round trip") {
  SplitRng rng(11);
  const auto f = random_float_function(10, rng);
  const auto g = inverse_fwht(fwht(f, System::kaczmarz));
  for (Index j = 0; j < f.size(); ++j) REQUIRE(g[j] == doctest::Approx(f[j]).epsilon(1e-12));
}

TEST_CASE("parseval, exact") {
  SplitRng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_exact_function(6, rng);
    const auto c = fwht(f);
    Rational energy = 0;
    for (const auto& v : c.coeffs) energy += v * v;
    REQUIRE(energy == f.times(f).integral());
  }
}

TEST_CASE("dirichlet kernels against direct sums") {
  const int N = 6;
  for (auto sys : {System::paley, System::kaczmarz})
    for (Index n = 0; n <= cell_count(N); ++n) {
      const auto d = dirichlet(sys, n, N);
      const auto ref = oracle::dirichlet(sys, n, N);
      for (Index x = 0; x < d.size(); ++x) REQUIRE(d[x] == ref[x]);
    }
  CHECK_THROWS(dirichlet(System::paley, 65, 6));
}

TEST_CASE("dirichlet closed form on dyadic orders") {
  const int N = 8;
  for (auto sys : {System::paley, System::kaczmarz})
    for (int m = 0; m <= N; ++m) {
      const auto d = dirichlet(sys, Index{1} << m, N);
      for (Index x = 0; x < d.size(); ++x) {
        const bool in = (x & ((Index{1} << m) - 1)) == 0;
        REQUIRE(d[x] == (in ? Rational(static_cast<unsigned long>(Index{1} << m)) : 0));
      }
    }
}

TEST_CASE("fejer kernels against direct sums") {
  const int N = 5;
  for (auto sys : {System::paley, System::kaczmarz})
    for (Index n = 1; n <= cell_count(N); ++n) {
      const auto k = fejer(sys, n, N);
      const auto ref = oracle::fejer_numerator(sys, n, N);
      for (Index x = 0; x < k.size(); ++x)
        REQUIRE(k[x] == rat(ref[x], static_cast<long>(n)));
    }
  CHECK_THROWS(fejer(System::paley, 0, 3));
}

TEST_CASE("kernel family walks incrementally") {
  const int N = 6;
  for (auto sys : {System::paley, System::kaczmarz}) {
    KernelFamily fam(sys, N);
    for (Index n = 1; n <= 40; ++n) {
      fam.advance();
      REQUIRE(fam.order() == n);
      REQUIRE(fam.dirichlet() == dirichlet(sys, n, N));
      REQUIRE(fam.fejer() == fejer(sys, n, N));
      const auto k = fejer(sys, n, N);
      Rational l1 = 0;
      for (const auto& v : k.values()) l1 += abs(v);
      mpq_div_2exp(l1.get_mpq_t(), l1.get_mpq_t(), N);
      REQUIRE(fam.fejer_l1() == l1);
    }
  }
}

TEST_CASE("small fejer norms") {
  CHECK(fejer(System::paley, 1, 4).integral() == 1);
  KernelFamily fam(System::paley, 4);
  fam.advance_to(2);
  CHECK(fam.fejer_l1() == 1);
}

TEST_CASE("system names") {
  CHECK(parse_system("paley") == System::paley);
  CHECK(parse_system("kaczmarz") == System::kaczmarz);
  CHECK(to_string(System::kaczmarz) == "kaczmarz");
  CHECK_THROWS(parse_system("haar"));
}

TEST_CASE("resolution mismatch is rejected") {
  ExactFunction a(3), b(4);
  CHECK_THROWS_AS(a += b, std::invalid_argument);
  CHECK_THROWS_AS(a.at(GroupPoint(4, 0)), std::invalid_argument);
  CHECK_THROWS(ExactFunction(3, std::vector<Rational>(7)));
}
