#include "doctest.h"

#include "walshlab/experiments.hpp"

#include <map>
#include <set>

using namespace walshlab;

namespace {

std::string metric(const VerificationReport& r, const std::string& key) {
  for (const auto& [k, v] : r.metrics)
    if (k == key) return v;
  FAIL("missing metric " << key);
  return {};
}

}  // namespace

TEST_CASE("q sequence") {
  CHECK(q_seq(0) == 1);
  CHECK(q_seq(2) == 21);
  CHECK(q_seq(3) == 85);
  for (int A = 1; A <= 10; ++A) CHECK(q_seq(A) == 4 * q_seq(A - 1) + 1);
}

TEST_CASE("t1 coefficients, atoms and partial sums") {
  const auto fam = build_t1(rat(1, 4), 5, 7);
  const auto& c = fam.martingale.coefficients().coeffs;
  CHECK(c[0] == 0);
  for (Index j = 1; j < c.size(); ++j) {
    const int i = msb(j);
    CHECK(c[j] == (i <= 5 ? pow2(i) : Rational(0)));
  }
  CHECK(fam.atoms.size() == 6);
  for (const auto& atom : fam.atoms) {
    CHECK(is_p_atom(atom.base, atom.support, rat(1, 4), atom.log2_scale).passed);
    CHECK(atom.support.rank() == atom.block);
    CHECK(atom.base.integral() == 0);
  }
  // S_{2^A} a_i = a_i for i < A and 0 otherwise.
  for (const auto& atom : fam.atoms)
    for (int A = 0; A <= 7; ++A) {
      const auto s = truncate_spectrum(atom.base, A);
      CHECK(s == (atom.block < A ? atom.base : ExactFunction(7)));
    }
  // Coefficients do not depend on p.
  CHECK(build_t1(rat(1, 3), 5, 7).martingale.coefficients() == fam.martingale.coefficients());
  CHECK_THROWS(build_t1(rat(1, 4), 7, 7));
  CHECK_THROWS(build_t1(rat(1, 2), 3, 5));
}

TEST_CASE("t2 coefficients and atoms") {
  const auto fam = build_t2(2, 5);
  const auto& c = fam.martingale.coefficients().coeffs;
  std::map<Index, Rational> expected;
  for (int i = 1; i <= 2; ++i) {
    const Index lo = Index{1} << (Index{1} << i);
    for (Index j = lo; j < 2 * lo; ++j) expected[j] = Rational(static_cast<unsigned long>(lo)) * pow2(-2 * i);
  }
  for (Index j = 0; j < c.size(); ++j) {
    const auto it = expected.find(j);
    const Rational want = it == expected.end() ? Rational(0) : it->second;
    CHECK(c[j] == want);
    CHECK(family_coefficient(FamilyKind::theorem2, 2, j) == want);
  }
  for (const auto& atom : fam.atoms) {
    CHECK(is_p_atom(atom.base, atom.support, rat(1, 2), atom.log2_scale).passed);
    Rational sup = 0;
    for (const auto& v : atom.base.values()) sup = std::max(sup, Rational(abs(v)));
    // ||a_i||_inf <= (2^{2^i})^2.
    CHECK(sup * pow2(atom.log2_scale.get_num().get_si()) <= pow2(2 * (long{1} << atom.block)));
  }
  CHECK_THROWS(build_t2(2, 4));
  CHECK(audit_family(fam).passed);
  CHECK(audit_family(build_t1(rat(1, 4), 4, 6)).passed);
}

TEST_CASE("yano small cases") {
  const auto r = verify_yano(2, 4);
  CHECK(r.passed);
  CHECK(metric(r, "max_l1") == "1");
  const auto big = verify_yano(64, 8);
  CHECK(big.passed);
  CHECK_THROWS(verify_yano(17, 4));
}

TEST_CASE("fejer lower bound cells and bounds") {
  const auto r3 = verify_lemma2(3);
  CHECK(r3.passed);
  REQUIRE(r3.table->rows.size() == 1);
  CHECK(r3.table->rows[0][2] == "2");
  CHECK(r3.table->rows[0][3] == "2");
  CHECK(r3.parameters[2].second == "21");

  const auto r4 = verify_lemma2(4);
  CHECK(r4.passed);
  CHECK(r4.parameters[2].second == "85");
  std::vector<std::string> bounds;
  std::set<std::pair<std::string, std::string>> cells;
  for (const auto& row : r4.table->rows) {
    bounds.push_back(row[2]);
    cells.insert({row[0], row[1]});
  }
  CHECK(bounds == std::vector<std::string>{"2", "8", "32"});
  CHECK(cells == std::set<std::pair<std::string, std::string>>{{"0", "2"}, {"0", "3"}, {"1", "3"}});
  CHECK(std::stol(metric(r4, "min_slack")) > 0);
  CHECK_THROWS(verify_lemma2(2));
}

TEST_CASE("t1 divergence components") {
  const auto rows = divergence_t1_rows(rat(1, 4), {3, 4}, 7);
  for (const auto& row : rows) {
    CHECK(row.kappa_weak == 1.0);
    CHECK(row.weak_error > 0.5);
  }
  CHECK(rows[1].factor == rat(16, 17));
  CHECK_THROWS(divergence_t1_rows(rat(1, 4), {7}, 7));
}

TEST_CASE("kernel half integral against a direct sum") {
  const Index q = 5;
  const int A = 2, N = 6;
  const auto K = fejer(System::paley, q, N);
  double s = 0;
  for (Index x = 0; x < K.size(); ++x)
    s += std::sqrt(std::fabs(5 * K.at(tau(A, GroupPoint(N, x))).get_d()));
  CHECK(kernel_half_integral(q, A, N) == doctest::Approx(s / 64).epsilon(1e-12));
}

TEST_CASE("convergence table on a constant is zero") {
  const auto f = ExactMartingale::from_terminal(ExactFunction::constant(5, Rational(3)));
  for (const auto& row : convergence_rows(f, rat(1, 2), 32)) {
    CHECK(row.error_norm == 0);
    CHECK(row.modulus == 0);
  }
  for (double e : dyadic_fejer_errors(f, Rational(1))) CHECK(e == 0);
}

TEST_CASE("split rng is reproducible and in range") {
  SplitRng a(42), b(42);
  for (int k = 0; k < 1000; ++k) {
    const long v = a.uniform_int(-3, 3);
    REQUIRE(v == b.uniform_int(-3, 3));
    REQUIRE(v >= -3);
    REQUIRE(v <= 3);
    const double u = a.uniform01();
    REQUIRE(u == b.uniform01());
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
  // First draw of mt19937_64 with seed 42 is a fixed constant.
  CHECK(SplitRng(42).next() == std::mt19937_64(42)());
}

TEST_CASE("identities report") {
  const auto reports = verify_identities(8, 1, true);
  std::map<std::string, bool> verdicts;
  for (const auto& r : reports) {
    verdicts[r.claim] = r.passed;
    if (!r.passed) CHECK(r.witness.has_value());
  }
  CHECK(verdicts.at("dirichlet_closed_form"));
  CHECK(verdicts.at("kaczmarz_paley_permutation"));
  CHECK(verdicts.at("fejer_dyadic_block_identity"));
  CHECK(verdicts.at("kaczmarz_kernel_decomposition"));
  CHECK(verdicts.at("t2_partial_sum_decomposition"));
  CHECK(verdicts.at("conjugate_fejer_commutation"));
  CHECK(verdicts.count("conjugate_translation_equivalence") == 1);
}
