#include <catch2/catch.hpp>

#include "qcyclo/theorem.hpp"

using namespace qcyclo;

TEST_CASE("counting functions: pinned values") {
  CHECK(alpha(15) == 1);
  CHECK(alpha(7) == 0);
  CHECK(alpha(11) == 2);
  CHECK(beta(7) == 1);
  CHECK(beta(11) == 2);
  CHECK(beta(23) == 3);
  CHECK(delta4n(7) == 1);
  CHECK(lambda4n(7) == 2);
  CHECK_THROWS_AS(beta(15), input_error);
  CHECK_THROWS_AS(alpha(21), input_error);
}

TEST_CASE("alpha/beta bridge: alpha(p) == floor(p/8) + beta(p) - 1") {
  for (long p = 7; p < 2000; p += 4) {
    if (!is_prime(static_cast<std::uint64_t>(p))) continue;
    CHECK(alpha(p) == p / 8 + beta(p) - 1);
  }
}

TEST_CASE("delta+lambda parity for primes; sign positivity for composites") {
  for (long n = 7; n < 1200; n += 4) {
    if (!is_squarefree(static_cast<std::uint64_t>(n))) continue;
    long d = delta4n(n), l = lambda4n(n);
    if (is_prime(static_cast<std::uint64_t>(n))) {
      CHECK((d + l) % 2 == ((n + 5) / 4) % 2);
    } else {
      std::uint64_t phi = euler_phi(static_cast<std::uint64_t>(n));
      CHECK((phi / 4 + static_cast<std::uint64_t>(d + l)) % 2 == 0);
    }
  }
}

TEST_CASE("composite case: n = 15 worked example") {
  VerifyOptions opt;
  opt.exact_backend = true;
  VerificationReport rep = solve_case_composite(15, opt);
  CHECK(rep.a == 4);
  CHECK(rep.b == -1);
  CHECK(rep.h_plus == 2);
  CHECK(rep.h_minus == 2);
  CHECK(rep.alpha == 1);
  CHECK(rep.unit == QuadNumber(4, 1, 15));
  CHECK(rep.ok());
  CHECK(rep.residual_log2 < kNumericWindowLog2);
  REQUIRE(rep.find("exact_match") != nullptr);
  CHECK(rep.find("exact_match")->pass);
}

TEST_CASE("composite case: n = 39 against a brute-force Pell oracle") {
  // minimal solution of x^2 - 39 y^2 = 1 by enumeration
  mpz_class x0, y0;
  for (mpz_class y = 1;; ++y) {
    IsqrtResult r = isqrt(39 * y * y + 1);
    if (r.exact) {
      x0 = r.root;
      y0 = y;
      break;
    }
  }
  CHECK(x0 == 25);
  CHECK(y0 == 4);

  VerificationReport rep = solve_case_composite(39, {0, true});
  CHECK(rep.ok());
  CHECK(rep.a * rep.a - 39 * rep.b * rep.b == 1);
  // the pair is the conjugate (up to sign) of a power of the minimal solution
  CHECK(abs(rep.a) == x0);
  CHECK(abs(rep.b) == y0);
}

TEST_CASE("composite case: n = 51 dual backend") {
  VerificationReport rep = solve_case_composite(51, {0, true});
  CHECK(rep.ok());
  REQUIRE(rep.find("exact_match") != nullptr);
  CHECK(rep.find("exact_match")->pass);
}

TEST_CASE("prime case: p = 7 worked example") {
  VerificationReport rep = solve_case_prime(7, {0, true});
  CHECK(rep.a == 3);
  CHECK(rep.b == -1);
  CHECK(rep.h_plus == 1);
  CHECK(rep.beta == 1);
  CHECK(rep.unit == QuadNumber(8, 3, 7));
  CHECK(rep.power_a == 8);
  CHECK(rep.power_b == 3);
  CHECK(rep.a * rep.a - 7 * rep.b * rep.b == 2);
  CHECK(rep.ok());
}

TEST_CASE("prime case: p = 11 worked example") {
  VerificationReport rep = solve_case_prime(11, {0, true});
  CHECK(rep.a == -3);
  CHECK(rep.b == 1);
  CHECK(rep.h_plus == 1);
  CHECK(rep.beta == 2);
  CHECK(rep.unit == QuadNumber(10, 3, 11));
  CHECK(rep.a * rep.a - 11 * rep.b * rep.b == -2);
  CHECK(rep.ok());
}

TEST_CASE("prime case: p = 19 against classical Pell data") {
  // eps_76 = 170 + 39 sqrt(19) (classical), h(76) = 1, (2/19) = -1:
  // |a| = sqrt(170 - 1) = 13, |b| = sqrt(171/19) = 3, beta(19) = 2.
  VerificationReport rep = solve_case_prime(19);
  CHECK(rep.unit == QuadNumber(170, 39, 19));
  CHECK(rep.h_plus == 1);
  CHECK(rep.a == -13);
  CHECK(rep.b == 3);
  CHECK(rep.a * rep.a - 19 * rep.b * rep.b == -2);
  CHECK(rep.ok());
  CHECK(rep.residual_log2 < kNumericWindowLog2);
}

TEST_CASE("prime case: exactness chain across a range") {
  for (long p = 7; p < 300; p += 4) {
    if (!is_prime(static_cast<std::uint64_t>(p))) continue;
    VerificationReport rep = solve_case_prime(p);
    REQUIRE(rep.ok());
    int s2 = jacobi(2, p);
    CHECK(rep.a * rep.a + p * rep.b * rep.b == 2 * rep.power_a);
    CHECK(rep.a * rep.a - p * rep.b * rep.b == 2 * s2);
    CHECK(rep.a * rep.b == -rep.power_b);
  }
}

TEST_CASE("verify_n: dispatch and input rejection") {
  CHECK(verify_n(15).ok());
  CHECK(verify_n(7).ok());
  CHECK_THROWS_AS(verify_n(12), input_error);
  CHECK_THROWS_AS(verify_n(21), input_error);
  CHECK_THROWS_AS(verify_n(3), input_error);
  CHECK_THROWS_AS(verify_n(75), input_error);  // 3 mod 4 but divisible by 25
  CHECK_THROWS_AS(solve_case_composite(7), input_error);
  CHECK_THROWS_AS(solve_case_prime(15), input_error);
}

TEST_CASE("fundamental-unit congruence: pinned and swept") {
  CHECK(corollary_u_congruence(7));    // 8 == 1 (mod 7), exponent even
  CHECK(corollary_u_congruence(11));   // 10 == -1 (mod 11), exponent odd
  CHECK(corollary_u_congruence(419));  // 270174970 == -1 (mod 419)
  for (long p = 7; p < 500; p += 4)
    if (is_prime(static_cast<std::uint64_t>(p))) CHECK(corollary_u_congruence(p));
}

TEST_CASE("aac_check: no divisibility, consistency holds") {
  for (long p : {7L, 11L, 419L}) {
    AacResult r = aac_check(p);
    CHECK_FALSE(r.b_divisible);
    CHECK_FALSE(r.v_divisible);
    CHECK(r.consistent);
  }
}

TEST_CASE("pair congruence a*b == -v*h across a range") {
  for (long p = 7; p < 500; p += 4) {
    if (!is_prime(static_cast<std::uint64_t>(p))) continue;
    AacResult r = aac_check(p);
    QuadNumber unit = pell_fundamental(p);
    CHECK((r.a * r.b + unit.b() * r.h) % p == 0);
    CHECK(r.consistent);
  }
}

TEST_CASE("mordell congruence") {
  CHECK(mordell_congruence(7));
  CHECK(mordell_congruence(11));
  CHECK(mordell_congruence(23));
  for (long p = 7; p < 500; p += 4)
    if (is_prime(static_cast<std::uint64_t>(p))) CHECK(mordell_congruence(p));
}

TEST_CASE("chowla congruence") {
  CHECK(chowla_congruence(5));
  CHECK(chowla_congruence(13));
  CHECK(chowla_congruence(17));
  for (long p = 5; p < 500; p += 4)
    if (is_prime(static_cast<std::uint64_t>(p))) CHECK(chowla_congruence(p));
  CHECK_THROWS_AS(chowla_congruence(7), input_error);
}

TEST_CASE("dirichlet decomposition: integrality and the proven pair") {
  for (long p : {7L, 11L, 19L, 23L, 419L}) {
    DirichletDecomposition d = dirichlet_decomposition(p);
    CHECK(d.integral);
    CHECK(d.residual_log2 < kIntegralityWindowLog2);
    VerificationReport rep = solve_case_prime(p);
    int s = jacobi(2, p);
    CHECK(d.m == -s * rep.a);
    CHECK(d.n == -rep.b);
  }
}

TEST_CASE("sun sign check: pinned and swept") {
  CHECK(sun_sign_check(7));    // s=3, t=1, sign +1: 3 - sqrt 7
  CHECK(sun_sign_check(11));   // s=3, t=1, sign -1: -3 + sqrt 11
  CHECK(sun_sign_check(23));
  for (long p = 7; p < 400; p += 4)
    if (is_prime(static_cast<std::uint64_t>(p))) CHECK(sun_sign_check(p));
}

TEST_CASE("lemma products against closed forms") {
  CHECK(verify_lemma_sn1(7, 1));
  CHECK(verify_lemma_sn1(15, 2));
  CHECK(verify_lemma_sn1(11, 1));
  CHECK(verify_lemma_product(15));
  CHECK(verify_lemma_product(7));
  CHECK(verify_chapman(7));
  CHECK(verify_chapman(23));
  CHECK(verify_phi_at_i(15));
  CHECK(verify_phi_at_i(39));
  CHECK_THROWS_AS(verify_phi_at_i(7), input_error);
}

TEST_CASE("report bookkeeping") {
  VerificationReport rep = verify_n(15);
  CHECK(rep.elapsed_ms >= 0);
  CHECK(rep.precision_bits >= 256);
  CHECK(rep.find("no_such_check") == nullptr);
  for (const auto& c : rep.checks) CHECK(c.pass);
  VerificationReport empty;
  CHECK_FALSE(empty.ok());
}
