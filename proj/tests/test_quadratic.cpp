#include <catch2/catch.hpp>

#include <random>

#include "qcyclo/quadratic.hpp"

using namespace qcyclo;

TEST_CASE("QuadNumber: multiplication, conjugate, norm") {
  QuadNumber e60(4, 1, 15);
  CHECK(e60 * e60.conj() == QuadNumber::one(15));
  QuadNumber e28(8, 3, 7);
  CHECK(e28.conj() == QuadNumber(8, -3, 7));
  CHECK(e28.norm() == 1);

  QuadNumber golden(1, 1, 5, 2);  // (1+sqrt 5)/2
  CHECK(golden * golden == QuadNumber(3, 1, 5, 2));
  CHECK(golden.norm() == -1);

  CHECK_THROWS_AS(QuadNumber(4, 1, 15) * QuadNumber(8, 3, 7), input_error);
}

TEST_CASE("QuadNumber: canonical form and half-integer invariants") {
  CHECK(QuadNumber(4, 2, 5, 2) == QuadNumber(2, 1, 5));       // both even: reduce
  CHECK_THROWS_AS(QuadNumber(1, 2, 5, 2), input_error);        // parity mismatch
  CHECK_THROWS_AS(QuadNumber(1, 1, 7, 2), input_error);        // no halves for n == 3 mod 4
  CHECK_THROWS_AS(QuadNumber(1, 0, 1), input_error);           // radicand too small
}

TEST_CASE("QuadNumber: powers") {
  QuadNumber e60(4, 1, 15);
  CHECK(e60.pow(2) == QuadNumber(31, 8, 15));
  CHECK(QuadNumber(8, 3, 7).pow(0) == QuadNumber::one(7));
  QuadNumber e44(10, 3, 11);
  CHECK(e44.pow(1) == e44);
}

TEST_CASE("QuadNumber: norm is multiplicative (random)") {
  std::mt19937_64 rng(555);
  for (int i = 0; i < 300; ++i) {
    long n = 2 + static_cast<long>(rng() % 200);
    auto coeff = [&]() { return mpz_class(static_cast<long>(rng() % 2001) - 1000); };
    QuadNumber x(coeff(), coeff(), n), y(coeff(), coeff(), n);
    CHECK((x * y).norm() == x.norm() * y.norm());
  }
}

TEST_CASE("cf_sqrt: pinned expansions") {
  CfExpansion c7 = cf_sqrt(7);
  CHECK(c7.a0 == 2);
  CHECK(c7.period == std::vector<long>{1, 1, 1, 4});

  CfExpansion c2 = cf_sqrt(2);
  CHECK(c2.a0 == 1);
  CHECK(c2.period == std::vector<long>{2});

  CfExpansion c15 = cf_sqrt(15);
  CHECK(c15.a0 == 3);
  CHECK(c15.period == std::vector<long>{1, 6});

  CHECK_THROWS_AS(cf_sqrt(16), input_error);
  CHECK_THROWS_AS(cf_sqrt(0), input_error);
}

TEST_CASE("cf_sqrt: surd invariants and palindrome structure") {
  for (long n = 2; n <= 300; ++n) {
    if (isqrt(mpz_class(n)).exact) continue;
    CfExpansion cf = cf_sqrt(n);
    REQUIRE(!cf.period.empty());
    REQUIRE(cf.P.size() == cf.Q.size());
    for (std::size_t k = 0; k < cf.P.size(); ++k) {
      REQUIRE(cf.Q[k] != 0);
      CHECK((n - cf.P[k] * cf.P[k]) % cf.Q[k] == 0);
    }
    std::size_t len = cf.period.size();
    CHECK(cf.period[len - 1] == 2 * cf.a0);
    for (std::size_t i = 0; i + 1 < len; ++i)
      CHECK(cf.period[i] == cf.period[len - 2 - i]);
  }
}

TEST_CASE("pell_fundamental: pinned solutions") {
  CHECK(pell_fundamental(15) == QuadNumber(4, 1, 15));
  CHECK(pell_fundamental(7) == QuadNumber(8, 3, 7));
  CHECK(pell_fundamental(419) == QuadNumber(mpz_class("270174970"), mpz_class("13198911"), 419));
}

TEST_CASE("pell_fundamental: norm and minimality") {
  for (long n = 2; n <= 100; ++n) {
    if (!is_squarefree(static_cast<std::uint64_t>(n))) continue;
    if (isqrt(mpz_class(n)).exact) continue;
    QuadNumber u = pell_fundamental(n);
    mpq_class nm = u.norm();
    CHECK((nm == 1 || nm == -1));
    if (n % 4 == 3) CHECK(nm == 1);
    // no smaller unit with positive integer coordinates exists
    for (mpz_class y = 1; y < u.b(); ++y) {
      mpz_class plus = n * y * y + 1, minus = n * y * y - 1;
      CHECK_FALSE(isqrt(plus).exact);
      if (minus > 0) CHECK_FALSE(isqrt(minus).exact);
    }
  }
}

TEST_CASE("pell_x_mod agrees with the full solution") {
  std::mt19937_64 rng(808);
  for (long n = 2; n <= 250; ++n) {
    if (!is_squarefree(static_cast<std::uint64_t>(n))) continue;
    if (isqrt(mpz_class(n)).exact) continue;
    QuadNumber u = pell_fundamental(n);
    for (int i = 0; i < 3; ++i) {
      std::uint64_t m = rng() % 100000 + 2;
      CHECK(pell_x_mod(n, m) == mpz_class(u.a() % m).get_ui());
    }
  }
}

TEST_CASE("fundamental_unit: pinned units") {
  CHECK(fundamental_unit(60) == QuadNumber(4, 1, 15));
  CHECK(fundamental_unit(5) == QuadNumber(1, 1, 5, 2));
  CHECK(fundamental_unit(44) == QuadNumber(10, 3, 11));
  CHECK(fundamental_unit(13) == QuadNumber(3, 1, 13, 2));
  CHECK(fundamental_unit(17) == QuadNumber(4, 1, 17));
  CHECK(fundamental_unit(29) == QuadNumber(5, 1, 29, 2));
  CHECK(fundamental_unit(1676) == QuadNumber(mpz_class("270174970"), mpz_class("13198911"), 419));
}

TEST_CASE("fundamental_unit: rejects non-fundamental discriminants") {
  CHECK_THROWS_AS(fundamental_unit(16), input_error);   // 4*4, not squarefree
  CHECK_THROWS_AS(fundamental_unit(9), input_error);    // square
  CHECK_THROWS_AS(fundamental_unit(7), input_error);    // 3 mod 4
  CHECK_THROWS_AS(fundamental_unit(45), input_error);   // 1 mod 4 but not squarefree
  CHECK_THROWS_AS(fundamental_unit(20), input_error);   // 4*5 with 5 == 1 mod 4
}

TEST_CASE("fundamental_unit: unit powers stay units") {
  for (long D : {5L, 13L, 17L, 44L, 60L, 229L}) {
    QuadNumber u = fundamental_unit(D);
    for (unsigned long k = 0; k <= 6; ++k) {
      mpq_class nm = u.pow(k).norm();
      CHECK((nm == 1 || nm == -1));
    }
  }
}
