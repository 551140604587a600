#pragma once

// Exact arithmetic in real quadratic fields: immutable (a + b*sqrt(n))/d
// values with big-integer coefficients, periodic continued fractions of
// square roots, Pell solutions and fundamental units.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qcyclo/bigfloat.hpp"
#include "qcyclo/ntheory.hpp"

namespace qcyclo {

// Element (a + b*sqrt(n))/d of a real quadratic field. d is 1 or 2;
// half-integer coordinates require a == b (mod 2) and only arise for
// n == 1 (mod 4), where they lie in the maximal order. Values are
// immutable; all arithmetic returns fresh values.
class QuadNumber {
 public:
  QuadNumber() : a_(0), b_(0), n_(2), d_(1) {}
  QuadNumber(mpz_class a, mpz_class b, long radicand, int den = 1)
      : a_(std::move(a)), b_(std::move(b)), n_(radicand), d_(den) {
    if (radicand < 2) throw input_error("QuadNumber: radicand must be >= 2");
    if (den != 1 && den != 2) throw input_error("QuadNumber: denominator must be 1 or 2");
    if (d_ == 2) {
      if (((a_ - b_) % 2) != 0)
        throw input_error("QuadNumber: half-integer form needs a == b (mod 2)");
      if (a_ % 2 == 0) {
        a_ /= 2;
        b_ /= 2;
        d_ = 1;
      } else if (n_ % 4 != 1) {
        throw input_error("QuadNumber: half-integers exist only for n == 1 (mod 4)");
      }
    }
  }

  const mpz_class& a() const { return a_; }
  const mpz_class& b() const { return b_; }
  long radicand() const { return n_; }
  int den() const { return d_; }

  static QuadNumber one(long radicand) { return QuadNumber(1, 0, radicand); }

  QuadNumber conj() const { return QuadNumber(a_, -b_, n_, d_); }

  /// (a^2 - n b^2) / d^2; integral on the ring of integers.
  mpq_class norm() const {
    mpq_class q(a_ * a_ - n_ * b_ * b_, d_ * d_);
    q.canonicalize();
    return q;
  }

  friend QuadNumber operator*(const QuadNumber& x, const QuadNumber& y) {
    if (x.n_ != y.n_) throw input_error("QuadNumber: radicand mismatch");
    mpz_class a = x.a_ * y.a_ + mpz_class(x.n_) * x.b_ * y.b_;
    mpz_class b = x.a_ * y.b_ + x.b_ * y.a_;
    int d = x.d_ * y.d_;
    if (d == 4) {
      // both halves: the products are even on the ring of integers
      if (a % 2 != 0 || b % 2 != 0)
        throw std::logic_error("QuadNumber: product left the order");
      a /= 2;
      b /= 2;
      d = 2;
    }
    return QuadNumber(std::move(a), std::move(b), x.n_, d);
  }

  QuadNumber pow(unsigned long k) const {
    QuadNumber r = one(n_), base = *this;
    while (k) {
      if (k & 1) r = r * base;
      if (k >>= 1) base = base * base;
    }
    return r;
  }

  friend bool operator==(const QuadNumber& x, const QuadNumber& y) {
    return x.n_ == y.n_ && x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
  }

  BigFloat numeric(long precision_bits) const {
    BigFloat r = BigFloat::of(a_, precision_bits) +
                 BigFloat::of(b_, precision_bits) * sqrt(BigFloat::of(n_, precision_bits));
    if (d_ == 2) r = r / BigFloat::of(2, precision_bits);
    return r;
  }

  std::string str() const {
    std::string s = a_.get_str() + (b_ >= 0 ? " + " : " - ") +
                    mpz_class(abs(b_)).get_str() + "*sqrt(" + std::to_string(n_) + ")";
    return d_ == 2 ? "(" + s + ")/2" : s;
  }

 private:
  mpz_class a_, b_;
  long n_;
  int d_;
};

// Periodic continued fraction of sqrt(n): a0 followed by the repeating
// block, together with the (P_k, Q_k) surd sequences. Q_k divides
// n - P_k^2 at every step, and the expansion is purely periodic after a0.
struct CfExpansion {
  long radicand = 0;
  long a0 = 0;
  std::vector<long> period;
  std::vector<long> P, Q;  // P[0]=0, Q[0]=1, then one entry per period term
};

/// Full first period of the continued fraction of sqrt(n).
inline CfExpansion cf_sqrt(long n) {
  if (n <= 0) throw input_error("cf_sqrt: n must be positive");
  IsqrtResult root = isqrt(mpz_class(n));
  if (root.exact) throw input_error("cf_sqrt: perfect square");
  long a0 = static_cast<long>(root.root.get_si());

  CfExpansion cf;
  cf.radicand = n;
  cf.a0 = a0;
  cf.P.push_back(0);
  cf.Q.push_back(1);
  long P = a0, Q = n - a0 * a0;
  // Q == 1 first happens exactly at the end of the period (a_k == 2*a0).
  for (;;) {
    cf.P.push_back(P);
    cf.Q.push_back(Q);
    long a = (a0 + P) / Q;
    cf.period.push_back(a);
    if (Q == 1) break;
    P = a * Q - P;
    Q = (n - P * P) / Q;
  }
  return cf;
}

/// Minimal unit x + y*sqrt(n) > 1 of the order Z[sqrt(n)]: the fundamental
/// solution of x^2 - n y^2 = +/-1 (norm (-1)^period; always +1 when
/// n == 3 mod 4). Found at the end of the first period of sqrt(n).
inline QuadNumber pell_fundamental(long n) {
  if (n < 2) throw input_error("pell_fundamental: n must be >= 2");
  if (!is_squarefree(static_cast<std::uint64_t>(n)))
    throw input_error("pell_fundamental: n must be squarefree");
  CfExpansion cf = cf_sqrt(n);
  mpz_class h_prev = 1, h = cf.a0;  // numerators
  mpz_class k_prev = 0, k = 1;      // denominators
  for (std::size_t i = 0; i + 1 < cf.period.size(); ++i) {
    long a = cf.period[i];
    mpz_class h_next = a * h + h_prev;
    mpz_class k_next = a * k + k_prev;
    h_prev = std::move(h);
    h = std::move(h_next);
    k_prev = std::move(k);
    k = std::move(k_next);
  }
  return QuadNumber(h, k, n);
}

/// x-coordinate of pell_fundamental(n) reduced mod m, without building the
/// full convergents. Used by large congruence sweeps.
inline std::uint64_t pell_x_mod(long n, std::uint64_t m) {
  if (m == 0) throw input_error("pell_x_mod: zero modulus");
  IsqrtResult root = isqrt(mpz_class(n));
  if (root.exact) throw input_error("pell_x_mod: perfect square");
  std::uint64_t a0 = root.root.get_ui();
  std::uint64_t h_prev = 1 % m, h = a0 % m;
  long P = static_cast<long>(a0), Q = n - static_cast<long>(a0 * a0);
  while (Q != 1) {
    long a = (static_cast<long>(a0) + P) / Q;
    std::uint64_t h_next = (detail::mulmod(static_cast<std::uint64_t>(a), h, m) + h_prev) % m;
    h_prev = h;
    h = h_next;
    P = a * Q - P;
    Q = (n - P * P) / Q;
  }
  return h;
}

/// Fundamental unit (> 1) of the ring of integers of the real quadratic
/// field of fundamental discriminant D. For D = 4n this is the Z[sqrt(n)]
/// Pell unit; for D == 1 (mod 4) the half-integer unit (u + v*sqrt(D))/2
/// solving u^2 - D v^2 = +/-4 is recovered from the Z[sqrt(D)] unit by
/// integer cube-root descent (the unit-group index divides 3).
inline QuadNumber fundamental_unit(long D) {
  if (D <= 4) throw input_error("fundamental_unit: discriminant too small");
  if (D % 4 == 0) {
    long n = D / 4;
    if (n % 4 != 2 && n % 4 != 3)
      throw input_error("fundamental_unit: not a fundamental discriminant");
    if (!is_squarefree(static_cast<std::uint64_t>(n)))
      throw input_error("fundamental_unit: not a fundamental discriminant");
    return pell_fundamental(n);
  }
  if (D % 4 != 1 || !is_squarefree(static_cast<std::uint64_t>(D)))
    throw input_error("fundamental_unit: not a fundamental discriminant");

  QuadNumber big = pell_fundamental(D);  // x1 + y1*sqrt(D), norm n1
  // Half-integer unit eta with eta^3 = big, if it exists. Such an eta has
  // norm(eta) = n1, and the trace identity gives u^3 - 3*n1*u = 2*x1.
  int n1 = (big.norm() > 0) ? 1 : -1;
  mpz_class target = 2 * big.a();
  mpz_class u0;
  mpz_root(u0.get_mpz_t(), target.get_mpz_t(), 3);
  for (mpz_class u = u0 - 2; u <= u0 + 2; ++u) {
    if (u <= 0) continue;
    if (u * u * u - 3 * n1 * u != target) continue;
    mpz_class v2num = u * u - 4 * n1;
    if (v2num % D != 0) continue;
    IsqrtResult v = isqrt(v2num / D);
    if (!v.exact || v.root == 0) continue;
    if ((u - v.root) % 2 != 0) continue;
    return QuadNumber(u, v.root, D, 2);
  }
  return big;
}

}  // namespace qcyclo
