#pragma once

// Class numbers of quadratic fields from finite character sums.
//
// Imaginary side: two independent finite sums over Jacobi symbols, both
// evaluated and cross-checked against each other on every call. Real side:
// the sine-quotient / cotangent-product formula, evaluated as a sum of
// logarithms at escalating precision until the quotient by log(unit) is
// recognizably an integer.

#include <cstdint>
#include <stdexcept>

#include "qcyclo/bigfloat.hpp"
#include "qcyclo/ntheory.hpp"
#include "qcyclo/quadratic.hpp"

namespace qcyclo {

namespace detail {
inline void require_3mod4_squarefree(long n, const char* who) {
  if (n <= 3 || n % 4 != 3 || !is_squarefree(static_cast<std::uint64_t>(n)))
    throw input_error(std::string(who) + ": n must be squarefree, > 3 and == 3 (mod 4)");
}
}  // namespace detail

/// Class number h(-n) of Q(sqrt(-n)) for squarefree n == 3 (mod 4), n > 3.
/// Evaluates both finite sums
///   h = sum_{0<x<n/2} (x/n) - (2/n) * sum_{0<x<n/2} (x/n) x
///   h = (2 - (-1)^{(n+1)/4})^{-1} * sum_{0<c<n/2} (c/n)
/// and verifies they agree; a mismatch means an implementation bug.
inline long h_imag(long n) {
  detail::require_3mod4_squarefree(n, "h_imag");
  long long s1 = 0, s2 = 0;
  for (long x = 1; 2 * x < n; ++x) {
    int j = jacobi(x, n);
    s1 += j;
    s2 += static_cast<long long>(j) * x;
  }
  if (s2 % n != 0) throw std::logic_error("h_imag: weighted sum not divisible by n");
  long h1 = static_cast<long>(s1 - 2 * (s2 / n));
  long denom = (((n + 1) / 4) % 2 == 1) ? 3 : 1;
  if (s1 % denom != 0) throw std::logic_error("h_imag: character sum not divisible");
  long h2 = static_cast<long>(s1 / denom);
  if (h1 != h2) throw std::logic_error("h_imag: the two class number sums disagree");
  if (h1 <= 0) throw std::logic_error("h_imag: nonpositive class number");
  return h1;
}

/// Class number h(-8p) of Q(sqrt(-2p)) for primes p == 7 (mod 8),
/// by h(-8p) = 2 * sum_{p/8 < x < 3p/8} (x/p).
inline long h_imag_8p(long p) {
  if (p % 8 != 7 || !is_prime(static_cast<std::uint64_t>(p)))
    throw input_error("h_imag_8p: p must be a prime == 7 (mod 8)");
  long long s = 0;
  for (long x = p / 8 + 1; 8 * x < 3 * p; ++x) s += jacobi(x, p);
  return static_cast<long>(2 * s);
}

/// True iff h(-n) == phi(n)/2 (mod 2): odd class number for prime n,
/// even for composite squarefree n == 3 (mod 4).
inline bool parity_check(long n) {
  long h = h_imag(n);
  std::uint64_t half_phi = euler_phi(static_cast<std::uint64_t>(n)) / 2;
  return (static_cast<std::uint64_t>(h) % 2) == (half_phi % 2);
}

/// Class number h(D) of the real quadratic field of fundamental
/// discriminant D, given its fundamental unit. Uses
///   unit^h = prod_{0<c<D/2, (D/c)=+1} cot(pi c / D)        (D = 4n)
///   unit^h = prod_{0<c<D/2} sin(pi c / D)^{-(D/c)}         (D = 1 mod 4)
/// evaluated as a sum of logarithms. Working precision starts at
/// initial_precision_bits and doubles (capped at 2^20) until the quotient
/// by log(unit) is within 2^-32 of an integer.
inline long h_real(long D, const QuadNumber& unit, long initial_precision_bits = 256) {
  if (D <= 4 || (D % 4 != 0 && D % 4 != 1))
    throw input_error("h_real: not a fundamental discriminant");
  long n = (D % 4 == 0) ? D / 4 : D;
  if (unit.radicand() != n) throw input_error("h_real: unit radicand does not match D");
  if (unit.a() <= 0 || unit.b() <= 0) throw input_error("h_real: unit must exceed 1");

  const long cap = 1L << 20;
  for (long prec = std::max(64L, initial_precision_bits); prec <= cap; prec *= 2) {
    BigFloat pi = BigFloat::pi(prec);
    BigFloat sum(prec);
    if (D % 4 == 0 && n % 4 == 3) {
      // cot form: valid because (D/c) = +1 iff (D/(D/2 - c)) = -1 here
      std::uint64_t plus_count = 0;
      for (long c = 1; 2 * c < D; ++c) {
        if (kronecker(D, c) != 1) continue;
        ++plus_count;
        sum += log(cot(pi * BigFloat::of(c, prec) / BigFloat::of(D, prec)));
      }
      if (plus_count != euler_phi(static_cast<std::uint64_t>(n)) / 2)
        throw std::logic_error("h_real: character count != phi(n)/2");
    } else {
      for (long c = 1; 2 * c < D; ++c) {
        int chi = kronecker(D, c);
        if (chi == 0) continue;
        BigFloat term = log(sin(pi * BigFloat::of(c, prec) / BigFloat::of(D, prec)));
        sum = (chi > 0) ? sum - term : sum + term;
      }
    }
    BigFloat q = sum / log(unit.numeric(prec));
    if (q.distance_to_integer() < BigFloat::two_pow(-32)) {
      mpz_class h = q.to_integer_nearest();
      if (h <= 0 || !h.fits_slong_p())
        throw std::runtime_error("h_real: quotient rounded to an invalid class number");
      return h.get_si();
    }
  }
  throw std::runtime_error("h_real: precision escalation cap reached without integral quotient");
}

}  // namespace qcyclo
