#pragma once

// Two evaluation backends for products over roots of unity.
//
// The exact backend works in Z[x]/(x^m - 1): an element of Z[zeta_m] is a
// length-m integer coefficient vector, multiplication is plain cyclic
// convolution, and equality is decided by divisibility of the difference
// by the m-th cyclotomic polynomial. Reduction cost is paid only at
// comparison time.
//
// The numeric backend computes every root of unity independently from its
// angle at an explicit precision, so the accumulated error of a K-factor
// product stays within a few K units in the last place.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qcyclo/bigfloat.hpp"
#include "qcyclo/ntheory.hpp"

namespace qcyclo {

namespace poly {

using Poly = std::vector<mpz_class>;  // ascending coefficients, trimmed

inline void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline long degree(const Poly& p) { return static_cast<long>(p.size()) - 1; }

inline Poly sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

inline Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

inline Poly scale(Poly p, const mpz_class& k) {
  for (mpz_class& c : p) c *= k;
  trim(p);
  return p;
}

struct DivRem {
  Poly quotient, remainder;
};

// Division with remainder by a monic divisor; exact over Z.
inline DivRem divrem_monic(Poly num, const Poly& den) {
  if (den.empty() || den.back() != 1)
    throw std::logic_error("divrem_monic: divisor must be monic");
  long dd = degree(den);
  DivRem out;
  if (degree(num) < dd) {
    out.remainder = std::move(num);
    return out;
  }
  out.quotient.assign(num.size() - den.size() + 1, 0);
  for (long k = degree(num); k >= dd; --k) {
    mpz_class c = num[k];
    if (c == 0) continue;
    out.quotient[k - dd] = c;
    for (long j = 0; j <= dd; ++j) num[k - dd + j] -= c * den[j];
  }
  trim(num);
  out.remainder = std::move(num);
  return out;
}

inline Poly div_exact(Poly num, const Poly& den) {
  DivRem d = divrem_monic(std::move(num), den);
  if (!d.remainder.empty()) throw std::logic_error("div_exact: division not exact");
  return d.quotient;
}

inline Poly xn_minus_one(long n) {
  Poly p(n + 1);
  p[0] = -1;
  p[n] = 1;
  return p;
}

// Exact value at x = i, as (real, imag) integers.
inline std::pair<mpz_class, mpz_class> eval_at_i(const Poly& p) {
  mpz_class re = 0, im = 0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    switch (k % 4) {
      case 0: re += p[k]; break;
      case 1: im += p[k]; break;
      case 2: re -= p[k]; break;
      default: im -= p[k]; break;
    }
  }
  return {re, im};
}

}  // namespace poly

/// Coefficients of the m-th cyclotomic polynomial, by exact division of
/// x^m - 1 by Phi_d over the proper divisors d of m.
inline poly::Poly cyclotomic_poly(long m) {
  if (m < 1) throw input_error("cyclotomic_poly: m must be positive");
  std::vector<long> divisors;
  for (long d = 1; d * d <= m; ++d) {
    if (m % d) continue;
    divisors.push_back(d);
    if (d != m / d) divisors.push_back(m / d);
  }
  std::sort(divisors.begin(), divisors.end());
  std::map<long, poly::Poly> phi;
  for (long d : divisors) {
    poly::Poly num = poly::xn_minus_one(d);
    for (long e : divisors) {
      if (e < d && d % e == 0) num = poly::div_exact(std::move(num), phi[e]);
    }
    phi[d] = std::move(num);
  }
  return phi[m];
}

// Exact element of Z[zeta_m], stored as an integer vector of length m in
// Z[x]/(x^m - 1). Two vectors represent the same element iff their
// difference is divisible by Phi_m.
class CycElement {
 public:
  explicit CycElement(long m) : m_(m), c_(static_cast<std::size_t>(m)) {
    if (m < 1) throw input_error("CycElement: modulus must be positive");
  }

  static CycElement integer(long m, const mpz_class& value) {
    CycElement e(m);
    e.c_[0] = value;
    return e;
  }
  static CycElement zeta_pow(long m, long exponent, const mpz_class& coeff = 1) {
    CycElement e(m);
    e.c_[static_cast<std::size_t>(((exponent % m) + m) % m)] = coeff;
    return e;
  }

  long modulus() const { return m_; }
  const std::vector<mpz_class>& coeffs() const { return c_; }
  mpz_class& coeff(long k) { return c_[static_cast<std::size_t>(k)]; }
  const mpz_class& coeff(long k) const { return c_[static_cast<std::size_t>(k)]; }

  friend CycElement operator+(const CycElement& a, const CycElement& b) {
    a.check(b);
    CycElement r(a.m_);
    for (long k = 0; k < a.m_; ++k) r.c_[k] = a.c_[k] + b.c_[k];
    return r;
  }
  friend CycElement operator-(const CycElement& a, const CycElement& b) {
    a.check(b);
    CycElement r(a.m_);
    for (long k = 0; k < a.m_; ++k) r.c_[k] = a.c_[k] - b.c_[k];
    return r;
  }
  CycElement operator-() const {
    CycElement r(m_);
    for (long k = 0; k < m_; ++k) r.c_[k] = -c_[k];
    return r;
  }
  CycElement scaled(const mpz_class& k) const {
    CycElement r(m_);
    for (long j = 0; j < m_; ++j) r.c_[j] = c_[j] * k;
    return r;
  }

  // cyclic convolution
  friend CycElement operator*(const CycElement& a, const CycElement& b) {
    a.check(b);
    CycElement r(a.m_);
    for (long i = 0; i < a.m_; ++i) {
      if (a.c_[i] == 0) continue;
      for (long j = 0; j < a.m_; ++j) {
        if (b.c_[j] == 0) continue;
        long k = i + j;
        if (k >= a.m_) k -= a.m_;
        r.c_[k] += a.c_[i] * b.c_[j];
      }
    }
    return r;
  }

  /// Multiply by the two-term factor c1*x^{e1} + c2*x^{e2} (mod x^m - 1).
  CycElement mul_binomial(long e1, const mpz_class& c1, long e2, const mpz_class& c2) const {
    CycElement r(m_);
    e1 = ((e1 % m_) + m_) % m_;
    e2 = ((e2 % m_) + m_) % m_;
    for (long k = 0; k < m_; ++k) {
      const mpz_class& v = c_[k];
      if (v == 0) continue;
      long k1 = k + e1 >= m_ ? k + e1 - m_ : k + e1;
      long k2 = k + e2 >= m_ ? k + e2 - m_ : k + e2;
      r.c_[k1] += c1 * v;
      r.c_[k2] += c2 * v;
    }
    return r;
  }

  poly::Poly to_poly() const {
    poly::Poly p = c_;
    poly::trim(p);
    return p;
  }

  /// Numeric embedding sum_k c_k e^{2 pi i k / m}.
  BigComplex numeric(long precision_bits) const {
    BigComplex acc(precision_bits);
    BigFloat pi = BigFloat::pi(precision_bits);
    for (long k = 0; k < m_; ++k) {
      if (c_[k] == 0) continue;
      BigFloat angle = pi * BigFloat::of(2 * k, precision_bits) / BigFloat::of(m_, precision_bits);
      BigComplex root = BigComplex::unit_angle(angle);
      acc = acc + BigComplex(root.re() * BigFloat::of(c_[k], precision_bits),
                             root.im() * BigFloat::of(c_[k], precision_bits));
    }
    return acc;
  }

 private:
  void check(const CycElement& o) const {
    if (m_ != o.m_) throw input_error("CycElement: modulus mismatch");
  }
  long m_;
  std::vector<mpz_class> c_;
};

/// Equality in Z[zeta_m]: (u - v) reduces to zero modulo Phi_m.
inline bool cyc_equal(const CycElement& u, const CycElement& v) {
  if (u.modulus() != v.modulus()) throw input_error("cyc_equal: modulus mismatch");
  poly::Poly diff = (u - v).to_poly();
  if (diff.empty()) return true;
  poly::Poly phi = cyclotomic_poly(u.modulus());
  return poly::divrem_monic(std::move(diff), phi).remainder.empty();
}

/// Exact embedding of +sqrt(n) into Z[zeta_{4n}] for squarefree
/// n == 3 (mod 4), via the quadratic Gauss sum times -i:
///   X = -zeta_{4n}^n * sum_{t=1}^{n-1} (t/n) zeta_{4n}^{4t}.
/// The sign is never trusted from theory alone: the numeric embedding is
/// checked to be +sqrt(n) at construction, and a mismatch throws.
inline CycElement sqrt_embed(long n) {
  if (n <= 0 || n % 4 != 3 || !is_squarefree(static_cast<std::uint64_t>(n)))
    throw input_error("sqrt_embed: n must be squarefree and == 3 (mod 4)");
  long m = 4 * n;
  CycElement x(m);
  for (long t = 1; t < n; ++t) {
    int j = jacobi(t, n);
    if (j == 0) continue;
    long e = (n + 4 * t) % m;
    x.coeff(e) -= j;
  }
  long prec = 320;
  BigComplex emb = x.numeric(prec);
  BigFloat target = sqrt(BigFloat::of(n, prec));
  if (!(hypot(emb.re() - target, emb.im()) < BigFloat::two_pow(-32)))
    throw std::logic_error("sqrt_embed: numeric sign verification failed");
  return x;
}

namespace detail {
constexpr long kExactEvalCap = 400;
}

/// Exact S_n(i) as an element of Z[zeta_{4n}]: the product over quadratic
/// residues c mod n of (i - zeta_n^c), with i = zeta_{4n}^n and
/// zeta_n = zeta_{4n}^4. Desk-scale only (cost grows like n^3).
inline CycElement sn_eval_exact(long n) {
  if (n <= 3 || n % 4 != 3 || !is_squarefree(static_cast<std::uint64_t>(n)))
    throw input_error("sn_eval_exact: n must be squarefree, > 3 and == 3 (mod 4)");
  if (n > detail::kExactEvalCap) throw input_error("sn_eval_exact: n exceeds the exact-backend cap");
  long m = 4 * n;
  CycElement prod = CycElement::integer(m, 1);
  for (long c = 1; c < n; ++c) {
    if (jacobi(c, n) != 1) continue;
    prod = prod.mul_binomial(n, 1, 4 * c, -1);
  }
  return prod;
}

enum class EvalPoint { I, MinusI, One };

inline BigComplex eval_point_value(EvalPoint at, long precision_bits) {
  switch (at) {
    case EvalPoint::I: return BigComplex::of(0, 1, precision_bits);
    case EvalPoint::MinusI: return BigComplex::of(0, -1, precision_bits);
    default: return BigComplex::of(1, 0, precision_bits);
  }
}

namespace detail {

// prod over 0<c<n with (c/n) == symbol_value of (at - zeta_n^c), every root
// computed from its own angle.
inline BigComplex root_product(long n, EvalPoint at, long precision_bits, int symbol_value) {
  BigComplex acc = BigComplex::of(1, 0, precision_bits);
  BigComplex point = eval_point_value(at, precision_bits);
  BigFloat pi = BigFloat::pi(precision_bits);
  for (long c = 1; c < n; ++c) {
    if (jacobi(c, n) != symbol_value) continue;
    BigFloat angle = pi * BigFloat::of(2 * c, precision_bits) / BigFloat::of(n, precision_bits);
    acc = acc * (point - BigComplex::unit_angle(angle));
  }
  return acc;
}

}  // namespace detail

/// Numeric S_n(x) at x in {i, -i, 1}: product of (x - zeta_n^c) over the
/// quadratic residues c mod n. Accumulated error is bounded by a small
/// multiple of phi(n) ulps at the stated precision.
inline BigComplex sn_eval_numeric(long n, EvalPoint at, long precision_bits) {
  if (precision_bits < 64) throw input_error("sn_eval_numeric: precision floor is 64 bits");
  if (n <= 3 || n % 4 != 3 || !is_squarefree(static_cast<std::uint64_t>(n)))
    throw input_error("sn_eval_numeric: n must be squarefree, > 3 and == 3 (mod 4)");
  return detail::root_product(n, at, precision_bits, +1);
}

/// Same product over the non-residues (the Galois-conjugate factor set).
inline BigComplex sn_conjugate_numeric(long n, EvalPoint at, long precision_bits) {
  if (precision_bits < 64) throw input_error("sn_conjugate_numeric: precision floor is 64 bits");
  return detail::root_product(n, at, precision_bits, -1);
}

/// Numeric prod over 0<c<n, (c/n)=+1 of (1 - zeta_n^{ac}); a coprime to n.
inline BigComplex product_one_minus_zeta(long n, long a, long precision_bits) {
  if (precision_bits < 64) throw input_error("product_one_minus_zeta: precision floor is 64 bits");
  long amod = ((a % n) + n) % n;
  if (std::gcd(amod, n) != 1) throw input_error("product_one_minus_zeta: a must be coprime to n");
  BigComplex acc = BigComplex::of(1, 0, precision_bits);
  BigComplex one = BigComplex::of(1, 0, precision_bits);
  BigFloat pi = BigFloat::pi(precision_bits);
  for (long c = 1; c < n; ++c) {
    if (jacobi(c, n) != 1) continue;
    long e = static_cast<long>((static_cast<long long>(amod) * c) % n);
    BigFloat angle = pi * BigFloat::of(2 * e, precision_bits) / BigFloat::of(n, precision_bits);
    acc = acc * (one - BigComplex::unit_angle(angle));
  }
  return acc;
}

/// Numeric prod over 0<c<p/2 of (1 - zeta_p^{c^2}).
inline BigComplex chapman_product(long p, long precision_bits) {
  if (precision_bits < 64) throw input_error("chapman_product: precision floor is 64 bits");
  if (p <= 3 || p % 4 != 3 || !is_prime(static_cast<std::uint64_t>(p)))
    throw input_error("chapman_product: p must be a prime == 3 (mod 4), p > 3");
  BigComplex acc = BigComplex::of(1, 0, precision_bits);
  BigComplex one = BigComplex::of(1, 0, precision_bits);
  BigFloat pi = BigFloat::pi(precision_bits);
  for (long c = 1; 2 * c < p; ++c) {
    long e = static_cast<long>((static_cast<long long>(c) * c) % p);
    BigFloat angle = pi * BigFloat::of(2 * e, precision_bits) / BigFloat::of(p, precision_bits);
    acc = acc * (one - BigComplex::unit_angle(angle));
  }
  return acc;
}

// Integer polynomials Y, Z with 2*S_p = Y + sqrt(p*) Z, where
// p* = (-1)^{(p-1)/2} p; they satisfy 4*Phi_p = Y^2 - p* Z^2 exactly.
struct GaussDecomposition {
  long p = 0;
  poly::Poly Y, Z;
};

/// Gauss's decomposition of the p-th cyclotomic polynomial, computed by
/// expanding S_p(x) coefficient-wise in Z[zeta_p], forming the conjugate
/// polynomial via the residue/non-residue swap automorphism, and dividing
/// out the exact Gauss-sum embedding of sqrt(p*). The defining invariant
/// is asserted before returning.
inline GaussDecomposition gauss_decomposition(long p) {
  if (p < 3 || !is_prime(static_cast<std::uint64_t>(p)))
    throw input_error("gauss_decomposition: p must be an odd prime");
  if (p > 257) throw input_error("gauss_decomposition: p exceeds the desk-scale cap");

  using Vec = std::vector<mpz_class>;
  auto vec = [&]() { return Vec(static_cast<std::size_t>(p)); };

  // S_p(x) = prod over residues (x - zeta^c): coefficients live in Z[zeta_p].
  std::vector<Vec> s;
  s.push_back(vec());
  s[0][0] = 1;
  for (long t = 1; 2 * t < p; ++t) {
    long c = static_cast<long>((static_cast<long long>(t) * t) % p);
    std::vector<Vec> next(s.size() + 1, vec());
    for (std::size_t k = 0; k < s.size(); ++k) {
      for (long j = 0; j < p; ++j) {
        if (s[k][j] == 0) continue;
        next[k + 1][j] += s[k][j];                  // x * coeff
        next[k][(j + c) % p] -= s[k][j];            // -zeta^c * coeff
      }
    }
    s = std::move(next);
  }

  // Conjugate polynomial via zeta -> zeta^g for a non-residue g.
  long g = 2;
  while (jacobi(g, p) != -1) ++g;
  std::vector<Vec> t(s.size(), vec());
  for (std::size_t k = 0; k < s.size(); ++k)
    for (long j = 0; j < p; ++j)
      t[k][static_cast<std::size_t>((static_cast<long long>(g) * j) % p)] += s[k][j];

  // An element of Z[zeta_p] is a rational integer iff all coordinates on
  // zeta^1..zeta^{p-1} agree; its value is then c0 - c1.
  auto to_int = [&](const Vec& w) {
    for (long j = 2; j < p; ++j)
      if (w[j] != w[1]) throw std::logic_error("gauss_decomposition: non-integral coefficient");
    return mpz_class(w[0] - w[1]);
  };

  long pstar = (p % 4 == 1) ? p : -p;
  Vec gauss = vec();
  for (long j = 1; j < p; ++j) gauss[j] = jacobi(j, p);

  GaussDecomposition out;
  out.p = p;
  out.Y.resize(s.size());
  out.Z.resize(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    Vec sum = vec(), diff = vec();
    for (long j = 0; j < p; ++j) {
      sum[j] = s[k][j] + t[k][j];
      diff[j] = s[k][j] - t[k][j];
    }
    out.Y[k] = to_int(sum);
    // Z_k = (S - T)_k * G / p*, using G^2 = p*.
    Vec prod = vec();
    for (long i = 0; i < p; ++i) {
      if (diff[i] == 0) continue;
      for (long j = 0; j < p; ++j) {
        if (gauss[j] == 0) continue;
        prod[(i + j) % p] += diff[i] * gauss[j];
      }
    }
    mpz_class z = to_int(prod);
    if (z % pstar != 0) throw std::logic_error("gauss_decomposition: sqrt(p*) division not exact");
    out.Z[k] = z / pstar;
  }
  poly::trim(out.Y);
  poly::trim(out.Z);

  poly::Poly lhs = poly::scale(cyclotomic_poly(p), 4);
  poly::Poly rhs = poly::sub(poly::mul(out.Y, out.Y),
                             poly::scale(poly::mul(out.Z, out.Z), pstar));
  if (lhs != rhs) throw std::logic_error("gauss_decomposition: Y^2 - p* Z^2 != 4 Phi_p");
  return out;
}

}  // namespace qcyclo
