#pragma once

// Elementary number-theoretic primitives shared by the rest of the library:
// quadratic symbols, primality, factorization, integer square roots and
// modular arithmetic. Everything here is pure and reentrant.

#include <gmpxx.h>

#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qcyclo {

// Precondition violations (bad modulus, non-squarefree radicand, malformed
// discriminant, ...). The CLI maps this to exit code 2.
struct input_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = (m == 1) ? 0 : 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Jacobi symbol core: ua >= 0, un odd positive.
inline int jacobi_odd(unsigned long long ua, unsigned long long un, int t) {
  while (ua != 0) {
    int z = std::countr_zero(ua);
    ua >>= z;
    if ((z & 1) && (un % 8 == 3 || un % 8 == 5)) t = -t;
    if ((ua & 3) == 3 && (un & 3) == 3) t = -t;
    std::swap(ua, un);
    ua %= un;
  }
  return un == 1 ? t : 0;
}

}  // namespace detail

/// Jacobi symbol (a/n) for odd n >= 1; 0 whenever gcd(a, n) > 1.
/// jacobi(a, 1) == 1 by the empty-product convention.
inline int jacobi(long long a, long long n) {
  if (n <= 0 || (n & 1) == 0)
    throw input_error("jacobi: modulus must be odd and positive");
  long long r = a % n;
  if (r < 0) r += n;
  return detail::jacobi_odd(static_cast<unsigned long long>(r),
                            static_cast<unsigned long long>(n), 1);
}

inline int jacobi(const mpz_class& a, const mpz_class& n) {
  if (n <= 0 || mpz_even_p(n.get_mpz_t()))
    throw input_error("jacobi: modulus must be odd and positive");
  return mpz_jacobi(a.get_mpz_t(), n.get_mpz_t());
}

/// Kronecker symbol (a/n), the extension of the Jacobi symbol to all
/// integer pairs (including even and non-positive n).
inline int kronecker(long long a, long long n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  if ((a & 1) == 0 && (n & 1) == 0) return 0;
  int t = 1;
  unsigned long long un;
  if (n < 0) {
    if (a < 0) t = -t;
    un = static_cast<unsigned long long>(-(n + 1)) + 1;
  } else {
    un = static_cast<unsigned long long>(n);
  }
  int z = std::countr_zero(un);
  un >>= z;
  if (z & 1) {
    long long am = a % 8;
    if (am < 0) am += 8;
    if (am == 3 || am == 5) t = -t;
  }
  long long r = a % static_cast<long long>(un);
  if (r < 0) r += static_cast<long long>(un);
  return detail::jacobi_odd(static_cast<unsigned long long>(r), un, t);
}

inline int kronecker(const mpz_class& a, const mpz_class& n) {
  return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

/// Deterministic primality for 64-bit inputs (fixed Miller-Rabin witness
/// set, proven exact far beyond 2^64).
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = std::countr_zero(d);
  d >>= s;
  for (std::uint64_t w : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = detail::powmod(w, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = detail::mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// Primality for arbitrary-size inputs. Below 2^64 this is the
/// deterministic test above; beyond it falls back to 64 rounds of
/// Miller-Rabin (error probability < 2^-128).
inline bool is_prime(const mpz_class& n) {
  if (n < 0) return false;
  if (mpz_fits_ulong_p(n.get_mpz_t()) && sizeof(unsigned long) == 8)
    return is_prime(static_cast<std::uint64_t>(n.get_ui()));
  return mpz_probab_prime_p(n.get_mpz_t(), 64) > 0;
}

struct Factor {
  std::uint64_t prime = 0;
  int exponent = 0;
  friend bool operator==(const Factor&, const Factor&) = default;
};

struct FactoredInteger {
  std::uint64_t value = 1;
  std::vector<Factor> factors;  // primes strictly increasing
};

namespace detail {

inline std::uint64_t pollard_rho(std::uint64_t n) {
  // Brent's cycle variant; n must be odd composite, not a prime power issue
  // for the caller (we recurse on both halves anyway).
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t x = 2, y = 2, d = 1;
    std::uint64_t q = 1;
    int steps = 0;
    while (d == 1) {
      x = mulmod(x, x, n) + c;
      if (x >= n) x -= n;
      y = mulmod(y, y, n) + c;
      if (y >= n) y -= n;
      y = mulmod(y, y, n) + c;
      if (y >= n) y -= n;
      std::uint64_t diff = x > y ? x - y : y - x;
      if (diff == 0) break;
      q = mulmod(q, diff, n);
      if (++steps % 64 == 0) {
        d = std::gcd(q, n);
        q = 1;
      }
    }
    if (d == 1) d = std::gcd(q, n);
    if (d != 1 && d != n) return d;
  }
}

inline void factor_into(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  std::uint64_t d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace detail

/// Complete factorization by trial division up to 10^6, then Pollard rho.
inline FactoredInteger factorize(std::uint64_t n) {
  if (n == 0) throw input_error("factorize: n must be positive");
  FactoredInteger f;
  f.value = n;
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 2; p <= 1000000 && p * p <= n; p += (p == 2) ? 1 : 2) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  detail::factor_into(n, primes);
  std::sort(primes.begin(), primes.end());
  for (std::uint64_t p : primes) {
    if (!f.factors.empty() && f.factors.back().prime == p)
      ++f.factors.back().exponent;
    else
      f.factors.push_back({p, 1});
  }
  return f;
}

inline bool is_squarefree(std::uint64_t n) {
  for (const Factor& f : factorize(n).factors)
    if (f.exponent > 1) return false;
  return true;
}

inline std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t phi = 1;
  for (const Factor& f : factorize(n).factors) {
    phi *= f.prime - 1;
    for (int i = 1; i < f.exponent; ++i) phi *= f.prime;
  }
  return phi;
}

struct IsqrtResult {
  mpz_class root;
  bool exact = false;
};

/// Floor square root with an exactness flag: root = floor(sqrt(n)),
/// exact iff root * root == n.
inline IsqrtResult isqrt(const mpz_class& n) {
  if (n < 0) throw input_error("isqrt: negative argument");
  IsqrtResult r;
  mpz_class rem;
  mpz_sqrtrem(r.root.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t());
  r.exact = (rem == 0);
  return r;
}

/// k! mod p by a running product.
inline mpz_class factorial_mod(std::uint64_t k, const mpz_class& p) {
  if (p <= 0) throw input_error("factorial_mod: modulus must be positive");
  mpz_class r = 1 % p;
  for (std::uint64_t i = 2; i <= k; ++i) {
    r *= i;
    r %= p;
  }
  return r;
}

}  // namespace qcyclo
