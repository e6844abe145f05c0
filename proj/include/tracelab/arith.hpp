#pragma once

// Exact elementary arithmetic functions: Moebius, divisors, beta, von
// Mangoldt, the gcd product X(n). Everything here is pure and reentrant.

#include <cstdint>
#include <vector>

namespace tracelab::arith {

using u64 = std::uint64_t;
using i64 = std::int64_t;

struct PrimePower {
  u64 prime;
  int exponent;
};

/// Prime factorization by trial division, ascending primes. n >= 1.
std::vector<PrimePower> factorize(u64 n);

/// Distinct primes dividing n, ascending.
std::vector<u64> prime_divisors(u64 n);

bool is_prime(u64 n);
bool is_squarefree(u64 n);

int mobius(u64 n);

struct DivisorStats {
  std::vector<u64> divisors; // ascending
  u64 tau = 0;
  int omega = 0;
};

DivisorStats divisor_stats(u64 n);

/// beta(n) = sum_{k | n} mu(k) mu(n/k).
i64 beta(u64 n);

/// Lambda(n): log q when n = q^k, else 0.
double von_mangoldt_log(u64 n);

/// log of X(n) = prod_{k=0}^{n-1} gcd(k, n), with gcd(0, n) = n.
double x_product_log(u64 n);

/// Exact 64-bit helpers that throw OverflowError instead of wrapping.
i64 checked_mul(i64 a, i64 b);
i64 checked_add(i64 a, i64 b);
i64 ipow(i64 base, int exp);

u64 gcd(u64 a, u64 b);
i64 isqrt(i64 n); // floor(sqrt(n)) for n >= 0
bool is_perfect_square(i64 n);

/// Inverse of a modulo m (m >= 1, gcd(a, m) = 1); result in [0, m).
i64 mod_inverse(i64 a, i64 m);

/// Von Mangoldt table Lambda(0..n) via a sieve; used by the series kernels.
std::vector<double> von_mangoldt_table(u64 n);

} // namespace tracelab::arith
