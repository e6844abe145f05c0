#include "tracelab/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tracelab/errors.hpp"

namespace tracelab::arith {

std::vector<PrimePower> factorize(u64 n) {
  if (n == 0) throw DomainError("factorize: n must be >= 1");
  std::vector<PrimePower> out;
  for (u64 p = 2; p <= n / p; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

std::vector<u64> prime_divisors(u64 n) {
  std::vector<u64> ps;
  for (const auto& pp : factorize(n)) ps.push_back(pp.prime);
  return ps;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  auto f = factorize(n);
  return f.size() == 1 && f[0].exponent == 1;
}

bool is_squarefree(u64 n) {
  for (const auto& pp : factorize(n))
    if (pp.exponent > 1) return false;
  return true;
}

int mobius(u64 n) {
  int mu = 1;
  for (const auto& pp : factorize(n)) {
    if (pp.exponent > 1) return 0;
    mu = -mu;
  }
  return mu;
}

DivisorStats divisor_stats(u64 n) {
  DivisorStats s;
  const auto f = factorize(n);
  s.divisors = {1};
  for (const auto& pp : f) {
    const std::size_t len = s.divisors.size();
    u64 pk = 1;
    for (int e = 1; e <= pp.exponent; ++e) {
      pk *= pp.prime;
      for (std::size_t i = 0; i < len; ++i) s.divisors.push_back(s.divisors[i] * pk);
    }
  }
  std::sort(s.divisors.begin(), s.divisors.end());
  s.tau = s.divisors.size();
  s.omega = static_cast<int>(f.size());
  return s;
}

i64 beta(u64 n) {
  i64 b = 0;
  for (u64 k : divisor_stats(n).divisors) b += mobius(k) * mobius(n / k);
  return b;
}

double von_mangoldt_log(u64 n) {
  if (n < 2) return 0.0;
  const auto f = factorize(n);
  return f.size() == 1 ? std::log(static_cast<double>(f[0].prime)) : 0.0;
}

double x_product_log(u64 n) {
  if (n == 0) throw DomainError("x_product_log: n must be >= 1");
  double s = 0.0;
  for (u64 k = 0; k < n; ++k) s += std::log(static_cast<double>(gcd(k, n)));
  return s;
}

i64 checked_mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
  return r;
}

i64 checked_add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
  return r;
}

i64 ipow(i64 base, int exp) {
  i64 r = 1;
  for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

u64 gcd(u64 a, u64 b) { return std::gcd(a, b); }

i64 isqrt(i64 n) {
  if (n < 0) throw DomainError("isqrt of negative number");
  auto r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r > n / r) --r;
  while ((r + 1) <= n / (r + 1)) ++r;
  return r;
}

bool is_perfect_square(i64 n) {
  if (n < 0) return false;
  const i64 r = isqrt(n);
  return r * r == n;
}

i64 mod_inverse(i64 a, i64 m) {
  if (m == 1) return 0;
  i64 g = m, x = 0, g1 = ((a % m) + m) % m, x1 = 1;
  while (g1 != 0) {
    const i64 q = g / g1;
    std::tie(g, g1) = std::make_pair(g1, g - q * g1);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  if (g != 1) throw DomainError("mod_inverse: arguments not coprime");
  return ((x % m) + m) % m;
}

std::vector<double> von_mangoldt_table(u64 n) {
  std::vector<double> lam(n + 1, 0.0);
  std::vector<bool> composite(n + 1, false);
  for (u64 p = 2; p <= n; ++p) {
    if (composite[p]) continue;
    for (u64 q = p * p; q <= n; q += p) composite[q] = true;
    const double lp = std::log(static_cast<double>(p));
    for (u64 q = p;; q *= p) {
      lam[q] = lp;
      if (q > n / p) break;
    }
  }
  return lam;
}

} // namespace tracelab::arith
