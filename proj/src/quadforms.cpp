#include "tracelab/quadforms.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "tracelab/arith.hpp"
#include "tracelab/errors.hpp"

namespace tracelab::quad {

namespace {

constexpr std::size_t kMaxPeriod = 100'000'000;

// Smallest-prime-factor table, grown on demand. Real class numbers factor
// (D - b^2)/4 for every admissible b, which is too slow by trial division
// once D reaches the millions.
class SpfTable {
public:
  std::vector<i64> divisors(i64 n) {
    ensure(n);
    std::vector<std::pair<i64, int>> f;
    {
      std::shared_lock lock(mu_);
      while (n > 1) {
        const i64 p = spf_[static_cast<std::size_t>(n)];
        int e = 0;
        while (n % p == 0) {
          n /= p;
          ++e;
        }
        f.emplace_back(p, e);
      }
    }
    std::vector<i64> ds{1};
    for (auto [p, e] : f) {
      const std::size_t len = ds.size();
      i64 pk = 1;
      for (int i = 0; i < e; ++i) {
        pk *= p;
        for (std::size_t j = 0; j < len; ++j) ds.push_back(ds[j] * pk);
      }
    }
    return ds;
  }

private:
  void ensure(i64 n) {
    {
      std::shared_lock lock(mu_);
      if (static_cast<i64>(spf_.size()) > n) return;
    }
    std::unique_lock lock(mu_);
    if (static_cast<i64>(spf_.size()) > n) return;
    const std::size_t size = std::max<std::size_t>(static_cast<std::size_t>(n) + 1, 2 * spf_.size());
    std::vector<std::uint32_t> spf(size, 0);
    for (std::size_t i = 2; i < size; ++i) {
      if (spf[i] != 0) continue;
      for (std::size_t j = i; j < size; j += i)
        if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
    }
    spf_.swap(spf);
  }

  std::shared_mutex mu_;
  std::vector<std::uint32_t> spf_;
};

SpfTable& spf_table() {
  static SpfTable t;
  return t;
}

struct ClassCache {
  std::shared_mutex mu;
  std::unordered_map<i64, ClassInfo> map;
};

ClassCache& class_cache() {
  static ClassCache c;
  return c;
}

i64 gcd3(i64 a, i64 b, i64 c) {
  return std::gcd(std::gcd(std::abs(a), std::abs(b)), std::abs(c));
}

struct CfPeriod {
  i64 p0 = 0;
  std::vector<i64> partial_quotients;
  long double log_xi = 0.0L; // log of the product of complete quotients
};

// Purely periodic expansion of xi_0 = (P0 + sqrt D)/2 with P0 the largest
// integer below sqrt D of the parity of D. The product of the complete
// quotients over one period is the fundamental unit of the order of disc D.
CfPeriod cf_period(i64 D) {
  const i64 r = arith::isqrt(D);
  const long double sq = std::sqrt(static_cast<long double>(D));
  CfPeriod cf;
  cf.p0 = ((r - D) % 2 == 0) ? r : r - 1;
  i64 P = cf.p0, Q = 2;
  do {
    const i64 a = (P + r) / Q;
    cf.partial_quotients.push_back(a);
    cf.log_xi += std::log((static_cast<long double>(P) + sq) / static_cast<long double>(Q));
    const i64 Pn = a * Q - P;
    Q = (D - Pn * Pn) / Q;
    P = Pn;
    if (cf.partial_quotients.size() > kMaxPeriod)
      throw ResourceError("continued fraction period exceeds " + std::to_string(kMaxPeriod) +
                          " for disc " + std::to_string(D));
  } while (P != cf.p0 || Q != 2);
  return cf;
}

i64 count_imaginary(i64 D) { return static_cast<i64>(reduced_forms(D).size()); }

i64 count_narrow_real(i64 D) {
  const auto forms = reduced_forms(D);
  const i64 r = arith::isqrt(D);
  std::vector<bool> seen(forms.size(), false);
  i64 cycles = 0;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (seen[i]) continue;
    ++cycles;
    std::size_t j = i;
    while (!seen[j]) {
      seen[j] = true;
      const Form& g = forms[j];
      const i64 m2 = 2 * std::abs(g.c);
      const i64 bp = r - (((r + g.b) % m2) + m2) % m2;
      const Form next{g.c, bp, (bp * bp - D) / (4 * g.c)};
      auto it = std::lower_bound(forms.begin(), forms.end(), next);
      if (it == forms.end() || !(*it == next))
        throw Error("rho image of a reduced form is not reduced, disc " + std::to_string(D));
      j = static_cast<std::size_t>(it - forms.begin());
    }
  }
  return cycles;
}

ClassInfo compute_class_info(i64 D) {
  ClassInfo info;
  if (D < 0) {
    info.h_wide = info.h_narrow = count_imaginary(D);
    return info;
  }
  const CfPeriod cf = cf_period(D);
  info.period = cf.partial_quotients.size();
  info.norm_minus_one = info.period % 2 == 1;
  info.log_eps = static_cast<double>(info.norm_minus_one ? 2 * cf.log_xi : cf.log_xi);
  info.h_narrow = count_narrow_real(D);
  info.h_wide = info.norm_minus_one ? info.h_narrow : info.h_narrow / 2;
  return info;
}

} // namespace

QuadOrder QuadOrder::from_disc(i64 disc) {
  if (disc == 0 || arith::is_perfect_square(disc))
    throw InvalidOrderError("discriminant " + std::to_string(disc) + " is zero or a square");
  const i64 r = ((disc % 4) + 4) % 4;
  if (r != 0 && r != 1)
    throw InvalidOrderError("discriminant " + std::to_string(disc) + " is not 0 or 1 mod 4");
  QuadOrder o;
  o.disc = disc;
  o.fund_disc = fundamental_discriminant(disc);
  o.conductor = arith::isqrt(disc / o.fund_disc);
  return o;
}

i64 fundamental_discriminant(i64 disc) {
  i64 core = 1;
  for (const auto& pp : arith::factorize(static_cast<arith::u64>(std::abs(disc))))
    if (pp.exponent % 2 == 1) core *= static_cast<i64>(pp.prime);
  if (disc < 0) core = -core;
  const i64 dk = (((core % 4) + 4) % 4 == 1) ? core : 4 * core;
  if (disc % dk != 0 || !arith::is_perfect_square(disc / dk))
    throw InvalidOrderError("discriminant " + std::to_string(disc) + " has no fundamental part");
  return dk;
}

std::vector<Form> reduced_forms(i64 D) {
  if (D == 0 || arith::is_perfect_square(D))
    throw InvalidOrderError("discriminant " + std::to_string(D) + " is zero or a square");
  std::vector<Form> out;
  if (D < 0) {
    for (i64 a = 1; 3 * a * a <= -D; ++a) {
      for (i64 b = -a + 1; b <= a; ++b) {
        const i64 num = b * b - D;
        if (num % (4 * a) != 0) continue;
        const i64 c = num / (4 * a);
        if (c < a || (c == a && b < 0)) continue;
        if (gcd3(a, b, c) != 1) continue;
        out.push_back({a, b, c});
      }
    }
    return out;
  }
  // 0 < b < sqrt D and sqrt D - b < 2|a| < sqrt D + b, both signs of a.
  const i64 r = arith::isqrt(D);
  for (i64 b = (D % 2 == 0) ? 2 : 1; b <= r; b += 2) {
    const i64 N = (D - b * b) / 4;
    for (i64 a : spf_table().divisors(N)) {
      // 2a > sqrt D - b  <=>  2a + b > sqrt D  <=>  2a + b > r
      // 2a < sqrt D + b  <=>  2a - b <= r
      if (2 * a + b <= r || 2 * a - b > r) continue;
      const i64 c = N / a;
      if (gcd3(a, b, c) != 1) continue;
      out.push_back({a, b, -c});
      out.push_back({-a, b, c});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

ClassInfo class_info(const QuadOrder& order) {
  auto& cache = class_cache();
  {
    std::shared_lock lock(cache.mu);
    auto it = cache.map.find(order.disc);
    if (it != cache.map.end()) return it->second;
  }
  const ClassInfo info = compute_class_info(order.disc);
  std::unique_lock lock(cache.mu);
  return cache.map.try_emplace(order.disc, info).first->second;
}

void clear_cache() {
  auto& cache = class_cache();
  std::unique_lock lock(cache.mu);
  cache.map.clear();
}

i64 class_number(const QuadOrder& order) { return class_info(order).h_wide; }

i64 narrow_class_number(const QuadOrder& order) { return class_info(order).h_narrow; }

int torsion_order(i64 disc) {
  if (disc == -3) return 6;
  if (disc == -4) return 4;
  return 2;
}

double log_norm_one_unit(i64 disc) {
  return class_info(QuadOrder::from_disc(disc)).log_eps;
}

bool has_norm_minus_one_unit(const QuadOrder& order) {
  if (order.disc < 0) throw DomainError("has_norm_minus_one_unit needs a real order");
  return class_info(order).norm_minus_one;
}

UnitData unit_data(const QuadOrder& order) {
  UnitData u;
  if (order.disc < 0) {
    u.torsion_order = torsion_order(order.disc);
    return u;
  }
  u.imaginary = false;
  const i64 D = order.disc;
  const CfPeriod cf = cf_period(D);
  const auto& a = cf.partial_quotients;
  const std::size_t len = a.size();
  cpp_int q_prev = 0, q = 1; // q_{-1}, q_0
  for (std::size_t k = 1; k < len; ++k) {
    cpp_int next = a[k] * q + q_prev;
    q_prev = q;
    q = next;
  }
  cpp_int x = q * cf.p0 + 2 * q_prev;
  cpp_int y = q;
  if (len % 2 == 1) {
    cpp_int x2 = (x * x + D * y * y) / 2;
    y = x * y;
    x = x2;
  }
  if (x * x - D * y * y != 4)
    throw Error("norm-one unit check failed for disc " + std::to_string(D));
  u.x = x;
  u.y = y;
  u.log_eps = static_cast<double>(len % 2 == 1 ? 2 * cf.log_xi : cf.log_xi);
  return u;
}

std::vector<QuadOrder> superorders_of_element(i64 t, i64 n) {
  const i64 D = arith::checked_add(arith::checked_mul(t, t), arith::checked_mul(-4, n));
  if (D == 0 || arith::is_perfect_square(D))
    throw ExceptionalTraceError("t^2 - 4n = " + std::to_string(D) + " is a square");
  const i64 dk = fundamental_discriminant(D);
  const i64 f0 = arith::isqrt(D / dk);
  const auto ds = arith::divisor_stats(static_cast<arith::u64>(f0)).divisors;
  std::vector<QuadOrder> out;
  for (auto it = ds.rbegin(); it != ds.rend(); ++it) {
    const i64 f = static_cast<i64>(*it);
    out.push_back({dk * f * f, dk, f});
  }
  return out;
}

} // namespace tracelab::quad
