#include "tracelab/oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>

#include "tracelab/arith.hpp"
#include "tracelab/errors.hpp"
#include "tracelab/quadforms.hpp"

namespace tracelab::oracle {

namespace {

int legendre(i64 D, i64 p) {
  const i64 r = ((D % p) + p) % p;
  if (r == 0) return 0;
  __int128 acc = 1, b = r;
  for (i64 e = (p - 1) / 2; e > 0; e >>= 1) {
    if (e & 1) acc = acc * b % p;
    b = b * b % p;
  }
  return acc == 1 ? 1 : -1;
}

struct Unit {
  long double log_eps = 0.0L;
  bool norm_minus_one = false;
  std::string source;
};

// Fundamental unit (any norm) of the order of discriminant D > 0.
Unit fundamental_unit(i64 D, i64 pell_bound) {
  const PellSolution s = pell_search(D, pell_bound);
  const long double sq = std::sqrt(static_cast<long double>(D));
  if (s.found) {
    return {std::log((static_cast<long double>(s.x) + static_cast<long double>(s.y) * sq) / 2.0L), s.norm == -1,
            "pell-search"};
  }
  const auto o = quad::QuadOrder::from_disc(D);
  const auto u = quad::unit_data(o);
  if (u.x * u.x - D * u.y * u.y != 4) throw Error("library unit fails the Pell check");
  const bool neg = quad::has_norm_minus_one_unit(o);
  return {static_cast<long double>(u.log_eps) / (neg ? 2.0L : 1.0L), neg, "library-checked"};
}

} // namespace

int kronecker(i64 D, i64 k) {
  if (k < 1) throw DomainError("kronecker needs k >= 1");
  int s = 1;
  for (const auto& pp : arith::factorize(static_cast<arith::u64>(k))) {
    const i64 p = static_cast<i64>(pp.prime);
    int v;
    if (p == 2) {
      if (D % 2 == 0) {
        v = 0;
      } else {
        const i64 r = ((D % 8) + 8) % 8;
        v = (r == 1 || r == 7) ? 1 : -1;
      }
    } else {
      v = legendre(D, p);
    }
    for (int e = 0; e < pp.exponent; ++e) s *= v;
  }
  return s;
}

PellSolution pell_search(i64 D, i64 y_bound, bool norm_one_only) {
  PellSolution s;
  for (i64 y = 1; y <= y_bound; ++y) {
    const i64 v = arith::checked_mul(D, arith::checked_mul(y, y));
    if (!norm_one_only && v >= 4 && arith::is_perfect_square(v - 4)) {
      s = {true, arith::isqrt(v - 4), y, -1};
      return s;
    }
    if (arith::is_perfect_square(v + 4)) {
      s = {true, arith::isqrt(v + 4), y, 1};
      return s;
    }
  }
  return s;
}

ClassNumberOracle analytic_class_number(i64 disc, i64 pell_bound) {
  const auto order = quad::QuadOrder::from_disc(disc);
  const i64 dk = order.fund_disc, f = order.conductor;
  const i64 n = std::abs(dk);
  ClassNumberOracle out;
  i64 hk = 0;
  Unit uk, uo;
  if (dk < 0) {
    i64 s = 0;
    for (i64 k = 1; k < n; ++k) s += kronecker(dk, k) * k;
    const i64 wk = quad::torsion_order(dk);
    hk = -wk * s / (2 * n);
    out.unit_source = "torsion";
  } else {
    long double s = 0.0L;
    for (i64 k = 1; k < n; ++k)
      s += kronecker(dk, k) * std::log(std::sin(std::numbers::pi_v<long double> * k / n));
    uk = fundamental_unit(dk, pell_bound);
    hk = std::llround(static_cast<double>(-0.5L * s / uk.log_eps));
    out.unit_source = uk.source;
  }
  // Conductor formula h(O) = h_K f prod_{p | f} (1 - chi(p)/p) / [O_K^* : O^*].
  i64 num = hk;
  for (const auto& pp : arith::factorize(static_cast<arith::u64>(f))) {
    const i64 p = static_cast<i64>(pp.prime);
    num *= arith::ipow(p, pp.exponent - 1) * (p - kronecker(dk, p));
  }
  i64 index = 1;
  if (dk < 0) {
    index = quad::torsion_order(dk) / quad::torsion_order(disc);
  } else if (f > 1) {
    uo = fundamental_unit(disc, pell_bound);
    index = std::llround(static_cast<double>(uo.log_eps / uk.log_eps));
    if (uo.source != "pell-search") out.unit_source = uo.source;
  } else {
    uo = uk;
  }
  if (index < 1 || num % index != 0) throw Error("conductor formula gave a non-integer class number");
  out.h_wide = num / index;
  if (disc > 0) {
    out.regulator = static_cast<double>(uo.log_eps);
    out.norm_minus_one = uo.norm_minus_one;
    out.h_narrow = uo.norm_minus_one ? out.h_wide : 2 * out.h_wide;
  } else {
    out.h_narrow = out.h_wide;
  }
  return out;
}

namespace {

i64 count_box(i64 D, i64 B) {
  std::vector<std::array<i64, 3>> forms;
  for (i64 a = -B; a <= B; ++a) {
    if (a == 0 || (D < 0 && a < 0)) continue;
    for (i64 b = -B; b <= B; ++b) {
      const i64 num = b * b - D;
      if (num % (4 * a) != 0) continue;
      const i64 c = num / (4 * a);
      if (std::abs(c) > B) continue;
      if (std::gcd(std::gcd(std::abs(a), std::abs(b)), std::abs(c)) != 1) continue;
      forms.push_back({a, b, c});
    }
  }
  std::map<std::array<i64, 3>, int> idx;
  for (std::size_t i = 0; i < forms.size(); ++i) idx[forms[i]] = static_cast<int>(i);
  std::vector<int> parent(forms.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < forms.size(); ++i) {
    const auto [a, b, c] = forms[i];
    const std::array<std::array<i64, 3>, 3> nbrs = {{{a, b + 2 * a, a + b + c}, {a, b - 2 * a, a - b + c}, {c, -b, a}}};
    for (const auto& g : nbrs) {
      auto it = idx.find(g);
      if (it != idx.end()) parent[find(static_cast<int>(i))] = find(it->second);
    }
  }
  std::vector<bool> core(forms.size(), false);
  for (std::size_t i = 0; i < forms.size(); ++i) {
    const auto& g = forms[i];
    const i64 mx = std::max({std::abs(g[0]), std::abs(g[1]), std::abs(g[2])});
    if (2 * mx <= B) core[static_cast<std::size_t>(find(static_cast<int>(i)))] = true;
  }
  return std::count(core.begin(), core.end(), true);
}

} // namespace

i64 box_form_classes(i64 D, i64 bound) {
  const i64 c1 = count_box(D, bound);
  const i64 c2 = count_box(D, 2 * bound);
  return c1 == c2 ? c1 : -1;
}

} // namespace tracelab::oracle
