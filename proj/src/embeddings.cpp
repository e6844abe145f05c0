#include "tracelab/embeddings.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <map>
#include <numeric>
#include <string>

#include "tracelab/arith.hpp"
#include "tracelab/errors.hpp"

namespace tracelab::emb {

namespace {

i64 powmod(i64 base, i64 exp, i64 mod) {
  __int128 r = 1, b = ((base % mod) + mod) % mod;
  while (exp > 0) {
    if (exp & 1) r = r * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return static_cast<i64>(r);
}

// Kronecker symbol (D_K / p) for a fundamental discriminant and a prime p.
int kronecker_fund(i64 dk, i64 p) {
  if (p == 2) {
    if (dk % 2 == 0) return 0;
    const i64 r = ((dk % 8) + 8) % 8;
    return (r == 1 || r == 7) ? 1 : -1;
  }
  if (dk % p == 0) return 0;
  return powmod(dk, (p - 1) / 2, p) == 1 ? 1 : -1;
}

void require_squarefree(i64 n, const char* what) {
  if (n < 1 || !arith::is_squarefree(static_cast<arith::u64>(n)))
    throw DomainError(std::string(what) + " must be a squarefree positive integer, got " +
                      std::to_string(n));
}

void require_prime(i64 p) {
  if (!arith::is_prime(static_cast<arith::u64>(p)))
    throw DomainError("expected a prime, got " + std::to_string(p));
}

// Extended gcd: returns g and sets x, y with a x + b y = g.
i64 ext_gcd(i64 a, i64 b, i64& x, i64& y) {
  i64 x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    const i64 q = a / b;
    std::tie(a, b) = std::make_pair(b, a - q * b);
    std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
    std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
  }
  x = x0;
  y = y0;
  return a;
}

} // namespace

GroupDescriptor GroupDescriptor::cocompact(i64 d) {
  require_squarefree(d, "quaternion discriminant");
  const int w = arith::divisor_stats(static_cast<arith::u64>(d)).omega;
  if (w < 2 || w % 2 != 0)
    throw DomainError("quaternion discriminant needs an even number >= 2 of prime factors, got " +
                      std::to_string(d));
  return {Kind::CocompactUnits, d};
}

GroupDescriptor GroupDescriptor::hecke(i64 m) {
  require_squarefree(m, "level");
  return {Kind::HeckeCongruence, m};
}

std::vector<i64> GroupDescriptor::primes() const {
  std::vector<i64> ps;
  for (auto p : arith::prime_divisors(static_cast<arith::u64>(level))) ps.push_back(static_cast<i64>(p));
  return ps;
}

std::string GroupDescriptor::label() const {
  return is_cocompact() ? "O1(d=" + std::to_string(level) + ")" : "Gamma0(" + std::to_string(level) + ")";
}

int symbol_bp(const QuadOrder& order, i64 p) {
  require_prime(p);
  if (order.conductor % p == 0) return 1;
  return kronecker_fund(order.fund_disc, p);
}

i64 embedding_count_order(const QuadOrder& order, const GroupDescriptor& g) {
  i64 factor = 1;
  for (i64 p : g.primes()) {
    const int s = symbol_bp(order, p);
    factor *= g.is_cocompact() ? (1 - s) : (1 + s);
    if (factor == 0) return 0;
  }
  return factor * quad::class_number(order);
}

i64 embedding_count_trace(i64 t, i64 n, const GroupDescriptor& g) {
  if (t < 0) throw DomainError("embedding_count_trace expects t >= 0 (E is even in t)");
  i64 total = 0;
  for (const auto& B : quad::superorders_of_element(t, n))
    total = arith::checked_add(total, embedding_count_order(B, g));
  return total;
}

std::vector<i64> primitive_counts(i64 t_max, const GroupDescriptor& g) {
  if (t_max < 0) throw DomainError("t_max must be >= 0");
  std::vector<i64> ep(static_cast<std::size_t>(t_max) + 1, 0);
  for (i64 t = 0; t <= t_max; ++t)
    if (t != 2) ep[static_cast<std::size_t>(t)] = embedding_count_trace(t, 1, g);
  // Peel off powers: the r-th power of a primitive element of trace s has
  // trace a_r(s) with a_1 = s, a_2 = s^2 - 2, a_{r+1} = s a_r - a_{r-1}.
  for (i64 s = 3; s <= t_max; ++s) {
    const i64 prim = ep[static_cast<std::size_t>(s)];
    i64 prev = s, cur = s * s - 2;
    while (cur <= t_max) {
      ep[static_cast<std::size_t>(cur)] -= prim;
      const i64 next = s * cur - prev;
      prev = cur;
      cur = next;
    }
  }
  return ep;
}

i64 primitive_count(i64 t, const GroupDescriptor& g) {
  if (t < 3) throw DomainError("primitive_count needs t >= 3");
  return primitive_counts(t, g)[static_cast<std::size_t>(t)];
}

i64 exceptional_class_count(i64 p, i64 m) {
  require_prime(p);
  require_squarefree(m, "level");
  if (m % p == 0) throw DomainError("p must not divide m");
  const int w = arith::divisor_stats(static_cast<arith::u64>(m)).omega;
  return (i64{1} << w) * (p - 1);
}

std::vector<ExceptionalRep> exceptional_representatives_detailed(i64 p, i64 m) {
  exceptional_class_count(p, m); // validates
  std::vector<ExceptionalRep> out;
  for (auto vu : arith::divisor_stats(static_cast<arith::u64>(m)).divisors) {
    const i64 v = static_cast<i64>(vu);
    const i64 mv = m / v;
    const i64 n0 = mv == 1 ? 0 : ((p - 1) % mv) * arith::mod_inverse(v % mv, mv) % mv;
    for (i64 k = 0; k < p - 1; ++k) {
      const i64 n = n0 + k * mv;
      const Matrix2 g{p - n * v, n, v * (p - n * v - 1), n * v + 1};
      if (g.c % m != 0 || g.trace() != p + 1 || g.det() != p)
        throw Error("exceptional representative construction failed");
      out.push_back({v, n, g});
    }
  }
  return out;
}

std::vector<Matrix2> exceptional_representatives(i64 p, i64 m) {
  std::vector<Matrix2> out;
  for (const auto& r : exceptional_representatives_detailed(p, m)) out.push_back(r.gamma);
  return out;
}

std::vector<Cusp> cusp_representatives(i64 m) {
  require_squarefree(m, "level");
  std::vector<Cusp> out;
  for (auto v : arith::divisor_stats(static_cast<arith::u64>(m)).divisors)
    out.push_back({1, static_cast<i64>(v)});
  return out;
}

bool verify_cusp_inequivalence(i64 m, i64 p) {
  require_prime(p);
  require_squarefree(m, "level");
  if (m % p == 0) return false;
  for (const auto& cusp : cusp_representatives(m)) {
    const i64 v = cusp.den;
    const i64 mv = m / v;
    // Images of 1/v under [[1, j], [0, p]] and [[p, 0], [0, 1]], written as
    // x / (y v) with y in {1, p}.
    std::vector<std::pair<i64, i64>> images;
    for (i64 j = 0; j < p; ++j) {
      const i64 num = 1 + j * v;
      if (num % p == 0)
        images.emplace_back(num / p, 1);
      else
        images.emplace_back(num, p);
    }
    images.emplace_back(p, 1);
    for (auto [x, y] : images) {
      // Find alpha = [[x - b v, b], [m c, y - c m/v]] in Gamma_0(m) with
      // alpha(1/v) = x/(y v): needs c (m/v) x + b v y = x y - 1.
      i64 u, w;
      const i64 A = mv * x, Bc = v * y, rhs = x * y - 1;
      const i64 g = ext_gcd(A, Bc, u, w);
      if (rhs % g != 0) return false;
      const i64 c = u * (rhs / g), b = w * (rhs / g);
      const Matrix2 alpha{x - b * v, b, m * c, y - c * mv};
      if (alpha.det() != 1 || alpha.c % m != 0) return false;
      // alpha(1/v) = (alpha.a + alpha.b v) / (alpha.c + alpha.d v)
      const i64 num = alpha.a + alpha.b * v, den = alpha.c + alpha.d * v;
      if (num * (y * v) != x * den) return false;
    }
  }
  return true;
}

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

Matrix2 mul(const Matrix2& x, const Matrix2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

i64 count_classes(i64 t, i64 m, i64 bound, ConjugationMode mode) {
  std::vector<Matrix2> elems;
  for (i64 a = -bound; a <= bound; ++a) {
    const i64 d = t - a;
    if (std::abs(d) > bound) continue;
    const i64 bc = a * d - 1;
    if (bc == 0) throw DomainError("oracle_conjugacy_count: parabolic trace");
    for (i64 b = -bound; b <= bound; ++b) {
      if (b == 0 || bc % b != 0) continue;
      const i64 c = bc / b;
      if (std::abs(c) > bound || c % m != 0) continue;
      elems.push_back({a, b, c, d});
    }
  }
  auto key = [](const Matrix2& g) { return std::array<i64, 4>{g.a, g.b, g.c, g.d}; };
  std::map<std::array<i64, 4>, int> index;
  for (std::size_t i = 0; i < elems.size(); ++i) index[key(elems[i])] = static_cast<int>(i);

  std::vector<std::pair<Matrix2, Matrix2>> conj = {
      {{1, 1, 0, 1}, {1, -1, 0, 1}},
      {{1, 0, m, 1}, {1, 0, -m, 1}},
  };
  if (mode == ConjugationMode::WithReflection) conj.push_back({{1, 0, 0, -1}, {1, 0, 0, -1}});

  Dsu dsu(elems.size());
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& [X, Xinv] : conj) {
      for (const auto& [L, R] : {std::pair{X, Xinv}, std::pair{Xinv, X}}) {
        const Matrix2 h = mul(mul(L, elems[i]), R);
        auto it = index.find(key(h));
        if (it != index.end()) dsu.unite(static_cast<int>(i), it->second);
      }
    }
  }
  std::vector<bool> has_core(elems.size(), false);
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const auto& g = elems[i];
    const i64 mx = std::max({std::abs(g.a), std::abs(g.b), std::abs(g.c), std::abs(g.d)});
    if (2 * mx <= bound) has_core[static_cast<std::size_t>(dsu.find(static_cast<int>(i)))] = true;
  }
  return std::count(has_core.begin(), has_core.end(), true);
}

} // namespace

ConjugacyResult oracle_conjugacy_count(i64 t, i64 m, i64 bound, ConjugationMode mode) {
  if (m != 1 && m != 2)
    throw DomainError("conjugacy oracle supports levels 1 and 2 (T and [[1,0],[m,1]] generate)");
  if (bound < 2) throw DomainError("conjugacy oracle bound must be >= 2");
  if (t * t - 4 >= 0 && arith::is_perfect_square(t * t - 4))
    throw ExceptionalTraceError("conjugacy oracle: t^2 - 4 is a square");
  ConjugacyResult r;
  r.bound = bound;
  r.count = count_classes(t, m, bound, mode);
  r.count_at_double = count_classes(t, m, 2 * bound, mode);
  r.stable = r.count == r.count_at_double;
  return r;
}

} // namespace tracelab::emb
