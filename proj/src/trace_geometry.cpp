#include "tracelab/trace_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <numbers>
#include <string>

#include <omp.h>

#include "tracelab/arith.hpp"
#include "tracelab/errors.hpp"

namespace tracelab::geom {

using std::numbers::pi;

namespace {

constexpr double kLogUnderflow = -745.0;

// Cut-off beyond which h is integrated through the tail transform.
double bulk_cutoff(const TestFunction& f) { return std::sqrt(40.0 / f.width()); }

// e^{-s x} / (1 + e^{-x}) without overflow for either sign of x.
double elliptic_kernel(double x, double s) {
  if (x >= 0.0) return std::exp(-s * x) / (1.0 + std::exp(-x));
  return std::exp((1.0 - s) * x) / (1.0 + std::exp(x));
}

num::QuadResult integrate_half_line(const num::Integrand& g, const TestFunction& f, double tol) {
  const double c = bulk_cutoff(f);
  const num::QuadResult bulk = num::integrate(g, 0.0, c, tol / 2);
  const num::QuadResult tail = num::integrate_to_inf(g, c, tol / 2);
  return {bulk.value + tail.value, bulk.abs_error + tail.abs_error, bulk.evaluations + tail.evaluations};
}

double log_sinh(double x) { return x + std::log1p(-std::exp(-2.0 * x)) - std::log(2.0); }

int omega_of(i64 n) { return arith::divisor_stats(static_cast<arith::u64>(n)).omega; }

// Sum of exp(log_b(j)) over blocks j = j0, j0 + 1, ... until the block bound
// has underflowed and is decreasing.
template <class LogBlock>
double sum_blocks(int j0, LogBlock log_b) {
  double total = 0.0, prev = std::numeric_limits<double>::infinity();
  for (int j = j0; j < 64; ++j) {
    const double lb = log_b(j);
    if (lb < kLogUnderflow && lb < prev) break;
    total += std::exp(lb);
    prev = lb;
  }
  return total;
}

int block_of(i64 n) { return 63 - __builtin_clzll(static_cast<unsigned long long>(n)); }

// Runs body(i) for i in [0, n), in parallel when requested. Exceptions are
// captured and the first one rethrown on the calling thread.
template <class Body>
void for_each_index(i64 n, const Options& opt, Body body) {
  std::exception_ptr err = nullptr;
  if (opt.exec == Exec::Serial) {
    for (i64 i = 0; i < n; ++i) body(i);
    return;
  }
  const int threads = opt.jobs > 0 ? opt.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
  for (i64 i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical(tracelab_err)
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
}

double lambda_sum(i64 n_max, double shift, const TestFunction& f, bool pair) {
  const auto lam = arith::von_mangoldt_table(static_cast<arith::u64>(n_max));
  double s = 0.0;
  for (i64 n = 2; n <= n_max; ++n) {
    const double l = lam[static_cast<std::size_t>(n)];
    if (l == 0.0) continue;
    const double ln = std::log(static_cast<double>(n));
    const double term = pair ? f.hhat(2.0 * ln - shift) + f.hhat(2.0 * ln + shift) : f.hhat(2.0 * ln);
    s += l / static_cast<double>(n) * term;
  }
  return 2.0 * s;
}

double q_sum(i64 m, i64 k_max, double shift, const TestFunction& f, bool pair) {
  double s = 0.0;
  for (auto qu : arith::prime_divisors(static_cast<arith::u64>(m))) {
    const double q = static_cast<double>(qu), lq = std::log(q);
    double inner = 0.0;
    for (i64 k = 0; k <= k_max; ++k) {
      const double u = 2.0 * static_cast<double>(k) * lq;
      const double term = pair ? f.hhat(u - shift) + f.hhat(u + shift) : f.hhat(u);
      inner += lq * std::pow(q, -static_cast<double>(k)) * term;
    }
    s += inner;
  }
  return s;
}

void check_tail(const GeometricSideReport& r) {
  if (r.tail_estimate > r.budget.tail_cap) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g exceeds cap %.3g", r.tail_estimate, r.budget.tail_cap);
    throw BudgetTooSmallError(r.group + ": truncation tail estimate " + buf +
                              " (raise t_max, k_max or n_max)");
  }
}

void require_hecke_prime(i64 p, i64 level) {
  if (!arith::is_prime(static_cast<arith::u64>(p))) throw DomainError("p must be prime, got " + std::to_string(p));
  if (level % p == 0) throw DomainError("p must not divide the level");
}

struct HeckeClassTerm {
  i64 disc;
  i64 count;
  double value;
  double quad_error;
  bool undefined;
};

// Elliptic and hyperbolic Hecke terms for every t in [-t_max, t_max] with
// t != +-(p+1), in ascending t and, within t, descending conductor.
void hecke_class_terms(const GroupDescriptor& g, i64 p, const TestFunction& f, const TruncationBudget& b,
                       const Options& opt, GeometricSideReport& r) {
  const i64 n = 2 * b.t_max + 1;
  std::vector<std::vector<HeckeClassTerm>> per_t(static_cast<std::size_t>(n));
  for_each_index(n, opt, [&](i64 i) {
    const i64 t = i - b.t_max;
    if (std::abs(t) == p + 1) return;
    auto& out = per_t[static_cast<std::size_t>(i)];
    for (const auto& B : quad::superorders_of_element(t, p)) {
      const i64 count = emb::embedding_count_order(B, g);
      if (count == 0) continue;
      if (t * t < 4 * p) {
        const auto q = hecke_elliptic_term(t, p, B, count, f, b.quad_tol);
        out.push_back({B.disc, count, q.value, q.abs_error, false});
      } else if (opt.factor_mode == FactorMode::AsPrinted && quad::class_info(B).log_eps < 1.0) {
        out.push_back({B.disc, count, 0.0, 0.0, true});
      } else {
        out.push_back({B.disc, count, hecke_hyperbolic_term(t, p, B, count, f, opt.factor_mode), 0.0, false});
      }
    }
  });
  for (i64 i = 0; i < n; ++i) {
    const i64 t = i - b.t_max;
    for (const auto& c : per_t[static_cast<std::size_t>(i)]) {
      if (c.undefined) {
        r.undefined_terms.push_back({t, c.disc, c.count});
        continue;
      }
      const bool elliptic = t * t < 4 * p;
      r.term_log.push_back({t, elliptic ? "elliptic" : "hyperbolic", c.value, c.disc});
      if (elliptic)
        r.elliptic_total += c.value;
      else
        r.hyperbolic_total += c.value;
      r.quad_error += c.quad_error;
    }
  }
}

GeometricSideReport hecke_side(const GroupDescriptor& g, i64 p, const TestFunction& f, const TruncationBudget& b,
                               const Options& opt) {
  b.validate();
  require_hecke_prime(p, g.level);
  if (b.t_max * b.t_max <= 4 * p)
    throw DomainError("t_max must exceed 2 sqrt(p) for the Hecke tail bound");
  GeometricSideReport r;
  r.group = g.label() + ",T_" + std::to_string(p);
  r.test_function = f.serialize();
  r.budget = b;
  hecke_class_terms(g, p, f, b, opt, r);
  r.tail_estimate = hecke_t_tail(b.t_max, p, static_cast<int>(g.primes().size()), f);
  if (!g.is_cocompact()) {
    const SeriesValue ex = hecke_exceptional_block(g.level, p, f, b);
    r.has_exceptional_block = true;
    r.parabolic_total = ex.value;
    r.tail_estimate += ex.tail;
    r.quad_error += ex.quad_error;
    r.term_log.push_back({std::nullopt, "exceptional", ex.value, std::nullopt});
  }
  r.grand_total = r.identity_term + r.elliptic_total + r.hyperbolic_total + r.parabolic_total;
  check_tail(r);
  return r;
}

} // namespace

double Area::value() const {
  return static_cast<double>(coeff.numerator()) / static_cast<double>(coeff.denominator()) * pi;
}

Area area(const GroupDescriptor& g) {
  boost::rational<i64> c(1, 3);
  for (i64 p : g.primes()) c *= g.is_cocompact() ? (p - 1) : (p + 1);
  return {c};
}

int elliptic_order(i64 t, EllipticConfig cfg) {
  if (t != 0 && t != 1) throw DomainError("elliptic traces are 0 and 1");
  if (cfg == EllipticConfig::Projective) return t == 0 ? 2 : 3;
  return t == 0 ? 4 : 6;
}

void TruncationBudget::validate() const {
  if (t_max < 3 || k_max < 1 || n_max < 2 || !(quad_tol > 0.0) || !(tail_cap > 0.0))
    throw DomainError("truncation budget needs t_max >= 3, k_max >= 1, n_max >= 2 and positive tolerances");
}

num::QuadResult identity_term(const Area& a, const TestFunction& f, double quad_tol) {
  const double coeff = a.value() / pi;
  if (coeff == 0.0) return {};
  auto g = [&](double r) { return f.h(r) * r * std::tanh(pi * r); };
  // (A / 4 pi) * 2 int_0^inf
  num::QuadResult q = integrate_half_line(g, f, quad_tol / std::max(1.0, coeff));
  q.value *= coeff / 2.0;
  q.abs_error *= coeff / 2.0;
  return q;
}

num::QuadResult elliptic_term_laplace(i64 t, i64 count, const TestFunction& f, EllipticConfig cfg,
                                      double quad_tol) {
  const int m = elliptic_order(t, cfg);
  if (count == 0) return {};
  num::QuadResult total;
  for (int k = 1; k < m; ++k) {
    const double s = static_cast<double>(k) / m;
    auto g = [&](double r) { return f.h(r) * elliptic_kernel(2.0 * pi * r, s); };
    const num::QuadResult q = num::integrate_real_line(g, bulk_cutoff(f), quad_tol / m);
    const double w = 1.0 / std::sin(k * pi / m);
    total.value += w * q.value;
    total.abs_error += w * q.abs_error;
    total.evaluations += q.evaluations;
  }
  const double scale = static_cast<double>(count) / (2.0 * m);
  total.value *= scale;
  total.abs_error *= scale;
  return total;
}

SeriesValue hyperbolic_term_laplace(i64 t, i64 count, const TestFunction& f, i64 k_max) {
  if (t < 3) throw DomainError("hyperbolic traces start at 3");
  if (count == 0) return {};
  const double L = std::acosh(static_cast<double>(t) / 2.0);
  double s = 0.0;
  for (i64 k = 1; k <= k_max; ++k) {
    const double kl = static_cast<double>(k) * L;
    s += std::exp(f.log_hhat(2.0 * kl) - log_sinh(kl));
  }
  return {static_cast<double>(count) * L * s, hyperbolic_k_tail(L, count, k_max, f), 0.0};
}

double hyperbolic_k_tail(double L, i64 count, i64 k_max, const TestFunction& f) {
  if (count == 0) return 0.0;
  const double x = static_cast<double>(k_max + 1) * L;
  const double lb = std::log(static_cast<double>(count) * L) + f.log_hhat(2.0 * x) - log_sinh(x) -
                    std::log1p(-std::exp(-L));
  return std::exp(lb);
}

SeriesValue parabolic_block(i64 m, const TestFunction& f, const TruncationBudget& b) {
  b.validate();
  const int w = omega_of(m);
  const double pref = std::ldexp(1.0, w);
  auto g = [&](double r) {
    return f.h(r) * (num::digamma({0.5, r}).real() + num::digamma({1.0, r}).real());
  };
  const num::QuadResult dig = integrate_half_line(g, f, b.quad_tol * pi);
  const double dig_int = 2.0 * dig.value; // over the real line
  double brace = f.hhat(0.0) * std::log(pi / 2.0) - dig_int / (2.0 * pi);
  brace += lambda_sum(b.n_max, 0.0, f, false);
  brace -= q_sum(m, b.k_max, 0.0, f, false);
  SeriesValue v;
  v.value = pref * brace;
  v.quad_error = pref * 2.0 * dig.abs_error / (2.0 * pi);
  v.tail = pref * lambda_tail(b.n_max, 1, f) + pref * q_tail(m, b.k_max, 1, f);
  return v;
}

num::QuadResult hecke_elliptic_term(i64 t, i64 p, const QuadOrder& order, i64 count, const TestFunction& f,
                                    double quad_tol) {
  if (t * t >= 4 * p) throw DomainError("elliptic Hecke term needs t^2 < 4p");
  if (count == 0) return {};
  const double disc4 = 4.0 * static_cast<double>(p) - static_cast<double>(t * t);
  const double theta = std::asin(std::sqrt(1.0 - static_cast<double>(t * t) / (4.0 * static_cast<double>(p))));
  const double s = theta / pi;
  auto g = [&](double r) { return f.h(r) * elliptic_kernel(2.0 * pi * r, s); };
  num::QuadResult q = num::integrate_real_line(g, bulk_cutoff(f), quad_tol);
  const double scale = static_cast<double>(count) / (quad::torsion_order(order.disc) * std::sqrt(disc4));
  q.value *= scale;
  q.abs_error *= scale;
  return q;
}

double hecke_hyperbolic_term(i64 t, i64 p, const QuadOrder& order, i64 count, const TestFunction& f,
                             FactorMode mode) {
  if (t * t <= 4 * p) throw DomainError("hyperbolic Hecke term needs t^2 > 4p");
  if (std::abs(t) == p + 1) throw ExceptionalTraceError("t = p + 1 belongs to the exceptional block");
  if (count == 0) return 0.0;
  const double log_eps = quad::class_info(order).log_eps;
  double factor = log_eps;
  if (mode == FactorMode::AsPrinted) {
    if (log_eps < 1.0)
      throw DomainError("arcosh(log eps) undefined: log eps = " + std::to_string(log_eps) + " < 1 for disc " +
                        std::to_string(order.disc));
    factor = std::acosh(log_eps);
  }
  const double L = std::acosh(std::abs(static_cast<double>(t)) / (2.0 * std::sqrt(static_cast<double>(p))));
  return static_cast<double>(count) / std::sqrt(static_cast<double>(p)) * factor *
         std::exp(f.log_hhat(2.0 * L) - log_sinh(L)) / 2.0;
}

SeriesValue hecke_exceptional_block(i64 m, i64 p, const TestFunction& f, const TruncationBudget& b) {
  b.validate();
  require_hecke_prime(p, m);
  const int w = omega_of(m);
  const double pref = std::ldexp(1.0, w);
  const double lp = std::log(static_cast<double>(p));
  const double pd = static_cast<double>(p);

  double brace = 2.0 * f.hhat(lp) *
                 (std::log(pi) + std::log(pd - 1.0) -
                  arith::x_product_log(static_cast<arith::u64>(p - 1)) / (pd - 1.0));
  brace -= f.h(0.0) / 2.0;

  const double shift = std::sqrt(pd) - 1.0 / std::sqrt(pd);
  auto g1 = [&](double u) {
    const double e = std::exp(-u / 2.0);
    // (e^{u/2} + e^{-u/2}) / (e^{u/2} - e^{-u/2} + shift), scaled by e^{-u/2}
    return f.hhat(u) * (1.0 + e * e) / (1.0 - e * e + shift * e);
  };
  const double upper = std::max(lp + 1.0, f.hhat_support(1e-30));
  const num::QuadResult i1a = num::integrate(g1, lp, upper, b.quad_tol / 2);
  const num::QuadResult i1b = num::integrate_to_inf(g1, upper, b.quad_tol / 2);
  brace += i1a.value + i1b.value;

  auto g2 = [&](double r) { return f.h(r) * 2.0 * std::cos(r * lp) * num::digamma({0.5, r}).real(); };
  const num::QuadResult i2 = integrate_half_line(g2, f, b.quad_tol * pi);
  brace -= 2.0 * i2.value / (2.0 * pi);

  brace += lambda_sum(b.n_max, lp, f, true);
  brace -= q_sum(m, b.k_max, lp, f, true);

  SeriesValue v;
  v.value = pref * brace;
  v.quad_error = pref * (i1a.abs_error + i1b.abs_error + 2.0 * i2.abs_error / (2.0 * pi));
  v.tail = pref * (lambda_tail(b.n_max, p, f) + q_tail(m, b.k_max, p, f));
  return v;
}

GeometricSideReport geometric_side_laplace(const GroupDescriptor& g, const TestFunction& f,
                                           const TruncationBudget& b, const Options& opt) {
  b.validate();
  GeometricSideReport r;
  r.group = g.label();
  r.test_function = f.serialize();
  r.budget = b;

  const num::QuadResult id = identity_term(area(g), f, b.quad_tol);
  r.identity_term = id.value;
  r.quad_error += id.abs_error;
  r.term_log.push_back({std::nullopt, "identity", id.value, std::nullopt});

  // Class data for every order involved, filled concurrently; the counts
  // below then read the cache.
  for_each_index(b.t_max + 1, opt, [&](i64 t) {
    if (t == 2) return;
    for (const auto& B : quad::superorders_of_element(t, 1)) quad::class_info(B);
  });
  const std::vector<i64> ep = emb::primitive_counts(b.t_max, g);

  for (i64 t : {0, 1}) {
    const num::QuadResult e = elliptic_term_laplace(t, ep[static_cast<std::size_t>(t)], f, opt.elliptic, b.quad_tol);
    r.elliptic_total += e.value;
    r.quad_error += e.abs_error;
    r.term_log.push_back({t, "elliptic", e.value, t * t - 4});
  }

  const i64 n = b.t_max - 2;
  std::vector<SeriesValue> hyp(static_cast<std::size_t>(n));
  for_each_index(n, opt, [&](i64 i) {
    const i64 t = i + 3;
    hyp[static_cast<std::size_t>(i)] = hyperbolic_term_laplace(t, ep[static_cast<std::size_t>(t)], f, b.k_max);
  });
  for (i64 i = 0; i < n; ++i) {
    const auto& h = hyp[static_cast<std::size_t>(i)];
    if (ep[static_cast<std::size_t>(i + 3)] == 0) continue;
    r.hyperbolic_total += h.value;
    r.tail_estimate += h.tail;
    r.term_log.push_back({i + 3, "hyperbolic", h.value, (i + 3) * (i + 3) - 4});
  }
  r.tail_estimate += laplace_t_tail(b.t_max, static_cast<int>(g.primes().size()), f);

  if (!g.is_cocompact()) {
    const SeriesValue par = parabolic_block(g.level, f, b);
    r.parabolic_total = par.value;
    r.tail_estimate += par.tail;
    r.quad_error += par.quad_error;
    r.term_log.push_back({std::nullopt, "parabolic", par.value, std::nullopt});
  }
  r.grand_total = r.identity_term + r.elliptic_total + r.hyperbolic_total + r.parabolic_total;
  check_tail(r);
  return r;
}

GeometricSideReport geometric_side_hecke_cocompact(i64 d, i64 p, const TestFunction& f, const TruncationBudget& b,
                                                   const Options& opt) {
  return hecke_side(GroupDescriptor::cocompact(d), p, f, b, opt);
}

GeometricSideReport geometric_side_hecke_gamma0(i64 m, i64 p, const TestFunction& f, const TruncationBudget& b,
                                                const Options& opt) {
  return hecke_side(GroupDescriptor::hecke(m), p, f, b, opt);
}

// ---- truncation bounds ------------------------------------------------------
//
// Each bound sums explicit per-index bounds up to the end of the dyadic block
// [2^j, 2^{j+1}) containing the first omitted index, then whole-block bounds
// with every factor at its extreme over the block. A per-index bound never
// exceeds its block bound divided by the block length, so the result is
// nonincreasing in the truncation point.

double laplace_t_tail(i64 t_max, int omega, const TestFunction& f) {
  if (t_max < 3) throw DomainError("laplace_t_tail needs t_max >= 3");
  const double lw = omega * std::log(2.0) + std::log(4.0);
  // Count bound E'(t) <= E(t) <= 2^omega * 4 t^2; k-series bound
  // L hhat(2L) / (sinh L (1 - e^{-L})).
  auto log_term = [&](double t_count, double t_hi, double t_lo) {
    const double l_hi = std::acosh(t_hi / 2.0), l_lo = std::acosh(t_lo / 2.0);
    return lw + 2.0 * std::log(t_hi) + std::log(l_hi) + f.log_hhat(2.0 * l_lo) - log_sinh(l_lo) -
           std::log1p(-std::exp(-l_lo)) + std::log(t_count);
  };
  const i64 first = t_max + 1;
  const int j0 = block_of(first);
  const i64 block_end = (i64{1} << (j0 + 1)) - 1;
  double total = 0.0;
  for (i64 t = first; t <= block_end; ++t) {
    const double td = static_cast<double>(t);
    total += std::exp(log_term(1.0, td, td));
  }
  total += sum_blocks(j0 + 1, [&](int j) {
    const double lo = std::ldexp(1.0, j);
    return log_term(lo, 2.0 * lo, lo);
  });
  return total;
}

double hecke_unit_mass_bound(i64 t, i64 p, int omega) {
  // cl(B) <= #reduced forms <= 2 disc(B); each reduced form contributes at most
  // log(sqrt D + 1) <= 1 + log D to the regulator; the superorder sum adds a
  // factor zeta(2) < 2.
  const double D = static_cast<double>(t) * static_cast<double>(t) - 4.0 * static_cast<double>(p);
  if (D <= 0.0) return 0.0;
  return std::ldexp(1.0, omega) * 4.0 * D * (1.0 + std::log(D));
}

double hecke_t_tail(i64 t_max, i64 p, int omega, const TestFunction& f) {
  if (t_max * t_max <= 4 * p) throw DomainError("hecke_t_tail needs t_max > 2 sqrt(p)");
  const double sp = std::sqrt(static_cast<double>(p));
  // Both signs of t: factor 2. Term bound M(t)/sqrt(p) * hhat(2L) / (2 sinh L).
  auto log_term = [&](double t_count, double t_hi, double t_lo) {
    const double l_lo = std::acosh(t_lo / (2.0 * sp));
    const double D = t_hi * t_hi;
    const double mass = omega * std::log(2.0) + std::log(4.0 * D * (1.0 + std::log(D)));
    return std::log(2.0 * t_count) + mass - std::log(sp) + f.log_hhat(2.0 * l_lo) - log_sinh(l_lo) - std::log(2.0);
  };
  const i64 first = t_max + 1;
  const int j0 = block_of(first);
  const i64 block_end = (i64{1} << (j0 + 1)) - 1;
  double total = 0.0;
  for (i64 t = first; t <= block_end; ++t) {
    const double td = static_cast<double>(t);
    total += std::exp(log_term(1.0, td, td));
  }
  total += sum_blocks(j0 + 1, [&](int j) {
    const double lo = std::ldexp(1.0, j);
    return log_term(lo, 2.0 * lo, lo);
  });
  return total;
}

double lambda_tail(i64 n_max, i64 p, const TestFunction& f) {
  if (n_max < 1) throw DomainError("lambda_tail needs n_max >= 1");
  const double s = p == 1 ? 0.0 : std::log(static_cast<double>(p));
  const double c = p == 1 ? 2.0 : 4.0;
  auto log_b = [&](double count, double n_hi, double n_lo) {
    return std::log(c * count) + std::log(std::log(n_hi) / n_lo) +
           f.log_hhat(std::max(0.0, 2.0 * std::log(n_lo) - s));
  };
  const i64 first = n_max + 1;
  const int j0 = block_of(first);
  const i64 block_end = (i64{1} << (j0 + 1)) - 1;
  double total = 0.0;
  for (i64 n = first; n <= block_end; ++n) {
    const double nd = static_cast<double>(n);
    total += std::exp(log_b(1.0, nd, nd));
  }
  total += sum_blocks(j0 + 1, [&](int j) {
    const double lo = std::ldexp(1.0, j);
    return log_b(lo, 2.0 * lo, lo);
  });
  return total;
}

double q_tail(i64 m, i64 k_max, i64 p, const TestFunction& f) {
  const double s = p == 1 ? 0.0 : std::log(static_cast<double>(p));
  const double c = p == 1 ? 1.0 : 2.0;
  double total = 0.0;
  for (auto qu : arith::prime_divisors(static_cast<arith::u64>(m))) {
    const double q = static_cast<double>(qu), lq = std::log(q);
    const double k1 = static_cast<double>(k_max + 1);
    total += c * lq * std::exp(-k1 * lq + f.log_hhat(std::max(0.0, 2.0 * k1 * lq - s))) / (1.0 - 1.0 / q);
  }
  return total;
}

TruncationBudget default_budget(const TestFunction& f, SideKind kind, i64 p, int omega, double target) {
  TruncationBudget b;
  auto smallest = [](i64 lo, auto ok) {
    i64 hi = lo;
    while (!ok(hi)) {
      if (hi > (i64{1} << 40)) throw NumericError("no budget reaches the requested tail target");
      hi *= 2;
    }
    while (lo < hi) {
      const i64 mid = lo + (hi - lo) / 2;
      if (ok(mid))
        hi = mid;
      else
        lo = mid + 1;
    }
    return hi;
  };
  const double w = std::ldexp(1.0, omega);
  if (kind == SideKind::Laplace) {
    b.t_max = smallest(3, [&](i64 T) { return laplace_t_tail(T, omega, f) <= target; });
    // Sum of all hyperbolic counts up to t_max bounded by 2^omega * 4 t_max^3.
    const double mass = w * 4.0 * std::pow(static_cast<double>(b.t_max), 3);
    const double L3 = std::acosh(1.5);
    const i64 k_hyp = smallest(1, [&](i64 K) { return mass * hyperbolic_k_tail(L3, 1, K, f) <= target; });
    const i64 k_q = smallest(1, [&](i64 K) { return w * q_tail(2, K, 1, f) * omega <= target; });
    b.k_max = std::max(k_hyp, k_q);
    b.n_max = smallest(2, [&](i64 N) { return w * lambda_tail(N, 1, f) <= target; });
  } else {
    if (!arith::is_prime(static_cast<arith::u64>(p))) throw DomainError("Hecke budget needs a prime p");
    const i64 t_lo = arith::isqrt(4 * p) + 1;
    b.t_max = smallest(std::max<i64>(t_lo, 3), [&](i64 T) { return hecke_t_tail(T, p, omega, f) <= target; });
    b.k_max = smallest(1, [&](i64 K) { return w * q_tail(2, K, p, f) * omega <= target; });
    b.n_max = smallest(2, [&](i64 N) { return w * lambda_tail(N, p, f) <= target; });
  }
  return b;
}

} // namespace tracelab::geom
