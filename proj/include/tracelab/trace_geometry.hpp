#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "tracelab/embeddings.hpp"
#include "tracelab/selberg_transform.hpp"

namespace tracelab::geom {

using i64 = std::int64_t;
using emb::GroupDescriptor;
using quad::QuadOrder;
using selberg::TestFunction;

/// Area = coeff * pi with an exact rational coefficient.
struct Area {
  boost::rational<i64> coeff{0};
  double value() const;
};

Area area(const GroupDescriptor& g);

/// Orders m_t of the primitive elliptic elements of trace 0 and 1.
enum class EllipticConfig { Projective, Linear }; // {2, 3} or {4, 6}
int elliptic_order(i64 t, EllipticConfig cfg);

/// Factor attached to a hyperbolic Hecke class: log eps (standard) or
/// arcosh(|log eps|).
enum class FactorMode { StandardLogEps, AsPrinted };

enum class Exec { Serial, Parallel };

struct TruncationBudget {
  i64 t_max = 0;
  i64 k_max = 0;
  i64 n_max = 0;
  double quad_tol = 1e-12;
  double tail_cap = 1e-9; // BudgetTooSmallError when a report's tail exceeds this

  void validate() const;
};

enum class SideKind { Laplace, Hecke };

/// Budget whose truncation tails are below `target`, derived from the test
/// function's decay. `omega` is the largest prime count of any group the
/// budget will be used with; p is ignored for Laplace sides.
TruncationBudget default_budget(const TestFunction& f, SideKind kind, i64 p = 0, int omega = 2,
                                double target = 1e-12);

struct Options {
  EllipticConfig elliptic = EllipticConfig::Projective;
  FactorMode factor_mode = FactorMode::StandardLogEps;
  Exec exec = Exec::Parallel;
  int jobs = 0; // 0: OpenMP default
};

struct TermEntry {
  std::optional<i64> t; // empty for block-level entries (identity, parabolic)
  std::string block; // identity | elliptic | hyperbolic | parabolic | exceptional
  double value;
  std::optional<i64> disc;
};

/// Hyperbolic Hecke classes whose AsPrinted factor arcosh(log eps) is
/// undefined (log eps < 1); they are listed, not summed.
struct UndefinedTerm {
  i64 t;
  i64 disc;
  i64 count;
};

struct GeometricSideReport {
  std::string group;
  std::string test_function;
  double identity_term = 0.0;
  double elliptic_total = 0.0;
  double hyperbolic_total = 0.0;
  double parabolic_total = 0.0; // parabolic (Laplace) or exceptional (Hecke) block
  double grand_total = 0.0;
  double tail_estimate = 0.0;
  double quad_error = 0.0;
  bool has_exceptional_block = false;
  TruncationBudget budget;
  std::vector<TermEntry> term_log;
  std::vector<UndefinedTerm> undefined_terms;
};

struct SeriesValue {
  double value = 0.0;
  double tail = 0.0;
  double quad_error = 0.0;
};

num::QuadResult identity_term(const Area& a, const TestFunction& f, double quad_tol = 1e-12);

num::QuadResult elliptic_term_laplace(i64 t, i64 count, const TestFunction& f,
                                      EllipticConfig cfg = EllipticConfig::Projective,
                                      double quad_tol = 1e-12);

SeriesValue hyperbolic_term_laplace(i64 t, i64 count, const TestFunction& f, i64 k_max);

SeriesValue parabolic_block(i64 m, const TestFunction& f, const TruncationBudget& b);

num::QuadResult hecke_elliptic_term(i64 t, i64 p, const QuadOrder& order, i64 count,
                                    const TestFunction& f, double quad_tol = 1e-12);

double hecke_hyperbolic_term(i64 t, i64 p, const QuadOrder& order, i64 count, const TestFunction& f,
                             FactorMode mode = FactorMode::StandardLogEps);

SeriesValue hecke_exceptional_block(i64 m, i64 p, const TestFunction& f, const TruncationBudget& b);

GeometricSideReport geometric_side_laplace(const GroupDescriptor& g, const TestFunction& f,
                                           const TruncationBudget& b, const Options& opt = {});

GeometricSideReport geometric_side_hecke_cocompact(i64 d, i64 p, const TestFunction& f,
                                                   const TruncationBudget& b, const Options& opt = {});

GeometricSideReport geometric_side_hecke_gamma0(i64 m, i64 p, const TestFunction& f,
                                                const TruncationBudget& b, const Options& opt = {});

// Truncation bounds, exposed for tests. All are nonincreasing in their
// truncation parameter.

/// Bound on sum_{t > t_max} of the Laplace hyperbolic terms.
double laplace_t_tail(i64 t_max, int omega, const TestFunction& f);
/// Bound on sum_{|t| > t_max} of the Hecke hyperbolic terms.
double hecke_t_tail(i64 t_max, i64 p, int omega, const TestFunction& f);
/// Bound on 2 sum_{n > n_max} Lambda(n)/n [hhat(2 log n - s) + hhat(2 log n + s)]
/// with s = log p, or on 2 sum Lambda(n)/n hhat(2 log n) when p = 1.
double lambda_tail(i64 n_max, i64 p, const TestFunction& f);
/// Bound on the k > k_max part of the q-sums for the primes of m.
double q_tail(i64 m, i64 k_max, i64 p, const TestFunction& f);
/// Bound on sum_{k > k_max} hhat(2kL)/sinh(kL), times count * L.
double hyperbolic_k_tail(double L, i64 count, i64 k_max, const TestFunction& f);

/// Upper bound used for sum_B E(B) log eps_B at trace t, norm p.
double hecke_unit_mass_bound(i64 t, i64 p, int omega);

} // namespace tracelab::geom
