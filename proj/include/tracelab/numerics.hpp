#pragma once

#include <complex>
#include <functional>

namespace tracelab::num {

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;
  int evaluations = 0;
};

using Integrand = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (7/15) on [a, b] with QUADPACK-style error
/// estimates. Throws NumericError when abs_tol cannot be met within
/// max_intervals subintervals.
QuadResult integrate(const Integrand& f, double a, double b, double abs_tol,
                     int max_intervals = 4000);

/// Integral over [a, inf) via x = a + (1 - s)/s.
QuadResult integrate_to_inf(const Integrand& f, double a, double abs_tol, int max_intervals = 4000);

/// Integral over the real line, split at -c and c so the bulk is handled on
/// a finite interval and only the tails are transformed.
QuadResult integrate_real_line(const Integrand& f, double c, double abs_tol, int max_intervals = 4000);

/// Complex digamma for Re z > 0: upward recurrence to Re z >= 15, then the
/// asymptotic Bernoulli series.
std::complex<double> digamma(std::complex<double> z);

} // namespace tracelab::num
