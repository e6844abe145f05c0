#pragma once

#include <complex>
#include <string>

#include "tracelab/numerics.hpp"

namespace tracelab::selberg {

/// Admissible even test function h together with its transforms
///   hhat(u) = (1/2pi) int h(r) e^{-iru} dr,
///   Q(e^u + e^{-u} - 2) = hhat(u),
///   Q(x) = int_x^inf phi(t) / sqrt(t - x) dt.
/// Only closed-form families are admitted; currently the Gaussian
/// h(r) = exp(-a r^2).
class TestFunction {
public:
  enum class Family { Gaussian };

  static TestFunction gaussian(double a);

  /// Parses "gaussian:a=<float>".
  static TestFunction parse(const std::string& text);
  std::string serialize() const;

  Family family() const { return family_; }
  double width() const { return a_; }

  /// Half-width of the strip in which h is certified holomorphic and
  /// evaluable: 1/2 plus a margin.
  static constexpr double kStripHalfWidth = 0.75;

  std::complex<double> h(std::complex<double> r) const;
  double h(double r) const;

  double hhat(double u) const;
  double hhat_derivative(double u) const;
  /// log hhat(u), finite where hhat itself underflows.
  double log_hhat(double u) const;
  /// hhat by direct quadrature of the Fourier integral.
  num::QuadResult hhat_quadrature(double u, double abs_tol = 1e-13) const;

  /// Smallest u >= 0 with hhat(v) <= eps for every v >= u.
  double hhat_support(double eps) const;

  double q(double t) const;
  double q_derivative(double t) const;

  num::QuadResult phi(double x, double abs_tol = 1e-13) const;
  /// Forward transform Q(x) = 2 int_0^inf phi(x + s^2) ds, with phi itself
  /// computed by quadrature.
  num::QuadResult q_from_phi(double x, double abs_tol = 1e-10) const;

  /// Sup of |h(r)| (1 + r)^{2 + delta} over a grid on [0, r_max].
  double decay_certificate(double delta, double r_max) const;

private:
  TestFunction(Family f, double a) : family_(f), a_(a) {}
  Family family_;
  double a_;
};

} // namespace tracelab::selberg
