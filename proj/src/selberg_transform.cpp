#include "tracelab/selberg_transform.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "tracelab/errors.hpp"

namespace tracelab::selberg {

using std::numbers::pi;

TestFunction TestFunction::gaussian(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("gaussian width must be positive and finite");
  return TestFunction(Family::Gaussian, a);
}

TestFunction TestFunction::parse(const std::string& text) {
  const std::string prefix = "gaussian:a=";
  if (text.rfind(prefix, 0) != 0)
    throw DomainError("unknown test function '" + text + "' (expected gaussian:a=<float>)");
  const char* first = text.data() + prefix.size();
  const char* last = text.data() + text.size();
  double a = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, a);
  if (ec != std::errc() || ptr != last || first == last)
    throw DomainError("cannot parse gaussian width in '" + text + "'");
  return gaussian(a);
}

std::string TestFunction::serialize() const {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, a_);
  (void)ec;
  return "gaussian:a=" + std::string(buf, ptr);
}

std::complex<double> TestFunction::h(std::complex<double> r) const {
  if (std::abs(r.imag()) > kStripHalfWidth)
    throw DomainError("h evaluated outside the admissible strip |Im r| <= 3/4");
  return std::exp(-a_ * r * r);
}

double TestFunction::h(double r) const { return std::exp(-a_ * r * r); }

double TestFunction::hhat(double u) const {
  return std::exp(-u * u / (4.0 * a_)) / (2.0 * std::sqrt(pi * a_));
}

double TestFunction::log_hhat(double u) const {
  return -u * u / (4.0 * a_) - std::log(2.0 * std::sqrt(pi * a_));
}

double TestFunction::hhat_derivative(double u) const { return -u / (2.0 * a_) * hhat(u); }

num::QuadResult TestFunction::hhat_quadrature(double u, double abs_tol) const {
  // (1/2pi) int h(r) e^{-iru} dr = (1/pi) int_0^inf h(r) cos(ru) dr; the
  // Gaussian is below 1e-19 beyond R.
  const double R = std::sqrt(44.0 / a_);
  auto f = [&](double r) { return h(r) * std::cos(r * u); };
  num::QuadResult res = num::integrate(f, 0.0, R, abs_tol * pi, 20000);
  res.value /= pi;
  res.abs_error = res.abs_error / pi + std::exp(-a_ * R * R) / pi;
  return res;
}

double TestFunction::hhat_support(double eps) const {
  const double lg = std::log(1.0 / (eps * 2.0 * std::sqrt(pi * a_)));
  return lg <= 0.0 ? 0.0 : std::sqrt(4.0 * a_ * lg);
}

double TestFunction::q(double t) const {
  if (t < 0.0) throw DomainError("Q(t) needs t >= 0");
  return hhat(std::acosh(1.0 + t / 2.0));
}

double TestFunction::q_derivative(double t) const {
  if (t < 0.0) throw DomainError("Q'(t) needs t >= 0");
  const double u = std::acosh(1.0 + t / 2.0);
  const double ratio = u == 0.0 ? 1.0 : u / std::sinh(u);
  return -ratio * hhat(u) / (4.0 * a_);
}

num::QuadResult TestFunction::phi(double x, double abs_tol) const {
  if (x < 0.0) throw DomainError("phi(x) needs x >= 0");
  auto f = [&](double s) { return q_derivative(x + s * s); };
  const num::QuadResult head = num::integrate(f, 0.0, 1.0, abs_tol / 2);
  const num::QuadResult tail = num::integrate_to_inf(f, 1.0, abs_tol / 2);
  num::QuadResult res;
  res.value = -2.0 / pi * (head.value + tail.value);
  res.abs_error = 2.0 / pi * (head.abs_error + tail.abs_error);
  res.evaluations = head.evaluations + tail.evaluations;
  return res;
}

num::QuadResult TestFunction::q_from_phi(double x, double abs_tol) const {
  if (x < 0.0) throw DomainError("Q(x) needs x >= 0");
  auto f = [&](double s) { return phi(x + s * s, abs_tol * 1e-2).value; };
  const num::QuadResult head = num::integrate(f, 0.0, 1.0, abs_tol / 4);
  const num::QuadResult tail = num::integrate_to_inf(f, 1.0, abs_tol / 4);
  num::QuadResult res;
  res.value = 2.0 * (head.value + tail.value);
  res.abs_error = 2.0 * (head.abs_error + tail.abs_error);
  res.evaluations = head.evaluations + tail.evaluations;
  return res;
}

double TestFunction::decay_certificate(double delta, double r_max) const {
  double sup = 0.0;
  for (int i = 0; i <= 10000; ++i) {
    const double r = r_max * i / 10000.0;
    sup = std::max(sup, h(r) * std::pow(1.0 + r, 2.0 + delta));
  }
  return sup;
}

} // namespace tracelab::selberg
