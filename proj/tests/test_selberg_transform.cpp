#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tracelab/errors.hpp"
#include "tracelab/selberg_transform.hpp"

using namespace tracelab;
using selberg::TestFunction;
using std::numbers::pi;

TEST_CASE("parse and serialize") {
  auto f = TestFunction::parse("gaussian:a=0.5");
  CHECK(f.width() == 0.5);
  CHECK(TestFunction::parse(f.serialize()).width() == 0.5);
  auto g = TestFunction::gaussian(0.1);
  CHECK(TestFunction::parse(g.serialize()).width() == g.width());
  CHECK_THROWS_AS(TestFunction::parse("lorentz:a=1"), DomainError);
  CHECK_THROWS_AS(TestFunction::parse("gaussian:a=abc"), DomainError);
  CHECK_THROWS_AS(TestFunction::parse("gaussian:a=-1"), DomainError);
  CHECK_THROWS_AS(TestFunction::gaussian(0.0), DomainError);
}

TEST_CASE("h is even and defined on the strip only") {
  auto f = TestFunction::gaussian(1.0);
  for (double r : {0.0, 0.3, 1.0, 4.0}) CHECK(f.h(r) == f.h(-r));
  const auto z = f.h(std::complex<double>(1.0, 0.5));
  CHECK(std::abs(z - std::exp(-std::complex<double>(1.0, 0.5) * std::complex<double>(1.0, 0.5))) <= 1e-15);
  CHECK_NOTHROW(f.h(std::complex<double>(0.0, 0.75)));
  CHECK_THROWS_AS(f.h(std::complex<double>(0.0, 0.8)), DomainError);
}

TEST_CASE("hhat closed form") {
  auto f = TestFunction::gaussian(1.0);
  CHECK(f.hhat(0.0) == doctest::Approx(0.28209479177387814347).epsilon(1e-15));
  for (double u : {0.1, 1.0, 5.0}) {
    CHECK(f.hhat(u) == f.hhat(-u));
    CHECK(f.log_hhat(u) == doctest::Approx(std::log(f.hhat(u))).epsilon(1e-14));
    const double h = 1e-5;
    CHECK(f.hhat_derivative(u) == doctest::Approx((f.hhat(u + h) - f.hhat(u - h)) / (2 * h)).epsilon(1e-7));
  }
  // Underflowed region stays finite in log form.
  CHECK(std::isfinite(f.log_hhat(100.0)));
  CHECK(f.log_hhat(100.0) == doctest::Approx(-2500.0 - std::log(2 * std::sqrt(pi))).epsilon(1e-14));
}

TEST_CASE("hhat by quadrature matches the closed form") {
  for (double a : {0.5, 1.0, 2.0}) {
    auto f = TestFunction::gaussian(a);
    for (double u = -20.0; u <= 20.0; u += 0.5) {
      const auto q = f.hhat_quadrature(u);
      REQUIRE(std::abs(q.value - f.hhat(u)) <= 1e-10);
    }
  }
}

TEST_CASE("hhat_support") {
  auto f = TestFunction::gaussian(1.0);
  for (double eps : {1e-3, 1e-12, 1e-300}) {
    const double u = f.hhat_support(eps);
    CHECK(f.hhat(u) <= eps * (1 + 1e-12));
    CHECK(f.hhat(u + 1.0) <= eps);
    CHECK(f.hhat(0.99 * u) > eps);
  }
}

TEST_CASE("Q, phi and the Abel round trip") {
  auto f = TestFunction::gaussian(1.0);
  CHECK(f.q(2.0) == doctest::Approx(0.18284679747135705866).epsilon(1e-14));
  CHECK(f.phi(0.0).value == doctest::Approx(0.073877372052471049713).epsilon(1e-12));
  for (double x : {0.0, 0.5, 2.0, 7.0}) {
    const double u = std::acosh(1 + x / 2);
    CHECK(f.q(x) == doctest::Approx(f.hhat(u)).epsilon(1e-14));
    const double h = 1e-5;
    if (x > h) CHECK(f.q_derivative(x) == doctest::Approx((f.q(x + h) - f.q(x - h)) / (2 * h)).epsilon(1e-6));
  }
  for (double a : {0.5, 1.0}) {
    auto g = TestFunction::gaussian(a);
    for (double x : {0.0, 0.5, 1.0, 3.0}) {
      const auto r = g.q_from_phi(x);
      CHECK(std::abs(r.value - g.q(x)) <= 1e-8);
    }
  }
  CHECK_THROWS_AS(f.phi(-1.0), DomainError);
  CHECK_THROWS_AS(f.q(-1.0), DomainError);
}

TEST_CASE("decay certificate is finite") {
  for (double a : {0.1, 1.0}) {
    auto f = TestFunction::gaussian(a);
    const double c = f.decay_certificate(0.5, 200.0);
    CHECK(std::isfinite(c));
    CHECK(c >= 1.0);
    for (double r : {10.0, 50.0, 150.0}) CHECK(f.h(r) * std::pow(1 + r, 2.5) <= c * (1 + 1e-12));
  }
}
