#include <doctest.h>

#include <cmath>
#include <numeric>
#include <thread>
#include <vector>

#include "tracelab/arith.hpp"
#include "tracelab/errors.hpp"
#include "tracelab/oracles.hpp"
#include "tracelab/quadforms.hpp"

using namespace tracelab;
using arith::i64;
using quad::QuadOrder;

namespace {

bool valid_disc(i64 D) {
  const i64 r = ((D % 4) + 4) % 4;
  return D != 0 && (r == 0 || r == 1) && !arith::is_perfect_square(D);
}

} // namespace

TEST_CASE("QuadOrder construction") {
  auto o = QuadOrder::from_disc(-16);
  CHECK(o.fund_disc == -4);
  CHECK(o.conductor == 2);
  auto o2 = QuadOrder::from_disc(32);
  CHECK(o2.fund_disc == 8);
  CHECK(o2.conductor == 2);
  CHECK(QuadOrder::from_disc(-3).fund_disc == -3);
  CHECK(QuadOrder::from_disc(12).fund_disc == 12);
  CHECK_THROWS_AS(QuadOrder::from_disc(9), InvalidOrderError);
  CHECK_THROWS_AS(QuadOrder::from_disc(2), InvalidOrderError);
  CHECK_THROWS_AS(QuadOrder::from_disc(0), InvalidOrderError);
}

TEST_CASE("class numbers of small discriminants") {
  CHECK(quad::class_number(QuadOrder::from_disc(-4)) == 1);
  CHECK(quad::class_number(QuadOrder::from_disc(-23)) == 3);
  CHECK(quad::class_number(QuadOrder::from_disc(5)) == 1);
  CHECK(quad::narrow_class_number(QuadOrder::from_disc(12)) == 2);
  CHECK(quad::class_number(QuadOrder::from_disc(12)) == 1);
}

TEST_CASE("class numbers agree with the analytic formula") {
  for (i64 D = -800; D <= 800; ++D) {
    if (!valid_disc(D)) continue;
    const auto o = QuadOrder::from_disc(D);
    const auto ref = oracle::analytic_class_number(D);
    INFO("disc " << D);
    REQUIRE(quad::class_number(o) == ref.h_wide);
    REQUIRE(quad::narrow_class_number(o) == ref.h_narrow);
    if (D > 0) REQUIRE(quad::has_norm_minus_one_unit(o) == ref.norm_minus_one);
  }
}

TEST_CASE("narrow class numbers agree with bounded SL2(Z) orbits") {
  for (i64 D = -150; D <= 150; ++D) {
    if (!valid_disc(D)) continue;
    const i64 box = oracle::box_form_classes(D, std::abs(D) / 2 + 8);
    INFO("disc " << D);
    REQUIRE(box > 0);
    CHECK(quad::narrow_class_number(QuadOrder::from_disc(D)) == box);
  }
}

TEST_CASE("imaginary reduced forms are reduced and primitive") {
  for (i64 D = -3; D >= -600; --D) {
    if (!valid_disc(D)) continue;
    for (const auto& f : quad::reduced_forms(D)) {
      REQUIRE(f.b * f.b - 4 * f.a * f.c == D);
      REQUIRE(std::abs(f.b) <= f.a);
      REQUIRE(f.a <= f.c);
      if (std::abs(f.b) == f.a || f.a == f.c) REQUIRE(f.b >= 0);
      REQUIRE(std::gcd(std::gcd(f.a, std::abs(f.b)), f.c) == 1);
    }
  }
}

TEST_CASE("unit data examples") {
  auto u3 = quad::unit_data(QuadOrder::from_disc(-3));
  CHECK(u3.imaginary);
  CHECK(u3.torsion_order == 6);
  auto u5 = quad::unit_data(QuadOrder::from_disc(5));
  CHECK(u5.x == 3);
  CHECK(u5.y == 1);
  CHECK(u5.log_eps == doctest::Approx(std::log((3 + std::sqrt(5.0)) / 2)));
  auto u8 = quad::unit_data(QuadOrder::from_disc(8));
  CHECK(u8.x == 6);
  CHECK(u8.y == 2);
  CHECK(quad::has_norm_minus_one_unit(QuadOrder::from_disc(5)));
  CHECK_FALSE(quad::has_norm_minus_one_unit(QuadOrder::from_disc(12)));
  CHECK(quad::has_norm_minus_one_unit(QuadOrder::from_disc(8)));
  CHECK_THROWS_AS(quad::has_norm_minus_one_unit(QuadOrder::from_disc(-4)), DomainError);
}

TEST_CASE("norm-one units satisfy Pell exactly and are minimal") {
  for (i64 D = 5; D <= 2000; ++D) {
    if (!valid_disc(D)) continue;
    const auto u = quad::unit_data(QuadOrder::from_disc(D));
    INFO("disc " << D);
    REQUIRE(u.x * u.x - D * u.y * u.y == 4);
    REQUIRE(u.y > 0);
    // Exhaustive search over smaller y; only run where it is cheap.
    if (u.y <= 200000) {
      const auto s = oracle::pell_search(D, static_cast<i64>(u.y), true);
      REQUIRE(s.found);
      REQUIRE(s.y == u.y);
      REQUIRE(s.x == u.x);
    }
    const double le = std::log((static_cast<double>(u.x) + static_cast<double>(u.y) * std::sqrt(double(D))) / 2);
    REQUIRE(u.log_eps == doctest::Approx(le).epsilon(1e-12));
    REQUIRE(quad::log_norm_one_unit(D) == doctest::Approx(le).epsilon(1e-12));
  }
}

TEST_CASE("torsion orders") {
  for (i64 D = -3; D >= -2000; --D) {
    if (!valid_disc(D)) continue;
    const int w = D == -3 ? 6 : (D == -4 ? 4 : 2);
    REQUIRE(quad::torsion_order(D) == w);
  }
}

TEST_CASE("superorders examples") {
  auto s = quad::superorders_of_element(3, 1);
  REQUIRE(s.size() == 1);
  CHECK(s[0].disc == 5);
  s = quad::superorders_of_element(0, 1);
  REQUIRE(s.size() == 1);
  CHECK(s[0].disc == -4);
  s = quad::superorders_of_element(6, 1);
  REQUIRE(s.size() == 2);
  CHECK(s[0].disc == 32);
  CHECK(s[1].disc == 8);
  CHECK_THROWS_AS(quad::superorders_of_element(2, 1), ExceptionalTraceError);
  CHECK_THROWS_AS(quad::superorders_of_element(6, 5), ExceptionalTraceError);
}

TEST_CASE("superorders contain Z[gamma] and have square cofactors") {
  for (i64 n : {1, 2, 3, 5, 7}) {
    for (i64 t = 0; t <= 80; ++t) {
      const i64 D0 = t * t - 4 * n;
      if (arith::is_perfect_square(D0)) continue;
      auto s = quad::superorders_of_element(t, n);
      REQUIRE(s.front().disc == D0);
      i64 count = 0;
      for (i64 f = 1; f * f <= std::abs(D0); ++f)
        if (D0 % (f * f) == 0 && valid_disc(D0 / (f * f))) ++count;
      REQUIRE(static_cast<i64>(s.size()) == count);
      for (const auto& o : s) {
        REQUIRE(D0 % o.disc == 0);
        REQUIRE(arith::is_perfect_square(D0 / o.disc));
      }
    }
  }
}

TEST_CASE("class_info cache is consistent across threads") {
  quad::clear_cache();
  std::vector<i64> discs;
  for (i64 D = 5; D <= 3000; ++D)
    if (valid_disc(D)) discs.push_back(D);
  std::vector<std::vector<i64>> out(4, std::vector<i64>(discs.size()));
  std::vector<std::thread> ts;
  for (int k = 0; k < 4; ++k)
    ts.emplace_back([&, k] {
      for (std::size_t i = 0; i < discs.size(); ++i)
        out[k][i] = quad::class_info(QuadOrder::from_disc(discs[i])).h_narrow;
    });
  for (auto& t : ts) t.join();
  for (int k = 1; k < 4; ++k) CHECK(out[k] == out[0]);
}

TEST_CASE("kronecker oracle matches quadratic residues") {
  for (i64 p : {3, 5, 7, 11, 13}) {
    for (i64 D = -50; D <= 50; ++D) {
      if (D % p == 0) {
        REQUIRE(oracle::kronecker(D, p) == 0);
        continue;
      }
      bool qr = false;
      for (i64 x = 1; x < p; ++x) qr = qr || (x * x - D) % p == 0;
      REQUIRE(oracle::kronecker(D, p) == (qr ? 1 : -1));
    }
  }
}
