#include <doctest.h>

#include <cmath>
#include <numeric>

#include "regvar/beck.hpp"
#include "regvar/errors.hpp"
#include "regvar/kernels.hpp"
#include "support/generators.hpp"

using namespace regvar;
using regvar::testing::Gen;

TEST_SUITE("beck") {

TEST_CASE("partition examples") {
  const auto a = beck_partition(PopaParam::zero(), 0.25, 1.0);
  REQUIRE(a.size() == 6);
  CHECK(a[4] == 1.0);
  CHECK(a[5] == 1.25);
  const auto b = beck_partition(PopaParam::finite(1), 0.1, 0.21);
  REQUIRE(b.size() == 4);
  CHECK(b[1] == doctest::Approx(0.1));
  CHECK(b[2] == doctest::Approx(0.21));
  CHECK(b[3] == doctest::Approx(0.331));
  const auto c = beck_partition(PopaParam::finite(1), 0.5, 0.2);
  CHECK(c.size() == 2);
}

TEST_CASE("property: sandwich, increments and telescoping") {
  Gen gen(0xbec0001u);
  for (int k = 0; k < 300; ++k) {
    const PopaParam p = gen.coin() ? PopaParam::zero() : PopaParam::finite(gen.uniform(0.1, 5));
    const double delta = gen.uniform(0.001, 0.3), u = gen.uniform(0.01, 3);
    const auto pts = beck_partition(p, delta, u);
    const std::size_t i = pts.size() - 1;
    REQUIRE(pts[0] == 0.0);
    REQUIRE(pts[i - 1] <= u * (1 + 1e-12));
    REQUIRE(u < pts[i]);
    double sum = 0.0;
    for (std::size_t m = 1; m <= i; ++m) {
      const double inc = pts[m] - pts[m - 1];
      REQUIRE(inc == doctest::Approx(delta * raw::eta(p, pts[m - 1])).epsilon(1e-9));
      sum += inc;
    }
    REQUIRE(sum == doctest::Approx(pts[i]).epsilon(1e-12));
  }
}

TEST_CASE("partition errors") {
  CHECK_THROWS_AS(beck_partition(PopaParam::infinity(), 0.1, 1.0), DomainError);
  CHECK_THROWS_AS(beck_partition(PopaParam::zero(), 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(beck_partition(PopaParam::zero(), 0.1, -1.0), DomainError);
  CHECK_THROWS_AS(beck_partition(PopaParam::zero(), 1e-10, 1.0), DomainError);
}

TEST_CASE("Riemann sums converge at first order") {
  const RealFn one = [](double) { return 1.0; };
  const PopaParam p = PopaParam::finite(1);
  double prev = std::fabs(beck_riemann_sum(one, p, 0.04, 1.0) - std::log(2.0));
  for (double d : {0.02, 0.01, 0.005, 0.0025}) {
    const double e = std::fabs(beck_riemann_sum(one, p, d, 1.0) - std::log(2.0));
    CAPTURE(d);
    CHECK(prev / e >= 1.6);
    CHECK(prev / e <= 2.4);
    prev = e;
  }
}

TEST_CASE("Riemann sum of eta is exact") {
  Gen gen(0xbec0002u);
  for (int k = 0; k < 100; ++k) {
    const PopaParam p = PopaParam::finite(gen.uniform(0.1, 4));
    const double delta = gen.uniform(0.001, 0.2), u = gen.uniform(0.05, 3);
    const RealFn eta_fn = [p](double t) { return raw::eta(p, t); };
    REQUIRE(beck_riemann_sum(eta_fn, p, delta, u) == doctest::Approx((1 + p.rho() * delta) * u).epsilon(1e-12));
  }
}

TEST_CASE("degenerate partitions") {
  const RealFn g = [](double t) { return 2.0 + t; };
  const double s = beck_riemann_sum(g, PopaParam::finite(1), 0.5, 0.1);
  CHECK(s <= 2.5 * 0.5 * 1.0);
  CHECK(s == doctest::Approx(2.5 * 0.1));
}

TEST_CASE("goldie_sum") {
  const PopaParam p = PopaParam::finite(1);
  const RealFn one = [](double) { return 1.0; };
  CHECK(goldie_sum(0.7, one, p, 0.1, 0) == 0.0);
  CHECK(goldie_sum(0.7, one, p, 0.1, 5) == doctest::Approx(3.5));
  CHECK_THROWS_AS(goldie_sum(1, one, p, 0.1, -1), DomainError);
}

TEST_CASE("goldie_sum reconstructs G on Beck points") {
  const GoldieAux aux(PopaParam::finite(1), 2.0);
  const RealFn g = [&](double t) { return goldie_g(aux, t); };
  const double c1 = 1.7;
  for (double delta : {0.1, 0.01}) {
    for (long i : {1L, 5L, 40L}) {
      const double point = power(aux.rho, delta, i);
      const double exact = goldie_sum(c1 * goldie_G(aux, delta), g, aux.rho, delta, i);
      CHECK(exact == doctest::Approx(c1 * goldie_G(aux, point)).epsilon(1e-12));
    }
  }
  // with K(delta) replaced by its first-order term the error is O(delta)
  double prev = 0.0;
  for (double delta : {0.02, 0.01, 0.005}) {
    const long i = static_cast<long>(std::log1p(1.0) / std::log1p(delta));
    const double err = std::fabs(goldie_sum(c1 * delta, g, aux.rho, delta, i) - c1 * goldie_G(aux, power(aux.rho, delta, i)));
    if (prev > 0) CHECK(prev / err == doctest::Approx(2.0).epsilon(0.2));
    prev = err;
  }
}

}  // TEST_SUITE
