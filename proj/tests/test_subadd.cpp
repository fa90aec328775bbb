#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "regvar/errors.hpp"
#include "regvar/kernels.hpp"
#include "regvar/subadd.hpp"
#include "support/generators.hpp"

using namespace regvar;
using regvar::testing::kCellParams;

namespace {

GridSpec grid_for(const PopaParam& p) {
  switch (p.kind()) {
    case PopaParam::Kind::Zero: return {-2.0, 2.0, 41, GridSpec::Spacing::Linear};
    case PopaParam::Kind::Finite: return {-0.5, 2.0, 41, GridSpec::Spacing::Linear};
    case PopaParam::Kind::Infinity: return {0.2, 5.0, 41, GridSpec::Spacing::Geometric};
  }
  return {};
}

RealFn fstar(double gamma) {
  return [gamma](double u) { return (1.0 - std::pow(1.0 + u, -gamma)) / gamma; };
}

}  // namespace

TEST_SUITE("subadd") {

TEST_CASE("grids") {
  const auto lin = GridSpec{0.0, 10.0, 11, GridSpec::Spacing::Linear}.nodes();
  CHECK(lin.size() == 11);
  CHECK(lin[3] == doctest::Approx(3.0));
  CHECK(lin.back() == 10.0);
  const auto geo = GridSpec{1.0, 100.0, 3, GridSpec::Spacing::Geometric}.nodes();
  CHECK(geo[1] == doctest::Approx(10.0));
  CHECK_THROWS_AS((GridSpec{1.0, 1.0, 3}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((GridSpec{0.0, 1.0, 1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((GridSpec{0.0, 1.0, 3, GridSpec::Spacing::Geometric}.validate()), std::invalid_argument);
}

TEST_CASE("classical examples") {
  const auto sq = subadditivity_check([](double x) { return std::sqrt(x); }, PopaParam::zero(), PopaParam::zero(),
                                      {0.0, 10.0, 101}, 1e-12);
  CHECK(sq.holds);
  CHECK(sq.pairs_checked > 0);
  CHECK(sq.pairs_skipped > 0);
  const auto x2 = subadditivity_check([](double x) { return x * x; }, PopaParam::zero(), PopaParam::zero(),
                                      {0.0, 2.0, 21}, 1e-12);
  CHECK_FALSE(x2.holds);
  CHECK(x2.worst_violation == doctest::Approx(2.0));
  CHECK(x2.worst_pair.first == doctest::Approx(1.0));
  CHECK(x2.worst_pair.second == doctest::Approx(1.0));
}

TEST_CASE("every kernel is subadditive with equality") {
  for (const PopaParam& rho : kCellParams) {
    for (const PopaParam& sigma : kCellParams) {
      CAPTURE(rho.to_string());
      CAPTURE(sigma.to_string());
      const KernelParams kp{rho, sigma, 0.7};
      const auto r = subadditivity_check([kp](double t) { return kernel_eval(kp, t); }, rho, sigma, grid_for(rho), 1e-10);
      CHECK(r.holds);
      CHECK(r.worst_violation <= 1e-10);
      CHECK(r.pairs_checked > 100);
    }
  }
}

TEST_CASE("closed-form Goldie function under the rho = 1, sigma = 0 reading") {
  const GridSpec grid{0.0, 5.0, 51};
  for (double gamma : {0.5, 1.0, 2.0}) {
    CAPTURE(gamma);
    CHECK(subadditivity_check(fstar(gamma), PopaParam::finite(1), PopaParam::zero(), grid, 1e-12).holds);
  }
  const auto neg = subadditivity_check(fstar(-1.0), PopaParam::finite(1), PopaParam::zero(), grid, 1e-12);
  CHECK_FALSE(neg.holds);
  // for gamma = -1 the violation at (x, y) is exactly xy
  CHECK(neg.worst_violation == doctest::Approx(neg.worst_pair.first * neg.worst_pair.second));
}

TEST_CASE("property: violations persist under refinement") {
  regvar::testing::Gen gen(0x5ab0001u);
  for (int k = 0; k < 20; ++k) {
    const double a = gen.uniform(1.1, 3.0);
    const RealFn S = [a](double x) { return std::pow(x, a) - 0.3 * x; };
    const GridSpec coarse{0.0, 2.0, 11};
    const GridSpec fine{0.0, 2.0, 41};
    const auto rc = subadditivity_check(S, PopaParam::zero(), PopaParam::zero(), coarse, 1e-12);
    const auto rf = subadditivity_check(S, PopaParam::zero(), PopaParam::zero(), fine, 1e-12);
    REQUIRE(rf.worst_violation >= rc.worst_violation - 1e-12);
  }
}

TEST_CASE("values off the codomain group are reported") {
  try {
    subadditivity_check([](double x) { return x - 5.0; }, PopaParam::zero(), PopaParam::infinity(), {0.0, 2.0, 5}, 1e-9);
    FAIL("expected a domain error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("S(0)") != std::string::npos);
  }
  CHECK_THROWS_AS(subadditivity_check([](double x) { return x; }, PopaParam::infinity(), PopaParam::zero(),
                                      {-1.0, 2.0, 5}, 1e-9),
                  DomainError);
}

TEST_CASE("additively bounded") {
  const KernelParams kp{PopaParam::zero(), PopaParam::zero(), 2.0};
  const RealFn K = [kp](double t) { return kernel_eval(kp, t); };
  std::vector<double> ts;
  for (int n = 1; n <= 50; ++n) ts.push_back(1.0 / (n * n));
  auto r = additively_bounded_check(K, kp, ts, 1e-12);
  CHECK(r.holds);
  CHECK(r.worst_violation == 0.0);
  r = additively_bounded_check([K](double t) { return K(t) + 1.0; }, kp, ts, 1e-12);
  CHECK_FALSE(r.holds);
  CHECK(r.worst_violation == doctest::Approx(1.0));
  std::vector<double> tail(ts.begin() + 1, ts.end());
  CHECK(additively_bounded_check([](double t) { return std::sin(t) * t; }, kp, tail, 1e-12).holds);
}

TEST_CASE("Heiberg-Seneta probe") {
  const auto seq = default_hs_sequence();
  CHECK(seq.size() == 40);
  CHECK(seq.front() == 0.5);
  for (const PopaParam& rho : {PopaParam::zero(), PopaParam::finite(1)}) {
    for (const PopaParam& sigma : {PopaParam::zero(), PopaParam::finite(2)}) {
      const KernelParams kp{rho, sigma, 1.3};
      const auto r = heiberg_seneta_probe([kp](double t) { return kernel_eval(kp, t); }, seq, 1e-5);
      CHECK(r.passes);
      CHECK(r.limsup_estimate > 0.0);
    }
  }
  const auto c = heiberg_seneta_probe([](double) { return 1.0; }, seq, 1e-6);
  CHECK_FALSE(c.passes);
  CHECK(c.limsup_estimate == 1.0);
  const auto ent = heiberg_seneta_probe([](double u) { return -u * std::log(u); }, seq, 1e-4);
  CHECK(ent.passes);
  CHECK(ent.limsup_estimate > 0.0);
  CHECK_THROWS_AS(heiberg_seneta_probe([](double) { return 0.0; }, {0.5, 0.25}, 1e-6), std::invalid_argument);
  CHECK_THROWS_AS(heiberg_seneta_probe([](double) { return 0.0; }, {1, 2, 3, 4, 5, 6, 7, 8}, 1e-6),
                  std::invalid_argument);
}

TEST_CASE("kernels tend to zero from the left") {
  const KernelParams kp{PopaParam::finite(1), PopaParam::zero(), 2.0};
  double prev = std::fabs(kernel_eval(kp, -0.5));
  for (int n = 2; n < 30; ++n) {
    const double v = std::fabs(kernel_eval(kp, -std::ldexp(1.0, -n)));
    REQUIRE(v < prev);
    prev = v;
  }
  CHECK(prev < 1e-8);
}

TEST_CASE("bound propagation sandwich") {
  const RealFn root = [](double x) { return std::sqrt(x); };
  auto r = prop5_sandwich_check(root, PopaParam::zero(), PopaParam::zero(), 1.0, 4.0, 0.5, std::sqrt(1.5), 101);
  CHECK(r.premise_ok);
  CHECK(r.holds);
  r = prop5_sandwich_check([](double) { return 0.0; }, PopaParam::finite(1), PopaParam::zero(), 0.5, 1.0, 0.3, 0.0, 51);
  CHECK(r.holds);
  r = prop5_sandwich_check(root, PopaParam::zero(), PopaParam::zero(), 1.0, 4.0, 0.5, 1.0, 101);
  CHECK_FALSE(r.premise_ok);
  CHECK(r.holds);

  for (const PopaParam& rho : kCellParams) {
    for (const PopaParam& sigma : kCellParams) {
      const KernelParams kp{rho, sigma, 0.9};
      const RealFn K = [kp](double t) { return kernel_eval(kp, t); };
      const double a = raw::from_additive(rho, 0.2), b = raw::from_additive(rho, 0.7), delta = 0.3;
      const double wa = raw::to_additive(rho, a), half = delta / haar_scale(rho);
      const double M = std::max(K(raw::from_additive(rho, wa - half)), K(raw::from_additive(rho, wa + half)));
      const auto rk = prop5_sandwich_check(K, rho, sigma, a, b, delta, M, 201, 1e-12);
      CHECK(rk.premise_ok);
      CHECK(rk.holds);
    }
  }
}

}  // TEST_SUITE
