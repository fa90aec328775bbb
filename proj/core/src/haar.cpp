#include "regvar/haar.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "regvar/errors.hpp"

namespace regvar {

namespace {

// Panels of at most one oscillation period (and never wider than 2 in w).
std::vector<double> oscillation_breaks(double a, double b, double frequency) {
  double width = 2.0;
  if (frequency != 0.0) width = std::min(width, 2.0 * std::numbers::pi / std::fabs(frequency));
  return uniform_breaks(a, b, width);
}

}  // namespace

Interval::Interval(PopaParam param, double lo, double hi) : param_(param), lo_(lo), hi_(hi) {
  param_.require(lo_);
  param_.require(hi_);
  if (!(lo_ < hi_)) throw DomainError("interval requires lo < hi");
}

Interval Interval::translated(double g) const {
  return Interval(param_, circle(param_, g, lo_), circle(param_, g, hi_));
}

double haar_interval_measure(const Interval& iv) {
  const PopaParam& p = iv.param();
  switch (p.kind()) {
    case PopaParam::Kind::Zero: return iv.hi() - iv.lo();
    case PopaParam::Kind::Finite:
      // log(eta(hi)/eta(lo)) as a single log1p
      return haar_scale(p) * std::log1p(p.rho() * (iv.hi() - iv.lo()) / (1.0 + p.rho() * iv.lo()));
    case PopaParam::Kind::Infinity: return std::log(iv.hi() / iv.lo());
  }
  return 0.0;
}

QuadratureResult<double> haar_integrate(const RealFn& f, const Interval& iv, const QuadratureSpec& q) {
  q.validate();
  const PopaParam p = iv.param();
  const double s = haar_scale(p);
  const double wa = raw::to_additive(p, iv.lo());
  const double wb = raw::to_additive(p, iv.hi());
  auto integrand = [&](double w) { return s * f(raw::from_additive(p, w)); };
  const auto br = uniform_breaks(wa, wb, 2.0);
  return integrate_panels<double>(integrand, br, q);
}

QuadratureResult<double> haar_integrate_group(const RealFn& f, const PopaParam& p, const QuadratureSpec& q) {
  q.validate();
  const double s = haar_scale(p);
  auto integrand = [&](double w) { return s * f(raw::from_additive(p, w)); };
  const auto br = uniform_breaks(-q.truncation, q.truncation, 2.0);
  return integrate_panels<double>(integrand, br, q);
}

Complex character_eval(const PopaParam& p, double gamma, double u) {
  p.require(u);
  const double phase = gamma * raw::to_additive(p, u);
  return {std::cos(phase), std::sin(phase)};
}

RealFn pullback_f_rho(RealFn f, const PopaParam& p) {
  const double s = haar_scale(p);
  return [f = std::move(f), p, s](double t) {
    return s * f(from_multiplicative(p, t).value());
  };
}

RealFn from_pullback(RealFn f_rho, const PopaParam& p) {
  const double s = haar_scale(p);
  return [f_rho = std::move(f_rho), p, s](double u) {
    return f_rho(to_multiplicative(PopaPoint(p, u))) / s;
  };
}

QuadratureResult<Complex> fourier_popa(const RealFn& f, const PopaParam& p, double gamma,
                                       const QuadratureSpec& q) {
  q.validate();
  const double s = haar_scale(p);
  auto integrand = [&](double w) -> Complex {
    const double v = f(raw::from_additive(p, w));
    if (v == 0.0) return {0.0, 0.0};
    return s * v * Complex(std::cos(gamma * w), -std::sin(gamma * w));
  };
  const auto br = oscillation_breaks(-q.truncation, q.truncation, gamma);
  return integrate_panels<Complex>(integrand, br, q);
}

QuadratureResult<Complex> mellin_popa(const RealFn& f, const PopaParam& p, Complex z,
                                      const QuadratureSpec& q) {
  q.validate();
  const double s = haar_scale(p);
  auto integrand = [&](double w) -> Complex {
    const double v = f(raw::from_additive(p, w));
    if (v == 0.0) return {0.0, 0.0};
    return s * v * std::exp(-z * w);
  };
  const auto br = oscillation_breaks(-q.truncation, q.truncation, z.imag());
  return integrate_panels<Complex>(integrand, br, q);
}

QuadratureResult<double> popa_convolution(const RealFn& f, const RealFn& g, const PopaPoint& x,
                                          const QuadratureSpec& q) {
  q.validate();
  const PopaParam p = x.param();
  const double s = haar_scale(p);
  const double wx = raw::to_additive(p, x.value());
  auto integrand = [&](double w) {
    const double fv = f(raw::from_additive(p, -w));
    if (fv == 0.0) return 0.0;
    return s * fv * g(raw::from_additive(p, wx + w));
  };
  const auto br = uniform_breaks(-q.truncation, q.truncation, 1.0);
  return integrate_panels<double>(integrand, br, q);
}

QuadratureResult<double> beurling_convolution(const RealFn& F, const RealFn& H, const RealFn& phi,
                                              double x, const QuadratureSpec& q,
                                              std::optional<Support> f_support) {
  q.validate();
  const double px = phi(x);
  if (!(px > 0.0) || !std::isfinite(px)) {
    throw DomainError("Beurling convolution needs phi(x) > 0, got phi(" + std::to_string(x) +
                      ") = " + std::to_string(px));
  }
  double a = -q.truncation;
  double b = q.truncation;
  if (f_support) {
    // F(-t) != 0 only for -t in [lo, hi]
    a = std::max(a, -f_support->hi);
    b = std::min(b, -f_support->lo);
  }
  if (!(a < b)) return {0.0, 0.0, true, 0, 0};
  auto integrand = [&](double t) {
    const double fv = F(-t);
    if (fv == 0.0) return 0.0;
    return fv * H(x + t * px);
  };
  const auto br = uniform_breaks(a, b, 1.0);
  return integrate_panels<double>(integrand, br, q);
}

}  // namespace regvar
