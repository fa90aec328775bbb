#pragma once

// Haar measure, characters, Fourier/Mellin transforms and convolutions on the
// Popa groups.
//
// The normalised Haar measure of G_rho has density (1+rho)/(1+rho t) against
// Lebesgue measure (dt for rho = 0, dt/t for rho = inf). In the additive
// coordinate w = log eta_rho(t) it is haar_scale(rho) * dw, so every integral
// here is evaluated in w, where the density is flat and the Popa centre sits
// at w = -inf.

#include <complex>
#include <functional>
#include <optional>

#include "regvar/popa.hpp"
#include "regvar/quadrature.hpp"

namespace regvar {

using Complex = std::complex<double>;
using RealFn = std::function<double(double)>;

/// (lo, hi) inside G_param; lo < hi.
class Interval {
 public:
  Interval(PopaParam param, double lo, double hi);

  const PopaParam& param() const noexcept { return param_; }
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

  /// g o (lo, hi) = (g o lo, g o hi).
  Interval translated(double g) const;

 private:
  PopaParam param_;
  double lo_, hi_;
};

double haar_interval_measure(const Interval& iv);

/// Integral of f against the Haar measure over iv.
QuadratureResult<double> haar_integrate(const RealFn& f, const Interval& iv, const QuadratureSpec& q);

/// Integral of f over the whole group, truncated to |w| <= q.truncation.
QuadratureResult<double> haar_integrate_group(const RealFn& f, const PopaParam& param,
                                              const QuadratureSpec& q);

/// gamma(u) = exp(i*gamma*w(u)) with w the additive coordinate.
Complex character_eval(const PopaParam& param, double gamma, double u);

/// f_rho(t) = haar_scale * f(eta^{-1}(t)) on (0, inf); for Zero eta^{-1} is log.
RealFn pullback_f_rho(RealFn f, const PopaParam& param);
/// Inverse of pullback_f_rho: u -> f_rho(eta(u)) / haar_scale.
RealFn from_pullback(RealFn f_rho, const PopaParam& param);

/// Integral of f(u) * gamma(u^{-1}) dHaar(u); equals the ordinary Fourier
/// transform of w -> f_rho(e^w), truncated to [-T, T].
QuadratureResult<Complex> fourier_popa(const RealFn& f, const PopaParam& param, double gamma,
                                       const QuadratureSpec& q);

/// Integral of f_rho(t) t^{-z} dt/t, truncated to |log t| <= T.
QuadratureResult<Complex> mellin_popa(const RealFn& f, const PopaParam& param, Complex z,
                                      const QuadratureSpec& q);

/// (f * g)(x) = integral of f(t^{-1}) g(x o t) dHaar(t).
QuadratureResult<double> popa_convolution(const RealFn& f, const RealFn& g, const PopaPoint& x,
                                          const QuadratureSpec& q);

/// Closed interval outside which F vanishes.
struct Support {
  double lo, hi;
};

/// (F *_phi H)(x) = integral of F(-t) H(x + t phi(x)) dt.
/// H is evaluated only where F(-t) is non-zero; pass `f_support` to restrict
/// the window further than [-T, T].
QuadratureResult<double> beurling_convolution(const RealFn& F, const RealFn& H, const RealFn& phi,
                                              double x, const QuadratureSpec& q,
                                              std::optional<Support> f_support = std::nullopt);

}  // namespace regvar
