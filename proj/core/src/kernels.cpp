#include "regvar/kernels.hpp"

#include <cmath>
#include <string>

#include "regvar/errors.hpp"

namespace regvar {

double kernel_eval(const KernelParams& kp, double t) {
  kp.rho.require(t);
  if (kp.kappa == 0.0) return kp.sigma.identity();
  const double w = kp.kappa * raw::to_additive(kp.rho, t);
  const double z = raw::from_additive(kp.sigma, w);
  kp.sigma.require(z);
  return z;
}

double kernel_inverse(const KernelParams& kp, double z) {
  if (kp.kappa == 0.0) throw DomainError("kernel with kappa = 0 is constant and has no inverse");
  kp.sigma.require(z);
  const double t = raw::from_additive(kp.rho, raw::to_additive(kp.sigma, z) / kp.kappa);
  kp.rho.require(t);
  return t;
}

double bg_residual(const RealFn& K, const RealFn& g, const PopaParam& rho, double u, double v) {
  const double uv = circle(rho, u, v);
  return K(uv) - (g(v) * K(u) + K(v));
}

double cj_residual(const RealFn& g, const PopaParam& rho, double u, double v) {
  const double uv = circle(rho, u, v);
  return g(uv) - g(u) * g(v);
}

RealFn prop6_K_from_g(RealFn g, double kappa_const) {
  const double g0 = g(0.0);
  if (!(std::fabs(g0 - 1.0) <= 1e-10)) {
    throw DomainError("auxiliary function must satisfy g(0) = 1, got " + std::to_string(g0));
  }
  return [g = std::move(g), kappa_const](double t) { return kappa_const * (g(t) - 1.0); };
}

GoldieAux::GoldieAux(PopaParam rho_, double gamma_) : rho(rho_), gamma(gamma_) {
  if (!rho.is_finite()) throw DomainError("Goldie auxiliary function needs a finite rho > 0");
}

double goldie_g(const GoldieAux& aux, double t) {
  aux.rho.require(t);
  return std::exp(-aux.gamma * std::log1p(aux.rho.rho() * t));
}

double goldie_g_prime(const GoldieAux& aux, double t) {
  aux.rho.require(t);
  const double r = aux.rho.rho();
  return -aux.gamma * r * std::exp((-aux.gamma - 1.0) * std::log1p(r * t));
}

double goldie_G(const GoldieAux& aux, double u) {
  aux.rho.require(u);
  const double r = aux.rho.rho();
  const double l = std::log1p(r * u);
  if (aux.gamma == 0.0) return l / r;
  return -std::expm1(-aux.gamma * l) / (aux.gamma * r);
}

QuadratureResult<double> goldie_G_numeric(const GoldieAux& aux, double u, const QuadratureSpec& q) {
  aux.rho.require(u);
  if (u == 0.0) return {0.0, 0.0, true, 0, 0};
  const double lo = std::min(0.0, u);
  const double hi = std::max(0.0, u);
  auto r = haar_integrate([&](double t) { return goldie_g(aux, t); }, Interval(aux.rho, lo, hi), q);
  r.value /= 1.0 + aux.rho.rho();
  r.error /= 1.0 + aux.rho.rho();
  if (u < 0.0) r.value = -r.value;
  return r;
}

double goldie_ode_residual(const GoldieAux& aux, double c1, double kappa_const, double u) {
  if (kappa_const == 0.0) throw DomainError("ODE residual needs kappa != 0");
  return kappa_const * goldie_g_prime(aux, u) - c1 * goldie_g(aux, u) / raw::eta(aux.rho, u);
}

}  // namespace regvar
