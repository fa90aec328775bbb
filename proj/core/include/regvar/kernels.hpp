#pragma once

// The canonical additive maps K_kappa : G_rho -> G_sigma and the auxiliary
// function of the Goldie argument.
//
// Every cell of the (rho, sigma) table is the same formula once both groups
// are lifted to (R, +):
//
//   K_kappa(t) = lift_sigma^{-1}( kappa * lift_rho(t) )
//
// e.g. (0,0): kappa t;  (rho,sigma): ((1+rho t)^kappa - 1)/sigma;
// (inf,0): kappa log t;  (0,inf): e^{kappa t}.

#include <functional>

#include "regvar/haar.hpp"
#include "regvar/popa.hpp"
#include "regvar/quadrature.hpp"

namespace regvar {

struct KernelParams {
  PopaParam rho = PopaParam::zero();
  PopaParam sigma = PopaParam::zero();
  double kappa = 0.0;
};

double kernel_eval(const KernelParams& kp, double t);

/// Throws DomainError when kappa == 0 or z is not in G_sigma.
double kernel_inverse(const KernelParams& kp, double z);

/// K(u o v) - [g(v) K(u) + K(v)], signed.
double bg_residual(const RealFn& K, const RealFn& g, const PopaParam& rho, double u, double v);

/// g(u o v) - g(u) g(v), signed. With g = eta this is the Golab-Schinzel check.
double cj_residual(const RealFn& g, const PopaParam& rho, double u, double v);

/// t -> kappa_const * (g(t) - 1). Throws DomainError unless |g(0) - 1| <= 1e-10.
RealFn prop6_K_from_g(RealFn g, double kappa_const);

/// g(t) = (1 + rho t)^{-gamma}; callers apply any overall scale c themselves.
struct GoldieAux {
  GoldieAux(PopaParam rho, double gamma);
  PopaParam rho;
  double gamma;
};

double goldie_g(const GoldieAux& aux, double t);
/// Analytic derivative of goldie_g.
double goldie_g_prime(const GoldieAux& aux, double t);

/// G(u) = integral_0^u g(t) dt / eta(t), closed form:
///   [1 - (1+rho u)^{-gamma}] / (gamma rho),   or log(1+rho u)/rho at gamma = 0.
double goldie_G(const GoldieAux& aux, double u);

/// The same integral evaluated as haar_integrate(g)/(1+rho).
QuadratureResult<double> goldie_G_numeric(const GoldieAux& aux, double u, const QuadratureSpec& q);

/// kappa g'(u) - c1 g(u)/eta(u). Zero exactly when gamma = -c1/(kappa rho).
double goldie_ode_residual(const GoldieAux& aux, double c1, double kappa_const, double u);

}  // namespace regvar
