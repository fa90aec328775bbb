#pragma once

// Asymptotic operators of Karamata, Beurling and general regular variation,
// their exact pre-limit cocycle identities, numerical x -> inf limits, and
// index recovery from estimated kernels.

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "regvar/popa.hpp"
#include "regvar/sampled_function.hpp"

namespace regvar {

// ---- operators ------------------------------------------------------------

/// f(x t) / f(x).
double karamata_op(const SampledFunction& f, double t, double x);

/// phi(x + t phi(x)) / phi(x).
double eta_x(const SampledFunction& phi, double t, double x);

/// f(x + t phi(x)) / f(x).
double beurling_op(const SampledFunction& f, const SampledFunction& phi, double t, double x);

/// [f(x + t phi(x)) - f(x)] / h(x).
double general_op(const SampledFunction& f, const SampledFunction& phi, const SampledFunction& h,
                  double t, double x);

/// [f(lambda x) - f(x)] / h(x): the multiplicative Bojanic-Karamata/de Haan form.
double bkdh_op(const SampledFunction& f, const SampledFunction& h, double lambda, double x);

/// s o_{phi,x} t = s + t * eta_x(s), the Popa operation localised at x.
double local_circle(const SampledFunction& phi, double s, double t, double x);

// ---- cocycle identities (signed residuals, ~0 up to rounding) -------------

/// K(st, x) - K(s, xt) K(t, x).
double cocycle_residual_karamata(const SampledFunction& f, double s, double t, double x);

/// K(t o_{phi,x} s, x) - K(s, x o_phi t) K(t, x), with K the Beurling ratio.
double cocycle_residual_beurling(const SampledFunction& f, const SampledFunction& phi, double s, double t,
                                 double x);

/// K_h(t o_{phi,x} s, x) - [K_h(s, y) * h(y)/h(x) + K_h(t, x)], y = x o_phi t.
double cocycle_residual_general(const SampledFunction& f, const SampledFunction& phi,
                                const SampledFunction& h, double s, double t, double x);

// ---- limits -----------------------------------------------------------------

struct LimitScheme {
  double x0 = 10.0;
  double ratio = 2.0;
  int max_steps = 40;
  double tol = 1e-6;
  int stability_window = 3;

  void validate() const;
};

struct EstimationResult {
  double value = 0.0;
  bool converged = false;
  /// Largest pairwise |a-b|/(1+max(|a|,|b|)) over the final window.
  double last_delta = 0.0;
  int steps_used = 0;
};

/// Evaluates the curve on x0 * ratio^n and stops as soon as the last
/// `stability_window` values agree pairwise to tol (absolute plus relative).
/// If a tabulated input runs out of range after the first step, the data are
/// taken as exhausted and the result reflects the values seen so far. Other
/// evaluation failures are rethrown with the grid position attached.
EstimationResult estimate_limit(const std::function<double(double)>& op_curve, const LimitScheme& scheme);

/// rho_hat = (lim eta_x(t_probe) - 1) / t_probe.
EstimationResult estimate_eta_rho(const SampledFunction& phi, double t_probe, const LimitScheme& scheme);

/// Maps an estimated rho to a parameter: |rho_hat| <= tol is Zero.
PopaParam param_from_estimate(double rho_hat, double tol);

struct KernelPoint {
  double t = 0.0;
  EstimationResult estimate;
  /// t lies in G_rho_hat (always true when rho_hat was not estimated).
  bool in_domain = true;
};

/// Per-t limits of general_op; phi's index rho_hat is estimated and each t is
/// checked against G_rho_hat.
std::vector<KernelPoint> estimate_kernel(const SampledFunction& f, const SampledFunction& phi,
                                         const SampledFunction& h, const std::vector<double>& t_grid,
                                         const LimitScheme& scheme);

enum class KernelMode { Karamata, BKdH, Beurling, General };

struct KernelRequest {
  KernelMode mode = KernelMode::Karamata;
  /// Karamata and BKdH use multiplicative lambda unless `additive`, in which
  /// case t is a shift: f(x+t)/f(x) or [f(x+t)-f(x)]/h(x).
  bool additive = false;
};

/// Dispatches on mode. phi and h are ignored where the mode does not use them.
std::vector<KernelPoint> estimate_kernel(const KernelRequest& req, const SampledFunction& f,
                                         const SampledFunction& phi, const SampledFunction& h,
                                         const std::vector<double>& t_grid, const LimitScheme& scheme);

struct KappaFit {
  double kappa = 0.0;
  double rms_residual = 0.0;
};

/// Least squares for kappa in lift_sigma(K(t)) = kappa * lift_rho(t).
/// Throws DomainError on an empty or degenerate sample set or off-domain values.
KappaFit fit_kappa(const std::vector<std::pair<double, double>>& kernel_samples, const PopaParam& rho,
                   const PopaParam& sigma);

struct TwoPointIndex {
  double rho = 0.0;
  double rho1 = 0.0;
  double rho2 = 0.0;
  bool consistent = false;
  /// log(l1)/log(l2) is within 1e-9 of p/q with q <= 16.
  bool rational_ratio = false;
  long p = 0, q = 0;
};

/// Index from two kernel values g(l) = l^rho. Throws DomainError on l = 1 or
/// non-positive inputs.
TwoPointIndex two_point_index(double lambda1, double g1, double lambda2, double g2, double tol);

}  // namespace regvar
