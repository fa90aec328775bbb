#include "regvar/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <stdexcept>
#include <string>

#include "regvar/errors.hpp"

namespace regvar {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double positive_value(const SampledFunction& f, double x, const char* name) {
  const double v = f(x);
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(name) + "(" + fmt(x) + ") = " + fmt(v) + " is not a positive finite value");
  }
  return v;
}

double shifted_point(const SampledFunction& phi, double t, double x, double* phi_x = nullptr) {
  const double px = positive_value(phi, x, "phi");
  if (phi_x) *phi_x = px;
  return x + t * px;
}

}  // namespace

double karamata_op(const SampledFunction& f, double t, double x) {
  if (!(t > 0.0) || !(x > 0.0)) throw DomainError("Karamata operator needs t > 0 and x > 0");
  return positive_value(f, x * t, "f") / positive_value(f, x, "f");
}

double eta_x(const SampledFunction& phi, double t, double x) {
  double px = 0.0;
  const double y = shifted_point(phi, t, x, &px);
  return positive_value(phi, y, "phi") / px;
}

double beurling_op(const SampledFunction& f, const SampledFunction& phi, double t, double x) {
  const double y = shifted_point(phi, t, x);
  if (!(y > 0.0)) throw DomainError("x + t phi(x) = " + fmt(y) + " must be > 0");
  return positive_value(f, y, "f") / positive_value(f, x, "f");
}

double general_op(const SampledFunction& f, const SampledFunction& phi, const SampledFunction& h, double t,
                  double x) {
  const double hx = positive_value(h, x, "h");
  const double y = shifted_point(phi, t, x);
  return (f(y) - f(x)) / hx;
}

double bkdh_op(const SampledFunction& f, const SampledFunction& h, double lambda, double x) {
  if (!(lambda > 0.0) || !(x > 0.0)) throw DomainError("BKdH operator needs lambda > 0 and x > 0");
  const double hx = positive_value(h, x, "h");
  return (f(lambda * x) - f(x)) / hx;
}

double local_circle(const SampledFunction& phi, double s, double t, double x) {
  return s + t * eta_x(phi, s, x);
}

double cocycle_residual_karamata(const SampledFunction& f, double s, double t, double x) {
  return karamata_op(f, s * t, x) - karamata_op(f, s, x * t) * karamata_op(f, t, x);
}

double cocycle_residual_beurling(const SampledFunction& f, const SampledFunction& phi, double s, double t,
                                 double x) {
  const double y = shifted_point(phi, t, x);
  const double lhs = beurling_op(f, phi, local_circle(phi, t, s, x), x);
  return lhs - beurling_op(f, phi, s, y) * beurling_op(f, phi, t, x);
}

double cocycle_residual_general(const SampledFunction& f, const SampledFunction& phi,
                                const SampledFunction& h, double s, double t, double x) {
  const double y = shifted_point(phi, t, x);
  const double lhs = general_op(f, phi, h, local_circle(phi, t, s, x), x);
  const double rhs = general_op(f, phi, h, s, y) * beurling_op(h, phi, t, x) + general_op(f, phi, h, t, x);
  return lhs - rhs;
}

// ---------------------------------------------------------------------------

void LimitScheme::validate() const {
  if (!(x0 > 0.0) || !std::isfinite(x0)) throw std::invalid_argument("LimitScheme: x0 must be > 0");
  if (!(ratio > 1.0) || !std::isfinite(ratio)) throw std::invalid_argument("LimitScheme: ratio must be > 1");
  if (max_steps < 1) throw std::invalid_argument("LimitScheme: max_steps must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("LimitScheme: tol must be > 0");
  if (stability_window < 2) throw std::invalid_argument("LimitScheme: stability_window must be >= 2");
}

namespace {

double window_delta(const std::deque<double>& w) {
  if (w.size() < 2) return kInf;
  double worst = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      const double a = w[i], b = w[j];
      if (!std::isfinite(a) || !std::isfinite(b)) return kInf;
      worst = std::max(worst, std::fabs(a - b) / (1.0 + std::max(std::fabs(a), std::fabs(b))));
    }
  }
  return worst;
}

std::string grid_position(int n, double x) { return " (grid step " + std::to_string(n) + ", x = " + fmt(x) + ")"; }

}  // namespace

EstimationResult estimate_limit(const std::function<double(double)>& op_curve, const LimitScheme& scheme) {
  scheme.validate();
  const auto window = static_cast<std::size_t>(scheme.stability_window);
  EstimationResult r;
  std::deque<double> recent;
  for (int n = 0; n < scheme.max_steps; ++n) {
    const double x = scheme.x0 * std::pow(scheme.ratio, n);
    double v = 0.0;
    try {
      v = op_curve(x);
    } catch (const RangeError& e) {
      if (n > 0) break;  // tabulated data exhausted
      throw RangeError(e.what() + grid_position(n, x));
    } catch (const DomainError& e) {
      throw DomainError(e.what() + grid_position(n, x));
    } catch (const std::exception& e) {
      throw std::runtime_error(e.what() + grid_position(n, x));
    }
    recent.push_back(v);
    if (recent.size() > window) recent.pop_front();
    r.value = v;
    r.steps_used = n + 1;
    r.last_delta = window_delta(recent);
    if (recent.size() == window && r.last_delta <= scheme.tol) {
      r.converged = true;
      break;
    }
  }
  return r;
}

EstimationResult estimate_eta_rho(const SampledFunction& phi, double t_probe, const LimitScheme& scheme) {
  if (t_probe == 0.0 || !std::isfinite(t_probe)) throw DomainError("t_probe must be finite and non-zero");
  return estimate_limit([&](double x) { return (eta_x(phi, t_probe, x) - 1.0) / t_probe; }, scheme);
}

PopaParam param_from_estimate(double rho_hat, double tol) {
  if (std::fabs(rho_hat) <= tol) return PopaParam::zero();
  if (rho_hat < 0.0) throw DomainError("estimated index " + fmt(rho_hat) + " is negative");
  return PopaParam::finite(rho_hat);
}

std::vector<KernelPoint> estimate_kernel(const SampledFunction& f, const SampledFunction& phi,
                                         const SampledFunction& h, const std::vector<double>& t_grid,
                                         const LimitScheme& scheme) {
  return estimate_kernel(KernelRequest{KernelMode::General, false}, f, phi, h, t_grid, scheme);
}

std::vector<KernelPoint> estimate_kernel(const KernelRequest& req, const SampledFunction& f,
                                         const SampledFunction& phi, const SampledFunction& h,
                                         const std::vector<double>& t_grid, const LimitScheme& scheme) {
  scheme.validate();
  const SampledFunction one = SampledFunction::constant(1.0);
  const bool uses_phi = req.mode == KernelMode::Beurling || req.mode == KernelMode::General;
  std::optional<double> rho_hat;
  if (uses_phi) rho_hat = std::max(0.0, estimate_eta_rho(phi, 1.0, scheme).value);

  std::vector<KernelPoint> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    KernelPoint kp;
    kp.t = t;
    std::function<double(double)> curve;
    switch (req.mode) {
      case KernelMode::Karamata:
        if (req.additive) {
          curve = [&, t](double x) { return beurling_op(f, one, t, x); };
        } else {
          kp.in_domain = t > 0.0;
          curve = [&, t](double x) { return karamata_op(f, t, x); };
        }
        break;
      case KernelMode::BKdH:
        if (req.additive) {
          curve = [&, t](double x) { return general_op(f, one, h, t, x); };
        } else {
          kp.in_domain = t > 0.0;
          curve = [&, t](double x) { return bkdh_op(f, h, t, x); };
        }
        break;
      case KernelMode::Beurling:
        curve = [&, t](double x) { return beurling_op(f, phi, t, x); };
        break;
      case KernelMode::General:
        curve = [&, t](double x) { return general_op(f, phi, h, t, x); };
        break;
    }
    if (rho_hat) kp.in_domain = 1.0 + *rho_hat * t > 0.0;
    if (kp.in_domain) {
      kp.estimate = estimate_limit(curve, scheme);
    } else {
      kp.estimate.value = std::numeric_limits<double>::quiet_NaN();
      kp.estimate.last_delta = kInf;
    }
    out.push_back(kp);
  }
  return out;
}

KappaFit fit_kappa(const std::vector<std::pair<double, double>>& kernel_samples, const PopaParam& rho,
                   const PopaParam& sigma) {
  if (kernel_samples.empty()) throw DomainError("fit_kappa: no samples");
  double sxx = 0.0, sxy = 0.0;
  std::vector<std::pair<double, double>> lifted;
  lifted.reserve(kernel_samples.size());
  for (const auto& [t, k] : kernel_samples) {
    rho.require(t);
    sigma.require(k);
    const double x = raw::to_additive(rho, t);
    const double y = raw::to_additive(sigma, k);
    lifted.emplace_back(x, y);
    sxx += x * x;
    sxy += x * y;
  }
  if (!(sxx > 0.0)) throw DomainError("fit_kappa: every sample sits at the identity");
  KappaFit fit;
  fit.kappa = sxy / sxx;
  double ss = 0.0;
  for (const auto& [x, y] : lifted) ss += (y - fit.kappa * x) * (y - fit.kappa * x);
  fit.rms_residual = std::sqrt(ss / static_cast<double>(lifted.size()));
  return fit;
}

TwoPointIndex two_point_index(double lambda1, double g1, double lambda2, double g2, double tol) {
  for (double l : {lambda1, lambda2}) {
    if (!(l > 0.0) || !std::isfinite(l)) throw DomainError("lambda must be finite and > 0");
    if (l == 1.0) throw DomainError("lambda = 1 carries no index information");
  }
  if (!(g1 > 0.0) || !(g2 > 0.0)) throw DomainError("kernel values must be > 0");
  TwoPointIndex r;
  const double l1 = std::log(lambda1), l2 = std::log(lambda2);
  r.rho1 = std::log(g1) / l1;
  r.rho2 = std::log(g2) / l2;
  r.rho = 0.5 * (r.rho1 + r.rho2);
  r.consistent = std::fabs(r.rho1 - r.rho2) <= tol;
  const double ratio = l1 / l2;
  for (long q = 1; q <= 16; ++q) {
    const double p = std::round(ratio * static_cast<double>(q));
    if (std::fabs(ratio - p / static_cast<double>(q)) <= 1e-9 * std::max(1.0, std::fabs(ratio))) {
      r.rational_ratio = true;
      r.p = static_cast<long>(p);
      r.q = q;
      break;
    }
  }
  return r;
}

}  // namespace regvar
