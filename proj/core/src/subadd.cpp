#include "regvar/subadd.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

#include "regvar/errors.hpp"

namespace regvar {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double eval_in(const RealFn& S, const PopaParam& sigma, double x) {
  const double v = S(x);
  if (!std::isfinite(v) || !sigma.contains(v)) {
    throw DomainError("S(" + fmt(x) + ") = " + fmt(v) + " is not in G_" + sigma.to_string());
  }
  return v;
}

std::vector<double> ball_probes(const PopaParam& p, double centre, double delta, int probes) {
  p.require(centre);
  const double c = raw::to_additive(p, centre);
  const double half = delta / haar_scale(p);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(probes));
  for (int k = 0; k < probes; ++k) {
    const double s = probes == 1 ? 0.0 : -1.0 + 2.0 * k / (probes - 1);
    out.push_back(raw::from_additive(p, c + s * half));
  }
  return out;
}

}  // namespace

void GridSpec::validate() const {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) throw std::invalid_argument("grid needs lo < hi");
  if (n < 2) throw std::invalid_argument("grid needs n >= 2");
  if (spacing == Spacing::Geometric && !(lo > 0.0)) throw std::invalid_argument("geometric grid needs lo > 0");
}

std::vector<double> GridSpec::nodes() const {
  validate();
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double s = static_cast<double>(k) / (n - 1);
    out[static_cast<std::size_t>(k)] =
        spacing == Spacing::Linear ? lo + s * (hi - lo) : lo * std::pow(hi / lo, s);
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

SubaddReport subadditivity_check(const RealFn& S, const PopaParam& rho, const PopaParam& sigma,
                                 const GridSpec& grid, double tol) {
  const std::vector<double> xs = grid.nodes();
  std::vector<double> sx(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) {
    rho.require(xs[k]);
    sx[k] = eval_in(S, sigma, xs[k]);
  }
  const double slack = 1e-12 * std::max(std::fabs(grid.lo), std::fabs(grid.hi));
  SubaddReport r;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i; j < xs.size(); ++j) {
      const double z = raw::circle(rho, xs[i], xs[j]);
      if (z < grid.lo - slack || z > grid.hi + slack) {
        ++r.pairs_skipped;
        continue;
      }
      ++r.pairs_checked;
      const double v = std::max(0.0, eval_in(S, sigma, z) - raw::circle(sigma, sx[i], sx[j]));
      if (v > r.worst_violation) {
        r.worst_violation = v;
        r.worst_pair = {xs[i], xs[j]};
      }
    }
  }
  r.holds = r.worst_violation <= tol;
  return r;
}

SubaddReport additively_bounded_check(const RealFn& S, const KernelParams& kp, const std::vector<double>& samples,
                                      double tol) {
  SubaddReport r;
  for (double t : samples) {
    const double s = S(t);
    const double v = std::max(0.0, s - kernel_eval(kp, t));
    ++r.pairs_checked;
    if (r.pairs_checked == 1 || v > r.worst_violation) {
      r.worst_violation = v;
      r.worst_pair = {t, s};
    }
  }
  r.holds = r.worst_violation <= tol;
  return r;
}

std::vector<double> default_hs_sequence() {
  std::vector<double> seq;
  for (int n = 1; n <= 40; ++n) seq.push_back(std::ldexp(1.0, -n));
  return seq;
}

HsProbe heiberg_seneta_probe(const RealFn& S, const std::vector<double>& sequence, double tol) {
  if (sequence.size() < 8) throw std::invalid_argument("probe sequence needs at least 8 terms");
  for (std::size_t k = 0; k < sequence.size(); ++k) {
    if (!(sequence[k] > 0.0)) throw std::invalid_argument("probe sequence must be positive");
    if (k > 0 && !(sequence[k] < sequence[k - 1])) {
      throw std::invalid_argument("probe sequence must be strictly decreasing");
    }
  }
  HsProbe r;
  r.limsup_estimate = -std::numeric_limits<double>::infinity();
  for (std::size_t k = sequence.size() / 2; k < sequence.size(); ++k) {
    const double v = S(sequence[k]);
    if (std::isnan(v)) throw DomainError("S(" + fmt(sequence[k]) + ") is NaN");
    r.limsup_estimate = std::max(r.limsup_estimate, v);
  }
  r.passes = r.limsup_estimate <= tol;
  return r;
}

SandwichReport prop5_sandwich_check(const RealFn& S, const PopaParam& rho, const PopaParam& sigma, double a, double b,
                                 double delta, double M, int probes, double tol) {
  if (!(delta > 0.0)) throw DomainError("delta must be > 0");
  if (probes < 1) throw std::invalid_argument("probes must be >= 1");
  sigma.require(M);
  SandwichReport r;
  for (double x : ball_probes(rho, a, delta, probes)) {
    if (S(x) > M + tol) {
      r.premise_ok = false;
      return r;
    }
  }
  rho.require(b);
  const double lower = raw::circle(sigma, eval_in(S, sigma, raw::circle(rho, b, a)), raw::inverse(sigma, M));
  const double upper = raw::circle(sigma, eval_in(S, sigma, raw::circle(rho, b, raw::inverse(rho, a))), M);
  for (double x : ball_probes(rho, b, delta, probes)) {
    const double s = S(x);
    const double v = std::max({0.0, lower - s, s - upper});
    if (v > r.worst_violation) {
      r.worst_violation = v;
      r.worst_x = x;
    }
  }
  r.holds = r.worst_violation <= tol;
  return r;
}

}  // namespace regvar
