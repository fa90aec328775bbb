#include "regvar/beck.hpp"

#include <algorithm>
#include <cmath>

#include "regvar/errors.hpp"

namespace regvar {

namespace {

void require_beck_param(const PopaParam& p) {
  if (p.is_infinity()) throw DomainError("Beck partitions need rho = 0 or finite rho");
}

double beck_point(const PopaParam& p, double delta, long n) {
  const double dn = static_cast<double>(n);
  if (p.is_zero()) return dn * delta;
  return std::expm1(dn * std::log1p(p.rho() * delta)) / p.rho();
}

// Smallest i with u < delta^{io}, treating near-coincidence as equality.
long beck_index(const PopaParam& p, double delta, double u) {
  const double approx = p.is_zero() ? u / delta : std::log1p(p.rho() * u) / std::log1p(p.rho() * delta);
  if (!(approx < static_cast<double>(kMaxBeckCells))) {
    throw DomainError("Beck partition too fine: more than 1e8 cells");
  }
  long i = std::max(1L, static_cast<long>(std::floor(approx)) - 1);
  const auto below = [&](long n) {
    const double pn = beck_point(p, delta, n);
    return u < pn && std::fabs(u - pn) > 1e-12 * std::max(1.0, std::fabs(u));
  };
  while (i > 1 && below(i - 1)) --i;
  while (!below(i)) ++i;
  if (i > kMaxBeckCells) throw DomainError("Beck partition too fine: more than 1e8 cells");
  return i;
}

void validate(const PopaParam& p, double delta, double u) {
  require_beck_param(p);
  if (!(delta > 0.0) || !std::isfinite(delta)) throw DomainError("delta must be finite and > 0");
  if (!(u > 0.0) || !std::isfinite(u)) throw DomainError("u must be finite and > 0");
}

}  // namespace

std::vector<double> beck_partition(const PopaParam& param, double delta, double u) {
  validate(param, delta, u);
  const long i = beck_index(param, delta, u);
  std::vector<double> pts(static_cast<std::size_t>(i) + 1);
  for (long n = 0; n <= i; ++n) pts[static_cast<std::size_t>(n)] = beck_point(param, delta, n);
  return pts;
}

double beck_riemann_sum(const RealFn& g, const PopaParam& param, double delta, double u) {
  validate(param, delta, u);
  const long i = beck_index(param, delta, u);
  double sum = 0.0;
  double prev = 0.0;
  for (long m = 1; m <= i; ++m) {
    const double cur = beck_point(param, delta, m);
    const double width = std::min(cur, u) - prev;
    if (width > 0.0) sum += g(cur) * width / raw::eta(param, prev);
    prev = cur;
  }
  return sum;
}

double goldie_sum(double K_delta, const RealFn& g, const PopaParam& param, double delta, long i) {
  require_beck_param(param);
  if (i < 0) throw DomainError("goldie_sum needs i >= 0");
  if (!(delta > 0.0)) throw DomainError("delta must be > 0");
  double sum = 0.0;
  for (long m = 1; m <= i; ++m) sum += g(beck_point(param, delta, m - 1));
  return K_delta * sum;
}

}  // namespace regvar
