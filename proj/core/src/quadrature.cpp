#include "regvar/quadrature.hpp"

#include <stdexcept>

namespace regvar {

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw std::invalid_argument("quadrature tolerances must be > 0");
  if (max_subdivisions < 1) throw std::invalid_argument("max_subdivisions must be >= 1");
  if (!(truncation > 0.0) || !std::isfinite(truncation)) {
    throw std::invalid_argument("truncation must be finite and > 0");
  }
}

std::vector<double> uniform_breaks(double a, double b, double max_width) {
  long n = 1;
  if (max_width > 0.0 && std::isfinite(max_width)) {
    n = std::max(1L, static_cast<long>(std::ceil((b - a) / max_width)));
  }
  std::vector<double> br(static_cast<std::size_t>(n) + 1);
  for (long i = 0; i <= n; ++i) br[static_cast<std::size_t>(i)] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n);
  br.back() = b;
  return br;
}

}  // namespace regvar
