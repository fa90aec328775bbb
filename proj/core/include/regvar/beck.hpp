#pragma once

// Beck sequences delta^{n o} in G_rho and the Riemann sums built on them.
// Only Zero and Finite parameters are accepted: the sums run over [0, u].

#include <vector>

#include "regvar/haar.hpp"
#include "regvar/popa.hpp"

namespace regvar {

/// Partitions above this many cells are refused.
inline constexpr long kMaxBeckCells = 100000000;

/// (delta^{0o}, ..., delta^{io}) with delta^{(i-1)o} <= u < delta^{io}.
/// A u lying within 1e-12 (relative) of a Beck point is taken to equal it.
/// Throws DomainError for Infinity, non-positive delta or u, or more than
/// kMaxBeckCells cells.
std::vector<double> beck_partition(const PopaParam& param, double delta, double u);

/// Sum over the partition of g(delta^{mo}) * (min(delta^{mo}, u) - delta^{(m-1)o}) / eta(delta^{(m-1)o}).
/// Converges to integral_0^u g(t)/eta(t) dt at first order in delta.
double beck_riemann_sum(const RealFn& g, const PopaParam& param, double delta, double u);

/// K_delta * sum_{m=1}^{i} g(delta^{(m-1)o}). Throws DomainError for i < 0.
double goldie_sum(double K_delta, const RealFn& g, const PopaParam& param, double delta, long i);

}  // namespace regvar
