#pragma once

// Grid checks of Popa subadditivity S(x o_rho y) <= S(x) o_sigma S(y) and of
// the related one-sided bounds.

#include <utility>
#include <vector>

#include "regvar/haar.hpp"
#include "regvar/kernels.hpp"
#include "regvar/popa.hpp"

namespace regvar {

struct GridSpec {
  enum class Spacing { Linear, Geometric };

  double lo = 0.0;
  double hi = 1.0;
  int n = 2;
  Spacing spacing = Spacing::Linear;

  /// Throws std::invalid_argument unless lo < hi, n >= 2 and (geometric) lo > 0.
  void validate() const;
  /// The n nodes, both endpoints included.
  std::vector<double> nodes() const;
};

struct SubaddReport {
  bool holds = true;
  double worst_violation = 0.0;
  std::pair<double, double> worst_pair{0.0, 0.0};
  long pairs_checked = 0;
  /// Pairs whose product fell outside [lo, hi].
  long pairs_skipped = 0;
};

/// Every pair x <= y of grid nodes with x o_rho y inside [lo, hi]; the
/// violation is max(0, S(x o y) - S(x) o_sigma S(y)). Throws DomainError,
/// naming the node, if a grid node is off G_rho or an S value is off G_sigma.
SubaddReport subadditivity_check(const RealFn& S, const PopaParam& rho, const PopaParam& sigma,
                                 const GridSpec& grid, double tol);

/// S(t) <= K_kappa(t) on every sample; worst_pair holds (t, S(t)).
SubaddReport additively_bounded_check(const RealFn& S, const KernelParams& kp, const std::vector<double>& samples,
                                      double tol);

struct HsProbe {
  double limsup_estimate = 0.0;
  bool passes = false;
};

/// 2^-n for n = 1..40.
std::vector<double> default_hs_sequence();

/// Max of S over the second half of a strictly decreasing positive sequence
/// of length >= 8. Throws std::invalid_argument on a malformed sequence.
HsProbe heiberg_seneta_probe(const RealFn& S, const std::vector<double>& sequence, double tol);

struct SandwichReport {
  bool holds = true;
  /// S <= M held on the probes of the ball around a. When false the check is
  /// vacuous and `holds` is true.
  bool premise_ok = true;
  double worst_violation = 0.0;
  double worst_x = 0.0;
};

/// With S <= M on B_delta(a), checks
///   S(b o a) o_sigma M^{-1} <= S(x) <= S(b o a^{-1}) o_sigma M
/// on `probes` points of B_delta(b). Balls are taken in the invariant metric,
/// so they are intervals of half-width delta/haar_scale in additive coordinates.
SandwichReport prop5_sandwich_check(const RealFn& S, const PopaParam& rho, const PopaParam& sigma, double a, double b,
                                 double delta, double M, int probes, double tol = 1e-12);

}  // namespace regvar
