#pragma once

// Popa groups G_rho = {t : 1 + rho*t > 0} under x o y = x + y + rho*x*y.
//
// Three kinds of parameter are kept distinct:
//   Zero      the additive reals (R, +), identity 0
//   Finite    0 < rho < inf, identity 0, centre -1/rho
//   Infinity  the multiplicative reals (R+, x), identity 1
//
// Every group is isomorphic to (R, +) through the additive coordinate
//   Zero: t,   Finite: log(1 + rho*t),   Infinity: log t
// and to (R+, x) through its exponential. Most of the library is written
// against those two maps rather than against the kind.

#include <compare>
#include <string>
#include <string_view>

namespace regvar {

class PopaParam {
 public:
  enum class Kind { Zero, Finite, Infinity };

  /// Values with 1 + rho*t at or below this are treated as off-domain.
  static constexpr double kDomainGuard = 1e-300;

  static PopaParam zero() noexcept { return PopaParam(Kind::Zero, 0.0); }
  static PopaParam infinity() noexcept;
  /// Throws DomainError unless rho is finite and strictly positive.
  static PopaParam finite(double rho);
  /// "0", "inf", or a positive decimal. Decimal zero maps to Zero.
  static PopaParam parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  bool is_zero() const noexcept { return kind_ == Kind::Zero; }
  bool is_finite() const noexcept { return kind_ == Kind::Finite; }
  bool is_infinity() const noexcept { return kind_ == Kind::Infinity; }

  /// 0 for Zero, +inf for Infinity.
  double rho() const noexcept { return rho_; }
  /// The Popa centre rho* = -1/rho: -inf for Zero, 0 for Infinity.
  double centre() const noexcept;
  /// 1_G: 0 except for Infinity where it is 1.
  double identity() const noexcept { return kind_ == Kind::Infinity ? 1.0 : 0.0; }

  bool contains(double t) const noexcept;
  /// Throws DomainError naming the parameter when t is not in G_rho.
  void require(double t) const;

  /// "0", "inf" or the shortest round-tripping decimal.
  std::string to_string() const;

  friend bool operator==(const PopaParam&, const PopaParam&) = default;

 private:
  PopaParam(Kind k, double rho) noexcept : kind_(k), rho_(rho) {}
  Kind kind_;
  double rho_;
};

/// An element of G_rho. Construction validates membership.
class PopaPoint {
 public:
  PopaPoint(PopaParam param, double value);

  const PopaParam& param() const noexcept { return param_; }
  double value() const noexcept { return value_; }

  static PopaPoint identity(PopaParam p) { return PopaPoint(p, p.identity()); }

 private:
  PopaParam param_;
  double value_;
};

// ---- raw-value kernels (caller guarantees membership) ---------------------

namespace raw {
double eta(const PopaParam& p, double t) noexcept;
double circle(const PopaParam& p, double x, double y) noexcept;
double inverse(const PopaParam& p, double t) noexcept;
double to_additive(const PopaParam& p, double t) noexcept;
double from_additive(const PopaParam& p, double w) noexcept;
double norm(const PopaParam& p, double t) noexcept;
}  // namespace raw

// ---- checked operations ---------------------------------------------------

/// eta_rho(t): 1 + rho*t (Finite), 1 (Zero), t (Infinity).
double eta(const PopaParam& p, double t);

PopaPoint circle(const PopaPoint& x, const PopaPoint& y);
double circle(const PopaParam& p, double x, double y);

PopaPoint inverse(const PopaPoint& x);
double inverse(const PopaParam& p, double t);

/// n-fold product delta o ... o delta, with n = 0 giving the identity.
/// Negative n takes powers of the inverse.
double power(const PopaParam& p, double delta, long n);

/// Group norm: |t| (Zero), |log(1+rho t)|(1+rho)/rho (Finite), |log t| (Infinity).
double norm(const PopaPoint& x);
double norm(const PopaParam& p, double t);

/// Invariant distance ||x o y^{-1}||.
double distance(const PopaPoint& x, const PopaPoint& y);

/// Order on G_rho: the usual order of the reals.
bool leq(const PopaPoint& x, const PopaPoint& y);
/// Same relation computed from the group: x <= y iff y o x^{-1} lies in the
/// closed positive cone.
bool group_leq(const PopaPoint& x, const PopaPoint& y);
bool in_positive_cone(const PopaPoint& x);

/// Isomorphism G_rho -> (R+, x): exp (Zero), 1 + rho t (Finite), t (Infinity).
double to_multiplicative(const PopaPoint& x);
/// Throws DomainError when v <= 0.
PopaPoint from_multiplicative(const PopaParam& p, double v);

/// Isomorphism G_rho -> (R, +). Finite uses log1p for accuracy near 0.
double to_additive(const PopaPoint& x);
PopaPoint from_additive(const PopaParam& p, double w);

/// Normalising constant of the Haar density: (1+rho)/rho for Finite, else 1.
double haar_scale(const PopaParam& p) noexcept;

}  // namespace regvar
