#include "regvar/popa.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

#include "regvar/errors.hpp"

namespace regvar {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

PopaParam PopaParam::infinity() noexcept { return PopaParam(Kind::Infinity, kInf); }

PopaParam PopaParam::finite(double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw DomainError("Popa parameter must be finite and > 0, got " + fmt(rho));
  }
  return PopaParam(Kind::Finite, rho);
}

PopaParam PopaParam::parse(std::string_view text) {
  if (text == "inf" || text == "Inf" || text == "INF") return infinity();
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || text.empty()) {
    throw ParseError("invalid Popa parameter '" + std::string(text) +
                     "' (expected \"0\", \"inf\" or a positive decimal)");
  }
  if (!std::isfinite(v) || v < 0.0) {
    throw ParseError("Popa parameter must be \"inf\" or a decimal >= 0, got '" +
                     std::string(text) + "'");
  }
  if (v == 0.0) return zero();
  return finite(v);
}

double PopaParam::centre() const noexcept {
  switch (kind_) {
    case Kind::Zero: return -kInf;
    case Kind::Finite: return -1.0 / rho_;
    case Kind::Infinity: return 0.0;
  }
  return 0.0;
}

bool PopaParam::contains(double t) const noexcept {
  if (!std::isfinite(t)) return false;
  switch (kind_) {
    case Kind::Zero: return true;
    case Kind::Finite: return 1.0 + rho_ * t > kDomainGuard;
    case Kind::Infinity: return t > kDomainGuard;
  }
  return false;
}

void PopaParam::require(double t) const {
  if (!contains(t)) {
    throw DomainError(fmt(t) + " is not in G_" + to_string());
  }
}

std::string PopaParam::to_string() const {
  switch (kind_) {
    case Kind::Zero: return "0";
    case Kind::Infinity: return "inf";
    case Kind::Finite: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", rho_);
      // shortest representation that round-trips
      for (int prec = 1; prec <= 17; ++prec) {
        char b[32];
        std::snprintf(b, sizeof b, "%.*g", prec, rho_);
        if (std::strtod(b, nullptr) == rho_) return b;
      }
      return buf;
    }
  }
  return "?";
}

PopaPoint::PopaPoint(PopaParam param, double value) : param_(param), value_(value) {
  param_.require(value_);
}

// ---------------------------------------------------------------------------

namespace raw {

double eta(const PopaParam& p, double t) noexcept {
  switch (p.kind()) {
    case PopaParam::Kind::Zero: return 1.0;
    case PopaParam::Kind::Finite: return 1.0 + p.rho() * t;
    case PopaParam::Kind::Infinity: return t;
  }
  return 1.0;
}

double circle(const PopaParam& p, double x, double y) noexcept {
  switch (p.kind()) {
    case PopaParam::Kind::Zero: return x + y;
    case PopaParam::Kind::Finite: return std::fma(p.rho(), x * y, x + y);
    case PopaParam::Kind::Infinity: return x * y;
  }
  return 0.0;
}

double inverse(const PopaParam& p, double t) noexcept {
  switch (p.kind()) {
    case PopaParam::Kind::Zero: return -t;
    case PopaParam::Kind::Finite: return -t / (1.0 + p.rho() * t);
    case PopaParam::Kind::Infinity: return 1.0 / t;
  }
  return 0.0;
}

double to_additive(const PopaParam& p, double t) noexcept {
  switch (p.kind()) {
    case PopaParam::Kind::Zero: return t;
    case PopaParam::Kind::Finite: return std::log1p(p.rho() * t);
    case PopaParam::Kind::Infinity: return std::log(t);
  }
  return 0.0;
}

double from_additive(const PopaParam& p, double w) noexcept {
  switch (p.kind()) {
    case PopaParam::Kind::Zero: return w;
    case PopaParam::Kind::Finite: return std::expm1(w) / p.rho();
    case PopaParam::Kind::Infinity: return std::exp(w);
  }
  return 0.0;
}

double norm(const PopaParam& p, double t) noexcept {
  switch (p.kind()) {
    case PopaParam::Kind::Zero: return std::fabs(t);
    case PopaParam::Kind::Finite:
      return std::fabs(std::log1p(p.rho() * t)) * ((1.0 + p.rho()) / p.rho());
    case PopaParam::Kind::Infinity: return std::fabs(std::log(t));
  }
  return 0.0;
}

}  // namespace raw

// ---------------------------------------------------------------------------

namespace {

void require_same(const PopaParam& a, const PopaParam& b) {
  if (!(a == b)) {
    throw ParamMismatch("Popa parameter mismatch: G_" + a.to_string() + " vs G_" + b.to_string());
  }
}

}  // namespace

double eta(const PopaParam& p, double t) {
  p.require(t);
  return raw::eta(p, t);
}

PopaPoint circle(const PopaPoint& x, const PopaPoint& y) {
  require_same(x.param(), y.param());
  return PopaPoint(x.param(), raw::circle(x.param(), x.value(), y.value()));
}

double circle(const PopaParam& p, double x, double y) {
  p.require(x);
  p.require(y);
  const double r = raw::circle(p, x, y);
  p.require(r);
  return r;
}

PopaPoint inverse(const PopaPoint& x) {
  return PopaPoint(x.param(), raw::inverse(x.param(), x.value()));
}

double inverse(const PopaParam& p, double t) {
  p.require(t);
  return raw::inverse(p, t);
}

double power(const PopaParam& p, double delta, long n) {
  p.require(delta);
  const double dn = static_cast<double>(n);
  double r = 0.0;
  switch (p.kind()) {
    case PopaParam::Kind::Zero: r = dn * delta; break;
    case PopaParam::Kind::Finite: r = std::expm1(dn * std::log1p(p.rho() * delta)) / p.rho(); break;
    case PopaParam::Kind::Infinity: r = std::pow(delta, dn); break;
  }
  p.require(r);
  return r;
}

double norm(const PopaPoint& x) { return raw::norm(x.param(), x.value()); }

double norm(const PopaParam& p, double t) {
  p.require(t);
  return raw::norm(p, t);
}

double distance(const PopaPoint& x, const PopaPoint& y) {
  require_same(x.param(), y.param());
  const PopaParam& p = x.param();
  // ||x o y^{-1}|| is a difference of additive coordinates; this avoids
  // forming the group element explicitly.
  return haar_scale(p) *
         std::fabs(raw::to_additive(p, x.value()) - raw::to_additive(p, y.value()));
}

bool leq(const PopaPoint& x, const PopaPoint& y) {
  require_same(x.param(), y.param());
  return x.value() <= y.value();
}

bool in_positive_cone(const PopaPoint& x) { return x.value() >= x.param().identity(); }

bool group_leq(const PopaPoint& x, const PopaPoint& y) {
  require_same(x.param(), y.param());
  const PopaParam& p = x.param();
  const double xi = raw::inverse(p, x.value());
  const double d = raw::circle(p, y.value(), xi);
  // ties: y o y^{-1} can land a few ulps below the identity
  const double e = p.identity();
  double scale = std::fabs(y.value()) + std::fabs(xi);
  if (p.is_finite()) scale += p.rho() * std::fabs(y.value() * xi);
  if (p.is_infinity()) scale = std::fabs(y.value() * xi);
  if (std::fabs(d - e) <= 4.0 * std::numeric_limits<double>::epsilon() * scale) return true;
  return d >= e;
}

double to_multiplicative(const PopaPoint& x) {
  const PopaParam& p = x.param();
  return p.is_zero() ? std::exp(x.value()) : raw::eta(p, x.value());
}

PopaPoint from_multiplicative(const PopaParam& p, double v) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError("multiplicative coordinate must be finite and > 0, got " + fmt(v));
  }
  switch (p.kind()) {
    case PopaParam::Kind::Zero: return PopaPoint(p, std::log(v));
    case PopaParam::Kind::Finite: return PopaPoint(p, (v - 1.0) / p.rho());
    case PopaParam::Kind::Infinity: return PopaPoint(p, v);
  }
  return PopaPoint(p, p.identity());
}

double to_additive(const PopaPoint& x) { return raw::to_additive(x.param(), x.value()); }

PopaPoint from_additive(const PopaParam& p, double w) {
  if (!std::isfinite(w)) throw DomainError("additive coordinate must be finite, got " + fmt(w));
  return PopaPoint(p, raw::from_additive(p, w));
}

double haar_scale(const PopaParam& p) noexcept {
  return p.is_finite() ? (1.0 + p.rho()) / p.rho() : 1.0;
}

}  // namespace regvar
