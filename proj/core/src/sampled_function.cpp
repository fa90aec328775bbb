#include "regvar/sampled_function.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "regvar/errors.hpp"

namespace regvar {

namespace {

void validate_table(const SampledFunction::Table& t) {
  if (t.x.size() != t.fx.size()) throw ParseError("table columns differ in length");
  if (t.x.size() < 2) throw ParseError("table needs at least two rows");
  for (std::size_t i = 0; i < t.x.size(); ++i) {
    if (!std::isfinite(t.x[i]) || !std::isfinite(t.fx[i])) {
      throw ParseError("non-finite table entry at row " + std::to_string(i + 1));
    }
    if (i > 0 && !(t.x[i] > t.x[i - 1])) {
      throw ParseError("abscissae must be strictly increasing (row " + std::to_string(i + 1) + ")");
    }
  }
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

SampledFunction::SampledFunction(std::function<double(double)> rule) : impl_(std::move(rule)) {}

SampledFunction::SampledFunction(Table table, OutOfRange policy) : impl_(std::move(table)), policy_(policy) {
  validate_table(std::get<Table>(impl_));
}

SampledFunction SampledFunction::constant(double c) {
  return SampledFunction(std::function<double(double)>([c](double) { return c; }));
}

SampledFunction SampledFunction::with_policy(OutOfRange policy) const {
  SampledFunction copy = *this;
  copy.policy_ = policy;
  return copy;
}

double SampledFunction::lower() const noexcept {
  if (const auto* t = std::get_if<Table>(&impl_)) return t->x.front();
  return -std::numeric_limits<double>::infinity();
}

double SampledFunction::upper() const noexcept {
  if (const auto* t = std::get_if<Table>(&impl_)) return t->x.back();
  return std::numeric_limits<double>::infinity();
}

double SampledFunction::operator()(double x) const {
  if (const auto* rule = std::get_if<std::function<double(double)>>(&impl_)) return (*rule)(x);

  const Table& t = std::get<Table>(impl_);
  if (!(x >= t.x.front() && x <= t.x.back())) {
    if (policy_ == OutOfRange::Zero) return 0.0;
    throw RangeError("x = " + fmt(x) + " outside table range [" + fmt(t.x.front()) + ", " +
                     fmt(t.x.back()) + "]");
  }
  auto it = std::upper_bound(t.x.begin(), t.x.end(), x);
  std::size_t j = static_cast<std::size_t>(it - t.x.begin());
  if (j >= t.x.size()) j = t.x.size() - 1;
  const std::size_t i = j - 1;
  const double x0 = t.x[i], x1 = t.x[j];
  const double y0 = t.fx[i], y1 = t.fx[j];
  if (x == x0) return y0;
  if (x == x1) return y1;

  const bool log_x = x0 > 0.0;
  const double s = log_x ? std::log(x / x0) / std::log(x1 / x0) : (x - x0) / (x1 - x0);
  if (y0 > 0.0 && y1 > 0.0) return y0 * std::exp(s * std::log(y1 / y0));
  return y0 + s * (y1 - y0);
}

}  // namespace regvar
