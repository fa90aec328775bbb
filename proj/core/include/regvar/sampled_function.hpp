#pragma once

#include <functional>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace regvar {

/// A real function given either by an evaluation rule or by a table.
///
/// Tables interpolate linearly in (log x, log f) between neighbouring nodes
/// when both coordinates are positive there, and fall back to plain linear
/// interpolation in the coordinate that is not. Outside the abscissa range a
/// table either throws RangeError or returns 0, depending on `OutOfRange`.
class SampledFunction {
 public:
  enum class OutOfRange { Throw, Zero };

  struct Table {
    std::vector<double> x;
    std::vector<double> fx;
  };

  SampledFunction(std::function<double(double)> rule);  // NOLINT(google-explicit-constructor)

  /// Accepts any callable taking and returning double.
  template <class F, class = std::enable_if_t<!std::is_same_v<std::decay_t<F>, SampledFunction> &&
                                              !std::is_same_v<std::decay_t<F>, Table> &&
                                              !std::is_same_v<std::decay_t<F>, std::function<double(double)>> &&
                                              std::is_invocable_r_v<double, F&, double>>>
  SampledFunction(F&& rule)  // NOLINT(google-explicit-constructor)
      : SampledFunction(std::function<double(double)>(std::forward<F>(rule))) {}
  SampledFunction(Table table, OutOfRange policy = OutOfRange::Throw);

  static SampledFunction constant(double c);

  double operator()(double x) const;

  bool is_table() const noexcept { return std::holds_alternative<Table>(impl_); }
  /// Table bounds; +-inf for rules.
  double lower() const noexcept;
  double upper() const noexcept;

  SampledFunction with_policy(OutOfRange policy) const;

 private:
  std::variant<std::function<double(double)>, Table> impl_;
  OutOfRange policy_ = OutOfRange::Throw;
};

/// Parses the two-column "x,fx" format: header row required, x strictly
/// increasing, at least two data rows, LF or CRLF. Throws ParseError with the
/// 1-based line number on malformed input.
SampledFunction::Table parse_function_csv(const std::string& text);
SampledFunction::Table read_function_csv(const std::string& path);

}  // namespace regvar
