#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "regvar/popa.hpp"
#include "regvar/sampled_function.hpp"

namespace regvar::cli {

inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kDataError = 2;
inline constexpr int kNotConverged = 3;

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Resolves a function argument: either a CSV path or one of the built-in
/// names (see `regvar --help`). `rho` and `sigma` parametrise the names that
/// depend on a group.
SampledFunction resolve_function(const std::string& spec, const PopaParam& rho, const PopaParam& sigma,
                                 SampledFunction::OutOfRange policy);

/// "%.15g" with -0 printed as 0.
std::string format_number(double v);

}  // namespace regvar::cli
