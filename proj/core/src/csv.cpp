#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

#include "regvar/errors.hpp"
#include "regvar/sampled_function.hpp"

namespace regvar {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view s, int line, const char* column) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(std::string("cannot parse ") + column + " value '" + std::string(s) + "'", line);
  }
  return v;
}

}  // namespace

SampledFunction::Table parse_function_csv(const std::string& text) {
  SampledFunction::Table table;
  std::istringstream in(text);
  std::string raw_line;
  int line = 0;
  bool header_seen = false;
  while (std::getline(in, raw_line)) {
    ++line;
    std::string_view row = trim(raw_line);
    if (line == 1 && row.size() >= 3 && row.substr(0, 3) == "\xEF\xBB\xBF") row.remove_prefix(3);
    if (row.empty()) continue;
    if (!header_seen) {
      const auto comma = row.find(',');
      if (comma == std::string_view::npos || trim(row.substr(0, comma)) != "x" ||
          trim(row.substr(comma + 1)) != "fx") {
        throw ParseError("expected header \"x,fx\"", line);
      }
      header_seen = true;
      continue;
    }
    const auto comma = row.find(',');
    if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos) {
      throw ParseError("expected exactly two columns", line);
    }
    const double x = parse_number(row.substr(0, comma), line, "x");
    const double fx = parse_number(row.substr(comma + 1), line, "fx");
    if (!std::isfinite(x) || !std::isfinite(fx)) throw ParseError("non-finite value", line);
    if (!table.x.empty() && !(x > table.x.back())) throw ParseError("x must be strictly increasing", line);
    table.x.push_back(x);
    table.fx.push_back(fx);
  }
  if (!header_seen) throw ParseError("empty file: expected header \"x,fx\"");
  if (table.x.size() < 2) throw ParseError("need at least two data rows", line);
  return table;
}

SampledFunction::Table read_function_csv(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  try {
    return parse_function_csv(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace regvar
