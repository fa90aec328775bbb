#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature on finite intervals.
//
// The interval with the largest error estimate is bisected until the summed
// estimate meets max(abs_tol, rel_tol*|I|) or max_subdivisions is reached.
// Sums are taken in a fixed order, so results are reproducible bit for bit.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <queue>
#include <span>
#include <vector>

namespace regvar {

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_subdivisions = 4000;
  /// Half-width T of the window [-T, T] in the additive coordinate used for
  /// integrals over a whole group.
  double truncation = 30.0;

  /// Throws std::invalid_argument when an invariant does not hold.
  void validate() const;
};

template <class T>
struct QuadratureResult {
  T value{};
  /// Sum of |K15 - G7| over the final partition.
  double error = 0.0;
  bool converged = false;
  int subdivisions = 0;
  long evaluations = 0;
};

namespace detail {

struct GaussKronrod15 {
  // abscissae (positive half), Kronrod weights, Gauss weights (on odd nodes)
  static constexpr double x[8] = {
      0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
      0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
      0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
      0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
  static constexpr double wk[8] = {
      0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
      0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  static constexpr double wg[4] = {
      0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
};

template <class T>
struct Segment {
  double a, b;
  T value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class T, class F>
Segment<T> gk15(F& f, double a, double b, long& evals) {
  using GK = GaussKronrod15;
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const T fc = static_cast<T>(f(c));
  T kronrod = fc * GK::wk[7];
  T gauss = fc * GK::wg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * GK::x[j];
    const T f1 = static_cast<T>(f(c - dx));
    const T f2 = static_cast<T>(f(c + dx));
    kronrod += (f1 + f2) * GK::wk[j];
    if (j % 2 == 1) gauss += (f1 + f2) * GK::wg[j / 2];
  }
  evals += 15;
  kronrod *= h;
  gauss *= h;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace detail

/// Integrates f over the union of consecutive panels given by `breaks`
/// (ascending, at least two entries). Panels seed the adaptive partition;
/// use them to place discontinuities or oscillation periods on boundaries.
template <class T, class F>
QuadratureResult<T> integrate_panels(F&& f, std::span<const double> breaks,
                                     const QuadratureSpec& q) {
  QuadratureResult<T> out;
  if (breaks.size() < 2) return out;

  std::priority_queue<detail::Segment<T>> heap;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i + 1] > breaks[i]) heap.push(detail::gk15<T>(f, breaks[i], breaks[i + 1], out.evaluations));
  }

  auto totals = [&heap](T& sum, double& err) {
    // deterministic order: sort by left endpoint before summing
    std::vector<detail::Segment<T>> segs;
    auto copy = heap;
    while (!copy.empty()) {
      segs.push_back(copy.top());
      copy.pop();
    }
    std::sort(segs.begin(), segs.end(), [](const auto& l, const auto& r) { return l.a < r.a; });
    sum = T{};
    err = 0.0;
    for (const auto& s : segs) {
      sum += s.value;
      err += s.error;
    }
  };

  T sum{};
  double err = 0.0;
  totals(sum, err);
  // running totals would drift; recompute exactly only when deciding to stop
  while (true) {
    if (err <= std::max(q.abs_tol, q.rel_tol * std::abs(sum))) {
      out.converged = true;
      break;
    }
    if (out.subdivisions >= q.max_subdivisions || heap.empty()) break;
    const auto worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // interval at machine resolution
    heap.pop();
    auto left = detail::gk15<T>(f, worst.a, mid, out.evaluations);
    auto right = detail::gk15<T>(f, mid, worst.b, out.evaluations);
    sum += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++out.subdivisions;
    if (err <= std::max(q.abs_tol, q.rel_tol * std::abs(sum))) totals(sum, err);
  }
  totals(sum, err);
  out.value = sum;
  out.error = err;
  out.converged = err <= std::max(q.abs_tol, q.rel_tol * std::abs(sum));
  return out;
}

template <class T, class F>
QuadratureResult<T> integrate(F&& f, double a, double b, const QuadratureSpec& q) {
  if (a == b) return {T{}, 0.0, true, 0, 0};
  if (a > b) {
    const double br[2] = {b, a};
    auto r = integrate_panels<T>(f, std::span<const double>(br, 2), q);
    r.value = -r.value;
    return r;
  }
  const double br[2] = {a, b};
  return integrate_panels<T>(f, std::span<const double>(br, 2), q);
}

/// Panels on [a, b] no longer than `max_width` (at least one panel).
std::vector<double> uniform_breaks(double a, double b, double max_width);

}  // namespace regvar
