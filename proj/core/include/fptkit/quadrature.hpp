#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature on finite intervals.

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "fptkit/errors.hpp"

namespace fptkit::quad {

struct Options {
  double rel_tol = 1e-9;
  double abs_tol = 0.0;
  std::size_t max_intervals = 4000;
};

struct Result {
  double value = 0.0;
  double abs_error = 0.0;
  std::size_t intervals = 0;
};

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5, 7.
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo, hi, value, error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <class F>
Panel gauss_kronrod(F& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[j] * sum;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * sum;
  }
  kronrod *= half;
  gauss *= half;
  return {lo, hi, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace detail

/// Integrates f over [points.front(), points.back()], treating every entry of
/// `points` as a panel boundary. Points must be sorted ascending.
template <class F>
Result integrate(F&& f, std::span<const double> points, const Options& opt = {}) {
  std::priority_queue<detail::Panel> heap;
  double total = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (!(points[i + 1] > points[i])) continue;
    auto p = detail::gauss_kronrod(f, points[i], points[i + 1]);
    total += p.value;
    error += p.error;
    heap.push(p);
  }
  // Panels that can no longer be bisected in floating point.
  double frozen_error = 0.0;
  while (!heap.empty() && error > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
    if (heap.size() >= opt.max_intervals) {
      throw NumericalError("adaptive quadrature exceeded " + std::to_string(opt.max_intervals) +
                               " panels",
                           error);
    }
    auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi) ||
        (worst.hi - worst.lo) < 1e-14 * std::max(std::abs(worst.lo), std::abs(worst.hi))) {
      frozen_error += worst.error;
      error -= worst.error;
      continue;
    }
    auto left = detail::gauss_kronrod(f, worst.lo, mid);
    auto right = detail::gauss_kronrod(f, mid, worst.hi);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  const double achieved = std::abs(error) + frozen_error;
  if (frozen_error > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
    throw NumericalError("adaptive quadrature stalled at floating-point resolution", achieved);
  }
  return {total, achieved, heap.size()};
}

template <class F>
Result integrate(F&& f, double lo, double hi, const Options& opt = {}) {
  const std::array<double, 2> pts{lo, hi};
  return integrate(std::forward<F>(f), std::span<const double>(pts), opt);
}

/// Geometric panel boundaries between lo > 0 and hi, roughly `per_decade`
/// panels per factor of ten.
inline std::vector<double> log_breakpoints(double lo, double hi, int per_decade = 2) {
  std::vector<double> pts;
  if (!(lo > 0.0) || !(hi > lo)) return {lo, hi};
  const double decades = std::log10(hi / lo);
  const int n = std::max(1, static_cast<int>(std::ceil(decades * per_decade)));
  pts.reserve(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) pts.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / n));
  pts.back() = hi;
  return pts;
}

}  // namespace fptkit::quad
