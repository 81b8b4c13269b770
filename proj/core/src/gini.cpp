#include "fptkit/gini.hpp"

#include <algorithm>
#include <numeric>

namespace fptkit {

std::vector<double> lorentz_grid(double r_max, int n_grid) {
  std::vector<double> r(static_cast<std::size_t>(n_grid));
  const double last = static_cast<double>(n_grid - 1);
  for (int i = 0; i < n_grid; ++i) {
    const double s = i / last;
    r[static_cast<std::size_t>(i)] = r_max * s * s;
  }
  r.back() = r_max;
  return r;
}

double gini_from_curve(const LorentzCurve& curve) {
  const auto& p = curve.points;
  double area = 0.0;
  for (std::size_t i = 1; i < p.size(); ++i) {
    const double gap = (p[i].x - p[i].y) + (p[i - 1].x - p[i - 1].y);
    area += 0.5 * gap * (p[i].x - p[i - 1].x);
  }
  return 2.0 * area;
}

double gini_empirical(const DurationSample& samples) {
  if (samples.size() < 2) throw DomainError("gini_empirical needs at least 2 durations");
  const auto x = samples.sorted();
  const double total = std::accumulate(x.begin(), x.end(), 0.0);
  if (!(total > 0.0)) throw DomainError("gini_empirical undefined for zero mean");
  const double n = static_cast<double>(x.size());
  // sum_ij |x_i - x_j| = 2 sum_i (2i - n - 1) x_(i), i 1-based over the sorted values.
  long double weighted = 0.0L;
  for (std::size_t i = 0; i < x.size(); ++i) {
    weighted += (2.0L * static_cast<long double>(i + 1) - n - 1.0L) * x[i];
  }
  return static_cast<double>(weighted / (static_cast<long double>(n) * total));
}

LorentzCurve lorentz_curve_empirical(const DurationSample& samples) {
  if (samples.size() < 2) throw DomainError("empirical Lorentz curve needs at least 2 durations");
  const auto x = samples.sorted();
  const double total = std::accumulate(x.begin(), x.end(), 0.0);
  if (!(total > 0.0)) throw DomainError("empirical Lorentz curve undefined for zero mean");
  LorentzCurve c;
  c.points.reserve(x.size() + 1);
  c.r_grid.reserve(x.size() + 1);
  c.points.push_back({0.0, 0.0});
  c.r_grid.push_back(0.0);
  double run = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    run += x[i];
    c.points.push_back({static_cast<double>(i + 1) / n, run / total});
    c.r_grid.push_back(x[i]);
  }
  return c;
}

std::vector<GiniRow> gini_beta_sweep(double t0, double r_max, std::span<const double> beta_grid, int n_grid,
                                     LorentzNormalization norm) {
  std::vector<GiniRow> rows(beta_grid.size());
  for (double b : beta_grid) {
    if (!(b > 0.0 && b <= 1.0)) throw DomainError("gini_beta_sweep needs beta in (0, 1]");
  }
  for (std::size_t i = 0; i < beta_grid.size(); ++i) {
    const MittagLefflerDensity dist(beta_grid[i], t0);
    rows[i] = {beta_grid[i], gini_analytic(dist, r_max, n_grid, norm)};
  }
  return rows;
}

}  // namespace fptkit
