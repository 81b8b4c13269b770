#pragma once

// Lorentz curves and Gini indices of duration distributions.

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "fptkit/distributions.hpp"
#include "fptkit/errors.hpp"
#include "fptkit/parallel.hpp"
#include "fptkit/sample.hpp"

namespace fptkit {

/// How X(r) is normalized on a cut-off range [0, r_max]. Y(r) is always the
/// first-moment mass relative to its value at r_max.
enum class LorentzNormalization {
  /// X(r) = integral_0^r P / full mass of P. For the Mittag-Leffler density
  /// this is 1 - E_beta(-(r/t0)^beta), the form used for the cut-off Gini
  /// integral; near r_max the curve may then cross Y = X.
  untruncated_cdf,
  /// X(r) = integral_0^r P / integral_0^r_max P: Lorentz curve of the
  /// distribution truncated at r_max.
  truncated,
};

struct LorentzPoint {
  double x = 0.0;
  double y = 0.0;
};

struct LorentzCurve {
  std::vector<LorentzPoint> points;
  std::vector<double> r_grid;
};

/// n_grid nodes on [0, r_max], quadratically clustered towards 0.
std::vector<double> lorentz_grid(double r_max, int n_grid);

template <PartialMoments D>
LorentzCurve lorentz_curve(const D& dist, double r_max, int n_grid,
                           LorentzNormalization norm = LorentzNormalization::untruncated_cdf) {
  if (n_grid < 16) throw DomainError("lorentz_curve needs n_grid >= 16");
  if (!(r_max > 0.0)) throw DomainError("lorentz_curve needs r_max > 0");
  LorentzCurve curve;
  curve.r_grid = lorentz_grid(r_max, n_grid);
  const auto& r = curve.r_grid;
  const std::size_t n = r.size();
  std::vector<double> dm0(n, 0.0);
  std::vector<double> dm1(n, 0.0);
  parallel_for(n - 1, [&](std::size_t i) {
    dm0[i + 1] = dist.partial_moment(0, r[i], r[i + 1]);
    dm1[i + 1] = dist.partial_moment(1, r[i], r[i + 1]);
  });
  for (std::size_t i = 1; i < n; ++i) {
    dm0[i] += dm0[i - 1];
    dm1[i] += dm1[i - 1];
  }
  const double mass = norm == LorentzNormalization::truncated ? dm0.back() : dist.full_mass();
  const double moment = dm1.back();
  if (!(mass > 0.0) || !(moment > 0.0)) throw NumericalError("Lorentz curve has no mass on [0, r_max]", 0.0);
  curve.points.resize(n);
  for (std::size_t i = 0; i < n; ++i) curve.points[i] = {dm0[i] / mass, dm1[i] / moment};
  return curve;
}

/// 2 * integral (X - Y) dX by the trapezoidal rule over the curve nodes.
double gini_from_curve(const LorentzCurve& curve);

/// Gini index from the Lorentz curve, doubling n_grid until two successive
/// values differ by less than 1e-4.
template <PartialMoments D>
double gini_analytic(const D& dist, double r_max, int n_grid,
                     LorentzNormalization norm = LorentzNormalization::untruncated_cdf) {
  double coarse = gini_from_curve(lorentz_curve(dist, r_max, n_grid, norm));
  for (int level = 0; level < 6; ++level) {
    n_grid *= 2;
    const double fine = gini_from_curve(lorentz_curve(dist, r_max, n_grid, norm));
    if (std::abs(fine - coarse) < 1e-4) return fine;
    coarse = fine;
  }
  throw NumericalError("Gini index did not converge under grid refinement", 1e-4);
}

/// Mean-absolute-difference estimator sum_ij |t_i - t_j| / (2 n^2 mean), O(n log n).
double gini_empirical(const DurationSample& samples);

/// Empirical Lorentz curve: (i/n, share of total duration in the i shortest).
LorentzCurve lorentz_curve_empirical(const DurationSample& samples);

struct GiniRow {
  double beta = 0.0;
  double gini = 0.0;
};

/// Gini index of the cut-off Mittag-Leffler density for each beta.
std::vector<GiniRow> gini_beta_sweep(double t0, double r_max, std::span<const double> beta_grid,
                                     int n_grid = 512,
                                     LorentzNormalization norm = LorentzNormalization::untruncated_cdf);

}  // namespace fptkit
