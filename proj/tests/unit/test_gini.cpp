#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "fptkit/errors.hpp"
#include "fptkit/gini.hpp"
#include "fptkit/pipeline.hpp"
#include "fptkit/specfun.hpp"

using namespace fptkit;

namespace {

/// All mass at one duration.
struct PointMass {
  double c;
  double partial_moment(int k, double lo, double hi) const { return (lo < c && c <= hi) ? std::pow(c, k) : 0.0; }
  double full_mass() const { return 1.0; }
};

double exponential_lorentz(double x) { return x >= 1.0 ? 1.0 : x + (1.0 - x) * std::log1p(-x); }

/// Lorentz-curve Gini of the cut-off Mittag-Leffler law from its term-by-term
/// series, X = 1 - E_beta(-(r/t0)^beta), only usable for small r_max / t0.
double gini_by_series(double beta, double t0, double r_max, int n_grid) {
  auto sums = [&](double r) {
    double s = 0.0, i = 0.0;
    const double lx = std::log(r / t0);
    for (int n = 0; n < 120; ++n) {
      const double term = std::exp(beta * n * lx - std::lgamma(beta * n + 1.0));
      const double sg = n % 2 ? -1.0 : 1.0;
      s += sg * term;
      i += sg * term / (beta * n + 1.0);
    }
    return std::pair{s, r * (i - s)};
  };
  const double y_norm = sums(r_max).second;
  double g = 0.0, px = 0.0, py = 0.0;
  for (int k = 1; k <= n_grid; ++k) {
    const double r = r_max * std::pow(static_cast<double>(k) / n_grid, 2.0);
    const auto [s, m1] = sums(r);
    const double x = 1.0 - s;
    const double y = m1 / y_norm;
    g += ((x - y) + (px - py)) * (x - px);
    px = x;
    py = y;
  }
  return g;
}

}  // namespace

TEST(LorentzCurve, ExponentialClosedForm) {
  const Weibull ex({1.0, 3.0});
  const auto c = lorentz_curve(ex, ex.quantile(1.0 - 1e-15), 2048);
  double worst = 0.0;
  for (const auto& p : c.points) worst = std::max(worst, std::abs(p.y - exponential_lorentz(std::min(p.x, 1.0))));
  EXPECT_LT(worst, 1e-4);
}

TEST(LorentzCurve, PerfectEquality) {
  const auto c = lorentz_curve(PointMass{2.5}, 10.0, 64);
  for (const auto& p : c.points) EXPECT_DOUBLE_EQ(p.x, p.y);
  EXPECT_NEAR(gini_from_curve(c), 0.0, 1e-15);
  EXPECT_THROW(lorentz_curve(PointMass{2.5}, 10.0, 15), DomainError);
}

TEST(LorentzCurve, MittagLefflerMoreUnequalThanExponential) {
  const MittagLefflerDensity ml(0.96, 12.0);
  const auto c = lorentz_curve(ml, 100.0, 1024, LorentzNormalization::truncated);
  int checked = 0;
  for (const auto& p : c.points) {
    if (p.x < 0.05 || p.x > 0.95) continue;
    EXPECT_LE(p.y, exponential_lorentz(p.x)) << p.x;
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

TEST(LorentzCurve, InvariantsUnderTruncatedNormalization) {
  for (double b : {0.5, 0.8, 0.96, 1.0}) {
    const MittagLefflerDensity ml(b, 12.0);
    const auto c = lorentz_curve(ml, 100.0, 256, LorentzNormalization::truncated);
    EXPECT_EQ(c.points.front().x, 0.0);
    EXPECT_EQ(c.points.front().y, 0.0);
    EXPECT_NEAR(c.points.back().x, 1.0, 1e-12);
    EXPECT_NEAR(c.points.back().y, 1.0, 1e-12);
    for (std::size_t i = 1; i < c.points.size(); ++i) {
      EXPECT_GE(c.points[i].x, c.points[i - 1].x);
      EXPECT_GE(c.points[i].y, c.points[i - 1].y);
      EXPECT_LE(c.points[i].y, c.points[i].x + 1e-12);
    }
  }
}

TEST(LorentzCurve, UntruncatedCdfEndsAtCutoffMass) {
  const MittagLefflerDensity ml(0.96, 12.0);
  const auto c = lorentz_curve(ml, 100.0, 256);
  EXPECT_NEAR(c.points.back().x, 1.0 - ml.survival(100.0), 1e-12);
  EXPECT_NEAR(c.points.back().y, 1.0, 1e-12);
}

TEST(GiniAnalytic, Exponential) {
  const Weibull ex({1.0, 3.0});
  EXPECT_NEAR(gini_analytic(ex, ex.quantile(1.0 - 1e-15), 512), 0.5, 1e-4);
}

TEST(GiniAnalytic, WeibullClosedForm) {
  for (double m : {0.5, 1.0, 2.0}) {
    const Weibull w({m, 1.7});
    EXPECT_NEAR(gini_analytic(w, w.quantile(1.0 - 1e-15), 512), 1.0 - std::pow(2.0, -1.0 / m), 1e-4) << m;
  }
}

TEST(GiniAnalytic, CutOffMittagLeffler) {
  const MittagLefflerDensity ml(0.96, 12.0);
  const double g = gini_analytic(ml, 100.0, 512);
  EXPECT_NEAR(g, 0.51, 0.01);
  EXPECT_GE(g, 0.0);
  EXPECT_LT(g, 1.0);
}

TEST(GiniAnalytic, QuadratureMatchesSeriesAtSmallCutoff) {
  for (double b : {0.7, 0.96}) {
    const MittagLefflerDensity ml(b, 12.0);
    EXPECT_NEAR(gini_analytic(ml, 20.0, 512), gini_by_series(b, 12.0, 20.0, 8192), 2e-4) << b;
  }
}

TEST(GiniBetaSweep, ApproachesExponential) {
  const std::vector<double> betas{0.90, 0.92, 0.94, 0.96, 0.98, 1.00};
  const auto rows = gini_beta_sweep(12.0, 100.0, betas);
  ASSERT_EQ(rows.size(), betas.size());
  // beta = 1 is the exponential cut at U = r_max / t0 with the raw CDF on the X axis:
  // G = X_U^2 - 2 [X_U - 3/4 + exp(-2U)(3/4 + U/2)] / (1 - exp(-U)(1 + U)).
  const double u = 100.0 / 12.0;
  const double xu = -std::expm1(-u);
  const double closed = xu * xu - 2.0 * (xu - 0.75 + std::exp(-2.0 * u) * (0.75 + 0.5 * u)) / (1.0 - std::exp(-u) * (1.0 + u));
  EXPECT_NEAR(rows.back().gini, closed, 1e-4);
  EXPECT_NEAR(rows.back().gini, 0.5, 2e-3);
  EXPECT_NEAR(rows[3].gini, 0.51, 0.01);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].beta, betas[i]);
    EXPECT_LT(rows[i].gini, rows[i - 1].gini);
  }
  EXPECT_THROW(gini_beta_sweep(12.0, 100.0, std::vector<double>{1.2}), DomainError);
}

TEST(GiniEmpirical, Examples) {
  EXPECT_NEAR(gini_empirical(DurationSample({3.0, 3.0, 3.0})), 0.0, 1e-15);
  EXPECT_NEAR(gini_empirical(DurationSample({0.0, 5.0})), 0.5, 1e-15);
  EXPECT_THROW(gini_empirical(DurationSample({0.0, 0.0})), DomainError);
  EXPECT_THROW(gini_empirical(DurationSample({1.0})), DomainError);
}

TEST(GiniEmpirical, MatchesPairwiseDefinition) {
  std::mt19937_64 eng(3);
  std::exponential_distribution<double> ex(0.1);
  std::vector<double> x(501);
  for (auto& v : x) v = ex(eng);
  double pair = 0.0, sum = 0.0;
  for (double a : x) {
    sum += a;
    for (double b : x) pair += std::abs(a - b);
  }
  const double n = static_cast<double>(x.size());
  EXPECT_NEAR(gini_empirical(DurationSample(x)), pair / (2.0 * n * n * (sum / n)), 1e-12);
}

TEST(GiniEmpirical, ExponentialDraws) {
  const auto s = sample_durations(Weibull({1.0, 12.0}), 100000, 11);
  EXPECT_NEAR(gini_empirical(s), 0.5, 0.01);
}

TEST(GiniEmpirical, ScaleInvariant) {
  const auto s = sample_durations(Weibull({0.585, 49.63}), 20000, 12);
  EXPECT_NEAR(gini_empirical(s), gini_empirical(s.scaled(1.0 / 60.0, "min")), 1e-12);
  EXPECT_NEAR(gini_empirical(s), gini_empirical(s.scaled(1e4, "x")), 1e-12);
}

TEST(GiniEmpirical, ConvergesToAnalytic) {
  const Weibull w({0.585, 49.63});
  const double analytic = gini_analytic(w, w.quantile(1.0 - 1e-15), 512);
  const std::size_t n = 100000;
  EXPECT_NEAR(gini_empirical(sample_durations(w, n, 13)), analytic, 3.0 / std::sqrt(static_cast<double>(n)));
  const TailWeibull tw(TailWeibullParams::make(0.585, 49.63, 4.67, 23538.3));
  const double ta = gini_analytic(tw, 1e7, 512);
  EXPECT_NEAR(gini_empirical(sample_durations(tw, n, 14)), ta, 3.0 / std::sqrt(static_cast<double>(n)));
}

TEST(GiniEmpirical, LorentzCurveShape) {
  const auto c = lorentz_curve_empirical(DurationSample({1.0, 3.0}));
  ASSERT_EQ(c.points.size(), 3u);
  EXPECT_DOUBLE_EQ(c.points[1].x, 0.5);
  EXPECT_DOUBLE_EQ(c.points[1].y, 0.25);
  EXPECT_NEAR(gini_from_curve(c), 0.25, 1e-15);
}
