#include <gtest/gtest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>

#include "fptkit/errors.hpp"
#include "fptkit/fitting.hpp"
#include "fptkit/renewal.hpp"

using namespace fptkit;

namespace {

/// E(t^2) / (2 E(t)) of an unnormalized density by generic quadrature, split at `knee`.
template <class Pdf>
double waiting_time_by_quadrature(Pdf pdf, double knee) {
  boost::math::quadrature::tanh_sinh<double> ts;
  boost::math::quadrature::exp_sinh<double> es;
  auto moment = [&](int k) {
    auto f = [&](double t) { return t > 0.0 ? std::pow(t, k) * pdf(t) : 0.0; };
    return ts.integrate(f, 0.0, knee) + es.integrate(f, knee, INFINITY);
  };
  return moment(2) / (2.0 * moment(1));
}

}  // namespace

TEST(EmpiricalWaitingTime, Examples) {
  EXPECT_NEAR(empirical_waiting_time(DurationSample({4.0, 4.0, 4.0, 4.0})).w, 2.0, 1e-15);
  const auto r = empirical_waiting_time(DurationSample({1.0, 2.0, 3.0}));
  EXPECT_NEAR(r.w, 7.0 / 6.0, 1e-15);
  EXPECT_EQ(r.method, WaitingTimeMethod::empirical);
  EXPECT_NEAR(r.diagnostics.at("mean"), 2.0, 1e-15);
}

TEST(EmpiricalWaitingTime, Degenerate) {
  EXPECT_THROW(empirical_waiting_time(DurationSample(std::vector<double>{})), DomainError);
  EXPECT_THROW(empirical_waiting_time(DurationSample({1.0})), DomainError);
  EXPECT_THROW(empirical_waiting_time(DurationSample({0.0, 0.0})), DomainError);
  EXPECT_THROW(DurationSample({1.0, -1.0}), DataError);
}

TEST(WeibullWaitingTime, ExponentialHasNoParadox) {
  const auto r = weibull_waiting_time({1.0, 7.5});
  EXPECT_NEAR(r.w, 7.5, 1e-12);
  EXPECT_NEAR(r.diagnostics.at("mean"), 7.5, 1e-12);
}

TEST(WeibullWaitingTime, ClosedFormMatchesQuadrature) {
  for (auto [m, a] : {std::pair{0.585, 49.63}, std::pair{0.85, 10.02}, std::pair{0.99, 16.49}, std::pair{2.0, 3.0}}) {
    const WeibullParams p{m, a};
    const double ref = waiting_time_by_quadrature([&](double t) { return weibull_pdf(t, p); }, 10.0);
    const auto r = weibull_waiting_time(p);
    EXPECT_NEAR(r.w, ref, 1e-9 * ref) << m;
    EXPECT_NEAR(r.diagnostics.at("mean"), std::pow(a, 1 / m) / m * std::tgamma(1 / m), 1e-9 * ref);
  }
}

TEST(WeibullWaitingTime, SonyPureWeibullValue) {
  // a^(1/m) Gamma(2/m) / Gamma(1/m) for m=0.585, a=49.63 s^m, in minutes.
  EXPECT_NEAR(weibull_waiting_time({0.585, 49.63}).w / 60.0, 44.1013, 1e-3);
}

TEST(TailWeibullWaitingTime, SonyValues) {
  const auto at18000 = tail_weibull_waiting_time(TailWeibullParams::make(0.585, 49.63, 4.67, 18000.0));
  EXPECT_NEAR(at18000.w / 60.0, 45.66, 0.01 * 45.66);
  EXPECT_EQ(at18000.method, WaitingTimeMethod::tail_weibull_formula);
  EXPECT_TRUE(at18000.warnings.empty());
  const double ts = optimal_crossover(0.585, 49.63, 4.67);
  const auto at_star = tail_weibull_waiting_time(TailWeibullParams::make(0.585, 49.63, 4.67, ts));
  EXPECT_NEAR(at_star.w / 60.0, 46.25, 0.01 * 46.25);
}

TEST(TailWeibullWaitingTime, FormulaMatchesQuadrature) {
  for (double tx : {5000.0, 18000.0, 23538.3, 60000.0}) {
    const auto p = TailWeibullParams::make(0.585, 49.63, 4.67, tx);
    const double ref = waiting_time_by_quadrature([&](double t) { return tail_weibull_pdf(t, p); }, tx);
    const auto r = tail_weibull_waiting_time(p);
    EXPECT_NEAR(r.w, ref, 1e-8 * ref) << tx;
    const TailWeibull d(p);
    EXPECT_NEAR(r.diagnostics.at("first_moment"), d.partial_moment(1, 0.0, INFINITY), 1e-9 * r.diagnostics.at("first_moment"));
    EXPECT_NEAR(r.diagnostics.at("body_first") + r.diagnostics.at("tail_first"), r.diagnostics.at("first_moment"), 1e-9);
  }
}

TEST(TailWeibullWaitingTime, DistantCrossoverIsPureWeibull) {
  const double w = weibull_waiting_time({0.585, 49.63}).w;
  const double tw = tail_weibull_waiting_time(TailWeibullParams::make(0.585, 49.63, 4.67, 1e8)).w;
  EXPECT_LT(std::abs(tw / w - 1.0), 1e-6);
}

TEST(TailWeibullWaitingTime, HeavyTailRefused) {
  const auto p = TailWeibullParams::make(0.70, 6.05, 1.96, 44.9);
  try {
    tail_weibull_waiting_time(p);
    FAIL() << "expected HeavyTailError";
  } catch (const HeavyTailError& e) {
    EXPECT_NE(e.denominator().find("gamma - 2"), std::string::npos);
    EXPECT_NE(e.denominator().find("gamma - 3"), std::string::npos);
    EXPECT_DOUBLE_EQ(e.raw_value(), tail_weibull_terms(p).waiting_time());
  }
  try {
    tail_weibull_waiting_time(TailWeibullParams::make(0.70, 6.05, 2.5, 44.9));
    FAIL() << "expected HeavyTailError";
  } catch (const HeavyTailError& e) {
    EXPECT_EQ(e.denominator(), "(gamma - 3)");
  }
  EXPECT_THROW(tail_weibull_waiting_time(TailWeibullParams::make(0.70, 6.05, 3.0, 44.9)), HeavyTailError);
}

TEST(TailWeibullWaitingTime, WarnsJustAboveThree) {
  const auto r = tail_weibull_waiting_time(TailWeibullParams::make(0.70, 6.05, 3.2, 44.9));
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_GT(r.w, 0.0);
}

TEST(TailWeibullWaitingTime, ContinuousWithInteriorMaximum) {
  const auto base = TailWeibullParams::make(0.585, 49.63, 4.67, 18000.0);
  std::vector<double> sweep;
  for (int i = 0; i <= 1100; ++i) sweep.push_back(5000.0 + 50.0 * i);
  const auto rows = waiting_time_curve(base, sweep);
  ASSERT_EQ(rows.size(), sweep.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].x, sweep[i]);
    EXPECT_TRUE(rows[i].valid);
    if (i > 0) {
      EXPECT_LT(std::abs(rows[i].w - rows[i - 1].w), 1e-2 * rows[i].w);
    }
    if (rows[i].w > rows[best].w) best = i;
  }
  EXPECT_GT(best, 0u);
  EXPECT_LT(best, rows.size() - 1);
  EXPECT_GE(rows[best].x, 23000.0);
  EXPECT_LE(rows[best].x, 24100.0);
  EXPECT_LE(std::abs(rows[best].x - optimal_crossover(0.585, 49.63, 4.67)), 50.0);
}

// dw/dt_cross vanishes exactly where D(t_cross) = 0.
TEST(TailWeibullWaitingTime, StationaryAtOptimalCrossover) {
  for (auto [m, a, g] : {std::tuple{0.585, 49.63, 4.67}, std::tuple{0.7, 6.05, 4.0}, std::tuple{1.3, 2.0, 5.5}}) {
    const double ts = optimal_crossover(m, a, g);
    auto w = [&](double t) { return tail_weibull_waiting_time(TailWeibullParams::make(m, a, g, t)).w; };
    const double h = 1e-3 * ts;
    const double slope = (w(ts + h) - w(ts - h)) / (2.0 * h);
    const double scale = (w(ts * 1.2) - w(ts)) / (0.2 * ts);
    EXPECT_LT(std::abs(slope), 1e-3 * std::abs(scale)) << m;
    EXPECT_GT(w(ts), w(ts * 0.8));
    EXPECT_GT(w(ts), w(ts * 1.25));
  }
}

TEST(WaitingTimeCurve, SinglePointEqualsScalar) {
  const auto base = TailWeibullParams::make(0.585, 49.63, 4.67, 18000.0);
  const std::vector<double> one{18000.0};
  EXPECT_DOUBLE_EQ(waiting_time_curve(base, one)[0].w, tail_weibull_waiting_time(base).w);
  const TruncatedMLParams ml{0.96, 12.0, 100.0};
  const std::vector<double> t{100.0};
  EXPECT_DOUBLE_EQ(waiting_time_curve(ml, t)[0].w, ml_truncated_waiting_time(ml).w);
  EXPECT_THROW(waiting_time_curve(base, std::vector<double>{}), DomainError);
}

TEST(WaitingTimeCurve, HeavyTailRowsFlaggedWithRawValues) {
  const auto base = TailWeibullParams::make(0.70, 6.05, 1.96, 44.9);
  std::vector<double> sweep;
  for (double t = 5.0; t < 400.0; t *= 1.05) sweep.push_back(t);
  const auto rows = waiting_time_curve(base, sweep);
  bool negative = false;
  for (const auto& r : rows) {
    EXPECT_FALSE(r.valid);
    negative = negative || r.w < 0.0;
  }
  EXPECT_TRUE(negative);
}

TEST(WaitingTimeCurve, TruncatedMLMonotoneInCutoff) {
  std::vector<double> sweep;
  for (double t = 12.0; t <= 12e4; t *= 2.0) sweep.push_back(t);
  for (double b : {0.5, 0.7, 0.9, 0.96}) {
    const auto rows = waiting_time_curve(TruncatedMLParams{b, 12.0, 12.0}, sweep);
    for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_GT(rows[i].w, rows[i - 1].w) << b;
  }
}

TEST(TruncatedMLWaitingTime, ExponentialLimit) {
  const auto r = ml_truncated_waiting_time({1.0, 12.0, 1200.0});
  EXPECT_NEAR(r.w, 12.0, 0.005 * 12.0);
  EXPECT_EQ(r.method, WaitingTimeMethod::ml_truncated_quadrature);
}

TEST(TruncatedMLWaitingTime, QuadratureAgreesWithSeries) {
  for (double tm : {10.0, 30.0, 60.0, 100.0}) {
    const TruncatedMLParams p{0.96, 12.0, tm};
    const double q = ml_truncated_waiting_time(p).w;
    const double s = ml_truncated_waiting_time_series(p).w;
    EXPECT_NEAR(q, s, 0.005 * q) << tm;
    EXPECT_NEAR(q, s, 1e-8 * q) << tm;
  }
  for (double tm : {1e3, 1e4}) EXPECT_THROW(ml_truncated_waiting_time_series({0.96, 12.0, tm}), NumericalError);
}

TEST(TruncatedMLWaitingTime, LinearDivergence) {
  const double w4 = ml_truncated_waiting_time({0.5, 12.0, 1e4}).w;
  const double w6 = ml_truncated_waiting_time({0.5, 12.0, 1e6}).w;
  EXPECT_NEAR(std::log(w6 / w4) / std::log(100.0), 1.0, 0.05);
}

TEST(InspectionParadox, Examples) {
  const auto e = inspection_paradox({1.0, 3.0});
  EXPECT_NEAR(e.w_over_mean, 1.0, 1e-15);
  EXPECT_FALSE(e.paradox);
  EXPECT_TRUE(inspection_paradox({0.585, 49.63}).paradox);
  const auto h = inspection_paradox({0.5, 1.0});
  EXPECT_NEAR(h.w_over_mean, 3.0, 1e-13);
  EXPECT_NEAR(h.l1, 1.0, 1e-14);
  EXPECT_NEAR(h.l2, 3.0, 1e-13);
}

TEST(InspectionParadox, FlipsExactlyAtOne) {
  double lo = 0.5, hi = 2.0;
  ASSERT_TRUE(inspection_paradox({lo, 1.0}).paradox);
  ASSERT_FALSE(inspection_paradox({hi, 1.0}).paradox);
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    (inspection_paradox({mid, 1.0}).paradox ? lo : hi) = mid;
  }
  EXPECT_NEAR(lo, 1.0, 1e-6);
}

TEST(InspectionParadox, RatioDecreasingThroughOne) {
  double prev = INFINITY;
  for (double m = 0.9; m <= 1.1; m += 0.005) {
    const auto r = inspection_paradox({m, 2.0});
    EXPECT_LT(r.w_over_mean, prev);
    EXPECT_NEAR(r.w_over_mean, weibull_waiting_time({m, 2.0}).diagnostics.at("w_over_mean"), 1e-12);
    prev = r.w_over_mean;
  }
}
