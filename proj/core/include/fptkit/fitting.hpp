#pragma once

// Parameter estimation from durations: Weibull-paper regression, power-law
// tail regression, and the crossover-point machinery.

#include <optional>
#include <span>
#include <vector>

#include "fptkit/sample.hpp"

namespace fptkit {

struct SurvivalPoint {
  double t = 0.0;
  double s = 0.0;
};

/// S(t) = fraction of durations strictly greater than t at each distinct value.
std::vector<SurvivalPoint> empirical_survival(const DurationSample& samples);

/// Right-continuous step evaluation of an empirical survival curve.
double survival_at(std::span<const SurvivalPoint> curve, double t);

struct LinePoint {
  double x = 0.0;
  double y = 0.0;
};

struct WeibullPaperFit {
  double m = 0.0;
  double a = 0.0;
  double r_squared = 0.0;
  double t_cut = 0.0;
  int n_used = 0;
  std::vector<LinePoint> transformed;  ///< (ln t, ln(-ln S))
};

/// Unweighted least squares of ln(-ln S) on ln t over 0 < t <= t_cut with
/// 0 < S < 1. Slope m; intercept -ln a.
WeibullPaperFit weibull_paper_fit(std::span<const SurvivalPoint> curve, double t_cut);
WeibullPaperFit weibull_paper_fit(const DurationSample& samples, double t_cut);

struct TailExponentFit {
  double gamma = 0.0;
  double std_error = 0.0;  ///< standard error of the fitted slope
  double t_min = 0.0;
  int n_used = 0;
};

/// Least squares of ln S on ln t over t > t_min, S > 0. The slope is 1 - gamma.
TailExponentFit tail_exponent_fit(std::span<const SurvivalPoint> curve, double t_min);
/// t_min defaults to the 95th percentile of the sample.
TailExponentFit tail_exponent_fit(const DurationSample& samples, std::optional<double> t_min = std::nullopt);

/// t* = ((a/m)(m + gamma - 1))^(1/m), where the tail amplitude lambda(t_cross) peaks.
double optimal_crossover(double m, double a, double gamma);

/// D(t) = (m/a) t^m - gamma - m + 1; negative below t*, positive above.
double d_function(double t_cross, double m, double a, double gamma);

/// Root of d_function by bracketing bisection, independent of the closed form.
double d_function_root(double m, double a, double gamma);

/// Exact second derivative of lambda(t) = (m/a) t^c exp(-t^m/a), c = m+gamma-1.
double tail_amplitude_second_derivative(double t_cross, double m, double a, double gamma);

enum class SecondDerivativeSign { minimum_confirmed, not_confirmed };

const char* to_string(SecondDerivativeSign s);

struct SweepValue {
  double t = 0.0;
  double value = 0.0;
};

struct CrossoverDiagnostics {
  double t_star = 0.0;
  std::vector<SweepValue> d_values;
  std::vector<SweepValue> lambda_values;
  std::size_t lambda_argmax = 0;  ///< index into the sweep
  SecondDerivativeSign second_derivative_sign = SecondDerivativeSign::not_confirmed;
  double lambda_second_derivative = 0.0;  ///< exact value at t_star
  double lambda_second_difference = 0.0;  ///< central difference, h = 1e-4 t_star
};

CrossoverDiagnostics crossover_diagnostics(double m, double a, double gamma, std::span<const double> sweep);

}  // namespace fptkit
