#pragma once

// Average waiting time (mean residual life) of an equilibrium renewal
// process, w = E(t^2) / (2 E(t)), for empirical samples and for each
// duration model.

#include <map>
#include <span>
#include <string>
#include <vector>

#include "fptkit/distributions.hpp"
#include "fptkit/sample.hpp"

namespace fptkit {

enum class WaitingTimeMethod {
  empirical,
  weibull_closed_form,
  tail_weibull_formula,
  ml_truncated_quadrature,
  ml_truncated_series,
  approximant_closed_form,
};

const char* to_string(WaitingTimeMethod m);

struct WaitingTimeResult {
  double w = 0.0;
  WaitingTimeMethod method = WaitingTimeMethod::empirical;
  std::map<std::string, double> diagnostics;
  std::vector<std::string> warnings;
};

WaitingTimeResult empirical_waiting_time(const DurationSample& samples);

/// w = a^(1/m) Gamma(2/m) / Gamma(1/m); diagnostics["mean"] = a^(1/m) Gamma(1/m) / m.
WaitingTimeResult weibull_waiting_time(const WeibullParams& p);

/// The four summands of the tail-Weibull waiting-time formula.
struct TailWeibullTerms {
  double body_first = 0.0;   ///< a^(1/m) (1/m) Gamma(1/m) B(1/m + 1, t_x^m / a)
  double tail_first = 0.0;   ///< m t_x^(m+1) e^(-t_x^m/a) / (a (gamma - 2))
  double body_second = 0.0;  ///< 2 a^(2/m) (1/m) Gamma(2/m) B(2/m + 1, t_x^m / a)
  double tail_second = 0.0;  ///< m t_x^(m+2) e^(-t_x^m/a) / (a (gamma - 3))

  double first_moment() const { return body_first + tail_first; }
  double second_moment() const { return body_second + tail_second; }
  /// second / (2 first); finite but meaningless when gamma <= 3.
  double waiting_time() const { return second_moment() / (2.0 * first_moment()); }
};

/// Evaluates the summands for any gamma other than exactly 2 or 3.
TailWeibullTerms tail_weibull_terms(const TailWeibullParams& p);

/// Requires gamma > 3; otherwise throws HeavyTailError carrying the raw value.
/// Adds a warning when gamma < 3.5.
WaitingTimeResult tail_weibull_waiting_time(const TailWeibullParams& p);

/// Production route: ratio of quadrature moments over [0, t_max].
WaitingTimeResult ml_truncated_waiting_time(const TruncatedMLParams& p);

/// Cross-check route: term-by-term integrated alternating series. Throws
/// NumericalError when the terms exceed 1e12 times the result.
WaitingTimeResult ml_truncated_waiting_time_series(const TruncatedMLParams& p);

WaitingTimeResult approximant_waiting_time(const MLApproximantParams& p, double t_max);

struct InspectionParadox {
  bool paradox = false;
  double w_over_mean = 1.0;
  double l1 = 1.0;  ///< Gamma(1/m)^2
  double l2 = 1.0;  ///< m Gamma(2/m)
};

/// The residual life exceeds the mean duration exactly when m < 1.
InspectionParadox inspection_paradox(const WeibullParams& p);

struct CurveRow {
  double x = 0.0;  ///< swept t_cross or t_max
  double w = 0.0;
  bool valid = true;  ///< false where the formula is outside its domain (raw value kept)
};

/// w as a function of the crossover, all other parameters fixed. Rows come
/// back in sweep order.
std::vector<CurveRow> waiting_time_curve(const TailWeibullParams& base, std::span<const double> t_cross_sweep);

/// w as a function of the truncation cutoff.
std::vector<CurveRow> waiting_time_curve(const TruncatedMLParams& base, std::span<const double> t_max_sweep);

}  // namespace fptkit
