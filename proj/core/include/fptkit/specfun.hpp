#pragma once

// Special functions: log-gamma, the regularized lower incomplete gamma
// function, and the one-parameter Mittag-Leffler survival function
// E_beta(-(t/t0)^beta) together with its density.

#include <vector>

namespace fptkit {

/// Controls for the Mittag-Leffler alternating series.
///
/// Below `switch_threshold` (in units of t/t0) the series is summed directly;
/// above it the function is evaluated from its Laplace-type integral
/// representation, which has no cancellation. The threshold actually used is
/// also capped by the largest argument for which `n_max` terms converge to
/// `abs_tol` (see `ml_effective_switch`).
struct MLSeriesConfig {
  int n_max = 200;
  double switch_threshold = 5.0;
  double abs_tol = 1e-12;

  void validate() const;
};

double ln_gamma(double x);

/// B(s, x) = (1/Gamma(s)) * integral_0^x t^(s-1) e^(-t) dt.
double reg_lower_incomplete_gamma(double s, double x);

/// Q(s, x) = 1 - B(s, x), computed without cancellation for large x.
double reg_upper_incomplete_gamma(double s, double x);

/// E_beta(-(t/t0)^beta), 0 < beta <= 1.
double ml_survival(double t, double t0, double beta, const MLSeriesConfig& cfg = {});

/// -d/dt E_beta(-(t/t0)^beta). Requires t > 0 when beta < 1.
double ml_pdf(double t, double t0, double beta, const MLSeriesConfig& cfg = {});

/// Leading large-argument term (t/t0)^(-beta) / Gamma(1 - beta), beta < 1.
double ml_survival_asymptotic(double t, double t0, double beta);

/// Small-argument stretched exponential exp(-(t/t0)^beta / Gamma(1 + beta)).
double ml_survival_stretched(double t, double t0, double beta);

/// The t/t0 value above which the integral representation is used.
double ml_effective_switch(double beta, const MLSeriesConfig& cfg);

/// Mittag-Leffler evaluator with the series coefficients for one beta cached.
/// Arguments are the dimensionless x = t/t0.
class MittagLeffler {
 public:
  explicit MittagLeffler(double beta, MLSeriesConfig cfg = {});

  double beta() const noexcept { return beta_; }
  const MLSeriesConfig& config() const noexcept { return cfg_; }
  double switch_point() const noexcept { return switch_; }

  /// E_beta(-x^beta).
  double survival(double x) const;
  /// -d/dx E_beta(-x^beta).
  double density(double x) const;

  /// Direct partial sums, regardless of the switch point. Throws
  /// NumericalError when the series does not converge within n_max terms.
  double survival_series(double x) const;
  double density_series(double x) const;
  /// Integral representation, valid for every x > 0 when beta < 1.
  double survival_integral(double x) const;
  double density_integral(double x) const;

 private:
  double beta_;
  MLSeriesConfig cfg_;
  double switch_;
  std::vector<double> log_rgamma_survival_;  // -ln Gamma(beta n + 1)
  std::vector<double> log_rgamma_density_;   // -ln Gamma(beta n + beta)
};

}  // namespace fptkit
