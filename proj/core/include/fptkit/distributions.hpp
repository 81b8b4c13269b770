#pragma once

// Duration distributions: Weibull, Weibull with a power-law tail, the
// (truncated) Mittag-Leffler distribution and its stretched-exponential /
// power-law approximant.
//
// Densities are kept unnormalized where the underlying object is: the
// tail-Weibull density carries total mass Z != 1 and the truncated
// Mittag-Leffler density is the raw -dE_beta/dt restricted to [0, t_max].
// Moment ratios do not depend on Z; CDFs, quantiles and sampling divide by it.

#include <concepts>
#include <memory>
#include <vector>

#include "fptkit/specfun.hpp"

namespace fptkit {

/// P(t) = (m t^(m-1) / a) exp(-t^m / a). `a` has units time^m.
struct WeibullParams {
  double m = 1.0;
  double a = 1.0;

  void validate() const;
};

double weibull_pdf(double t, const WeibullParams& p);
double weibull_survival(double t, const WeibullParams& p);
/// Upper quantile: the t with S(t) = u.
double weibull_quantile(double u, const WeibullParams& p);

class Weibull {
 public:
  explicit Weibull(WeibullParams p);

  const WeibullParams& params() const noexcept { return p_; }
  double pdf(double t) const { return weibull_pdf(t, p_); }
  double survival(double t) const { return weibull_survival(t, p_); }
  double cdf(double t) const;
  /// Inverse CDF: the t with F(t) = u.
  double quantile(double u) const;

  /// E(t^k) = a^(k/m) Gamma(1 + k/m).
  double raw_moment(double k) const;
  double mean() const { return raw_moment(1.0); }
  /// integral_lo^hi t^k P(t) dt.
  double partial_moment(int k, double lo, double hi) const;
  double full_mass() const noexcept { return 1.0; }

 private:
  WeibullParams p_;
};

/// Weibull body below t_cross, lambda t^(-gamma) above, continuous at t_cross.
struct TailWeibullParams {
  double m = 1.0;
  double a = 1.0;
  double gamma = 2.0;
  double t_cross = 1.0;
  double lambda = 0.0;  ///< derived: (m/a) t_cross^(m+gamma-1) exp(-t_cross^m / a)

  /// Builds the record with lambda fixed by continuity at t_cross.
  static TailWeibullParams make(double m, double a, double gamma, double t_cross);
  void validate() const;
};

/// lambda(t_cross) = (m/a) t_cross^(m+gamma-1) exp(-t_cross^m / a).
double tail_amplitude(double t_cross, double m, double a, double gamma);

double tail_weibull_pdf(double t, const TailWeibullParams& p);
/// Total mass Z of the piecewise density. Requires gamma > 1.
double tail_weibull_mass(const TailWeibullParams& p);
/// Normalized CDF.
double tail_weibull_cdf(double t, const TailWeibullParams& p);
/// Inverse of the normalized CDF.
double tail_weibull_sample(const TailWeibullParams& p, double u);

class TailWeibull {
 public:
  explicit TailWeibull(const TailWeibullParams& p);

  const TailWeibullParams& params() const noexcept { return p_; }
  double pdf(double t) const { return tail_weibull_pdf(t, p_); }
  double cdf(double t) const { return tail_weibull_cdf(t, p_); }
  double quantile(double u) const { return tail_weibull_sample(p_, u); }
  double body_mass() const;
  double full_mass() const noexcept { return mass_; }
  /// Unnormalized integral_lo^hi t^k P(t) dt (finite hi; hi = inf needs gamma > k+1).
  double partial_moment(int k, double lo, double hi) const;

 private:
  TailWeibullParams p_;
  Weibull body_;
  double mass_;
};

/// Untruncated Mittag-Leffler density P_ML(t; t0, beta) = -dE_beta(-(t/t0)^beta)/dt.
class MittagLefflerDensity {
 public:
  MittagLefflerDensity(double beta, double t0, MLSeriesConfig cfg = {});

  double beta() const noexcept { return ml_.beta(); }
  double t0() const noexcept { return t0_; }
  const MittagLeffler& evaluator() const noexcept { return ml_; }

  double survival(double t) const { return ml_.survival(t / t0_); }
  double pdf(double t) const { return ml_.density(t / t0_) / t0_; }
  double full_mass() const noexcept { return 1.0; }
  /// integral_lo^hi t^k P_ML(t) dt, k in {0, 1, 2}, by parts against the survival function.
  double partial_moment(int k, double lo, double hi) const;

 private:
  MittagLeffler ml_;
  double t0_;
};

struct TruncatedMLParams {
  double beta = 1.0;
  double t0 = 1.0;
  double t_max = 1.0;
  MLSeriesConfig series{};

  void validate() const;
};

/// Mittag-Leffler density restricted to [0, t_max]. `pdf` is the raw density;
/// `mass()` is Z = 1 - E_beta(-(t_max/t0)^beta).
class TruncatedML {
 public:
  explicit TruncatedML(const TruncatedMLParams& p);

  const TruncatedMLParams& params() const noexcept { return p_; }
  const MittagLefflerDensity& density() const noexcept { return density_; }
  double pdf(double t) const;
  double mass() const noexcept { return mass_; }
  double full_mass() const noexcept { return 1.0; }
  double cdf(double t) const;
  double partial_moment(int k, double lo, double hi) const;
  /// Normalized moment E(t^k) of the truncated distribution.
  double moment(int k) const;

 private:
  TruncatedMLParams p_;
  MittagLefflerDensity density_;
  double mass_;
};

/// Normalized moment of the truncated Mittag-Leffler distribution, k in {1, 2}.
double truncated_ml_moment(int k, const TruncatedMLParams& p);

/// Inverse-CDF sampler for the truncated Mittag-Leffler distribution.
/// Construction tabulates the CDF; `quantile` refines by safeguarded Newton.
class TruncatedMLSampler {
 public:
  explicit TruncatedMLSampler(const TruncatedMLParams& p, std::size_t table_size = 1024);
  double quantile(double u) const;
  const TruncatedML& distribution() const noexcept { return dist_; }

 private:
  TruncatedML dist_;
  std::vector<double> t_;
  std::vector<double> cdf_;
};

/// Stretched-exponential body P_S(t) up to t_cross, then
/// t_cross^(beta+1) P_S(t_cross) t^(-1-beta). P_S is the density of the
/// survival function exp(-(t/t0)^beta / Gamma(1+beta)), i.e. a Weibull with
/// shape beta and scale t0^beta Gamma(1+beta). Valid for any beta > 0.
struct MLApproximantParams {
  double beta = 1.0;
  double t0 = 1.0;
  double t_cross = 1.0;

  void validate() const;
};

class MLApproximant {
 public:
  explicit MLApproximant(const MLApproximantParams& p);

  const MLApproximantParams& params() const noexcept { return p_; }
  const Weibull& body() const noexcept { return body_; }
  double pdf(double t) const;
  double tail_amplitude() const noexcept { return amplitude_; }
  double full_mass() const;
  double partial_moment(int k, double lo, double hi) const;
  /// M2 / (2 M1) with both moments taken over [0, t_max].
  double waiting_time(double t_max) const;

 private:
  MLApproximantParams p_;
  Weibull body_;
  double amplitude_;
};

/// Anything that can be drawn from by inverse transform.
template <class D>
concept InverseTransformSampler = requires(const D& d, double u) {
  { d.quantile(u) } -> std::convertible_to<double>;
};

/// Anything exposing truncated moments of its (possibly unnormalized) density.
template <class D>
concept PartialMoments = requires(const D& d, int k, double lo, double hi) {
  { d.partial_moment(k, lo, hi) } -> std::convertible_to<double>;
  { d.full_mass() } -> std::convertible_to<double>;
};

}  // namespace fptkit
