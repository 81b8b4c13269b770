#include "fptkit/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fptkit/errors.hpp"
#include "fptkit/quadrature.hpp"

namespace fptkit {

namespace {

void require_open_unit(double u) {
  if (!(u > 0.0 && u < 1.0)) throw DomainError("probability must lie in (0, 1)");
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(name) + " must be positive and finite");
}

// integral_lo^hi t^e dt for 0 < lo <= hi (hi may be +inf when e < -1).
double power_integral(double e, double lo, double hi) {
  if (hi <= lo) return 0.0;
  const double p = e + 1.0;
  if (std::isinf(hi)) {
    if (p >= 0.0) return std::numeric_limits<double>::infinity();
    return -std::pow(lo, p) / p;
  }
  if (std::abs(p) < 1e-14) return std::log(hi / lo);
  return (std::pow(hi, p) - std::pow(lo, p)) / p;
}

}  // namespace

// ---------------------------------------------------------------- Weibull --

void WeibullParams::validate() const {
  require_positive(m, "Weibull shape m");
  require_positive(a, "Weibull scale a");
}

double weibull_pdf(double t, const WeibullParams& p) {
  p.validate();
  if (!(t >= 0.0)) throw DomainError("weibull_pdf requires t >= 0");
  if (t == 0.0) {
    if (p.m < 1.0) throw DomainError("Weibull density diverges at t = 0 for m < 1");
    return p.m == 1.0 ? 1.0 / p.a : 0.0;
  }
  const double tm = std::pow(t, p.m);
  return p.m * tm / (t * p.a) * std::exp(-tm / p.a);
}

double weibull_survival(double t, const WeibullParams& p) {
  p.validate();
  if (!(t >= 0.0)) throw DomainError("weibull_survival requires t >= 0");
  return std::exp(-std::pow(t, p.m) / p.a);
}

// Upper quantile: the t with S(t) = u.
double weibull_quantile(double u, const WeibullParams& p) {
  p.validate();
  require_open_unit(u);
  return std::pow(-p.a * std::log(u), 1.0 / p.m);
}

Weibull::Weibull(WeibullParams p) : p_(p) { p_.validate(); }

double Weibull::cdf(double t) const {
  if (!(t >= 0.0)) throw DomainError("Weibull cdf requires t >= 0");
  return -std::expm1(-std::pow(t, p_.m) / p_.a);
}

double Weibull::quantile(double u) const {
  require_open_unit(u);
  return std::pow(-p_.a * std::log1p(-u), 1.0 / p_.m);
}

double Weibull::raw_moment(double k) const {
  return std::pow(p_.a, k / p_.m) * std::tgamma(1.0 + k / p_.m);
}

double Weibull::partial_moment(int k, double lo, double hi) const {
  if (!(lo >= 0.0) || !(hi >= lo)) throw DomainError("partial_moment requires 0 <= lo <= hi");
  if (hi == lo) return 0.0;
  const double xlo = std::pow(lo, p_.m) / p_.a;
  const double xhi = std::isinf(hi) ? hi : std::pow(hi, p_.m) / p_.a;
  if (k == 0) return std::exp(-xlo) - std::exp(-xhi);
  const double s = 1.0 + k / p_.m;
  const double scale = raw_moment(static_cast<double>(k));
  // Differences of B near 1 lose digits; take them from Q instead.
  if (xlo > s) return scale * (reg_upper_incomplete_gamma(s, xlo) - reg_upper_incomplete_gamma(s, xhi));
  return scale * (reg_lower_incomplete_gamma(s, xhi) - reg_lower_incomplete_gamma(s, xlo));
}

// ----------------------------------------------------------- tail Weibull --

double tail_amplitude(double t_cross, double m, double a, double gamma) {
  require_positive(t_cross, "crossover t_cross");
  require_positive(m, "Weibull shape m");
  require_positive(a, "Weibull scale a");
  const double tm = std::pow(t_cross, m);
  // Evaluated in logs: t_cross^(m+gamma-1) overflows long before the product does.
  return std::exp(std::log(m / a) + (m + gamma - 1.0) * std::log(t_cross) - tm / a);
}

TailWeibullParams TailWeibullParams::make(double m, double a, double gamma, double t_cross) {
  TailWeibullParams p{m, a, gamma, t_cross, 0.0};
  p.lambda = tail_amplitude(t_cross, m, a, gamma);
  p.validate();
  return p;
}

void TailWeibullParams::validate() const {
  require_positive(m, "Weibull shape m");
  require_positive(a, "Weibull scale a");
  require_positive(t_cross, "crossover t_cross");
  if (!(gamma > 1.0) || !std::isfinite(gamma)) {
    throw DomainError("tail exponent gamma must exceed 1 for a normalizable tail");
  }
  const double expect = tail_amplitude(t_cross, m, a, gamma);
  if (!(std::abs(lambda - expect) <= 1e-12 * expect)) {
    throw DomainError("tail amplitude lambda is inconsistent with continuity at t_cross");
  }
}

double tail_weibull_pdf(double t, const TailWeibullParams& p) {
  if (!(t >= 0.0)) throw DomainError("tail_weibull_pdf requires t >= 0");
  if (t <= p.t_cross) return weibull_pdf(t, {p.m, p.a});
  return p.lambda * std::pow(t, -p.gamma);
}

double tail_weibull_mass(const TailWeibullParams& p) {
  if (!(p.gamma > 1.0)) throw HeavyTailError("tail mass diverges for gamma <= 1", "gamma - 1", 0.0);
  const double body = -std::expm1(-std::pow(p.t_cross, p.m) / p.a);
  return body + p.lambda * std::pow(p.t_cross, 1.0 - p.gamma) / (p.gamma - 1.0);
}

double tail_weibull_cdf(double t, const TailWeibullParams& p) {
  if (!(t >= 0.0)) throw DomainError("tail_weibull_cdf requires t >= 0");
  const double z = tail_weibull_mass(p);
  if (t <= p.t_cross) return -std::expm1(-std::pow(t, p.m) / p.a) / z;
  const double body = -std::expm1(-std::pow(p.t_cross, p.m) / p.a);
  const double g1 = p.gamma - 1.0;
  const double tail = p.lambda * (std::pow(p.t_cross, -g1) - std::pow(t, -g1)) / g1;
  return (body + tail) / z;
}

double tail_weibull_sample(const TailWeibullParams& p, double u) {
  require_open_unit(u);
  const double z = tail_weibull_mass(p);
  const double body = -std::expm1(-std::pow(p.t_cross, p.m) / p.a);
  const double target = u * z;
  if (target <= body) return std::pow(-p.a * std::log1p(-target), 1.0 / p.m);
  const double g1 = p.gamma - 1.0;
  const double rest = std::pow(p.t_cross, -g1) - (target - body) * g1 / p.lambda;
  return std::pow(rest, -1.0 / g1);
}

TailWeibull::TailWeibull(const TailWeibullParams& p)
    : p_(p), body_({p.m, p.a}), mass_((p.validate(), tail_weibull_mass(p))) {}

double TailWeibull::body_mass() const { return body_.cdf(p_.t_cross); }

double TailWeibull::partial_moment(int k, double lo, double hi) const {
  if (!(lo >= 0.0) || !(hi >= lo)) throw DomainError("partial_moment requires 0 <= lo <= hi");
  double out = 0.0;
  if (lo < p_.t_cross) out += body_.partial_moment(k, lo, std::min(hi, p_.t_cross));
  if (hi > p_.t_cross) {
    out += p_.lambda * power_integral(static_cast<double>(k) - p_.gamma, std::max(lo, p_.t_cross), hi);
  }
  return out;
}

// ---------------------------------------------------------- Mittag-Leffler --

MittagLefflerDensity::MittagLefflerDensity(double beta, double t0, MLSeriesConfig cfg)
    : ml_(beta, cfg), t0_(t0) {
  require_positive(t0, "Mittag-Leffler scale t0");
}

double MittagLefflerDensity::partial_moment(int k, double lo, double hi) const {
  if (!(lo >= 0.0) || !(hi >= lo)) throw DomainError("partial_moment requires 0 <= lo <= hi");
  if (k < 0 || k > 2) throw DomainError("Mittag-Leffler partial moments support k in {0, 1, 2}");
  if (hi == lo) return 0.0;
  if (std::isinf(hi)) {
    if (k == 0) return survival(lo);
    throw DomainError("untruncated Mittag-Leffler moments of order >= 1 diverge");
  }
  const double s_lo = survival(lo);
  const double s_hi = survival(hi);
  if (k == 0) return s_lo - s_hi;
  // integral t^k P dt = [ -t^k S ]_lo^hi + k integral t^(k-1) S dt
  std::vector<double> pts = quad::log_breakpoints(std::max(lo, 1e-8 * t0_), hi, 2);
  pts.push_back(lo);
  const double sw = ml_.switch_point() * t0_;
  if (sw > lo && sw < hi) pts.push_back(sw);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  auto f = [&](double t) {
    const double s = survival(t);
    return k == 1 ? s : t * s;
  };
  const auto r = quad::integrate(f, std::span<const double>(pts), {1e-11, 0.0, 20000});
  const double boundary = (k == 1 ? lo : lo * lo) * s_lo - (k == 1 ? hi : hi * hi) * s_hi;
  return boundary + static_cast<double>(k) * r.value;
}

void TruncatedMLParams::validate() const {
  if (!(beta > 0.0 && beta <= 1.0)) throw DomainError("truncated Mittag-Leffler needs beta in (0, 1]");
  require_positive(t0, "Mittag-Leffler scale t0");
  require_positive(t_max, "cutoff t_max");
  series.validate();
}

TruncatedML::TruncatedML(const TruncatedMLParams& p)
    : p_((p.validate(), p)), density_(p.beta, p.t0, p.series), mass_(1.0 - density_.survival(p.t_max)) {
  if (!(mass_ > 0.0 && mass_ <= 1.0)) throw DomainError("truncated Mittag-Leffler mass must lie in (0, 1]");
}

double TruncatedML::pdf(double t) const {
  if (t > p_.t_max) return 0.0;
  return density_.pdf(t);
}

double TruncatedML::cdf(double t) const {
  if (!(t >= 0.0)) throw DomainError("cdf requires t >= 0");
  if (t >= p_.t_max) return 1.0;
  return (1.0 - density_.survival(t)) / mass_;
}

double TruncatedML::partial_moment(int k, double lo, double hi) const {
  lo = std::min(lo, p_.t_max);
  hi = std::min(hi, p_.t_max);
  return density_.partial_moment(k, lo, hi);
}

double TruncatedML::moment(int k) const { return partial_moment(k, 0.0, p_.t_max) / mass_; }

double truncated_ml_moment(int k, const TruncatedMLParams& p) {
  if (k != 1 && k != 2) throw DomainError("truncated_ml_moment supports k in {1, 2}");
  return TruncatedML(p).moment(k);
}

TruncatedMLSampler::TruncatedMLSampler(const TruncatedMLParams& p, std::size_t table_size) : dist_(p) {
  table_size = std::max<std::size_t>(table_size, 16);
  const double hi = p.t_max;
  const double lo = hi * 1e-10;
  t_.reserve(table_size + 1);
  cdf_.reserve(table_size + 1);
  t_.push_back(0.0);
  cdf_.push_back(0.0);
  for (std::size_t i = 0; i < table_size; ++i) {
    const double t = lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(table_size - 1));
    t_.push_back(t);
    cdf_.push_back(dist_.cdf(t));
  }
  t_.back() = hi;
  cdf_.back() = 1.0;
}

double TruncatedMLSampler::quantile(double u) const {
  require_open_unit(u);
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  const std::size_t j = static_cast<std::size_t>(std::distance(cdf_.begin(), it));
  double lo = t_[j - 1];
  double hi = t_[std::min(j, t_.size() - 1)];
  const double c_lo = cdf_[j - 1];
  const double c_hi = cdf_[std::min(j, cdf_.size() - 1)];
  double t = lo + (hi - lo) * (u - c_lo) / std::max(c_hi - c_lo, 1e-300);
  const double z = dist_.mass();
  for (int it_count = 0; it_count < 100; ++it_count) {
    const double g = dist_.cdf(t) - u;
    if (g > 0.0) hi = t; else lo = t;
    const double slope = t > 0.0 ? dist_.pdf(t) / z : 0.0;
    double next = (slope > 0.0 && std::isfinite(slope)) ? t - g / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) <= 1e-13 * std::max(t, 1e-300) || hi - lo <= 1e-14 * hi) return next;
    t = next;
  }
  return t;
}

// ------------------------------------------------------------ approximant --

void MLApproximantParams::validate() const {
  require_positive(beta, "approximant beta");
  require_positive(t0, "approximant t0");
  require_positive(t_cross, "approximant t_cross");
}

MLApproximant::MLApproximant(const MLApproximantParams& p)
    : p_((p.validate(), p)),
      body_({p.beta, std::pow(p.t0, p.beta) * std::tgamma(1.0 + p.beta)}),
      amplitude_(std::pow(p.t_cross, p.beta + 1.0) * body_.pdf(p.t_cross)) {}

double MLApproximant::pdf(double t) const {
  if (!(t >= 0.0)) throw DomainError("approximant pdf requires t >= 0");
  if (t <= p_.t_cross) return body_.pdf(t);
  return amplitude_ * std::pow(t, -1.0 - p_.beta);
}

double MLApproximant::full_mass() const {
  return body_.cdf(p_.t_cross) + amplitude_ * std::pow(p_.t_cross, -p_.beta) / p_.beta;
}

double MLApproximant::partial_moment(int k, double lo, double hi) const {
  if (!(lo >= 0.0) || !(hi >= lo)) throw DomainError("partial_moment requires 0 <= lo <= hi");
  double out = 0.0;
  if (lo < p_.t_cross) out += body_.partial_moment(k, lo, std::min(hi, p_.t_cross));
  if (hi > p_.t_cross) {
    out += amplitude_ * power_integral(static_cast<double>(k) - 1.0 - p_.beta, std::max(lo, p_.t_cross), hi);
  }
  return out;
}

double MLApproximant::waiting_time(double t_max) const {
  require_positive(t_max, "cutoff t_max");
  return partial_moment(2, 0.0, t_max) / (2.0 * partial_moment(1, 0.0, t_max));
}

}  // namespace fptkit
