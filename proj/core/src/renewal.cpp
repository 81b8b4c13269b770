#include "fptkit/renewal.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fptkit/errors.hpp"
#include "fptkit/parallel.hpp"
#include "fptkit/specfun.hpp"

namespace fptkit {

const char* to_string(WaitingTimeMethod m) {
  switch (m) {
    case WaitingTimeMethod::empirical: return "empirical";
    case WaitingTimeMethod::weibull_closed_form: return "weibull_closed_form";
    case WaitingTimeMethod::tail_weibull_formula: return "tail_weibull_formula";
    case WaitingTimeMethod::ml_truncated_quadrature: return "ml_truncated_quadrature";
    case WaitingTimeMethod::ml_truncated_series: return "ml_truncated_series";
    case WaitingTimeMethod::approximant_closed_form: return "approximant_closed_form";
  }
  return "unknown";
}

WaitingTimeResult empirical_waiting_time(const DurationSample& samples) {
  if (samples.size() < 2) throw DomainError("empirical waiting time needs at least 2 durations");
  double s1 = 0.0;
  double s2 = 0.0;
  for (double t : samples.values()) {
    s1 += t;
    s2 += t * t;
  }
  if (!(s1 > 0.0)) throw DomainError("empirical waiting time undefined when every duration is zero");
  const double n = static_cast<double>(samples.size());
  WaitingTimeResult r;
  r.method = WaitingTimeMethod::empirical;
  r.w = s2 / (2.0 * s1);
  r.diagnostics = {{"n", n}, {"mean", s1 / n}, {"second_moment", s2 / n}};
  return r;
}

WaitingTimeResult weibull_waiting_time(const WeibullParams& p) {
  p.validate();
  const double inv_m = 1.0 / p.m;
  const double ln_scale = inv_m * std::log(p.a);
  WaitingTimeResult r;
  r.method = WaitingTimeMethod::weibull_closed_form;
  r.w = std::exp(ln_scale + ln_gamma(2.0 * inv_m) - ln_gamma(inv_m));
  const double mean = std::exp(ln_scale + ln_gamma(inv_m)) * inv_m;
  r.diagnostics = {{"mean", mean}, {"w_over_mean", r.w / mean}};
  return r;
}

TailWeibullTerms tail_weibull_terms(const TailWeibullParams& p) {
  const double m = p.m;
  const double a = p.a;
  const double x = std::pow(p.t_cross, m) / a;
  const double ln_t = std::log(p.t_cross);
  const double ln_pref = std::log(m / a) - x;  // ln(m/a) - t_x^m / a
  TailWeibullTerms out;
  out.body_first = std::pow(a, 1.0 / m) / m * std::tgamma(1.0 / m) * reg_lower_incomplete_gamma(1.0 / m + 1.0, x);
  out.body_second = 2.0 * std::pow(a, 2.0 / m) / m * std::tgamma(2.0 / m) * reg_lower_incomplete_gamma(2.0 / m + 1.0, x);
  out.tail_first = std::exp(ln_pref + (m + 1.0) * ln_t) / (p.gamma - 2.0);
  out.tail_second = std::exp(ln_pref + (m + 2.0) * ln_t) / (p.gamma - 3.0);
  return out;
}

WaitingTimeResult tail_weibull_waiting_time(const TailWeibullParams& p) {
  p.validate();
  const auto terms = tail_weibull_terms(p);
  if (!(p.gamma > 3.0)) {
    const std::string denom = p.gamma <= 2.0 ? "(gamma - 2) and (gamma - 3)" : "(gamma - 3)";
    throw HeavyTailError("tail too heavy for a finite waiting time: gamma = " + std::to_string(p.gamma) +
                             " <= 3 makes " + denom + " non-positive",
                         denom, terms.waiting_time());
  }
  WaitingTimeResult r;
  r.method = WaitingTimeMethod::tail_weibull_formula;
  r.w = terms.waiting_time();
  r.diagnostics = {
      {"body_first", terms.body_first},
      {"tail_first", terms.tail_first},
      {"body_second", terms.body_second},
      {"tail_second", terms.tail_second},
      {"first_moment", terms.first_moment()},
      {"second_moment", terms.second_moment()},
      {"lambda", p.lambda},
  };
  if (p.gamma < 3.5) {
    r.warnings.push_back("gamma < 3.5: the (gamma - 3) denominator amplifies tail-fit noise");
  }
  return r;
}

WaitingTimeResult ml_truncated_waiting_time(const TruncatedMLParams& p) {
  const TruncatedML dist(p);
  const double m1 = dist.partial_moment(1, 0.0, p.t_max);
  const double m2 = dist.partial_moment(2, 0.0, p.t_max);
  WaitingTimeResult r;
  r.method = WaitingTimeMethod::ml_truncated_quadrature;
  r.w = m2 / (2.0 * m1);
  r.diagnostics = {{"mass", dist.mass()}, {"mean", m1 / dist.mass()}, {"second_moment", m2 / dist.mass()}};
  return r;
}

WaitingTimeResult ml_truncated_waiting_time_series(const TruncatedMLParams& p) {
  p.validate();
  const double b = p.beta;
  const double ln_x = std::log(p.t_max / p.t0);
  long double num = 0.0L;
  long double den = 0.0L;
  double max_term = 0.0;
  bool converged = false;
  double prev = std::numeric_limits<double>::infinity();
  int n = 0;
  for (; n <= p.series.n_max; ++n) {
    const double e = b * n + b;
    const double lg = ln_gamma(e);
    const double tn = std::exp((e + 2.0) * ln_x - lg) / (e + 2.0);
    const double td = std::exp((e + 1.0) * ln_x - lg) / (e + 1.0);
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    num += sign * tn;
    den += sign * td;
    max_term = std::max({max_term, tn, td});
    const double mag = std::max(tn, td);
    if (n > 0 && mag <= prev && tn < 1e-16 * std::abs(static_cast<double>(num)) &&
        td < 1e-16 * std::abs(static_cast<double>(den))) {
      converged = true;
      break;
    }
    prev = mag;
  }
  const double scale = std::min(std::abs(static_cast<double>(num)), std::abs(static_cast<double>(den)));
  if (!(max_term <= 1e12 * scale)) {
    throw NumericalError("alternating waiting-time series cancels catastrophically at t_max/t0 = " +
                             std::to_string(p.t_max / p.t0),
                         max_term * std::numeric_limits<double>::epsilon());
  }
  if (!converged) {
    throw NumericalError("waiting-time series did not converge within n_max terms", prev);
  }
  WaitingTimeResult r;
  r.method = WaitingTimeMethod::ml_truncated_series;
  r.w = 0.5 * p.t0 * static_cast<double>(num / den);
  r.diagnostics = {{"terms", static_cast<double>(n + 1)}, {"max_term", max_term}};
  return r;
}

WaitingTimeResult approximant_waiting_time(const MLApproximantParams& p, double t_max) {
  const MLApproximant d(p);
  WaitingTimeResult r;
  r.method = WaitingTimeMethod::approximant_closed_form;
  r.w = d.waiting_time(t_max);
  r.diagnostics = {{"tail_amplitude", d.tail_amplitude()}};
  return r;
}

InspectionParadox inspection_paradox(const WeibullParams& p) {
  p.validate();
  const double inv_m = 1.0 / p.m;
  const double ln_l1 = 2.0 * ln_gamma(inv_m);
  const double ln_l2 = std::log(p.m) + ln_gamma(2.0 * inv_m);
  InspectionParadox r;
  r.l1 = std::exp(ln_l1);
  r.l2 = std::exp(ln_l2);
  r.w_over_mean = std::exp(ln_l2 - ln_l1);
  r.paradox = ln_l2 > ln_l1;
  return r;
}

std::vector<CurveRow> waiting_time_curve(const TailWeibullParams& base, std::span<const double> sweep) {
  if (sweep.empty()) throw DomainError("waiting_time_curve needs a non-empty sweep");
  std::vector<CurveRow> rows(sweep.size());
  parallel_for(sweep.size(), [&](std::size_t i) {
    const auto p = TailWeibullParams::make(base.m, base.a, base.gamma, sweep[i]);
    rows[i] = {sweep[i], tail_weibull_terms(p).waiting_time(), p.gamma > 3.0};
  });
  return rows;
}

std::vector<CurveRow> waiting_time_curve(const TruncatedMLParams& base, std::span<const double> sweep) {
  if (sweep.empty()) throw DomainError("waiting_time_curve needs a non-empty sweep");
  std::vector<CurveRow> rows(sweep.size());
  parallel_for(sweep.size(), [&](std::size_t i) {
    auto p = base;
    p.t_max = sweep[i];
    rows[i] = {sweep[i], ml_truncated_waiting_time(p).w, true};
  });
  return rows;
}

}  // namespace fptkit
