#include "fptkit/fitting.hpp"

#include <algorithm>
#include <cmath>

#include "fptkit/distributions.hpp"
#include "fptkit/errors.hpp"

namespace fptkit {

namespace {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double slope_std_error = 0.0;
};

LineFit least_squares(std::span<const LinePoint> pts) {
  const double n = static_cast<double>(pts.size());
  double mx = 0.0, my = 0.0;
  for (const auto& p : pts) {
    mx += p.x;
    my += p.y;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& p : pts) {
    sxx += (p.x - mx) * (p.x - mx);
    sxy += (p.x - mx) * (p.y - my);
    syy += (p.y - my) * (p.y - my);
  }
  if (!(sxx > 0.0)) throw FitError("regression points share a single abscissa");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0.0;
  for (const auto& p : pts) {
    const double r = p.y - (f.intercept + f.slope * p.x);
    ss_res += r * r;
  }
  f.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  f.slope_std_error = pts.size() > 2 ? std::sqrt(ss_res / (n - 2.0) / sxx) : 0.0;
  return f;
}

}  // namespace

std::vector<SurvivalPoint> empirical_survival(const DurationSample& samples) {
  if (samples.size() < 2) throw DomainError("empirical_survival needs at least 2 durations");
  const auto x = samples.sorted();
  const double n = static_cast<double>(x.size());
  std::vector<SurvivalPoint> out;
  for (std::size_t i = 0; i < x.size();) {
    std::size_t j = i;
    while (j < x.size() && x[j] == x[i]) ++j;
    out.push_back({x[i], static_cast<double>(x.size() - j) / n});
    i = j;
  }
  return out;
}

double survival_at(std::span<const SurvivalPoint> curve, double t) {
  auto it = std::upper_bound(curve.begin(), curve.end(), t,
                             [](double v, const SurvivalPoint& p) { return v < p.t; });
  if (it == curve.begin()) return 1.0;
  return std::prev(it)->s;
}

WeibullPaperFit weibull_paper_fit(std::span<const SurvivalPoint> curve, double t_cut) {
  WeibullPaperFit fit;
  fit.t_cut = t_cut;
  for (const auto& p : curve) {
    if (p.t > 0.0 && p.t <= t_cut && p.s > 0.0 && p.s < 1.0) {
      fit.transformed.push_back({std::log(p.t), std::log(-std::log(p.s))});
    }
  }
  fit.n_used = static_cast<int>(fit.transformed.size());
  if (fit.n_used < 3) throw FitError("Weibull-paper fit needs at least 3 usable points below t_cut");
  const auto line = least_squares(fit.transformed);
  fit.m = line.slope;
  fit.a = std::exp(-line.intercept);
  fit.r_squared = line.r_squared;
  return fit;
}

WeibullPaperFit weibull_paper_fit(const DurationSample& samples, double t_cut) {
  return weibull_paper_fit(empirical_survival(samples), t_cut);
}

TailExponentFit tail_exponent_fit(std::span<const SurvivalPoint> curve, double t_min) {
  std::vector<LinePoint> pts;
  for (const auto& p : curve) {
    if (p.t > t_min && p.t > 0.0 && p.s > 0.0) pts.push_back({std::log(p.t), std::log(p.s)});
  }
  if (pts.size() < 10) throw FitError("tail fit needs at least 10 points above t_min");
  const auto line = least_squares(pts);
  TailExponentFit fit;
  fit.gamma = 1.0 - line.slope;
  fit.std_error = line.slope_std_error;
  fit.t_min = t_min;
  fit.n_used = static_cast<int>(pts.size());
  return fit;
}

TailExponentFit tail_exponent_fit(const DurationSample& samples, std::optional<double> t_min) {
  const auto curve = empirical_survival(samples);
  double cut = 0.0;
  if (t_min) {
    cut = *t_min;
  } else {
    const auto x = samples.sorted();
    cut = x[static_cast<std::size_t>(0.95 * static_cast<double>(x.size() - 1))];
  }
  return tail_exponent_fit(curve, cut);
}

double optimal_crossover(double m, double a, double gamma) {
  if (!(m > 0.0) || !(a > 0.0)) throw DomainError("optimal_crossover needs m > 0 and a > 0");
  const double c = m + gamma - 1.0;
  if (!(c > 0.0)) throw DomainError("optimal_crossover needs m + gamma - 1 > 0");
  return std::pow(a / m * c, 1.0 / m);
}

double d_function(double t_cross, double m, double a, double gamma) {
  if (!(t_cross > 0.0)) throw DomainError("d_function needs t_cross > 0");
  return m / a * std::pow(t_cross, m) - gamma - m + 1.0;
}

double d_function_root(double m, double a, double gamma) {
  if (!(m + gamma - 1.0 > 0.0)) throw DomainError("D has no positive root when m + gamma - 1 <= 0");
  double lo = 1.0, hi = 1.0;
  while (d_function(lo, m, a, gamma) > 0.0) lo *= 0.5;
  while (d_function(hi, m, a, gamma) < 0.0) hi *= 2.0;
  for (int i = 0; i < 2000 && hi - lo > 1e-16 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (d_function(mid, m, a, gamma) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double tail_amplitude_second_derivative(double t, double m, double a, double gamma) {
  if (!(t > 0.0)) throw DomainError("tail amplitude derivative needs t > 0");
  const double c = m + gamma - 1.0;
  const double u = m / a * std::pow(t, m);
  const double poly = u * u - u * (2.0 * c + m - 1.0) + c * (c - 1.0);
  return m / a * std::exp((c - 2.0) * std::log(t) - std::pow(t, m) / a) * poly;
}

const char* to_string(SecondDerivativeSign s) {
  return s == SecondDerivativeSign::minimum_confirmed ? "minimum_confirmed" : "not_confirmed";
}

CrossoverDiagnostics crossover_diagnostics(double m, double a, double gamma, std::span<const double> sweep) {
  if (sweep.empty()) throw DomainError("crossover_diagnostics needs a non-empty sweep");
  CrossoverDiagnostics d;
  d.t_star = optimal_crossover(m, a, gamma);
  d.d_values.reserve(sweep.size());
  d.lambda_values.reserve(sweep.size());
  for (double t : sweep) {
    d.d_values.push_back({t, d_function(t, m, a, gamma)});
    d.lambda_values.push_back({t, tail_amplitude(t, m, a, gamma)});
  }
  d.lambda_argmax = static_cast<std::size_t>(
      std::max_element(d.lambda_values.begin(), d.lambda_values.end(),
                       [](const SweepValue& x, const SweepValue& y) { return x.value < y.value; }) -
      d.lambda_values.begin());

  const double ts = d.t_star;
  const double h = 1e-4 * ts;
  d.lambda_second_derivative = tail_amplitude_second_derivative(ts, m, a, gamma);
  d.lambda_second_difference = (tail_amplitude(ts + h, m, a, gamma) - 2.0 * tail_amplitude(ts, m, a, gamma) +
                                tail_amplitude(ts - h, m, a, gamma)) /
                               (h * h);
  // lambda has a maximum at t* (so the waiting-time gap has a minimum) when
  // both second-derivative estimates are negative and D crosses from - to +.
  const bool sign_change = d_function(ts * (1.0 - 1e-6), m, a, gamma) < 0.0 &&
                           d_function(ts * (1.0 + 1e-6), m, a, gamma) > 0.0;
  if (d.lambda_second_derivative < 0.0 && d.lambda_second_difference < 0.0 && sign_change) {
    d.second_derivative_sign = SecondDerivativeSign::minimum_confirmed;
  }
  return d;
}

}  // namespace fptkit
