#include "fptkit/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fptkit/errors.hpp"
#include "fptkit/quadrature.hpp"

namespace fptkit {

namespace {

// Lanczos approximation, g = 607/128, 15 terms (Godfrey).
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,  .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,  .36899182659531622704e-5};

double lanczos_ln_gamma(double x) {
  // Valid for x >= 0.5.
  const double z = x - 1.0;
  double sum = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) sum += kLanczos[i] / (z + static_cast<double>(i));
  const double t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(sum);
}

constexpr double kEps = std::numeric_limits<double>::epsilon();

double incgamma_series(double s, double x) {
  double term = 1.0 / s;
  double sum = term;
  for (int n = 1; n < 100000; ++n) {
    term *= x / (s + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) {
      return sum * std::exp(-x + s * std::log(x) - ln_gamma(s));
    }
  }
  throw NumericalError("incomplete gamma series did not converge", std::abs(term / sum));
}

// Upper regularized Q(s, x) by the modified Lentz continued fraction.
double incgamma_continued_fraction(double s, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - s;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 100000; ++i) {
    const double an = -i * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) {
      return std::exp(-x + s * std::log(x) - ln_gamma(s)) * h;
    }
  }
  throw NumericalError("incomplete gamma continued fraction did not converge", 1.0);
}

void check_ml_args(double t0, double beta) {
  if (!(t0 > 0.0) || !std::isfinite(t0)) throw DomainError("Mittag-Leffler scale t0 must be positive");
  if (!(beta > 0.0 && beta <= 1.0)) {
    throw DomainError("Mittag-Leffler beta must lie in (0, 1]; E_beta(-t^beta) is not a survival "
                      "function for beta > 1");
  }
}

// Conservative relative rounding error of one series term.
constexpr double kTermRounding = 4.0 * kEps;

}  // namespace

void MLSeriesConfig::validate() const {
  if (n_max < 1) throw DomainError("MLSeriesConfig.n_max must be >= 1");
  if (!(switch_threshold > 0.0)) throw DomainError("MLSeriesConfig.switch_threshold must be > 0");
  if (!(abs_tol > 0.0)) throw DomainError("MLSeriesConfig.abs_tol must be > 0");
}

double ln_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("ln_gamma requires x > 0, got " + std::to_string(x));
  if (std::isinf(x)) return x;
  if (x == 1.0 || x == 2.0) return 0.0;
  if (x < 0.5) return lanczos_ln_gamma(x + 1.0) - std::log(x);
  return lanczos_ln_gamma(x);
}

double reg_lower_incomplete_gamma(double s, double x) {
  if (!(s > 0.0)) throw DomainError("incomplete gamma requires s > 0");
  if (!(x >= 0.0)) throw DomainError("incomplete gamma requires x >= 0");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < s + 1.0) return std::min(1.0, incgamma_series(s, x));
  return std::max(0.0, 1.0 - incgamma_continued_fraction(s, x));
}

double reg_upper_incomplete_gamma(double s, double x) {
  if (!(s > 0.0)) throw DomainError("incomplete gamma requires s > 0");
  if (!(x >= 0.0)) throw DomainError("incomplete gamma requires x >= 0");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < s + 1.0) return std::max(0.0, 1.0 - incgamma_series(s, x));
  return std::min(1.0, incgamma_continued_fraction(s, x));
}

MittagLeffler::MittagLeffler(double beta, MLSeriesConfig cfg) : beta_(beta), cfg_(cfg) {
  check_ml_args(1.0, beta);
  cfg_.validate();
  const auto n = static_cast<std::size_t>(cfg_.n_max) + 1;
  log_rgamma_survival_.resize(n);
  log_rgamma_density_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double bn = beta_ * static_cast<double>(k);
    log_rgamma_survival_[k] = -ln_gamma(bn + 1.0);
    log_rgamma_density_[k] = -ln_gamma(bn + beta_);
  }
  switch_ = ml_effective_switch(beta_, cfg_);
}

namespace {

struct SeriesOutcome {
  long double sum = 0.0L;
  double last_term = 0.0;
  double max_term = 0.0;
  bool converged = false;
};

// Sum_n (-1)^n exp(lead * ln_x * ... ) with term magnitude exp(power(n) ln x + coeff[n]).
template <class Power>
SeriesOutcome alternating_series(double ln_x, const std::vector<double>& coeff, Power power,
                                 double stop_below) {
  SeriesOutcome out;
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < coeff.size(); ++n) {
    const double log_mag = power(static_cast<double>(n)) * ln_x + coeff[n];
    const double mag = std::exp(log_mag);
    out.sum += (n % 2 == 0) ? mag : -mag;
    out.max_term = std::max(out.max_term, mag);
    out.last_term = mag;
    if (n > 0 && mag < stop_below && mag <= prev) {
      out.converged = true;
      break;
    }
    prev = mag;
  }
  return out;
}

}  // namespace

double MittagLeffler::survival_series(double x) const {
  if (!(x >= 0.0)) throw DomainError("Mittag-Leffler argument must be non-negative");
  if (x == 0.0) return 1.0;
  const double b = beta_;
  auto out = alternating_series(std::log(x), log_rgamma_survival_,
                                [b](double n) { return b * n; }, 1e-2 * cfg_.abs_tol);
  const double err = out.last_term + kTermRounding * out.max_term * 8.0;
  if (!out.converged || err > cfg_.abs_tol) {
    throw NumericalError("Mittag-Leffler survival series did not reach abs_tol at t/t0 = " +
                             std::to_string(x),
                         err);
  }
  return static_cast<double>(out.sum);
}

double MittagLeffler::density_series(double x) const {
  if (!(x > 0.0)) {
    if (x == 0.0 && beta_ == 1.0) return 1.0;
    throw DomainError("Mittag-Leffler density requires t > 0 for beta < 1");
  }
  const double b = beta_;
  auto out = alternating_series(std::log(x), log_rgamma_density_,
                                [b](double n) { return b * n + b - 1.0; }, 1e-2 * cfg_.abs_tol);
  const double err = out.last_term + kTermRounding * out.max_term * 8.0;
  // Near x = 0 the density itself is large; measure the error relative to it.
  const double scale = std::max(1.0, std::abs(static_cast<double>(out.sum)));
  if (!out.converged || err > cfg_.abs_tol * scale) {
    throw NumericalError("Mittag-Leffler density series did not reach abs_tol at t/t0 = " +
                             std::to_string(x),
                         err);
  }
  return static_cast<double>(out.sum);
}

namespace {

std::vector<double> spectral_breakpoints(double x, double beta) {
  const double upper = std::pow(745.0 / x, beta);
  std::vector<double> pts{0.0, upper};
  auto add = [&](double p) {
    if (p > 0.0 && p < upper) pts.push_back(p);
  };
  const double knee = std::pow(x, -beta);
  add(knee);
  add(10.0 * knee);
  add(0.1 * knee);
  const double peak = -std::cos(beta * std::numbers::pi);
  const double width = std::sin(beta * std::numbers::pi);
  if (peak > 0.0) {
    add(peak);
    add(peak - width);
    add(peak + width);
    add(peak - 10.0 * width);
    add(peak + 10.0 * width);
  }
  add(1.0);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace

double MittagLeffler::survival_integral(double x) const {
  if (beta_ == 1.0) return std::exp(-x);
  if (!(x > 0.0)) throw DomainError("integral representation requires t > 0");
  const double b = beta_;
  const double cb = std::cos(b * std::numbers::pi);
  const double inv_b = 1.0 / b;
  auto f = [=](double u) {
    return std::exp(-x * std::pow(u, inv_b)) / (u * u + 2.0 * u * cb + 1.0);
  };
  const auto pts = spectral_breakpoints(x, b);
  const auto r = quad::integrate(f, std::span<const double>(pts), {1e-13, 1e-300, 4000});
  return std::sin(b * std::numbers::pi) / (b * std::numbers::pi) * r.value;
}

double MittagLeffler::density_integral(double x) const {
  if (beta_ == 1.0) return std::exp(-x);
  if (!(x > 0.0)) throw DomainError("integral representation requires t > 0");
  const double b = beta_;
  const double cb = std::cos(b * std::numbers::pi);
  const double inv_b = 1.0 / b;
  auto f = [=](double u) {
    const double r = std::pow(u, inv_b);
    return r * std::exp(-x * r) / (u * u + 2.0 * u * cb + 1.0);
  };
  const auto pts = spectral_breakpoints(x, b);
  const auto r = quad::integrate(f, std::span<const double>(pts), {1e-13, 1e-300, 4000});
  return std::sin(b * std::numbers::pi) / (b * std::numbers::pi) * r.value;
}

double MittagLeffler::survival(double x) const {
  if (!(x >= 0.0)) throw DomainError("Mittag-Leffler argument must be non-negative");
  if (beta_ == 1.0) return std::exp(-x);
  if (x == 0.0) return 1.0;
  return x <= switch_ ? survival_series(x) : survival_integral(x);
}

double MittagLeffler::density(double x) const {
  if (beta_ == 1.0) {
    if (!(x >= 0.0)) throw DomainError("Mittag-Leffler argument must be non-negative");
    return std::exp(-x);
  }
  if (!(x > 0.0)) throw DomainError("Mittag-Leffler density requires t > 0 for beta < 1");
  return x <= switch_ ? density_series(x) : density_integral(x);
}

double ml_effective_switch(double beta, const MLSeriesConfig& cfg) {
  check_ml_args(1.0, beta);
  cfg.validate();
  if (beta == 1.0) return cfg.switch_threshold;
  // Largest x for which both n_max-term series converge without losing
  // abs_tol to cancellation. Term magnitudes grow with x, so bisect.
  auto usable = [&](double x) {
    const double ln_x = std::log(x);
    double max_log = -std::numeric_limits<double>::infinity();
    for (int n = 0; n <= cfg.n_max; ++n) {
      max_log = std::max(max_log, beta * n * ln_x - ln_gamma(beta * n + 1.0));
    }
    const double last_s = beta * cfg.n_max * ln_x - ln_gamma(beta * cfg.n_max + 1.0);
    const double last_d = (beta * cfg.n_max + beta - 1.0) * ln_x - ln_gamma(beta * cfg.n_max + beta);
    const double lim = std::log(1e-2 * cfg.abs_tol);
    return last_s < lim && last_d < lim &&
           std::exp(max_log) * kTermRounding * 8.0 * std::max(1.0, std::pow(x, beta - 1.0)) <
               0.5 * cfg.abs_tol;
  };
  double hi = cfg.switch_threshold;
  if (usable(hi)) return hi;
  double lo = 1e-8;
  if (!usable(lo)) return lo;
  for (int it = 0; it < 80; ++it) {
    const double mid = std::sqrt(lo * hi);
    (usable(mid) ? lo : hi) = mid;
  }
  return lo;
}

double ml_survival(double t, double t0, double beta, const MLSeriesConfig& cfg) {
  check_ml_args(t0, beta);
  if (!(t >= 0.0)) throw DomainError("ml_survival requires t >= 0");
  if (beta == 1.0) return std::exp(-t / t0);
  if (t == 0.0) return 1.0;
  return MittagLeffler(beta, cfg).survival(t / t0);
}

double ml_pdf(double t, double t0, double beta, const MLSeriesConfig& cfg) {
  check_ml_args(t0, beta);
  if (beta == 1.0) {
    if (!(t >= 0.0)) throw DomainError("ml_pdf requires t >= 0");
    return std::exp(-t / t0) / t0;
  }
  if (!(t > 0.0)) throw DomainError("ml_pdf requires t > 0 for beta < 1 (density diverges at 0)");
  return MittagLeffler(beta, cfg).density(t / t0) / t0;
}

double ml_survival_asymptotic(double t, double t0, double beta) {
  check_ml_args(t0, beta);
  if (beta == 1.0) throw DomainError("power-law asymptote undefined at beta = 1 (Gamma(0) pole)");
  if (!(t > 0.0)) throw DomainError("ml_survival_asymptotic requires t > 0");
  return std::pow(t / t0, -beta) / std::tgamma(1.0 - beta);
}

double ml_survival_stretched(double t, double t0, double beta) {
  check_ml_args(t0, beta);
  if (!(t >= 0.0)) throw DomainError("ml_survival_stretched requires t >= 0");
  return std::exp(-std::pow(t / t0, beta) / std::tgamma(1.0 + beta));
}

}  // namespace fptkit
