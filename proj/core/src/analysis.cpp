#include "fptkit/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "fptkit/errors.hpp"
#include "fptkit/gini.hpp"
#include "fptkit/renewal.hpp"

namespace fptkit {

namespace {

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  std::vector<double> g(n);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < n; ++i) g[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  return g;
}

/// Indices 0..n-1 thinned to at most `cap`, always keeping the ends.
std::vector<std::size_t> thin(std::size_t n, std::size_t cap) {
  std::vector<std::size_t> idx;
  if (n == 0) return idx;
  const std::size_t stride = std::max<std::size_t>(1, (n + cap - 1) / cap);
  for (std::size_t i = 0; i < n; i += stride) idx.push_back(i);
  if (idx.back() != n - 1) idx.push_back(n - 1);
  return idx;
}

void add_lorentz_rows(Table& t, const std::string& name, const LorentzCurve& c, std::size_t cap) {
  for (std::size_t i : thin(c.points.size(), cap)) {
    t.add(std::vector<std::string>{name, format_number(c.points[i].x), format_number(c.points[i].y)});
  }
}

}  // namespace

CrossoverPolicy CrossoverPolicy::parse(const std::string& text) {
  if (text == "optimal") return {};
  const std::string prefix = "fixed:";
  if (text.rfind(prefix, 0) == 0) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(text.substr(prefix.size()), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == text.size() - prefix.size() && v > 0.0 && std::isfinite(v)) return {false, v};
  }
  throw DomainError("crossover policy must be 'optimal' or 'fixed:<positive seconds>', got '" + text + "'");
}

std::string CrossoverPolicy::describe() const { return optimal ? "optimal" : "fixed:" + format_number(fixed); }

std::optional<double> AnalysisReport::delta_w_weibull() const {
  if (!w_weibull) return std::nullopt;
  return w_empirical - *w_weibull;
}

std::optional<double> AnalysisReport::delta_w_tail_at_t_cross() const {
  if (!w_tail_at_t_cross) return std::nullopt;
  return w_empirical - *w_tail_at_t_cross;
}

std::optional<double> AnalysisReport::delta_w_tail_at_t_star() const {
  if (!w_tail_at_t_star) return std::nullopt;
  return w_empirical - *w_tail_at_t_star;
}

KeyValueDocument AnalysisReport::document() const {
  // All values are held in seconds; times are converted on output only.
  const double k = unit == "min" ? 1.0 / 60.0 : 1.0;
  KeyValueDocument d;
  auto time = [&](const std::string& key, const std::optional<double>& v) {
    if (v) d.set(key, *v * k);
  };
  d.set("unit", unit);
  d.set("n", static_cast<double>(n));
  d.set("zero_durations", static_cast<double>(zero_durations));
  d.set("mean", mean * k);
  d.set("second_moment", second_moment * k * k);
  d.set("w_empirical", w_empirical * k);
  d.set("paradox_empirical", w_empirical > mean);
  d.set("gini_empirical", gini_empirical);
  if (weibull_fit) {
    d.set("weibull_m", weibull_fit->m);
    d.set("weibull_a", weibull_fit->a);
    d.set("weibull_r_squared", weibull_fit->r_squared);
    d.set("weibull_t_cut", weibull_fit->t_cut * k);
    d.set("weibull_n_used", static_cast<double>(weibull_fit->n_used));
  }
  if (tail_fit) {
    d.set("tail_gamma_fit", tail_fit->gamma);
    d.set("tail_slope_std_error", tail_fit->std_error);
    d.set("tail_t_min", tail_fit->t_min * k);
    d.set("tail_n_used", static_cast<double>(tail_fit->n_used));
  }
  if (gamma) {
    d.set("gamma", *gamma);
    d.set("gamma_source", gamma_source);
  }
  if (!t_cross_policy.empty()) d.set("t_cross_policy", t_cross_policy);
  time("t_cross", t_cross);
  time("t_star", t_star);
  time("w_weibull", w_weibull);
  time("mean_weibull", mean_weibull);
  if (w_over_mean_weibull) d.set("w_over_mean_weibull", *w_over_mean_weibull);
  if (paradox_weibull) d.set("paradox_weibull", *paradox_weibull);
  d.set("heavy_tail", heavy_tail);
  time("w_tail_at_t_cross", w_tail_at_t_cross);
  time("w_tail_at_t_star", w_tail_at_t_star);
  time("w_tail_raw_formula", w_tail_raw);
  time("delta_w_weibull", delta_w_weibull());
  time("delta_w_tail_at_t_cross", delta_w_tail_at_t_cross());
  time("delta_w_tail_at_t_star", delta_w_tail_at_t_star());
  if (gini_weibull) d.set("gini_weibull", *gini_weibull);
  for (const auto& w : warnings) d.append("warning", w);
  for (const auto& e : errors) d.append("error", e.stage + ": " + e.message);
  return d;
}

DurationExtraction load_durations(const AnalysisConfig& cfg) {
  const auto csv = read_csv(cfg.input);
  if (csv.rows.empty()) throw DataError("input has no data rows", 0);
  if (cfg.mode == InputMode::first_passage) {
    auto fp = extract_first_passage(ticks_from_csv(csv), cfg.threshold, cfg.reset);
    DurationExtraction out{std::move(fp.durations), 0};
    for (double v : out.durations.values()) out.zero_durations += v == 0.0;
    return out;
  }
  if (csv.column("duration") >= 0) {
    DurationExtraction out{durations_from_csv(csv), 0};
    for (double v : out.durations.values()) out.zero_durations += v == 0.0;
    return out;
  }
  return extract_durations(timestamps_from_csv(csv));
}

AnalysisReport analyze(const AnalysisConfig& cfg) { return analyze(load_durations(cfg), cfg); }

AnalysisReport analyze(const DurationExtraction& data, const AnalysisConfig& cfg) {
  if (cfg.unit != "s" && cfg.unit != "min") throw DomainError("unit must be 's' or 'min'");
  const auto& sample = data.durations;
  if (sample.size() < 2) throw DataError("need at least 2 durations, got " + std::to_string(sample.size()), 0);
  if (!(sample.mean() > 0.0)) throw DataError("every duration is zero", 0);

  AnalysisReport r;
  r.unit = cfg.unit;
  r.n = sample.size();
  r.zero_durations = data.zero_durations;
  r.mean = sample.mean();
  r.second_moment = sample.second_moment();
  r.w_empirical = empirical_waiting_time(sample).w;
  r.gini_empirical = gini_empirical(sample);
  if (r.zero_durations > 0) r.warnings.push_back(std::to_string(r.zero_durations) + " zero durations retained");

  const double k = cfg.unit == "min" ? 1.0 / 60.0 : 1.0;
  auto stage = [&](const char* name, const std::function<void()>& body) {
    try {
      body();
    } catch (const HeavyTailError&) {
      throw;
    } catch (const Error& e) {
      r.errors.push_back({name, e.what()});
    }
  };

  const auto survival = empirical_survival(sample);
  const auto sorted = sample.sorted();

  stage("fit_weibull", [&] {
    r.weibull_fit = weibull_paper_fit(survival, cfg.t_cut.value_or(sorted.back()));
    const WeibullParams wp{r.weibull_fit->m, r.weibull_fit->a};
    wp.validate();
    const auto wr = weibull_waiting_time(wp);
    r.w_weibull = wr.w;
    r.mean_weibull = wr.diagnostics.at("mean");
    const auto ip = inspection_paradox(wp);
    r.w_over_mean_weibull = ip.w_over_mean;
    r.paradox_weibull = ip.paradox;
  });

  stage("fit_tail", [&] {
    if (cfg.gamma) {
      r.gamma = *cfg.gamma;
      r.gamma_source = "override";
    }
    r.tail_fit = cfg.t_min_tail ? tail_exponent_fit(survival, *cfg.t_min_tail) : tail_exponent_fit(sample);
    if (!cfg.gamma) {
      r.gamma = r.tail_fit->gamma;
      r.gamma_source = "fit";
    }
  });

  std::optional<TailWeibullParams> base;
  stage("crossover", [&] {
    if (!r.weibull_fit || !r.gamma) return;
    const double m = r.weibull_fit->m;
    const double a = r.weibull_fit->a;
    r.t_cross_policy = cfg.t_cross.describe();
    r.t_star = optimal_crossover(m, a, *r.gamma);
    r.t_cross = cfg.t_cross.optimal ? *r.t_star : cfg.t_cross.fixed;
    base = TailWeibullParams::make(m, a, *r.gamma, *r.t_cross);
    base->validate();
  });

  stage("waiting_time", [&] {
    if (!base) return;
    if (!(*r.gamma > 3.0)) {
      r.heavy_tail = true;
      r.w_tail_raw = tail_weibull_terms(*base).waiting_time();
      r.warnings.push_back("heavy tail: gamma = " + format_number(*r.gamma) +
                           " <= 3, the tail-corrected waiting time diverges and is not reported");
      if (cfg.strict) tail_weibull_waiting_time(*base);  // throws HeavyTailError
      return;
    }
    auto at_cross = tail_weibull_waiting_time(*base);
    r.w_tail_at_t_cross = at_cross.w;
    for (auto& w : at_cross.warnings) r.warnings.push_back(std::move(w));
    const auto opt = TailWeibullParams::make(base->m, base->a, base->gamma, *r.t_star);
    r.w_tail_at_t_star = tail_weibull_waiting_time(opt).w;
  });

  stage("gini", [&] {
    if (!r.weibull_fit) return;
    const Weibull w({r.weibull_fit->m, r.weibull_fit->a});
    r.gini_weibull = gini_analytic(w, w.quantile(1.0 - 1e-14), 512);
  });

  // Tables.
  stage("table_survival", [&] {
    Table t("empirical survival with Weibull and tail-Weibull fits (t in " + cfg.unit + ")",
            {"t", "S_empirical", "S_weibull", "S_tail_weibull"});
    const double nan = std::nan("");
    for (std::size_t i : thin(survival.size(), 2000)) {
      const double x = survival[i].t;
      const double sw = r.weibull_fit ? weibull_survival(x, {r.weibull_fit->m, r.weibull_fit->a}) : nan;
      const double st = base ? 1.0 - tail_weibull_cdf(x, *base) : nan;
      t.add(std::vector<double>{x * k, survival[i].s, sw, st});
    }
    r.tables.emplace_back("survival_fits.tsv", std::move(t));
  });

  stage("table_waiting_time_vs_t_cross", [&] {
    if (!base || !r.t_star) return;
    const auto sweep = log_grid(*r.t_star / 10.0, *r.t_star * 10.0, 241);
    Table t("average waiting time w against crossover t_cross, raw formula values (" + cfg.unit + ")",
            {"t_cross", "w", "valid"});
    for (const auto& row : waiting_time_curve(*base, sweep)) t.add(std::vector<double>{row.x * k, row.w * k, row.valid ? 1.0 : 0.0});
    r.tables.emplace_back("waiting_time_vs_t_cross.tsv", std::move(t));

    const auto diag = crossover_diagnostics(base->m, base->a, base->gamma, sweep);
    Table d("D function and tail amplitude lambda against t_cross (t_cross in " + cfg.unit + ")",
            {"t_cross", "D", "lambda"});
    for (std::size_t i = 0; i < sweep.size(); ++i) {
      d.add(std::vector<double>{sweep[i] * k, diag.d_values[i].value, diag.lambda_values[i].value});
    }
    r.tables.emplace_back("d_function.tsv", std::move(d));
    if (diag.second_derivative_sign != SecondDerivativeSign::minimum_confirmed) {
      r.warnings.push_back("second-derivative check at t_star did not confirm a minimum of the gap");
    }
  });

  stage("table_lorentz", [&] {
    Table t("Lorentz curves: empirical, exponential with the sample mean, fitted Weibull", {"curve", "X", "Y"});
    add_lorentz_rows(t, "empirical", lorentz_curve_empirical(sample), 1000);
    const Weibull ex({1.0, r.mean});
    add_lorentz_rows(t, "exponential", lorentz_curve(ex, ex.quantile(1.0 - 1e-14), 256), 256);
    if (r.weibull_fit) {
      const Weibull w({r.weibull_fit->m, r.weibull_fit->a});
      add_lorentz_rows(t, "weibull", lorentz_curve(w, w.quantile(1.0 - 1e-14), 256), 256);
    }
    r.tables.emplace_back("lorentz.tsv", std::move(t));
  });

  stage("table_gini_vs_beta", [&] {
    Table t("Gini index of the cut-off Mittag-Leffler density against beta, t0 = " + format_number(cfg.ml_t0) +
                " s, r_max = " + format_number(cfg.gini_r_max) + " s",
            {"beta", "gini"});
    for (const auto& row : gini_beta_sweep(cfg.ml_t0, cfg.gini_r_max, cfg.gini_betas)) {
      t.add(std::vector<double>{row.beta, row.gini});
    }
    r.tables.emplace_back("gini_vs_beta.tsv", std::move(t));
  });

  stage("table_waiting_time_vs_t_max", [&] {
    Table t("truncated Mittag-Leffler waiting time against cutoff t_max, t0 = " + format_number(cfg.ml_t0) +
                " s (" + cfg.unit + ")",
            {"beta", "t_max", "w"});
    const auto sweep = log_grid(cfg.ml_t0, cfg.ml_t0 * 1e4, 17);
    for (double beta : cfg.tmax_betas) {
      const TruncatedMLParams p{beta, cfg.ml_t0, cfg.ml_t0};
      for (const auto& row : waiting_time_curve(p, sweep)) t.add(std::vector<double>{beta, row.x * k, row.w * k});
    }
    r.tables.emplace_back("waiting_time_vs_t_max.tsv", std::move(t));
  });

  return r;
}

void write_outputs(const AnalysisReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  report.document().write(dir / "report.txt");
  for (const auto& [name, table] : report.tables) table.write(dir / name);
}

}  // namespace fptkit
