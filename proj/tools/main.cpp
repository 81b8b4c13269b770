#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "fptkit/analysis.hpp"
#include "fptkit/errors.hpp"
#include "fptkit/fitting.hpp"
#include "fptkit/io.hpp"
#include "fptkit/pipeline.hpp"
#include "fptkit/renewal.hpp"

namespace {

using namespace fptkit;

enum Exit { ok = 0, general = 1, data = 2, numerical = 3, heavy_tail = 4 };

struct InputOptions {
  std::string input;
  std::string mode = "durations";
  double threshold = 0.1;
  std::string reset = "price";
};

struct FitOptions {
  std::optional<double> t_cut;
  std::optional<double> t_min_tail;
  std::optional<double> gamma;
  std::string t_cross = "optimal";
  std::string unit = "s";
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
  cmd->add_option("--input", in.input, "CSV file with a header row")->required();
  cmd->add_option("--mode", in.mode, "durations: timestamp or duration column; fpt: timestamp,price ticks")
      ->check(CLI::IsMember({"durations", "fpt"}));
  cmd->add_option("--threshold", in.threshold, "first-passage price threshold")->check(CLI::PositiveNumber);
  cmd->add_option("--reset", in.reset, "reference after a passage: the event price, or the old level moved by whole thresholds")
      ->check(CLI::IsMember({"price", "level"}));
}

void add_fit_options(CLI::App* cmd, FitOptions& f) {
  cmd->add_option("--t-cut", f.t_cut, "upper limit of the Weibull-paper fit (s)");
  cmd->add_option("--t-min-tail", f.t_min_tail, "lower limit of the tail fit (s); default 95th percentile");
  cmd->add_option("--gamma", f.gamma, "use this tail exponent instead of the fitted one");
  cmd->add_option("--t-cross", f.t_cross, "crossover: optimal or fixed:<seconds>");
  cmd->add_option("--unit", f.unit, "unit of reported times")->check(CLI::IsMember({"s", "min"}));
}

AnalysisConfig make_config(const InputOptions& in, const FitOptions& f) {
  AnalysisConfig cfg;
  cfg.input = in.input;
  cfg.mode = in.mode == "fpt" ? InputMode::first_passage : InputMode::durations;
  cfg.threshold = in.threshold;
  cfg.reset = in.reset == "level" ? ResetRule::to_level : ResetRule::to_price;
  cfg.t_cut = f.t_cut;
  cfg.t_min_tail = f.t_min_tail;
  cfg.gamma = f.gamma;
  cfg.t_cross = CrossoverPolicy::parse(f.t_cross);
  cfg.unit = f.unit;
  return cfg;
}

void write_durations(const DurationSample& d, std::ostream& out) {
  out << "duration\n";
  for (double v : d.values()) out << format_number(v) << '\n';
}

int run_extract(const InputOptions& in, const std::string& output) {
  AnalysisConfig cfg = make_config(in, {});
  const auto extracted = load_durations(cfg);
  if (extracted.zero_durations > 0) {
    std::cerr << "warning: " << extracted.zero_durations << " zero durations retained\n";
  }
  if (output.empty()) {
    write_durations(extracted.durations, std::cout);
  } else {
    std::ofstream out(output, std::ios::binary);
    if (!out) throw Error("cannot write " + output);
    write_durations(extracted.durations, out);
  }
  return ok;
}

int run_fit(const InputOptions& in, const FitOptions& f) {
  const auto cfg = make_config(in, f);
  const auto extracted = load_durations(cfg);
  const auto& sample = extracted.durations;
  if (sample.size() < 2) throw DataError("need at least 2 durations", 0);
  const double k = f.unit == "min" ? 1.0 / 60.0 : 1.0;
  KeyValueDocument d;
  d.set("unit", f.unit);
  d.set("n", static_cast<double>(sample.size()));
  const auto curve = empirical_survival(sample);
  const auto fit = weibull_paper_fit(curve, f.t_cut.value_or(sample.sorted().back()));
  d.set("weibull_m", fit.m);
  d.set("weibull_a", fit.a);
  d.set("weibull_r_squared", fit.r_squared);
  d.set("weibull_n_used", static_cast<double>(fit.n_used));
  double gamma = 0.0;
  if (f.gamma) {
    gamma = *f.gamma;
    d.set("gamma", gamma);
    d.set("gamma_source", "override");
  } else {
    const auto tail = f.t_min_tail ? tail_exponent_fit(curve, *f.t_min_tail) : tail_exponent_fit(sample);
    gamma = tail.gamma;
    d.set("gamma", gamma);
    d.set("gamma_source", "fit");
    d.set("tail_slope_std_error", tail.std_error);
    d.set("tail_t_min", tail.t_min * k);
    d.set("tail_n_used", static_cast<double>(tail.n_used));
  }
  d.set("t_star", optimal_crossover(fit.m, fit.a, gamma) * k);
  d.write(std::cout);
  return ok;
}

int run_analyze(const InputOptions& in, const FitOptions& f, const std::string& out_dir, std::uint64_t seed,
                bool strict, bool tables_only) {
  auto cfg = make_config(in, f);
  cfg.seed = seed;
  cfg.strict = strict;
  const auto report = analyze(cfg);
  if (tables_only) {
    std::filesystem::create_directories(out_dir);
    for (const auto& [name, table] : report.tables) table.write(std::filesystem::path(out_dir) / name);
  } else {
    if (!out_dir.empty()) write_outputs(report, out_dir);
    report.document().write(std::cout);
  }
  // Stage failures are part of the report; the run itself succeeded.
  for (const auto& e : report.errors) std::cerr << "stage " << e.stage << " failed: " << e.message << '\n';
  return ok;
}

struct SimulateOptions {
  std::string dist = "weibull";
  double m = 1.0, a = 1.0, gamma = 4.0, t_cross = 0.0, beta = 1.0, t0 = 1.0, t_max = 100.0;
  double sigma = 0.01, price = 100.0, mean_gap = 1.0;
  std::size_t n = 1000;
  std::size_t probes = 0;
  std::uint64_t seed = 1;
  std::string output;
  bool durations = false;
};

template <class D>
void emit_renewal(const D& dist, const SimulateOptions& s, std::ostream& out) {
  if (s.durations) {
    // Straight from the draws: differencing 12-digit timestamps would lose
    // the shortest durations.
    out << "duration\n";
    const auto draws = sample_durations(dist, s.n, s.seed);
    for (double d : draws.values()) out << format_number(d) << '\n';
  }
  const auto times = simulate_renewal(dist, s.n, s.seed);
  if (!s.durations) {
    out << "timestamp\n";
    for (double t : times) out << format_number(t) << '\n';
  }
  if (s.probes > 0 && times.size() >= 2) {
    const auto probe = residual_life_probe(times, s.probes, s.seed + 1);
    std::cerr << "mean_residual: " << format_number(probe.mean_residual) << '\n'
              << "std_error: " << format_number(probe.std_error) << '\n';
  }
}

int run_simulate(const SimulateOptions& s) {
  std::ofstream file;
  if (!s.output.empty()) {
    file.open(s.output, std::ios::binary);
    if (!file) throw Error("cannot write " + s.output);
  }
  std::ostream& out = s.output.empty() ? std::cout : file;
  if (s.dist == "weibull") {
    emit_renewal(Weibull({s.m, s.a}), s, out);
  } else if (s.dist == "exponential") {
    emit_renewal(Weibull({1.0, s.a}), s, out);
  } else if (s.dist == "tail-weibull") {
    const double tx = s.t_cross > 0.0 ? s.t_cross : optimal_crossover(s.m, s.a, s.gamma);
    emit_renewal(TailWeibull(TailWeibullParams::make(s.m, s.a, s.gamma, tx)), s, out);
  } else if (s.dist == "ml") {
    emit_renewal(TruncatedMLSampler({s.beta, s.t0, s.t_max}), s, out);
  } else {
    const auto ticks = simulate_random_walk(s.n, s.price, s.sigma, s.mean_gap, s.seed);
    out << "timestamp,price\n";
    for (const auto& t : ticks.rows()) out << format_number(t.timestamp) << ',' << format_number(t.price) << '\n';
  }
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Renewal analysis of event durations: fits, waiting times and Gini indices"};
  app.require_subcommand(1);

  InputOptions in;
  FitOptions fit;
  std::string output, out_dir;
  std::uint64_t seed = 1;
  bool strict = false;

  auto* extract = app.add_subcommand("extract", "write durations (one per line) from timestamps or ticks");
  add_input_options(extract, in);
  extract->add_option("--output", output, "output CSV; default stdout");

  auto* fitc = app.add_subcommand("fit", "Weibull-paper and tail-exponent fits");
  add_input_options(fitc, in);
  add_fit_options(fitc, fit);

  auto* analyzec = app.add_subcommand("analyze", "full report plus plot-data tables");
  add_input_options(analyzec, in);
  add_fit_options(analyzec, fit);
  analyzec->add_option("--out-dir", out_dir, "directory for report.txt and the tables");
  analyzec->add_option("--seed", seed, "random seed");
  analyzec->add_flag("--strict", strict, "fail with exit code 4 when gamma <= 3");

  auto* plot = app.add_subcommand("plotdata", "plot-data tables only");
  add_input_options(plot, in);
  add_fit_options(plot, fit);
  plot->add_option("--out-dir", out_dir, "directory for the tables")->required();
  plot->add_option("--seed", seed, "random seed");

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "synthetic renewal event times or a random-walk tick series");
  simulate->add_option("--dist", sim.dist, "duration law or random-walk")
      ->check(CLI::IsMember({"weibull", "exponential", "tail-weibull", "ml", "random-walk"}));
  simulate->add_option("--m", sim.m, "Weibull shape")->check(CLI::PositiveNumber);
  simulate->add_option("--a", sim.a, "Weibull scale (time^m); exponential mean")->check(CLI::PositiveNumber);
  simulate->add_option("--gamma", sim.gamma, "tail exponent");
  simulate->add_option("--t-cross", sim.t_cross, "crossover; default optimal");
  simulate->add_option("--beta", sim.beta, "Mittag-Leffler order");
  simulate->add_option("--t0", sim.t0, "Mittag-Leffler time scale")->check(CLI::PositiveNumber);
  simulate->add_option("--t-max", sim.t_max, "Mittag-Leffler cutoff")->check(CLI::PositiveNumber);
  simulate->add_option("--sigma", sim.sigma, "random-walk step deviation");
  simulate->add_option("--price", sim.price, "random-walk start price");
  simulate->add_option("--mean-gap", sim.mean_gap, "random-walk mean inter-tick time")->check(CLI::PositiveNumber);
  simulate->add_option("--n", sim.n, "number of events or ticks")->check(CLI::PositiveNumber);
  simulate->add_option("--probes", sim.probes, "also report the residual life at this many probes (stderr)");
  simulate->add_option("--seed", sim.seed, "random seed");
  simulate->add_option("--output", sim.output, "output CSV; default stdout");
  simulate->add_flag("--durations", sim.durations, "write a duration column instead of event times");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*extract) return run_extract(in, output);
    if (*fitc) return run_fit(in, fit);
    if (*analyzec) return run_analyze(in, fit, out_dir, seed, strict, false);
    if (*plot) return run_analyze(in, fit, out_dir, seed, false, true);
    if (*simulate) return run_simulate(sim);
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return data;
  } catch (const FitError& e) {
    std::cerr << "fit error: " << e.what() << '\n';
    return data;
  } catch (const HeavyTailError& e) {
    std::cerr << "heavy tail: " << e.what() << '\n';
    return heavy_tail;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return numerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return general;
  }
  return general;
}
