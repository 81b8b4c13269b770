#pragma once

// End-to-end analysis of a duration or tick file: extraction, fits, waiting
// times, Gini indices, and the plot-data tables.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fptkit/fitting.hpp"
#include "fptkit/io.hpp"
#include "fptkit/pipeline.hpp"

namespace fptkit {

enum class InputMode { durations, first_passage };

struct CrossoverPolicy {
  bool optimal = true;
  double fixed = 0.0;  ///< used when !optimal

  /// "optimal" or "fixed:<seconds>".
  static CrossoverPolicy parse(const std::string& text);
  std::string describe() const;
};

struct AnalysisConfig {
  std::filesystem::path input;
  InputMode mode = InputMode::durations;
  double threshold = 0.1;
  ResetRule reset = ResetRule::to_price;
  std::optional<double> t_cut;       ///< Weibull-paper fit window; default: every point
  std::optional<double> t_min_tail;  ///< tail fit start; default: 95th percentile
  CrossoverPolicy t_cross;
  std::optional<double> gamma;  ///< replaces the fitted tail exponent
  std::uint64_t seed = 1;
  std::string unit = "s";  ///< "s" or "min": unit of every reported time
  bool strict = false;     ///< heavy tails abort instead of warning

  // Model curves emitted alongside the data tables.
  double ml_t0 = 12.0;
  double gini_r_max = 100.0;
  std::vector<double> gini_betas{0.80, 0.85, 0.90, 0.92, 0.94, 0.96, 0.98, 1.00};
  std::vector<double> tmax_betas{0.5, 0.7, 0.9, 0.96, 1.0};
};

struct StageError {
  std::string stage;
  std::string message;
};

struct AnalysisReport {
  std::string unit = "s";
  std::size_t n = 0;
  std::size_t zero_durations = 0;
  double mean = 0.0;
  double second_moment = 0.0;
  double w_empirical = 0.0;
  double gini_empirical = 0.0;

  std::optional<WeibullPaperFit> weibull_fit;
  std::optional<TailExponentFit> tail_fit;
  std::optional<double> gamma;
  std::string gamma_source;
  std::string t_cross_policy;
  std::optional<double> t_cross;
  std::optional<double> t_star;

  std::optional<double> w_weibull;
  std::optional<double> mean_weibull;
  std::optional<double> w_over_mean_weibull;
  std::optional<bool> paradox_weibull;
  std::optional<double> w_tail_at_t_cross;
  std::optional<double> w_tail_at_t_star;
  std::optional<double> w_tail_raw;  ///< formula value when the tail is too heavy
  std::optional<double> gini_weibull;
  bool heavy_tail = false;

  std::vector<std::string> warnings;
  std::vector<StageError> errors;
  std::vector<std::pair<std::string, Table>> tables;  ///< file name, table

  std::optional<double> delta_w_weibull() const;
  std::optional<double> delta_w_tail_at_t_cross() const;
  std::optional<double> delta_w_tail_at_t_star() const;

  KeyValueDocument document() const;
};

/// Durations and the number of zero gaps, read according to the mode.
DurationExtraction load_durations(const AnalysisConfig& cfg);

/// Throws DataError for unusable input and, in strict mode, HeavyTailError.
/// Any other stage failure is recorded in `errors` and the remaining stages run.
AnalysisReport analyze(const AnalysisConfig& cfg);
AnalysisReport analyze(const DurationExtraction& data, const AnalysisConfig& cfg);

/// Writes report.txt and every table into `dir`.
void write_outputs(const AnalysisReport& report, const std::filesystem::path& dir);

}  // namespace fptkit
