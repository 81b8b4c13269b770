#pragma once

// Event data: tick series, duration and first-passage extraction, renewal
// simulation and residual-life probing.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fptkit/distributions.hpp"
#include "fptkit/parallel.hpp"
#include "fptkit/rng.hpp"
#include "fptkit/sample.hpp"

namespace fptkit {

struct Tick {
  double timestamp = 0.0;
  double price = 0.0;
};

class TickSeries {
 public:
  TickSeries() = default;
  /// Throws DataError (1-based row) on decreasing timestamps or non-finite values.
  explicit TickSeries(std::vector<Tick> rows, std::string instrument = {});

  std::span<const Tick> rows() const noexcept { return rows_; }
  const std::string& instrument() const noexcept { return instrument_; }
  std::size_t size() const noexcept { return rows_.size(); }
  bool empty() const noexcept { return rows_.empty(); }

 private:
  std::vector<Tick> rows_;
  std::string instrument_;
};

struct DurationExtraction {
  DurationSample durations;
  std::size_t zero_durations = 0;
};

/// Successive differences of ordered event times.
DurationExtraction extract_durations(std::span<const double> timestamps);

/// What the reference price becomes after a passage.
enum class ResetRule {
  to_price,  ///< the price observed at the event
  to_level,  ///< the old reference moved by whole multiples of the threshold
};

struct FirstPassage {
  DurationSample durations;
  TickSeries filtered;                ///< first row plus every event row
  std::vector<std::size_t> event_rows;  ///< 0-based indices into the input
};

/// An event fires whenever |p - reference| >= threshold; the reference starts
/// at the first price. Durations run between consecutive events.
FirstPassage extract_first_passage(const TickSeries& series, double threshold,
                                   ResetRule reset = ResetRule::to_price);

/// Event times T_k = tau_1 + ... + tau_k of n i.i.d. draws from `dist`.
template <InverseTransformSampler D>
std::vector<double> simulate_renewal(const D& dist, std::size_t n_events, std::uint64_t seed) {
  std::vector<double> t(n_events);
  const std::size_t chunks = (n_events + rng_chunk_size - 1) / rng_chunk_size;
  parallel_for(chunks, [&](std::size_t c) {
    std::mt19937_64 eng(chunk_seed(seed, c));
    const std::size_t end = std::min(n_events, (c + 1) * rng_chunk_size);
    for (std::size_t i = c * rng_chunk_size; i < end; ++i) t[i] = dist.quantile(uniform_open(eng));
  });
  double run = 0.0;
  for (double& x : t) {
    run += x;
    x = run;
  }
  return t;
}

/// Draws n i.i.d. durations, same stream layout as simulate_renewal.
template <InverseTransformSampler D>
DurationSample sample_durations(const D& dist, std::size_t n, std::uint64_t seed, std::string unit = "s") {
  std::vector<double> t(n);
  const std::size_t chunks = (n + rng_chunk_size - 1) / rng_chunk_size;
  parallel_for(chunks, [&](std::size_t c) {
    std::mt19937_64 eng(chunk_seed(seed, c));
    const std::size_t end = std::min(n, (c + 1) * rng_chunk_size);
    for (std::size_t i = c * rng_chunk_size; i < end; ++i) t[i] = dist.quantile(uniform_open(eng));
  });
  return DurationSample(std::move(t), std::move(unit));
}

struct ResidualLife {
  double mean_residual = 0.0;
  double std_error = 0.0;
  std::size_t n_probes = 0;
};

/// Mean time from a uniform inspection instant in [first, last) to the next
/// event. Probes are stratified over equal-length time blocks and the
/// standard error is taken from the spread of the block means, so it covers
/// the randomness of the event sequence as well as of the probes.
ResidualLife residual_life_probe(std::span<const double> event_times, std::size_t n_probes, std::uint64_t seed);

/// Synthetic tick series: exponential inter-tick gaps with the given mean and
/// Gaussian price increments of standard deviation sigma.
TickSeries simulate_random_walk(std::size_t n_ticks, double start_price, double sigma, double mean_gap,
                                std::uint64_t seed);

}  // namespace fptkit
