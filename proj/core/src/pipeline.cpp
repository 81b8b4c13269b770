#include "fptkit/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "fptkit/errors.hpp"

namespace fptkit {

TickSeries::TickSeries(std::vector<Tick> rows, std::string instrument)
    : rows_(std::move(rows)), instrument_(std::move(instrument)) {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (!std::isfinite(rows_[i].timestamp) || !std::isfinite(rows_[i].price)) {
      throw DataError("non-finite tick at row " + std::to_string(i + 1), i + 1);
    }
    if (i > 0 && rows_[i].timestamp < rows_[i - 1].timestamp) {
      throw DataError("timestamps decrease at row " + std::to_string(i + 1), i + 1);
    }
  }
}

DurationExtraction extract_durations(std::span<const double> timestamps) {
  if (timestamps.size() < 2) throw DataError("need at least 2 timestamps to form a duration", 0);
  std::vector<double> d;
  d.reserve(timestamps.size() - 1);
  std::size_t zeros = 0;
  for (std::size_t i = 1; i < timestamps.size(); ++i) {
    if (!std::isfinite(timestamps[i]) || !std::isfinite(timestamps[i - 1])) {
      throw DataError("non-finite timestamp at row " + std::to_string(i + 1), i + 1);
    }
    const double dt = timestamps[i] - timestamps[i - 1];
    if (dt < 0.0) throw DataError("timestamps decrease at row " + std::to_string(i + 1), i + 1);
    if (dt == 0.0) ++zeros;
    d.push_back(dt);
  }
  return {DurationSample(std::move(d)), zeros};
}

FirstPassage extract_first_passage(const TickSeries& series, double threshold, ResetRule reset) {
  if (!(threshold > 0.0)) throw DomainError("first-passage threshold must be positive");
  if (series.empty()) throw DataError("empty tick series", 0);
  const auto rows = series.rows();
  // Prices are decimal quotes; a move of exactly one threshold can land a few
  // ulps short in binary, so ties are accepted within a relative 1e-9.
  const double trigger = threshold * (1.0 - 1e-9);
  FirstPassage out;
  std::vector<Tick> filtered{rows[0]};
  std::vector<double> durations;
  double reference = rows[0].price;
  double last_event_time = 0.0;
  bool have_event = false;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double move = rows[i].price - reference;
    if (std::abs(move) < trigger) continue;
    if (reset == ResetRule::to_price) {
      reference = rows[i].price;
    } else {
      const double steps = std::floor(std::abs(move) / threshold + 1e-9);
      reference += std::copysign(steps * threshold, move);
    }
    if (have_event) durations.push_back(rows[i].timestamp - last_event_time);
    last_event_time = rows[i].timestamp;
    have_event = true;
    out.event_rows.push_back(i);
    filtered.push_back(rows[i]);
  }
  out.durations = DurationSample(std::move(durations));
  out.filtered = TickSeries(std::move(filtered), series.instrument());
  return out;
}

ResidualLife residual_life_probe(std::span<const double> event_times, std::size_t n_probes, std::uint64_t seed) {
  if (event_times.size() < 2) throw DomainError("residual_life_probe needs at least 2 events");
  if (n_probes < 2) throw DomainError("residual_life_probe needs at least 2 probes");
  const double first = event_times.front();
  const double last = event_times.back();
  if (!(last > first)) throw DomainError("residual_life_probe needs a positive observation window");

  const std::size_t blocks = std::min<std::size_t>(100, n_probes / 2);
  const double width = (last - first) / static_cast<double>(blocks);
  std::vector<double> block_mean(blocks);
  parallel_for(blocks, [&](std::size_t b) {
    std::mt19937_64 eng(chunk_seed(seed, b));
    const std::size_t count = n_probes / blocks + (b < n_probes % blocks ? 1 : 0);
    const double lo = first + width * static_cast<double>(b);
    double sum = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
      const double probe = std::min(lo + width * uniform_open(eng), std::nextafter(last, first));
      const auto next = std::upper_bound(event_times.begin(), event_times.end(), probe);
      sum += *next - probe;
    }
    block_mean[b] = sum / static_cast<double>(count);
  });
  const double mean = std::accumulate(block_mean.begin(), block_mean.end(), 0.0) / static_cast<double>(blocks);
  double ss = 0.0;
  for (double v : block_mean) ss += (v - mean) * (v - mean);
  const double nb = static_cast<double>(blocks);
  return {mean, std::sqrt(ss / (nb - 1.0) / nb), n_probes};
}

TickSeries simulate_random_walk(std::size_t n_ticks, double start_price, double sigma, double mean_gap,
                                std::uint64_t seed) {
  if (!(sigma >= 0.0) || !(mean_gap > 0.0)) throw DomainError("random walk needs sigma >= 0 and mean_gap > 0");
  std::vector<Tick> rows(n_ticks);
  std::vector<double> gap(n_ticks), step(n_ticks);
  const std::size_t chunks = (n_ticks + rng_chunk_size - 1) / rng_chunk_size;
  parallel_for(chunks, [&](std::size_t c) {
    std::mt19937_64 eng(chunk_seed(seed, c));
    const std::size_t end = std::min(n_ticks, (c + 1) * rng_chunk_size);
    for (std::size_t i = c * rng_chunk_size; i < end; ++i) {
      gap[i] = -mean_gap * std::log(uniform_open(eng));
      // Box-Muller keeps the stream layout fixed (two uniforms per tick).
      const double u1 = uniform_open(eng);
      const double u2 = uniform_open(eng);
      step[i] = sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }
  });
  double t = 0.0;
  double p = start_price;
  for (std::size_t i = 0; i < n_ticks; ++i) {
    if (i > 0) {
      t += gap[i];
      p += step[i];
    }
    rows[i] = {t, p};
  }
  return TickSeries(std::move(rows));
}

}  // namespace fptkit
