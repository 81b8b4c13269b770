#include "fptkit/sample.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fptkit/errors.hpp"

namespace fptkit {

DurationSample::DurationSample(std::vector<double> values, std::string unit)
    : values_(std::move(values)), unit_(std::move(unit)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]) || values_[i] < 0.0) {
      throw DataError("durations must be finite and non-negative", i + 1);
    }
  }
}

double DurationSample::mean() const {
  if (values_.empty()) throw DomainError("mean of an empty sample");
  return std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(values_.size());
}

double DurationSample::second_moment() const {
  if (values_.empty()) throw DomainError("second moment of an empty sample");
  double s = 0.0;
  for (double v : values_) s += v * v;
  return s / static_cast<double>(values_.size());
}

std::vector<double> DurationSample::sorted() const {
  std::vector<double> out(values_.begin(), values_.end());
  std::sort(out.begin(), out.end());
  return out;
}

DurationSample DurationSample::scaled(double factor, std::string unit) const {
  if (!(factor > 0.0)) throw DomainError("scale factor must be positive");
  std::vector<double> out(values_.begin(), values_.end());
  for (double& v : out) v *= factor;
  return DurationSample(std::move(out), std::move(unit));
}

}  // namespace fptkit
