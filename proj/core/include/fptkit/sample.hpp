#pragma once

#include <span>
#include <string>
#include <vector>

namespace fptkit {

/// Non-negative durations with a unit label. Order is the order of
/// observation; statistics that need sorted values sort a copy.
class DurationSample {
 public:
  DurationSample() = default;
  explicit DurationSample(std::vector<double> values, std::string unit = "s");

  std::span<const double> values() const noexcept { return values_; }
  const std::string& unit() const noexcept { return unit_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  double mean() const;
  double second_moment() const;
  std::vector<double> sorted() const;

  /// Same durations multiplied by `factor`, relabelled with `unit`.
  DurationSample scaled(double factor, std::string unit) const;

 private:
  std::vector<double> values_;
  std::string unit_ = "s";
};

}  // namespace fptkit
