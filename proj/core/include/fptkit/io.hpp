#pragma once

// CSV input and tab-separated / key-value output.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "fptkit/pipeline.hpp"
#include "fptkit/sample.hpp"

namespace fptkit {

/// Rows of a comma-separated file with a header. Blank lines and lines
/// starting with '#' are skipped. `line` numbers are 1-based file lines.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line;

  /// Index of a named column, or -1.
  int column(const std::string& name) const;
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv(const std::filesystem::path& path);

/// Needs `timestamp` and `price` columns; an `instrument` column is optional.
TickSeries ticks_from_csv(const CsvTable& t);
/// Needs a `timestamp` column.
std::vector<double> timestamps_from_csv(const CsvTable& t);
/// Needs a `duration` column.
DurationSample durations_from_csv(const CsvTable& t);

/// Twelve significant digits, the serialization used for every number.
std::string format_number(double v);

/// Tab-separated table preceded by a "# " comment line describing it.
class Table {
 public:
  Table(std::string comment, std::vector<std::string> columns);

  void add(std::vector<double> row);
  void add(std::vector<std::string> row);
  std::size_t size() const noexcept { return rows_.size(); }
  void write(std::ostream& out) const;
  void write(const std::filesystem::path& path) const;

 private:
  std::string comment_;
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

/// Ordered `key: value` document.
class KeyValueDocument {
 public:
  void set(const std::string& key, double value);
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, const char* value) { set(key, std::string(value)); }
  void set(const std::string& key, bool value);
  /// Appends; repeated keys are kept in order.
  void append(const std::string& key, const std::string& value);
  bool contains(const std::string& key) const;
  const std::string* find(const std::string& key) const;
  const std::vector<std::pair<std::string, std::string>>& entries() const noexcept { return entries_; }
  void write(std::ostream& out) const;
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace fptkit
