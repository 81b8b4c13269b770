#include "fptkit/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "fptkit/errors.hpp"

namespace fptkit {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(std::string_view(line).substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_number(const std::string& s, std::size_t line) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw DataError("line " + std::to_string(line) + ": not a finite number: '" + s + "'", line);
  }
  return v;
}

int require(const CsvTable& t, const std::string& name) {
  const int c = t.column(name);
  if (c < 0) throw DataError("input has no '" + name + "' column", 1);
  return c;
}

const std::string& cell(const CsvTable& t, std::size_t r, int c) {
  const auto& row = t.rows[r];
  if (static_cast<std::size_t>(c) >= row.size()) {
    throw DataError("line " + std::to_string(t.line[r]) + ": missing column", t.line[r]);
  }
  return row[static_cast<std::size_t>(c)];
}

}  // namespace

int CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<int>(i);
  }
  return -1;
}

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  std::size_t n = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++n;
    const auto s = trim(line);
    if (s.empty() || s.front() == '#') continue;
    if (!have_header) {
      t.header = split(s);
      have_header = true;
      continue;
    }
    t.rows.push_back(split(s));
    t.line.push_back(n);
  }
  if (!have_header) throw DataError("input is empty", 0);
  return t;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string(), 0);
  return read_csv(in);
}

TickSeries ticks_from_csv(const CsvTable& t) {
  const int ts = require(t, "timestamp");
  const int pr = require(t, "price");
  const int inst = t.column("instrument");
  std::vector<Tick> rows;
  rows.reserve(t.rows.size());
  std::string instrument;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    rows.push_back({parse_number(cell(t, r, ts), t.line[r]), parse_number(cell(t, r, pr), t.line[r])});
    if (r > 0 && rows[r].timestamp < rows[r - 1].timestamp) {
      throw DataError("line " + std::to_string(t.line[r]) + ": timestamps decrease", t.line[r]);
    }
    if (inst >= 0 && instrument.empty()) instrument = cell(t, r, inst);
  }
  return TickSeries(std::move(rows), std::move(instrument));
}

std::vector<double> timestamps_from_csv(const CsvTable& t) {
  const int ts = require(t, "timestamp");
  std::vector<double> out;
  out.reserve(t.rows.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    out.push_back(parse_number(cell(t, r, ts), t.line[r]));
    if (r > 0 && out[r] < out[r - 1]) {
      throw DataError("line " + std::to_string(t.line[r]) + ": timestamps decrease", t.line[r]);
    }
  }
  return out;
}

DurationSample durations_from_csv(const CsvTable& t) {
  const int dc = require(t, "duration");
  std::vector<double> out;
  out.reserve(t.rows.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const double v = parse_number(cell(t, r, dc), t.line[r]);
    if (v < 0.0) throw DataError("line " + std::to_string(t.line[r]) + ": negative duration", t.line[r]);
    out.push_back(v);
  }
  return DurationSample(std::move(out));
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Table::Table(std::string comment, std::vector<std::string> columns)
    : comment_(std::move(comment)), columns_(std::move(columns)) {}

void Table::add(std::vector<double> row) {
  std::vector<std::string> s;
  s.reserve(row.size());
  for (double v : row) s.push_back(format_number(v));
  add(std::move(s));
}

void Table::add(std::vector<std::string> row) {
  if (row.size() != columns_.size()) throw Error("table row width does not match its header");
  rows_.push_back(std::move(row));
}

void Table::write(std::ostream& out) const {
  out << "# " << comment_ << '\n';
  for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "\t" : "") << columns_[i];
  out << '\n';
  for (const auto& r : rows_) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "\t" : "") << r[i];
    out << '\n';
  }
}

void Table::write(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  write(out);
}

void KeyValueDocument::set(const std::string& key, double value) { set(key, format_number(value)); }

void KeyValueDocument::set(const std::string& key, bool value) { set(key, std::string(value ? "true" : "false")); }

void KeyValueDocument::set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  entries_.emplace_back(key, value);
}

void KeyValueDocument::append(const std::string& key, const std::string& value) { entries_.emplace_back(key, value); }

bool KeyValueDocument::contains(const std::string& key) const { return find(key) != nullptr; }

const std::string* KeyValueDocument::find(const std::string& key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return &v;
  }
  return nullptr;
}

void KeyValueDocument::write(std::ostream& out) const {
  for (const auto& [k, v] : entries_) out << k << ": " << v << '\n';
}

void KeyValueDocument::write(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  write(out);
}

}  // namespace fptkit
