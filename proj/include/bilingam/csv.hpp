#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "bilingam/core.hpp"
#include "bilingam/errors.hpp"

namespace bilingam {

/// Two numeric columns read from a CSV stream, plus the column names from an
/// optional header row (positional defaults "x" and "y" when headerless).
struct CsvPairs {
  PairedSample sample;
  std::string x_name = "x";
  std::string y_name = "y";
  bool had_header = false;
};

namespace detail {

[[nodiscard]] inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
  return fields;
}

/// Strict numeric parse: the whole field must be consumed and yield a finite
/// value. Returns false on any deviation instead of throwing so the caller
/// can distinguish "header row" from "malformed data row".
[[nodiscard]] inline bool parse_field(std::string_view field, double& out) {
  if (field.empty()) return false;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc{} || ptr != end) return false;
  return std::isfinite(out);
}

}  // namespace detail

/// Reads the first two numeric columns of a CSV stream. A first row whose
/// leading two fields are not both numeric is treated as a header. Any later
/// row with fewer than two fields or a non-numeric/non-finite value in the
/// first two columns is malformed.
[[nodiscard]] inline CsvPairs read_pairs(std::istream& in) {
  CsvPairs out;
  std::string line;
  std::size_t row = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() && in.peek() == std::char_traits<char>::eof()) {
      break;  // trailing newline
    }
    const auto fields = detail::split_fields(line);
    if (fields.size() < 2) {
      throw MalformedCsv("csv row " + std::to_string(row) +
                         ": expected at least 2 columns");
    }
    double x = 0.0, y = 0.0;
    const bool x_ok = detail::parse_field(fields[0], x);
    const bool y_ok = detail::parse_field(fields[1], y);
    if (first && !(x_ok && y_ok)) {
      out.had_header = true;
      out.x_name = std::string(fields[0]);
      out.y_name = std::string(fields[1]);
      first = false;
      continue;
    }
    first = false;
    if (!(x_ok && y_ok)) {
      throw MalformedCsv("csv row " + std::to_string(row) +
                         ": non-numeric value in a data row");
    }
    out.sample.x.push_back(x);
    out.sample.y.push_back(y);
  }
  if (out.sample.x.empty()) {
    throw MalformedCsv("csv: no data rows");
  }
  return out;
}

/// Formats one double with 17 significant digits (lossless round-trip).
[[nodiscard]] inline std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

/// Writes a paired sample as a two-column CSV with header "x,y" at full
/// double precision, so a simulate -> detect round trip is lossless.
inline void write_pairs(std::ostream& os, const PairedSample& sample) {
  if (sample.x.size() != sample.y.size()) {
    throw LengthMismatch("csv write: x and y lengths differ");
  }
  os << "x,y\n";
  for (std::size_t i = 0; i < sample.x.size(); ++i) {
    os << format_full(sample.x[i]) << ',' << format_full(sample.y[i]) << '\n';
  }
}

}  // namespace bilingam
