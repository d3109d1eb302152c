#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "oa/counting.hpp"
#include "oa/design.hpp"
#include "oa/errors.hpp"

// Text formats for fractions.
//
// Counting vector: #D lines with one nonnegative integer each, runs in lexicographic order.
// Run list: one run per line as m space-separated level indices (0-based); repeats allowed.
// In both, blank lines and lines starting with '#' are ignored.

namespace oa {

enum class FractionFormat { automatic, counts, runs };

namespace detail {

inline std::vector<std::vector<std::int64_t>> read_integer_lines(std::istream& in) {
  std::vector<std::vector<std::int64_t>> lines;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream tokens(line);
    std::vector<std::int64_t> values;
    std::string token;
    while (tokens >> token) {
      std::size_t used = 0;
      std::int64_t v = 0;
      try {
        v = std::stoll(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size()) {
        throw FormatError("line " + std::to_string(number) + ": '" + token + "' is not an integer");
      }
      values.push_back(v);
    }
    lines.push_back(std::move(values));
  }
  return lines;
}

}  // namespace detail

inline CountingVector read_fraction(std::istream& in, const DesignSpace& design,
                                    FractionFormat format = FractionFormat::automatic) {
  const auto lines = detail::read_integer_lines(in);
  const std::size_t m = design.factors();
  if (format == FractionFormat::automatic) {
    bool single = true;
    for (const auto& l : lines) single = single && l.size() == 1;
    if (single && lines.size() == design.size()) {
      format = FractionFormat::counts;
    } else if (m > 1 || !single) {
      format = FractionFormat::runs;
    } else {
      throw FormatError("cannot tell counting vector from run list: " + std::to_string(lines.size()) +
                        " lines for a design with " + std::to_string(design.size()) + " runs");
    }
  }

  if (format == FractionFormat::counts) {
    if (lines.size() != design.size()) {
      throw DimensionError("counting vector has " + std::to_string(lines.size()) + " entries, design has " +
                           std::to_string(design.size()) + " runs");
    }
    std::vector<std::int64_t> counts;
    counts.reserve(lines.size());
    for (const auto& l : lines) {
      if (l.size() != 1) throw FormatError("counting vector lines must hold exactly one integer");
      if (l[0] < 0) throw FormatError("negative multiplicity " + std::to_string(l[0]));
      counts.push_back(l[0]);
    }
    return CountingVector(design, std::move(counts));
  }

  std::vector<Point> runs;
  runs.reserve(lines.size());
  for (const auto& l : lines) {
    if (l.size() != m) {
      throw DimensionError("run has " + std::to_string(l.size()) + " coordinates, design has " +
                           std::to_string(m) + " factors");
    }
    Point p;
    for (auto v : l) p.coords.push_back(static_cast<int>(v));
    runs.push_back(std::move(p));
  }
  return CountingVector::from_runs(design, runs);
}

inline CountingVector read_fraction(const std::string& path, const DesignSpace& design,
                                    FractionFormat format = FractionFormat::automatic) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_fraction(in, design, format);
}

inline void write_counts(std::ostream& out, const CountingVector& y) {
  for (auto c : y.counts()) out << c << '\n';
}

inline void write_runs(std::ostream& out, const CountingVector& y) {
  for (const auto& p : y.to_runs()) {
    for (std::size_t j = 0; j < p.coords.size(); ++j) {
      if (j) out << ' ';
      out << p.coords[j];
    }
    out << '\n';
  }
}

inline void write_file(const std::string& path, const CountingVector& y, FractionFormat format) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  if (format == FractionFormat::counts) {
    write_counts(out, y);
  } else {
    write_runs(out, y);
  }
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace oa
