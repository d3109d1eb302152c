#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "oa/errors.hpp"

namespace oa {

/// A run of the full factorial. coords[j] = k codes the level exp(2*pi*i*k/s_j).
struct Point {
  std::vector<int> coords;

  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

/// Exponent of an interaction term X^alpha, alpha_j taken in Z_{s_j}.
struct Exponent {
  std::vector<int> alpha;

  /// Number of factors involved in the interaction.
  int weight() const {
    int w = 0;
    for (int a : alpha) w += (a != 0);
    return w;
  }

  friend bool operator==(const Exponent&, const Exponent&) = default;
  friend auto operator<=>(const Exponent&, const Exponent&) = default;
};

/// Mixed-level full factorial design s_1 x ... x s_m with roots-of-unity coding.
///
/// Runs and exponents share the same mixed-radix indexing: index 0 is (0,...,0)
/// and the first factor is the most significant digit, so index order is the
/// lexicographic order on level tuples.
class DesignSpace {
 public:
  explicit DesignSpace(std::vector<int> levels) : levels_(std::move(levels)) {
    if (levels_.empty()) throw DomainError("design needs at least one factor");
    strides_.assign(levels_.size(), 1);
    card_ = 1;
    for (std::size_t j = levels_.size(); j-- > 0;) {
      if (levels_[j] < 2) {
        throw DomainError("factor " + std::to_string(j + 1) + " has fewer than 2 levels");
      }
      strides_[j] = card_;
      card_ *= static_cast<std::size_t>(levels_[j]);
    }
    binary_ = true;
    period_ = 1;
    for (int s : levels_) {
      binary_ = binary_ && s == 2;
      period_ = std::lcm(period_, s);
    }
  }

  /// Parses "2 2 3", "2,2,3" or the shorthand "2^2 3".
  static DesignSpace parse(std::string_view text) {
    std::string normalized(text);
    for (char& ch : normalized) {
      if (ch == ',') ch = ' ';
    }
    std::istringstream in(normalized);
    std::vector<int> levels;
    std::string token;
    while (in >> token) {
      auto caret = token.find('^');
      int base = 0;
      int reps = 1;
      try {
        std::size_t used = 0;
        base = std::stoi(token.substr(0, caret), &used);
        if (used != (caret == std::string::npos ? token.size() : caret)) throw FormatError("");
        if (caret != std::string::npos) {
          std::string exp = token.substr(caret + 1);
          reps = std::stoi(exp, &used);
          if (used != exp.size() || reps < 1) throw FormatError("");
        }
      } catch (const std::exception&) {
        throw FormatError("malformed design token '" + token + "'");
      }
      if (base < 2) throw FormatError("design token '" + token + "' has fewer than 2 levels");
      levels.insert(levels.end(), static_cast<std::size_t>(reps), base);
    }
    if (levels.empty()) throw FormatError("empty design string");
    return DesignSpace(std::move(levels));
  }

  std::size_t factors() const noexcept { return levels_.size(); }
  /// Number of runs of the full factorial.
  std::size_t size() const noexcept { return card_; }
  int level(std::size_t j) const { return levels_.at(j); }
  std::span<const int> levels() const noexcept { return levels_; }
  bool is_binary() const noexcept { return binary_; }
  /// lcm of the level counts; every character value is a power of exp(2*pi*i/period).
  int period() const noexcept { return period_; }
  std::size_t stride(std::size_t j) const { return strides_.at(j); }

  Point point_at(std::size_t index) const {
    return Point{digits(index)};
  }
  Exponent exponent_at(std::size_t index) const {
    return Exponent{digits(index)};
  }

  std::size_t index_of(const Point& p) const { return index_of_digits(p.coords); }
  std::size_t index_of(const Exponent& a) const { return index_of_digits(a.alpha); }

  /// Digit j of a run or exponent index, without materializing the tuple.
  int digit(std::size_t index, std::size_t j) const {
    return static_cast<int>((index / strides_[j]) % static_cast<std::size_t>(levels_[j]));
  }

  /// Number of nonzero digits of an exponent index.
  int weight_of(std::size_t index) const {
    int w = 0;
    for (std::size_t j = 0; j < levels_.size(); ++j) w += (digit(index, j) != 0);
    return w;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t j = 0; j < levels_.size(); ++j) {
      if (j) out += ' ';
      out += std::to_string(levels_[j]);
    }
    return out;
  }

  friend bool operator==(const DesignSpace& a, const DesignSpace& b) {
    return a.levels_ == b.levels_;
  }

 private:
  std::vector<int> digits(std::size_t index) const {
    if (index >= card_) throw DimensionError("index " + std::to_string(index) + " out of range");
    std::vector<int> out(levels_.size());
    for (std::size_t j = 0; j < levels_.size(); ++j) out[j] = digit(index, j);
    return out;
  }

  std::size_t index_of_digits(const std::vector<int>& d) const {
    if (d.size() != levels_.size()) {
      throw DimensionError("tuple has " + std::to_string(d.size()) + " entries, design has " +
                           std::to_string(levels_.size()) + " factors");
    }
    std::size_t index = 0;
    for (std::size_t j = 0; j < d.size(); ++j) {
      if (d[j] < 0 || d[j] >= levels_[j]) {
        throw DimensionError("entry " + std::to_string(d[j]) + " out of range for factor " +
                             std::to_string(j + 1));
      }
      index += static_cast<std::size_t>(d[j]) * strides_[j];
    }
    return index;
  }

  std::vector<int> levels_;
  std::vector<std::size_t> strides_;
  std::size_t card_ = 1;
  int period_ = 1;
  bool binary_ = true;
};

/// All runs in lexicographic order; position i holds point_at(i).
inline std::vector<Point> enumerate_points(const DesignSpace& design) {
  std::vector<Point> out;
  out.reserve(design.size());
  for (std::size_t i = 0; i < design.size(); ++i) out.push_back(design.point_at(i));
  return out;
}

inline std::vector<Exponent> enumerate_exponents(const DesignSpace& design) {
  std::vector<Exponent> out;
  out.reserve(design.size());
  for (std::size_t i = 0; i < design.size(); ++i) out.push_back(design.exponent_at(i));
  return out;
}

/// Phase of X^alpha(point) in units of 2*pi/period, reduced to [0, period).
inline int character_phase(const DesignSpace& design, std::size_t point, std::size_t alpha) {
  const int period = design.period();
  long long phase = 0;
  for (std::size_t j = 0; j < design.factors(); ++j) {
    const int s = design.level(j);
    phase += static_cast<long long>(design.digit(point, j)) * design.digit(alpha, j) * (period / s);
  }
  return static_cast<int>(phase % period);
}

/// exp(2*pi*i*phase/period), exact at multiples of a quarter turn.
inline std::complex<double> root_of_unity(int phase, int period) {
  phase %= period;
  if (phase < 0) phase += period;
  if (phase == 0) return {1.0, 0.0};
  if (2 * phase == period) return {-1.0, 0.0};
  if (4 * phase == period) return {0.0, 1.0};
  if (4 * phase == 3 * period) return {0.0, -1.0};
  const double angle = 2.0 * std::numbers::pi * phase / period;
  return {std::cos(angle), std::sin(angle)};
}

/// +1 or -1: X^alpha(point) on an all-binary design, by parity.
inline int binary_character(const DesignSpace& design, std::size_t point, std::size_t alpha) {
  int parity = 0;
  for (std::size_t j = 0; j < design.factors(); ++j) {
    parity ^= design.digit(point, j) & design.digit(alpha, j);
  }
  return parity ? -1 : 1;
}

inline std::complex<double> monomial_value(const DesignSpace& design, std::size_t point,
                                           std::size_t alpha) {
  if (design.is_binary()) return {static_cast<double>(binary_character(design, point, alpha)), 0.0};
  return root_of_unity(character_phase(design, point, alpha), design.period());
}

/// X^alpha evaluated at a run.
inline std::complex<double> monomial_value(const Point& point, const Exponent& alpha,
                                           const DesignSpace& design) {
  return monomial_value(design, design.index_of(point), design.index_of(alpha));
}

/// The exponent [-alpha] (componentwise negation in Z_{s_j}).
inline Exponent negate(const Exponent& alpha, const DesignSpace& design) {
  design.index_of(alpha);
  Exponent out = alpha;
  for (std::size_t j = 0; j < out.alpha.size(); ++j) {
    out.alpha[j] = (design.level(j) - out.alpha[j]) % design.level(j);
  }
  return out;
}

/// All k-element subsets of {0, ..., m-1} in lexicographic order.
inline std::vector<std::vector<int>> combinations(int m, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > m) return out;
  std::vector<int> current(static_cast<std::size_t>(k));
  std::iota(current.begin(), current.end(), 0);
  while (true) {
    out.push_back(current);
    int i = k - 1;
    while (i >= 0 && current[static_cast<std::size_t>(i)] == m - k + i) --i;
    if (i < 0) break;
    ++current[static_cast<std::size_t>(i)];
    for (int r = i + 1; r < k; ++r) {
      current[static_cast<std::size_t>(r)] = current[static_cast<std::size_t>(r - 1)] + 1;
    }
  }
  return out;
}

}  // namespace oa
