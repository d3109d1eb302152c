#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "oa/errors.hpp"

namespace oa::detail {

/// Vector entries inside the Hilbert basis solvers.
using Entry = std::uint16_t;
inline constexpr std::uint32_t kEntryMax = 0xFFFF;

struct SolverLimits {
  /// Cap on the number of vectors held at once (basis candidates plus frontier).
  std::size_t max_elements = 20'000'000;
  /// Wall-clock cap in seconds; 0 disables it.
  double max_seconds = 0.0;
  unsigned threads = 1;
  std::function<void(const std::string&)> log;
};

/// Row-major set of equal-width nonnegative vectors with their coordinate sums.
struct FlatSet {
  std::size_t width = 0;
  std::vector<Entry> data;
  std::vector<int> degree;

  std::size_t size() const noexcept { return degree.size(); }
  const Entry* row(std::size_t i) const noexcept { return data.data() + i * width; }
  void push(const Entry* v, int deg) {
    data.insert(data.end(), v, v + width);
    degree.push_back(deg);
  }
};

/// Folded support masks: bit (i mod 64) of `nonzero` is set when some coordinate i with
/// that residue is >= 1, of `multiple` when it is >= 2. u <= v implies covers(v, u).
struct Signature {
  std::uint64_t nonzero = 0;
  std::uint64_t multiple = 0;
};

inline Signature signature_of(const Entry* v, std::size_t width) {
  Signature s;
  for (std::size_t i = 0; i < width; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (v[i] >= 1) s.nonzero |= bit;
    if (v[i] >= 2) s.multiple |= bit;
  }
  return s;
}

/// Signature of u + v; may over-approximate the true one, which is safe for covers(sum, .).
inline Signature signature_of_sum(const Signature& u, const Signature& v) {
  return {u.nonzero | v.nonzero, u.multiple | v.multiple | (u.nonzero & v.nonzero)};
}

inline bool covers(const Signature& big, const Signature& small) {
  return ((small.nonzero & ~big.nonzero) | (small.multiple & ~big.multiple)) == 0;
}

/// u <= v coordinatewise.
inline bool dominated(const Entry* u, const Entry* v, std::size_t width) {
  for (std::size_t i = 0; i < width; i += 16) {
    const std::size_t end = std::min(width, i + 16);
    bool ok = true;
    for (std::size_t k = i; k < end; ++k) ok &= u[k] <= v[k];
    if (!ok) return false;
  }
  return true;
}

inline bool lex_less(const Entry* a, const Entry* b, std::size_t width) {
  return std::lexicographical_compare(a, a + width, b, b + width);
}

inline std::int64_t dot(std::span<const std::int64_t> row, const Entry* v) {
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < row.size(); ++i) acc += row[i] * static_cast<std::int64_t>(v[i]);
  return acc;
}

class Deadline {
 public:
  explicit Deadline(double seconds)
      : enabled_(seconds > 0), start_(std::chrono::steady_clock::now()), seconds_(seconds) {}

  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }
  void check(std::size_t frontier) const {
    if (enabled_ && elapsed() > seconds_) {
      throw BudgetExceeded("Hilbert basis search exceeded " + std::to_string(seconds_) + " s", frontier);
    }
  }

 private:
  bool enabled_;
  std::chrono::steady_clock::time_point start_;
  double seconds_;
};

}  // namespace oa::detail
