#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "oa/detail/solver_common.hpp"
#include "oa/errors.hpp"
#include "oa/parallel.hpp"

// Minimal nonnegative solutions of A y = 0, adding one equation at a time.
//
// Let S be the monoid cut out by the equations already processed and G its set of
// minimal nonzero elements. For the next row h, lift every y in S to (y, h.y) and order
// the lifts sign-compatibly: u <= v iff u <= v coordinatewise and h.u lies between 0
// and h.v. Minimal lifts are obtained by completion: sums p + q of a positive and a
// negative element are formed in order of increasing coordinate sum and kept unless an
// already-known element lies below them. The minimal lifts with h.y = 0 are the
// minimal elements of S intersected with h.y = 0.
//
// Processing by degree means every element of degree < d is final when level d is
// formed, so a sum of degree d only needs to be tested against elements of degree at
// most d/2: if u <= s then u or s - u has degree <= d/2 and decomposes into minimal
// elements that are also below s.

namespace oa::detail {

class CompletionStage {
 public:
  CompletionStage(std::size_t width, std::span<const std::int64_t> equation)
      : width_(width), equation_(equation) {}

  /// Sign class of a weight: 0 zero, 1 positive, 2 negative.
  static int sign_class(std::int64_t w) { return w == 0 ? 0 : (w > 0 ? 1 : 2); }

  struct Bucket {
    std::vector<Entry> data;
    std::vector<std::int64_t> weight;
    std::vector<Signature> sig;
    std::size_t size() const noexcept { return weight.size(); }
  };

  void insert(const Entry* v, int degree, std::int64_t weight, const Signature& sig) {
    auto& by_degree = buckets_[sign_class(weight)];
    if (by_degree.size() <= static_cast<std::size_t>(degree)) by_degree.resize(static_cast<std::size_t>(degree) + 1);
    auto& b = by_degree[static_cast<std::size_t>(degree)];
    b.data.insert(b.data.end(), v, v + width_);
    b.weight.push_back(weight);
    b.sig.push_back(sig);
    ++counts_[sign_class(weight)];
    max_degree_[sign_class(weight)] = std::max(max_degree_[sign_class(weight)], degree);
  }

  void insert(const Entry* v, int degree) {
    insert(v, degree, dot(equation_, v), signature_of(v, width_));
  }

  /// Some stored element lies below (v, weight) in the sign-compatible order.
  bool reducible(const Entry* v, int degree, std::int64_t weight, const Signature& sig) const {
    const int cls = sign_class(weight);
    const std::int64_t magnitude = weight < 0 ? -weight : weight;
    const auto& zeros = buckets_[0];
    const auto& same = buckets_[cls];
    const std::size_t limit = static_cast<std::size_t>(degree / 2);
    for (std::size_t d = 1; d <= limit; ++d) {
      if (d < zeros.size() && scan(zeros[d], v, sig, std::numeric_limits<std::int64_t>::max())) return true;
      if (cls != 0 && d < same.size() && scan(same[d], v, sig, magnitude)) return true;
    }
    return false;
  }

  const std::vector<Bucket>& buckets(int cls) const { return buckets_[cls]; }
  std::size_t count(int cls) const { return counts_[cls]; }
  int max_degree(int cls) const { return max_degree_[cls]; }
  std::size_t width() const noexcept { return width_; }

 private:
  bool scan(const Bucket& b, const Entry* v, const Signature& sig, std::int64_t magnitude) const {
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (!covers(sig, b.sig[i])) continue;
      const std::int64_t w = b.weight[i] < 0 ? -b.weight[i] : b.weight[i];
      if (w > magnitude) continue;
      if (dominated(b.data.data() + i * width_, v, width_)) return true;
    }
    return false;
  }

  std::size_t width_;
  std::span<const std::int64_t> equation_;
  std::array<std::vector<Bucket>, 3> buckets_;
  std::array<std::size_t, 3> counts_{};
  std::array<int, 3> max_degree_{};
};

/// Minimal elements of { y in S : h.y = 0 } from the minimal elements `basis` of S.
inline FlatSet complete_equation(const FlatSet& basis, std::span<const std::int64_t> equation,
                                 const SolverLimits& limits, const Deadline& deadline) {
  const std::size_t width = basis.width;
  CompletionStage stage(width, equation);
  for (std::size_t i = 0; i < basis.size(); ++i) stage.insert(basis.row(i), basis.degree[i]);

  const unsigned threads = resolve_threads(limits.threads);
  struct Task {
    std::size_t pos_degree;
    std::size_t index;
  };
  struct Candidates {
    std::vector<Entry> data;
    std::vector<std::int64_t> weight;
  };

  for (int d = 2;; ++d) {
    if (stage.count(1) == 0 || stage.count(2) == 0) break;
    if (d > stage.max_degree(1) + stage.max_degree(2)) break;
    const std::size_t frontier = stage.count(1) + stage.count(2);
    deadline.check(frontier);

    const auto& pos = stage.buckets(1);
    const auto& neg = stage.buckets(2);
    std::vector<Task> tasks;
    for (std::size_t a = 1; a < pos.size() && static_cast<int>(a) < d; ++a) {
      const std::size_t b = static_cast<std::size_t>(d) - a;
      if (b >= neg.size() || neg[b].size() == 0) continue;
      for (std::size_t i = 0; i < pos[a].size(); ++i) tasks.push_back({a, i});
    }
    if (tasks.empty()) continue;

    const std::size_t chunks = std::min<std::size_t>(tasks.size(), 64 * static_cast<std::size_t>(threads));
    std::vector<Candidates> found(chunks);
    parallel_chunks(tasks.size(), chunks, threads, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
      std::vector<Entry> sum(width);
      auto& out = found[chunk];
      for (std::size_t t = begin; t < end; ++t) {
        if ((t & 255) == 0) deadline.check(frontier);
        const auto& pb = pos[tasks[t].pos_degree];
        const std::size_t pi = tasks[t].index;
        const Entry* p = pb.data.data() + pi * width;
        const auto& nb = neg[static_cast<std::size_t>(d) - tasks[t].pos_degree];
        for (std::size_t qi = 0; qi < nb.size(); ++qi) {
          const Entry* q = nb.data.data() + qi * width;
          for (std::size_t k = 0; k < width; ++k) {
            const std::uint32_t s = std::uint32_t{p[k]} + q[k];
            if (s > kEntryMax) throw Error("Hilbert basis entry exceeds " + std::to_string(kEntryMax));
            sum[k] = static_cast<Entry>(s);
          }
          const std::int64_t w = pb.weight[pi] + nb.weight[qi];
          const Signature sig = signature_of_sum(pb.sig[pi], nb.sig[qi]);
          if (!stage.reducible(sum.data(), d, w, sig)) {
            out.data.insert(out.data.end(), sum.begin(), sum.end());
            out.weight.push_back(w);
          }
        }
      }
    });

    // Merge, deduplicate, then publish the whole level at once.
    std::vector<std::pair<const Entry*, std::int64_t>> level;
    for (const auto& c : found) {
      for (std::size_t i = 0; i < c.weight.size(); ++i) level.emplace_back(c.data.data() + i * width, c.weight[i]);
    }
    std::sort(level.begin(), level.end(),
              [width](const auto& x, const auto& y) { return lex_less(x.first, y.first, width); });
    level.erase(std::unique(level.begin(), level.end(),
                            [width](const auto& x, const auto& y) {
                              return std::equal(x.first, x.first + width, y.first);
                            }),
                level.end());
    for (const auto& [v, w] : level) stage.insert(v, d, w, signature_of(v, width));

    const std::size_t held = stage.count(0) + stage.count(1) + stage.count(2);
    if (held > limits.max_elements) {
      throw BudgetExceeded("Hilbert basis search exceeded " + std::to_string(limits.max_elements) + " elements",
                           stage.count(1) + stage.count(2));
    }
  }

  FlatSet next;
  next.width = width;
  const auto& zeros = stage.buckets(0);
  for (std::size_t d = 0; d < zeros.size(); ++d) {
    for (std::size_t i = 0; i < zeros[d].size(); ++i) next.push(zeros[d].data.data() + i * width, static_cast<int>(d));
  }
  return next;
}

/// Minimal nonzero y >= 0 with A y = 0; A is `rows` x `width`, row-major.
inline FlatSet completion_solve(std::span<const std::int64_t> matrix, std::size_t rows, std::size_t width,
                                const SolverLimits& limits) {
  const Deadline deadline(limits.max_seconds);
  FlatSet basis;
  basis.width = width;
  std::vector<Entry> unit(width, 0);
  for (std::size_t i = 0; i < width; ++i) {
    unit[i] = 1;
    basis.push(unit.data(), 1);
    unit[i] = 0;
  }

  std::vector<std::size_t> remaining(rows);
  std::iota(remaining.begin(), remaining.end(), std::size_t{0});
  std::size_t step = 0;
  while (!remaining.empty()) {
    // Next equation: the one with the fewest positive/negative pairs over the current basis.
    std::size_t pick = 0;
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (std::size_t k = 0; k < remaining.size(); ++k) {
      const auto eq = matrix.subspan(remaining[k] * width, width);
      std::size_t pos = 0, neg = 0;
      for (std::size_t i = 0; i < basis.size(); ++i) {
        const auto w = dot(eq, basis.row(i));
        pos += (w > 0);
        neg += (w < 0);
      }
      if (pos * neg < best) {
        best = pos * neg;
        pick = k;
      }
    }
    const std::size_t row = remaining[pick];
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
    basis = complete_equation(basis, matrix.subspan(row * width, width), limits, deadline);
    ++step;
    if (limits.log) {
      limits.log("equation " + std::to_string(step) + "/" + std::to_string(rows) + " (row " +
                 std::to_string(row) + "): " + std::to_string(basis.size()) + " elements, " +
                 std::to_string(deadline.elapsed()) + " s");
    }
  }
  return basis;
}

}  // namespace oa::detail
