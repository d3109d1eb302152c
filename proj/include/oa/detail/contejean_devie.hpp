#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "oa/detail/solver_common.hpp"
#include "oa/errors.hpp"

// Breadth-first search for the minimal nonnegative solutions of A y = 0.
//
// Starting from the unit vectors, a non-solution y is extended by e_j only when
// <A y, A e_j> < 0, i.e. the step moves the residual back toward the origin. Any
// vector that dominates a solution already found is dropped. Exact but with a frontier
// that grows quickly; meant for small systems and for cross-checking.

namespace oa::detail {

inline FlatSet contejean_devie_solve(std::span<const std::int64_t> matrix, std::size_t rows, std::size_t width,
                                     const SolverLimits& limits) {
  const Deadline deadline(limits.max_seconds);
  auto residual = [&](const Entry* y) {
    std::vector<std::int64_t> r(rows, 0);
    for (std::size_t i = 0; i < rows; ++i) r[i] = dot(matrix.subspan(i * width, width), y);
    return r;
  };
  // Columns of A, used for <A y, A e_j>.
  std::vector<std::int64_t> column(rows * width);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < width; ++j) column[j * rows + i] = matrix[i * width + j];
  }

  FlatSet solutions;
  solutions.width = width;
  FlatSet frontier;
  frontier.width = width;
  std::vector<Entry> v(width, 0);
  for (std::size_t j = 0; j < width; ++j) {
    v[j] = 1;
    frontier.push(v.data(), 1);
    v[j] = 0;
  }

  auto dominates_solution = [&](const Entry* y) {
    for (std::size_t s = 0; s < solutions.size(); ++s) {
      if (dominated(solutions.row(s), y, width)) return true;
    }
    return false;
  };

  int degree = 1;
  while (frontier.size() > 0) {
    deadline.check(frontier.size());
    // Solutions of this level first, so that they prune this level's extensions.
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      const auto r = residual(frontier.row(i));
      if (std::all_of(r.begin(), r.end(), [](std::int64_t x) { return x == 0; })) {
        solutions.push(frontier.row(i), degree);
      } else {
        open.push_back(i);
      }
    }

    std::vector<std::vector<Entry>> next;
    for (std::size_t i : open) {
      const Entry* y = frontier.row(i);
      const auto r = residual(y);
      for (std::size_t j = 0; j < width; ++j) {
        std::int64_t ip = 0;
        for (std::size_t k = 0; k < rows; ++k) ip += r[k] * column[j * rows + k];
        if (ip >= 0) continue;
        if (y[j] >= kEntryMax) throw Error("Hilbert basis entry exceeds " + std::to_string(kEntryMax));
        std::vector<Entry> z(y, y + width);
        ++z[j];
        if (dominates_solution(z.data())) continue;
        next.push_back(std::move(z));
      }
      if (next.size() > limits.max_elements) {
        throw BudgetExceeded("Contejean-Devie frontier exceeded " + std::to_string(limits.max_elements) + " vectors",
                             next.size());
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());

    frontier = FlatSet{};
    frontier.width = width;
    ++degree;
    for (const auto& z : next) frontier.push(z.data(), degree);
    if (limits.log) {
      limits.log("level " + std::to_string(degree) + ": frontier " + std::to_string(frontier.size()) + ", " +
                 std::to_string(solutions.size()) + " solutions");
    }
  }
  return solutions;
}

}  // namespace oa::detail
