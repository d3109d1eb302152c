#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "oa/aberration.hpp"
#include "oa/counting.hpp"
#include "oa/errors.hpp"

namespace oa {

/// What the union formula needs to know about one part: run size, coefficients, GWLP.
struct FractionSummary {
  std::int64_t runs = 0;
  CoefficientTable coefficients;
  Gwlp gwlp;

  static FractionSummary of(const CountingVector& y) {
    auto c = coefficients_from_counts(y);
    auto g = oa::gwlp(c);
    return FractionSummary{y.runs(), std::move(c), std::move(g)};
  }
};

/// Multiset union: entrywise sum of counting vectors.
inline CountingVector union_counts(std::span<const CountingVector> parts) {
  if (parts.empty()) throw DomainError("union needs at least one fraction");
  const auto& design = parts.front().design();
  std::vector<std::int64_t> counts(design.size(), 0);
  for (const auto& y : parts) {
    if (!(y.design() == design)) throw DimensionError("fractions live on different designs");
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += y[i];
  }
  return CountingVector(design, std::move(counts));
}

inline CountingVector union_counts(std::initializer_list<CountingVector> parts) {
  return union_counts(std::span<const CountingVector>(parts.begin(), parts.size()));
}

/// nu copies of every run; aberrations are unchanged.
inline CountingVector replicate(const CountingVector& y, std::int64_t nu) {
  if (nu < 1) throw DomainError("replication factor must be at least 1");
  std::vector<std::int64_t> counts(y.counts().begin(), y.counts().end());
  for (auto& c : counts) c *= nu;
  return CountingVector(y.design(), std::move(counts));
}

/// sum_{|alpha|_0 = j} c_alpha^(1) c_alpha^(2) on a binary design, exactly.
inline Rational coefficient_covariance(const CoefficientTable& a, const CoefficientTable& b, int j) {
  if (!(a.design() == b.design())) throw DimensionError("coefficient tables live on different designs");
  const auto& design = a.design();
  std::int64_t acc = 0;
  for (std::size_t alpha = 0; alpha < a.size(); ++alpha) {
    if (design.weight_of(alpha) == j) acc += a.scaled(alpha) * b.scaled(alpha);
  }
  const auto card = static_cast<std::int64_t>(design.size());
  return Rational(acc, card * card);
}

/// GWLP of the union of the parts, from their summaries only:
///   A_j = sum_i (n_i/n)^2 A_j(F_i) + 2 (#D/n)^2 sum_{i<k} sum_{|alpha|_0=j} Re(c_alpha^(i) conj(c_alpha^(k))).
inline Gwlp union_gwlp(std::span<const FractionSummary> parts) {
  if (parts.size() < 2) throw DomainError("union formula needs at least two fractions");
  const auto& design = parts.front().coefficients.design();
  std::int64_t n = 0;
  bool exact = true;
  for (const auto& p : parts) {
    if (!(p.coefficients.design() == design)) throw DimensionError("fractions live on different designs");
    if (p.runs <= 0) throw DomainError("union formula needs nonempty parts");
    n += p.runs;
    exact = exact && p.coefficients.is_exact() && p.gwlp.is_exact();
  }
  const std::size_t m = design.factors();
  const auto card = static_cast<std::int64_t>(design.size());

  if (exact) {
    std::vector<Rational> a(m + 1, Rational(0));
    for (const auto& p : parts) {
      for (std::size_t j = 0; j <= m; ++j) a[j] += Rational(p.runs * p.runs, n * n) * p.gwlp.exact(j);
    }
    // With S = #D c: (#D/n)^2 c c' = S S' / n^2.
    std::vector<std::int64_t> cross(m + 1, 0);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const auto si = parts[i].coefficients.scaled_values();
      for (std::size_t k = i + 1; k < parts.size(); ++k) {
        const auto sk = parts[k].coefficients.scaled_values();
        for (std::size_t alpha = 0; alpha < si.size(); ++alpha) {
          cross[static_cast<std::size_t>(design.weight_of(alpha))] += si[alpha] * sk[alpha];
        }
      }
    }
    for (std::size_t j = 0; j <= m; ++j) a[j] += Rational(2 * cross[j], n * n);
    return Gwlp::exact(std::move(a));
  }

  std::vector<double> a(m + 1, 0.0);
  const double nn = static_cast<double>(n) * static_cast<double>(n);
  for (const auto& p : parts) {
    const double w = static_cast<double>(p.runs) * static_cast<double>(p.runs) / nn;
    for (std::size_t j = 0; j <= m; ++j) a[j] += w * p.gwlp[j];
  }
  const double scale = 2.0 * static_cast<double>(card) * static_cast<double>(card) / nn;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t k = i + 1; k < parts.size(); ++k) {
      for (std::size_t alpha = 0; alpha < design.size(); ++alpha) {
        const auto term = parts[i].coefficients[alpha] * std::conj(parts[k].coefficients[alpha]);
        a[static_cast<std::size_t>(design.weight_of(alpha))] += scale * term.real();
      }
    }
  }
  return Gwlp::approximate(std::move(a));
}

inline Gwlp union_gwlp(std::initializer_list<FractionSummary> parts) {
  return union_gwlp(std::span<const FractionSummary>(parts.begin(), parts.size()));
}

}  // namespace oa
