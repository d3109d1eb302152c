#include <gtest/gtest.h>

#include <random>

#include "oa/aberration.hpp"
#include "oa/fraction_union.hpp"
#include "support/oracles.hpp"

using oa::CountingVector;
using oa::DesignSpace;
using oa::FractionSummary;
using oa::Gwlp;
using oa::Rational;

namespace {

const DesignSpace k2x3({2, 2, 2});

CountingVector odd_half() { return CountingVector(k2x3, {0, 1, 1, 0, 1, 0, 0, 1}); }
CountingVector even_half() { return CountingVector(k2x3, {1, 0, 0, 1, 0, 1, 1, 0}); }

}  // namespace

TEST(UnionCounts, HalvesMakeFullFactorial) {
  EXPECT_EQ(oa::union_counts({odd_half(), even_half()}), CountingVector::full_factorial(k2x3));
  EXPECT_EQ(oa::union_counts({odd_half(), odd_half()}), oa::replicate(odd_half(), 2));
}

TEST(UnionCounts, Errors) {
  EXPECT_THROW(oa::union_counts(std::span<const CountingVector>{}), oa::DomainError);
  EXPECT_THROW(oa::union_counts({odd_half(), CountingVector::full_factorial(DesignSpace({2, 2}))}),
               oa::DimensionError);
}

TEST(UnionGwlp, HalfFractionCrossTerm) {
  const auto a = FractionSummary::of(odd_half());
  const auto b = FractionSummary::of(even_half());
  EXPECT_EQ(a.gwlp, Gwlp::exact({1, 0, 0, 1}));
  EXPECT_EQ(b.gwlp, Gwlp::exact({1, 0, 0, 1}));
  EXPECT_EQ(oa::coefficient_covariance(a.coefficients, b.coefficients, 3), Rational(-1, 4));
  // 1/4 + 1/4 + 2 (8/8)^2 (-1/2)(1/2) with n = 8.
  const auto u = oa::union_gwlp({a, b});
  EXPECT_EQ(u.exact(3), Rational(0));
  EXPECT_EQ(u, Gwlp::exact({1, 0, 0, 0}));
}

TEST(UnionGwlp, SelfUnionKeepsGwlp) {
  std::mt19937_64 rng(53);
  const DesignSpace d({2, 2, 2, 2});
  for (int i = 0; i < 100; ++i) {
    const CountingVector y(d, oracle::random_counts(rng, d.size(), 3));
    const auto s = FractionSummary::of(y);
    EXPECT_EQ(oa::union_gwlp({s, s}), oa::gwlp(y));
  }
}

TEST(UnionGwlp, NeedsTwoParts) {
  EXPECT_THROW(oa::union_gwlp({FractionSummary::of(odd_half())}), oa::DomainError);
}

TEST(UnionGwlp, MatchesDirectOnRandomBinaryParts) {
  std::mt19937_64 rng(59);
  std::uniform_int_distribution<int> parts(2, 4);
  const DesignSpace d({2, 2, 2, 2, 2});
  for (int i = 0; i < 300; ++i) {
    std::vector<CountingVector> ys;
    std::vector<FractionSummary> ss;
    const int k = parts(rng);
    for (int p = 0; p < k; ++p) {
      ys.emplace_back(d, oracle::random_counts(rng, d.size(), 2));
      ss.push_back(FractionSummary::of(ys.back()));
    }
    const auto u = oa::union_counts(ys);
    const auto expected = oracle::binary_gwlp(5, std::vector<std::int64_t>(u.counts().begin(), u.counts().end()));
    const auto g = oa::union_gwlp(ss);
    for (std::size_t j = 0; j < expected.size(); ++j) EXPECT_EQ(g.exact(j), expected[j]);
  }
}

TEST(UnionGwlp, MatchesDirectOnMixedLevels) {
  std::mt19937_64 rng(61);
  const DesignSpace d({3, 2, 3});
  for (int i = 0; i < 100; ++i) {
    const CountingVector a(d, oracle::random_counts(rng, d.size(), 2));
    const CountingVector b(d, oracle::random_counts(rng, d.size(), 2));
    const auto g = oa::union_gwlp({FractionSummary::of(a), FractionSummary::of(b)});
    EXPECT_FALSE(g.is_exact());
    EXPECT_EQ(g, oa::gwlp(oa::union_counts({a, b})));
  }
}

TEST(UnionGwlp, InvariantUnderPermutation) {
  std::mt19937_64 rng(67);
  const DesignSpace d({2, 2, 2, 2});
  for (int i = 0; i < 50; ++i) {
    std::vector<FractionSummary> ss;
    for (int p = 0; p < 3; ++p) ss.push_back(FractionSummary::of(CountingVector(d, oracle::random_counts(rng, 16, 2))));
    const auto g = oa::union_gwlp(ss);
    std::swap(ss[0], ss[2]);
    EXPECT_EQ(oa::union_gwlp(ss), g);
    std::swap(ss[0], ss[1]);
    EXPECT_EQ(oa::union_gwlp(ss), g);
  }
}

TEST(UnionGwlp, CoefficientAdditivity) {
  std::mt19937_64 rng(71);
  for (const auto& levels : std::vector<std::vector<int>>{{2, 2, 2, 2}, {3, 4}}) {
    const DesignSpace d(levels);
    for (int i = 0; i < 50; ++i) {
      const CountingVector a(d, oracle::random_counts(rng, d.size(), 3));
      const CountingVector b(d, oracle::random_counts(rng, d.size(), 3));
      const auto ca = oa::coefficients_from_counts(a);
      const auto cb = oa::coefficients_from_counts(b);
      const auto cu = oa::coefficients_from_counts(oa::union_counts({a, b}));
      for (std::size_t k = 0; k < d.size(); ++k) EXPECT_LT(std::abs(cu[k] - ca[k] - cb[k]), 1e-9);
      if (d.is_binary()) {
        for (std::size_t k = 0; k < d.size(); ++k) EXPECT_EQ(cu.scaled(k), ca.scaled(k) + cb.scaled(k));
      }
    }
  }
}

TEST(UnionGwlp, StrengthOfUnionAtLeastMinimum) {
  const DesignSpace d({2, 2, 2, 2});
  std::vector<CountingVector> oas;
  for (std::int64_t n : {8, 12}) {
    for (const auto& y : oracle::oa_members({2, 2, 2, 2}, 2, n)) oas.emplace_back(d, y);
  }
  std::mt19937_64 rng(73);
  std::uniform_int_distribution<std::size_t> pick(0, oas.size() - 1);
  for (int i = 0; i < 500; ++i) {
    const auto& a = oas[pick(rng)];
    const CountingVector b(d, oracle::random_counts(rng, 16, 2));
    const auto u = oa::union_counts({a, b});
    EXPECT_GE(oa::strength(u), std::min(oa::strength(a), oa::strength(b)));
    const auto& c = oas[pick(rng)];
    EXPECT_GE(oa::strength(oa::union_counts({a, c})), 2);
  }
}

TEST(Replicate, Basics) {
  EXPECT_EQ(oa::replicate(odd_half(), 1), odd_half());
  const auto doubled = oa::replicate(odd_half(), 2);
  EXPECT_EQ(doubled.runs(), 8);
  EXPECT_EQ(oa::gwlp(doubled), Gwlp::exact({1, 0, 0, 1}));
  const DesignSpace d({2, 2});
  EXPECT_EQ(oa::strength(oa::replicate(CountingVector::full_factorial(d), 3)), 2);
  EXPECT_THROW(oa::replicate(odd_half(), 0), oa::DomainError);
}

TEST(Replicate, GwlpInvariance) {
  std::mt19937_64 rng(79);
  for (const auto& levels : std::vector<std::vector<int>>{{2, 2, 2, 2}, {3, 3}}) {
    const DesignSpace d(levels);
    for (int i = 0; i < 100; ++i) {
      const CountingVector y(d, oracle::random_counts(rng, d.size(), 3));
      const auto g = oa::gwlp(y);
      for (std::int64_t nu : {2, 3, 4}) EXPECT_EQ(oa::gwlp(oa::replicate(y, nu)), g);
    }
  }
}
