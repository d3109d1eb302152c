#include <gtest/gtest.h>

#include <random>

#include "oa/counting.hpp"
#include "support/oracles.hpp"

using oa::CountingVector;
using oa::DesignSpace;
using oa::Rational;

namespace {

const DesignSpace k2x3({2, 2, 2});

// Odd-parity runs of 2^3: X1 X2 X3 = -1.
CountingVector odd_half() { return CountingVector(k2x3, {0, 1, 1, 0, 1, 0, 0, 1}); }

}  // namespace

TEST(CountingVector, Validation) {
  EXPECT_THROW(CountingVector(k2x3, {1, 2}), oa::DimensionError);
  EXPECT_THROW(CountingVector(k2x3, {0, 0, 0, 0, 0, 0, 0, -1}), oa::DomainError);
  const CountingVector y(k2x3, {0, 2, 0, 0, 0, 0, 1, 0});
  EXPECT_EQ(y.runs(), 3);
  EXPECT_FALSE(y.is_single_replicate());
  EXPECT_TRUE(odd_half().is_single_replicate());
  EXPECT_EQ(y.sum_of_squares(), 5);
}

TEST(CountingVector, RunsRoundTrip) {
  const CountingVector y(k2x3, {0, 2, 0, 0, 0, 0, 1, 0});
  const auto runs = y.to_runs();
  ASSERT_EQ(runs.size(), 3u);
  EXPECT_EQ(CountingVector::from_runs(k2x3, runs), y);
}

TEST(Coefficients, FullFactorial) {
  const auto c = oa::coefficients_from_counts(CountingVector::full_factorial(k2x3));
  EXPECT_EQ(c.exact(0), Rational(1));
  for (std::size_t a = 1; a < c.size(); ++a) EXPECT_TRUE(c.is_zero(a));
}

TEST(Coefficients, OddHalfFraction) {
  const auto c = oa::coefficients_from_counts(odd_half());
  EXPECT_EQ(c.exact(0), Rational(1, 2));
  EXPECT_EQ(c.exact(7), Rational(-1, 2));
  for (std::size_t a = 1; a < 7; ++a) EXPECT_EQ(c.exact(a), Rational(0));
}

TEST(Coefficients, SinglePoint) {
  const DesignSpace d({2, 2});
  const auto c = oa::coefficients_from_counts(CountingVector(d, {1, 0, 0, 0}));
  for (std::size_t a = 0; a < 4; ++a) EXPECT_EQ(c.exact(a), Rational(1, 4));
}

TEST(Coefficients, ConstantIsRunsOverCard) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    const DesignSpace d({2, 3, 2});
    const CountingVector y(d, oracle::random_counts(rng, d.size(), 3));
    const auto c = oa::coefficients_from_counts(y);
    EXPECT_NEAR(c.constant().real(), double(y.runs()) / double(d.size()), 1e-12);
  }
}

TEST(Coefficients, AgreeWithDefiningSum) {
  std::mt19937_64 rng(11);
  for (const auto& levels : std::vector<std::vector<int>>{{2, 2, 2, 2}, {3, 4}, {2, 3, 3}, {5, 2}}) {
    const DesignSpace d(levels);
    for (int i = 0; i < 20; ++i) {
      const auto y = oracle::random_counts(rng, d.size(), 4);
      const auto expected = oracle::coefficients(levels, y);
      const auto c = oa::coefficients_from_counts(CountingVector(d, y));
      for (std::size_t a = 0; a < d.size(); ++a) EXPECT_LT(std::abs(c[a] - expected[a]), 1e-9);
    }
  }
}

TEST(Coefficients, ConjugateSymmetry) {
  std::mt19937_64 rng(5);
  const DesignSpace d({3, 4, 2});
  for (int i = 0; i < 20; ++i) {
    const auto c = oa::coefficients_from_counts(CountingVector(d, oracle::random_counts(rng, d.size(), 5)));
    for (std::size_t a = 0; a < d.size(); ++a) {
      const auto neg = d.index_of(oa::negate(d.exponent_at(a), d));
      EXPECT_LT(std::abs(c[neg] - std::conj(c[a])), 1e-9);
    }
  }
}

TEST(Coefficients, RoundTrip) {
  std::mt19937_64 rng(3);
  for (const auto& levels : std::vector<std::vector<int>>{{2, 2, 2, 2, 2}, {3, 3}, {2, 3, 4}}) {
    const DesignSpace d(levels);
    for (int i = 0; i < 50; ++i) {
      const CountingVector y(d, oracle::random_counts(rng, d.size(), 6));
      EXPECT_EQ(oa::counts_from_coefficients(oa::coefficients_from_counts(y)), y);
    }
  }
}

TEST(Coefficients, ConstantTableGivesFullFactorial) {
  std::vector<std::int64_t> scaled(8, 0);
  scaled[0] = 8;
  const auto y = oa::counts_from_coefficients(oa::CoefficientTable::from_scaled(k2x3, scaled));
  EXPECT_EQ(y, CountingVector::full_factorial(k2x3));
}

TEST(Coefficients, HalfFractionTableGivesOddRuns) {
  std::vector<std::int64_t> scaled(8, 0);
  scaled[0] = 4;
  scaled[7] = -4;
  EXPECT_EQ(oa::counts_from_coefficients(oa::CoefficientTable::from_scaled(k2x3, scaled)), odd_half());
}

TEST(Coefficients, TwoFactorInteraction) {
  const DesignSpace d({2, 2});
  const auto y = oa::counts_from_coefficients(oa::CoefficientTable::from_scaled(d, {2, 0, 0, 2}));
  EXPECT_EQ(y, CountingVector(d, {1, 0, 0, 1}));
}

TEST(Coefficients, RejectsNonCountingTables) {
  const DesignSpace d({2, 2});
  EXPECT_THROW(oa::counts_from_coefficients(oa::CoefficientTable::from_scaled(d, {1, 0, 0, 0})),
               oa::NotCountingFunction);
  EXPECT_THROW(oa::counts_from_coefficients(oa::CoefficientTable::from_scaled(d, {0, 4, 0, 0})),
               oa::NotCountingFunction);
  const DesignSpace m({3});
  EXPECT_THROW(oa::counts_from_coefficients(oa::CoefficientTable(m, {{0.5, 0}, {0, 0}, {0, 0}})),
               oa::NotCountingFunction);
  EXPECT_THROW(oa::CoefficientTable::from_scaled(m, {3, 0, 0}), oa::DomainError);
  EXPECT_THROW(oa::CoefficientTable(d, {{1, 0}}), oa::DimensionError);
}

TEST(Coefficients, CenteringEquivalence) {
  // sum over the fraction of X^alpha vanishes iff c_alpha and c_{-alpha} vanish.
  std::mt19937_64 rng(17);
  const DesignSpace d({3, 3});
  for (int i = 0; i < 200; ++i) {
    const CountingVector y(d, oracle::random_counts(rng, d.size(), 2));
    const auto c = oa::coefficients_from_counts(y);
    for (std::size_t a = 0; a < d.size(); ++a) {
      std::complex<double> s = 0;
      for (std::size_t p = 0; p < d.size(); ++p) s += double(y[p]) * oa::monomial_value(d, p, a);
      const auto neg = d.index_of(oa::negate(d.exponent_at(a), d));
      EXPECT_EQ(std::abs(s) < 1e-9, c.is_zero(a) && c.is_zero(neg));
    }
  }
}

TEST(Coefficients, OrthogonalityEquivalence) {
  // X^alpha and X^beta are orthogonal on the fraction iff c_{alpha - beta} = 0.
  std::mt19937_64 rng(19);
  for (const auto& levels : std::vector<std::vector<int>>{{2, 2, 2, 2}, {3, 3}, {2, 4}}) {
    const DesignSpace d(levels);
    for (int i = 0; i < 30; ++i) {
      const CountingVector y(d, oracle::random_counts(rng, d.size(), 1));
      const auto c = oa::coefficients_from_counts(y);
      for (std::size_t a = 0; a < d.size(); ++a) {
        for (std::size_t b = 0; b < d.size(); ++b) {
          std::complex<double> ip = 0;
          for (std::size_t p = 0; p < d.size(); ++p) {
            ip += double(y[p]) * oa::monomial_value(d, p, a) * std::conj(oa::monomial_value(d, p, b));
          }
          auto diff = d.exponent_at(a);
          const auto beta = d.exponent_at(b);
          for (std::size_t j = 0; j < levels.size(); ++j) {
            diff.alpha[j] = (diff.alpha[j] - beta.alpha[j] + levels[j]) % levels[j];
          }
          const auto k = d.index_of(oa::negate(diff, d));
          EXPECT_EQ(std::abs(ip) < 1e-9, c.is_zero(k));
        }
      }
    }
  }
}

TEST(Marginals, Examples) {
  const auto full = oa::marginal_counts(CountingVector::full_factorial(k2x3), {0, 1});
  EXPECT_EQ(full.counts, (std::vector<std::int64_t>{2, 2, 2, 2}));
  EXPECT_EQ(oa::marginal_counts(odd_half(), {0, 1}).counts, (std::vector<std::int64_t>{1, 1, 1, 1}));
  const DesignSpace d({2, 2});
  const auto m = oa::marginal_counts(CountingVector(d, {1, 1, 0, 0}), {0});
  EXPECT_EQ(m.counts, (std::vector<std::int64_t>{2, 0}));
  EXPECT_FALSE(m.is_constant());
}

TEST(Marginals, SubsetErrors) {
  const auto y = odd_half();
  EXPECT_THROW(oa::marginal_counts(y, {3}), oa::DomainError);
  EXPECT_THROW(oa::marginal_counts(y, {1, 0}), oa::DomainError);
  EXPECT_THROW(oa::marginal_counts(y, std::span<const int>{}), oa::DomainError);
}

TEST(Strength, Examples) {
  EXPECT_EQ(oa::strength(odd_half()), 2);
  EXPECT_EQ(oa::strength(CountingVector::full_factorial(DesignSpace::parse("2^5"))), 5);
  EXPECT_EQ(oa::strength(CountingVector(DesignSpace({2, 2}), {1, 1, 0, 0})), 0);
  EXPECT_THROW(oa::strength(CountingVector(k2x3, std::vector<std::int64_t>(8, 0))), oa::DomainError);
}

TEST(IsOa, Examples) {
  EXPECT_TRUE(oa::is_oa(CountingVector::full_factorial(k2x3), 3));
  EXPECT_FALSE(oa::is_oa(odd_half(), 3));
  EXPECT_TRUE(oa::is_oa(odd_half(), 2));
  EXPECT_THROW(oa::is_oa(odd_half(), 4), oa::DomainError);
}

TEST(IsOa, SpectralMatchesCombinatorialOnAllSingleReplicates) {
  // Every 0/1 fraction of 2^4.
  const DesignSpace d({2, 2, 2, 2});
  for (unsigned mask = 1; mask < (1u << 16); ++mask) {
    std::vector<std::int64_t> counts(16);
    for (int i = 0; i < 16; ++i) counts[static_cast<std::size_t>(i)] = (mask >> i) & 1;
    const CountingVector y(d, counts);
    const int t = oa::strength(y);
    ASSERT_EQ(t, oa::combinatorial_strength(y)) << "mask " << mask;
    for (int s = 1; s <= 4; ++s) ASSERT_EQ(oa::is_oa(y, s), oa::is_oa_combinatorial(y, s));
  }
}

TEST(IsOa, SpectralMatchesProjectionOracleOnMixedDesigns) {
  std::mt19937_64 rng(23);
  for (const auto& levels : std::vector<std::vector<int>>{{2, 3}, {3, 3}, {2, 2, 3}}) {
    const DesignSpace d(levels);
    for (int i = 0; i < 300; ++i) {
      auto counts = oracle::random_counts(rng, d.size(), 2);
      const CountingVector y(d, counts);
      EXPECT_EQ(oa::strength(y), oracle::projection_strength(levels, counts));
    }
    // Known OAs: full factorial multiples.
    EXPECT_EQ(oa::strength(CountingVector::full_factorial(d)), int(levels.size()));
  }
}
