#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oa/cone.hpp"
#include "support/oracles.hpp"

using oa::CountingVector;
using oa::DesignSpace;

TEST(ConstraintMatrix, RowCounts) {
  EXPECT_EQ(oa::constraint_matrix(DesignSpace({2, 2}), 1).rows(), 2u);
  EXPECT_EQ(oa::constraint_matrix(DesignSpace({2, 2, 2}), 2).rows(), 9u);
  const auto m = oa::constraint_matrix(DesignSpace::parse("2^5"), 2);
  EXPECT_EQ(m.rows(), 30u);
  EXPECT_EQ(m.cols(), 32u);
  // (#cells - 1) rows per subset on mixed designs.
  EXPECT_EQ(oa::constraint_matrix(DesignSpace({2, 3, 4}), 2).rows(), 5u + 7u + 11u);
}

TEST(ConstraintMatrix, TwoByTwoRows) {
  const auto m = oa::constraint_matrix(DesignSpace({2, 2}), 1);
  // Factor 1: runs (1,*) minus runs (0,*). Factor 2: runs (*,1) minus runs (*,0).
  EXPECT_EQ(std::vector<int>(m.row(0).begin(), m.row(0).end()), (std::vector<int>{-1, -1, 1, 1}));
  EXPECT_EQ(std::vector<int>(m.row(1).begin(), m.row(1).end()), (std::vector<int>{-1, 1, -1, 1}));
}

TEST(ConstraintMatrix, StrengthRange) {
  EXPECT_THROW(oa::constraint_matrix(DesignSpace({2, 2}), 0), oa::DomainError);
  EXPECT_THROW(oa::constraint_matrix(DesignSpace({2, 2}), 3), oa::DomainError);
}

TEST(IsMember, Examples) {
  const DesignSpace d({2, 2, 2});
  for (int t = 1; t <= 3; ++t) {
    EXPECT_TRUE(oa::is_member(CountingVector::full_factorial(d), oa::constraint_matrix(d, t)));
  }
  EXPECT_TRUE(oa::is_member(CountingVector(d, {0, 1, 1, 0, 1, 0, 0, 1}), oa::constraint_matrix(d, 2)));
  const DesignSpace d2({2, 2});
  EXPECT_FALSE(oa::is_member(CountingVector(d2, {1, 1, 0, 0}), oa::constraint_matrix(d2, 1)));
  EXPECT_THROW(oa::is_member(CountingVector(d2, {1, 1, 0, 0}), oa::constraint_matrix(d, 1)), oa::DimensionError);
}

TEST(IsMember, AgreesWithSpectralTestOnAllSingleReplicates) {
  const DesignSpace d({2, 2, 2, 2});
  const oa::ConstraintMatrix ms[] = {oa::constraint_matrix(d, 1), oa::constraint_matrix(d, 2),
                                     oa::constraint_matrix(d, 3)};
  for (unsigned mask = 1; mask < (1u << 16); ++mask) {
    std::vector<std::int64_t> counts(16);
    for (int i = 0; i < 16; ++i) counts[static_cast<std::size_t>(i)] = (mask >> i) & 1;
    const CountingVector y(d, counts);
    for (int t = 1; t <= 3; ++t) ASSERT_EQ(oa::is_member(y, ms[t - 1]), oa::is_oa(y, t)) << mask << " t=" << t;
  }
}

TEST(IsMember, AgreesWithProjectionOracleOnMixedDesigns) {
  std::mt19937_64 rng(83);
  for (const auto& levels : std::vector<std::vector<int>>{{2, 3}, {3, 3}, {2, 2, 3}}) {
    const DesignSpace d(levels);
    for (int i = 0; i < 300; ++i) {
      const auto y = oracle::random_counts(rng, d.size(), 2);
      const int t = oracle::projection_strength(levels, y);
      for (int s = 1; s <= int(levels.size()); ++s) {
        EXPECT_EQ(oa::is_member(CountingVector(d, y), oa::constraint_matrix(d, s)), t >= s);
      }
    }
    // Every enumerated OA is a member.
    for (const auto& y : oracle::oa_members(levels, 1, static_cast<std::int64_t>(2 * levels.back()))) {
      EXPECT_TRUE(oa::is_member(CountingVector(d, y), oa::constraint_matrix(d, 1)));
    }
  }
}

TEST(IsMember, MonoidClosure) {
  const DesignSpace d({2, 2, 2, 2});
  const auto M = oa::constraint_matrix(d, 2);
  std::vector<CountingVector> members;
  for (const auto& y : oracle::oa_members({2, 2, 2, 2}, 2, 8)) members.emplace_back(d, y);
  ASSERT_FALSE(members.empty());
  std::mt19937_64 rng(89);
  std::uniform_int_distribution<std::size_t> pick(0, members.size() - 1);
  std::uniform_int_distribution<std::int64_t> scale(0, 5);
  for (int i = 0; i < 500; ++i) {
    const auto& a = members[pick(rng)];
    const auto& b = members[pick(rng)];
    const auto sa = scale(rng), sb = scale(rng);
    std::vector<std::int64_t> sum(16);
    for (std::size_t k = 0; k < 16; ++k) sum[k] = sa * a[k] + sb * b[k];
    EXPECT_TRUE(oa::is_member(CountingVector(d, sum), M));
  }
}

TEST(MatrixFile, RoundTripAndComment) {
  const auto M = oa::constraint_matrix(DesignSpace({2, 2, 2}), 2);
  for (bool comment : {false, true}) {
    std::stringstream s;
    oa::write_matrix(s, M, comment);
    if (comment) {
      EXPECT_EQ(s.str().front(), '#');
    }
    const auto back = oa::read_matrix(s);
    EXPECT_EQ(back.rows, 9u);
    EXPECT_EQ(back.cols, 8u);
    EXPECT_EQ(std::vector<int>(back.entries.begin(), back.entries.end()),
              std::vector<int>(M.entries().begin(), M.entries().end()));
  }
}

TEST(MatrixFile, Malformed) {
  std::stringstream a("2 3\n1 2 3\n");
  EXPECT_THROW(oa::read_matrix(a), oa::FormatError);
  std::stringstream b("1 2\n1 x\n");
  EXPECT_THROW(oa::read_matrix(b), oa::FormatError);
  std::stringstream c("");
  EXPECT_THROW(oa::read_matrix(c), oa::FormatError);
}
