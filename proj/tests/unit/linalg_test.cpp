#include "dlinucb/linalg.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "convert.hpp"
#include "oracles.hpp"

using namespace dlinucb;
using testutil::from_mat;
using testutil::to_mat;

TEST(IdentityScaled, Examples) {
  EXPECT_EQ(identity_scaled(2, 0.1), SquareMatrix(2, {0.1, 0.0, 0.0, 0.1}));
  EXPECT_EQ(identity_scaled(1, 1.0), SquareMatrix(1, {1.0}));
  EXPECT_EQ(identity_scaled(3, 0.5), SquareMatrix(3, {0.5, 0, 0, 0, 0.5, 0, 0, 0, 0.5}));
}

TEST(IdentityScaled, RejectsBadArguments) {
  EXPECT_THROW(identity_scaled(0, 1.0), std::invalid_argument);
  EXPECT_THROW(identity_scaled(2, 0.0), std::invalid_argument);
  EXPECT_THROW(identity_scaled(2, -1.0), std::invalid_argument);
}

TEST(RankOneInverseUpdate, DiagonalCase) {
  const auto out = rank_one_inverse_update(SquareMatrix::identity(2), Vector{1.0, 0.0});
  EXPECT_EQ(out, SquareMatrix(2, {0.5, 0.0, 0.0, 1.0}));
}

TEST(RankOneInverseUpdate, ZeroVectorIsNoOp) {
  EXPECT_EQ(rank_one_inverse_update(SquareMatrix::identity(2), Vector{0.0, 0.0}), SquareMatrix::identity(2));
}

TEST(RankOneInverseUpdate, RejectsBadInput) {
  const auto inv = SquareMatrix::identity(2);
  EXPECT_THROW(rank_one_inverse_update(inv, Vector{1.0}), std::invalid_argument);
  EXPECT_THROW(rank_one_inverse_update(inv, Vector{NAN, 0.0}), std::invalid_argument);
  EXPECT_THROW(rank_one_inverse_update(SquareMatrix(2, {-1, 0, 0, -1}), Vector{1.0, 0.0}), std::domain_error);
}

TEST(RankOneInverseUpdate, MatchesDirectInversionD5) {
  std::mt19937_64 rng(11);
  const auto a = oracle::random_spd(5, rng);
  const auto x = oracle::random_vec(5, rng);
  auto a_plus = a;
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) a_plus[i][j] += x[i] * x[j];
  }
  const auto got = rank_one_inverse_update(from_mat(oracle::gauss_jordan_inverse(a)), Vector(x));
  EXPECT_LT(testutil::max_abs_diff(oracle::gauss_jordan_inverse(a_plus), got), 1e-8);
}

TEST(RankOneInverseUpdate, PropertyAcrossDimensions) {
  std::mt19937_64 rng(12);
  for (std::size_t d = 1; d <= 8; ++d) {
    for (int trial = 0; trial < 25; ++trial) {
      auto a = oracle::random_spd(d, rng);
      auto inv = from_mat(oracle::gauss_jordan_inverse(a));
      for (int step = 0; step < 5; ++step) {
        const auto x = oracle::random_vec(d, rng, -2.0, 2.0);
        for (std::size_t i = 0; i < d; ++i) {
          for (std::size_t j = 0; j < d; ++j) a[i][j] += x[i] * x[j];
        }
        inv = rank_one_inverse_update(inv, Vector(x));
        ASSERT_TRUE(inv.all_finite());
        ASSERT_TRUE(inv.is_symmetric(1e-9)) << "d=" << d;
        ASSERT_TRUE(inv.is_positive_definite()) << "d=" << d;
        ASSERT_LT(testutil::max_abs_diff(oracle::gauss_jordan_inverse(a), inv), 1e-8) << "d=" << d;
      }
    }
  }
}

TEST(RankOneInverseUpdate, InPlaceAgreesWithValueForm) {
  std::mt19937_64 rng(13);
  const auto inv = from_mat(oracle::gauss_jordan_inverse(oracle::random_spd(4, rng)));
  const Vector x(oracle::random_vec(4, rng));
  auto in_place = inv;
  rank_one_inverse_update_in_place(in_place, x);
  EXPECT_EQ(in_place, rank_one_inverse_update(inv, x));
}

TEST(MahalanobisNorm, Examples) {
  const auto half = identity_scaled(2, 0.5);
  EXPECT_NEAR(mahalanobis_norm(half, Vector{1.0, 0.0}), std::sqrt(0.5), 1e-15);
  EXPECT_EQ(mahalanobis_norm(half, Vector{0.0, 0.0}), 0.0);
  EXPECT_THROW(mahalanobis_norm(half, Vector{1.0}), std::invalid_argument);
}

TEST(MahalanobisNorm, MatchesDirectInverseD4) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = oracle::random_spd(4, rng);
    const auto x = oracle::random_vec(4, rng);
    const auto inv = oracle::gauss_jordan_inverse(a);
    const double want = std::sqrt(oracle::inner(x, oracle::matvec(inv, x)));
    const double got = mahalanobis_norm(from_mat(inv), Vector(x));
    EXPECT_LT(std::abs(got - want) / want, 1e-8);
  }
}

TEST(MahalanobisNorm, LoewnerMonotoneUnderRankOneUpdate) {
  std::mt19937_64 rng(15);
  for (std::size_t d = 1; d <= 6; ++d) {
    for (int trial = 0; trial < 40; ++trial) {
      const auto inv = from_mat(oracle::gauss_jordan_inverse(oracle::random_spd(d, rng)));
      const Vector probe(oracle::random_vec(d, rng));
      const Vector x(oracle::random_vec(d, rng, -3.0, 3.0));
      const double before = mahalanobis_norm(inv, probe);
      const double after = mahalanobis_norm(rank_one_inverse_update(inv, x), probe);
      EXPECT_LE(after, before + 1e-12);
    }
  }
}

TEST(SolveEstimate, Examples) {
  const SquareMatrix inv(2, {0.5, 0.0, 0.0, 1.0});
  EXPECT_EQ(solve_estimate(inv, Vector{1.0, 0.0}), (Vector{0.5, 0.0}));
  EXPECT_EQ(solve_estimate(inv, Vector{0.0, 0.0}), (Vector{0.0, 0.0}));
  EXPECT_THROW(solve_estimate(inv, Vector{1.0, 2.0, 3.0}), std::invalid_argument);
}

TEST(SolveEstimate, MatchesGaussianEliminationD6) {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = oracle::random_spd(6, rng);
    const auto b = oracle::random_vec(6, rng);
    const auto got = solve_estimate(from_mat(oracle::gauss_jordan_inverse(a)), Vector(b));
    EXPECT_LT(testutil::max_abs_diff(oracle::gaussian_solve(a, b), got), 1e-8);
  }
}

TEST(SquareMatrix, SymmetrizeAndCholesky) {
  SquareMatrix m(2, {2.0, 1.0, 0.0, 2.0});
  EXPECT_FALSE(m.is_symmetric());
  m.symmetrize();
  EXPECT_EQ(m, SquareMatrix(2, {2.0, 0.5, 0.5, 2.0}));
  EXPECT_TRUE(m.is_positive_definite());
  EXPECT_FALSE(SquareMatrix(2, {1.0, 2.0, 2.0, 1.0}).is_positive_definite());
}

TEST(Vector, DotAndNorm) {
  EXPECT_DOUBLE_EQ(dot(Vector{0.3, 0.4}, Vector{0.6, 0.8}), 0.5);
  EXPECT_DOUBLE_EQ((Vector{3.0, 4.0}).norm2(), 5.0);
  EXPECT_THROW(dot(Vector{1.0}, Vector{1.0, 2.0}), std::invalid_argument);
}
