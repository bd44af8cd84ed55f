#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "edcp/energy.hpp"
#include "edcp/errors.hpp"
#include "oracles.hpp"

namespace edcp {
namespace {

TEST(DistanceMatrix, PythagoreanPair) {
  const Series s({0.0, 0.0, 3.0, 4.0}, 2);
  const auto d = distance_matrix(s);
  EXPECT_DOUBLE_EQ(d(0, 1), 5.0);
  EXPECT_DOUBLE_EQ(d(1, 0), 5.0);
  EXPECT_DOUBLE_EQ(d(0, 0), 0.0);
}

TEST(DistanceMatrix, OmegaPower) {
  const auto d = distance_matrix(Series::scalar({0.0, 4.0}), 0.5);
  EXPECT_DOUBLE_EQ(d(0, 1), 2.0);
}

TEST(DistanceMatrix, ConstantSeriesIsZero) {
  const auto d = distance_matrix(Series::scalar(std::vector<double>(7, 2.5)));
  for (double v : d.values()) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(d.pair_total(), 0.0);
  EXPECT_EQ(d.max_value(), 0.0);
}

TEST(DistanceMatrix, RejectsOmegaOutsideOpenInterval) {
  const auto s = Series::scalar({0.0, 1.0, 2.0});
  EXPECT_THROW(distance_matrix(s, 0.0), ParameterError);
  EXPECT_THROW(distance_matrix(s, 2.0), ParameterError);
  EXPECT_THROW(distance_matrix(s, std::numeric_limits<double>::quiet_NaN()), ParameterError);
}

TEST(DistanceMatrix, SymmetricZeroDiagonalTriangleInequality) {
  std::mt19937_64 rng(11);
  const auto s = testing::random_series(25, 3, rng);
  const auto d = distance_matrix(s);
  const std::size_t n = s.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    EXPECT_EQ(d(i, i), 0.0);
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      EXPECT_EQ(d(i, j), d(j, i));
      EXPECT_GE(d(i, j), 0.0);
      row += d(i, j);
      if (i < j) total += d(i, j);
      for (std::size_t l = 0; l < n; ++l) EXPECT_LE(d(i, l), d(i, j) + d(j, l) + 1e-12);
    }
    EXPECT_NEAR(d.row_sum(i), row, 1e-12 * row);
  }
  EXPECT_NEAR(d.pair_total(), total, 1e-12 * total);
}

TEST(SeriesInput, RejectsNonFinite) {
  EXPECT_THROW(Series::scalar({0.0, std::numeric_limits<double>::infinity()}), InputError);
  EXPECT_THROW(Series::scalar({std::numeric_limits<double>::quiet_NaN()}), InputError);
  EXPECT_THROW(Series({1.0, 2.0, 3.0}, 2), InputError);
}

TEST(SplitStatistics, TwoClusterExample) {
  const auto d = distance_matrix(Series::scalar({0, 1, 2, 10, 11, 12}));
  const auto st = split_statistics(d, 3);
  EXPECT_DOUBLE_EQ(st.u_xy, 10.0);
  EXPECT_DOUBLE_EQ(st.u_xx, 4.0 / 3.0);
  EXPECT_DOUBLE_EQ(st.u_yy, 4.0 / 3.0);
  EXPECT_NEAR(st.e_k, 52.0 / 3.0, 1e-12);
}

TEST(SplitStatistics, UnbalancedSplitsOfTwoClusterExample) {
  const auto d = distance_matrix(Series::scalar({0, 1, 2, 10, 11, 12}));
  const auto k2 = split_statistics(d, 2);
  EXPECT_NEAR(k2.u_xy, 33.0 / 4.0, 1e-12);
  EXPECT_NEAR(k2.u_xx, 1.0, 1e-12);
  EXPECT_NEAR(k2.u_yy, 31.0 / 6.0, 1e-12);
  EXPECT_NEAR(k2.e_k, 31.0 / 3.0, 1e-12);
  const auto k4 = split_statistics(d, 4);
  EXPECT_NEAR(k4.u_xx, 31.0 / 6.0, 1e-12);
  EXPECT_NEAR(k4.u_yy, 1.0, 1e-12);
  EXPECT_NEAR(k4.e_k, 31.0 / 3.0, 1e-12);
}

TEST(SplitStatistics, AlternatingExampleIsNegative) {
  const auto s = Series::scalar({0, 1, 0, 1});
  const auto st = split_statistics(distance_matrix(s), 2);
  const auto ref = testing::naive_split(s, 2);
  EXPECT_DOUBLE_EQ(st.u_xy, 0.5);
  EXPECT_DOUBLE_EQ(st.u_xx, 1.0);
  EXPECT_DOUBLE_EQ(st.u_yy, 1.0);
  EXPECT_DOUBLE_EQ(st.e_k, -1.0);
  EXPECT_DOUBLE_EQ(st.e_k, ref.e_k);
  EXPECT_GE(ref.v_energy, 0.0);
}

TEST(SplitStatistics, RejectsSplitsOutsideRange) {
  const auto d = distance_matrix(Series::scalar({0, 1, 2, 3, 4}));
  EXPECT_THROW(split_statistics(d, 1), SplitError);
  EXPECT_THROW(split_statistics(d, 4), SplitError);
  EXPECT_THROW(split_statistics(d, 0), SplitError);
  EXPECT_NO_THROW(split_statistics(d, 2));
  EXPECT_NO_THROW(split_statistics(d, 3));
}

TEST(ScanEnergy, MatchesTripleSumOracle) {
  std::mt19937_64 rng(2024);
  for (int rep = 0; rep < 40; ++rep) {
    const std::size_t dim = rep % 2 ? 3 : 1;
    const std::size_t n = 4 + rng() % 47;
    const auto s = testing::random_series(n, dim, rng);
    const double omega = rep % 3 == 0 ? 1.0 : 0.3 + 1.4 * (rep % 5) / 4.0;
    const auto d = distance_matrix(s, omega);
    std::vector<std::size_t> ks(n - 3);
    std::iota(ks.begin(), ks.end(), 2);
    const auto all = scan_energy(d, ks);
    ASSERT_EQ(all.size(), ks.size());
    for (const auto& st : all) {
      const auto ref = testing::naive_split(s, st.k, omega);
      EXPECT_LE(std::abs(st.u_xy - ref.u_xy), 1e-10 * ref.u_xy);
      EXPECT_LE(std::abs(st.u_xx - ref.u_xx), 1e-10 * ref.u_xx);
      EXPECT_LE(std::abs(st.u_yy - ref.u_yy), 1e-10 * ref.u_yy);
      EXPECT_LE(std::abs(st.e_k - ref.e_k), 1e-10 * std::max(std::abs(ref.e_k), ref.u_xy));
    }
  }
}

TEST(ScanEnergy, AgreesWithDirectSplitInAnyCandidateOrder) {
  std::mt19937_64 rng(5);
  const auto s = testing::random_series(30, 2, rng);
  const auto d = distance_matrix(s);
  const std::vector<std::size_t> ks{17, 3, 28, 9};
  const auto batch = scan_energy(d, ks);
  for (std::size_t i = 0; i < ks.size(); ++i) {
    EXPECT_EQ(batch[i].k, ks[i]);
    EXPECT_NEAR(batch[i].e_k, split_statistics(d, ks[i]).e_k, 1e-10);
  }
}

TEST(ScanEnergy, InvariantUnderReorderingWithinEachSide) {
  std::mt19937_64 rng(77);
  const auto s = testing::random_series(20, 1, rng);
  const std::size_t k = 8;
  std::vector<std::size_t> order(20);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.begin() + k, rng);
  std::shuffle(order.begin() + k, order.end(), rng);
  const auto a = split_statistics(distance_matrix(s), k);
  const auto b = split_statistics(distance_matrix(s.permuted(order)), k);
  EXPECT_NEAR(a.e_k, b.e_k, 1e-12 * a.u_xy);
  EXPECT_NEAR(a.u_xx, b.u_xx, 1e-12 * a.u_xx);
}

TEST(ScanEnergy, VStatisticFormIsNonnegative) {
  std::mt19937_64 rng(91);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t n = 4 + rng() % 20;
    const auto s = testing::random_series(n, 1 + rep % 3, rng);
    for (std::size_t k = 2; k + 2 <= n; ++k) {
      const auto ref = testing::naive_split(s, k);
      EXPECT_GE(ref.v_energy, -1e-9 * ref.u_xy);
    }
  }
}

TEST(StatisticsFromSums, ReproducesUStatistics) {
  const auto st = statistics_from_sums(6, 3, 90.0, 4.0, 4.0);
  EXPECT_DOUBLE_EQ(st.u_xy, 10.0);
  EXPECT_DOUBLE_EQ(st.u_xx, 4.0 / 3.0);
  EXPECT_DOUBLE_EQ(st.u_yy, 4.0 / 3.0);
}

}  // namespace
}  // namespace edcp
