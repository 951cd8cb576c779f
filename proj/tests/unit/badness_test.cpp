#include "dlinucb/badness.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

using namespace dlinucb;

TEST(BadnessStats, HandEvaluatedExample) {
  const auto w = BadnessWindow::from_flags(4, 0, {1, 0, 1, 0});
  const auto s = badness_stats(w, 0.01);
  EXPECT_EQ(s.e_hat, 0.5);
  EXPECT_NEAR(s.d_t, 0.75864, 1e-4);
  EXPECT_NEAR(s.d_t, 0.7587135646925732, 1e-15);
  EXPECT_EQ(s.window_len, 4u);
}

TEST(BadnessStats, AllZeroFlags) {
  for (std::size_t n = 1; n <= 50; ++n) {
    const auto w = BadnessWindow::from_flags(50, 0, std::vector<std::uint8_t>(n, 0));
    EXPECT_EQ(badness_stats(w, 0.1).e_hat, 0.0);
  }
}

TEST(BadnessStats, ClosedFormCancellation) {
  const auto s = badness_stats(BadnessWindow::from_flags(1, 0, {1}), std::exp(-2.0));
  EXPECT_EQ(s.e_hat, 1.0);
  EXPECT_NEAR(s.d_t, 1.0, 1e-15);
}

TEST(BadnessStats, EmptyWindowReportsZero) {
  const auto s = badness_stats(BadnessWindow(200, 7), 0.1);
  EXPECT_EQ(s.e_hat, 0.0);
  EXPECT_EQ(s.d_t, 0.0);
  EXPECT_EQ(s.window_len, 0u);
}

TEST(BadnessStats, RejectsDelta2OutsideUnitInterval) {
  const BadnessWindow w(4, 0);
  EXPECT_THROW(badness_stats(w, 0.0), std::invalid_argument);
  EXPECT_THROW(badness_stats(w, 1.0), std::invalid_argument);
}

TEST(BadnessWindow, SlidesAtCapacity) {
  BadnessWindow w(3, 0);
  for (bool f : {true, true, false, false, false}) w.push(f);
  EXPECT_EQ(w.size(), 3u);
  EXPECT_EQ(w.ones(), 0u);
  EXPECT_EQ(w.flags(), (std::vector<std::uint8_t>{0, 0, 0}));
}

TEST(BadnessWindow, RatioIsExactAgainstRecount) {
  std::mt19937_64 rng(3);
  std::bernoulli_distribution coin(0.3);
  BadnessWindow w(17, 0);
  std::vector<std::uint8_t> all;
  for (int i = 0; i < 500; ++i) {
    const bool f = coin(rng);
    w.push(f);
    all.push_back(f);
    const std::size_t len = std::min<std::size_t>(all.size(), 17);
    std::size_t ones = 0;
    for (std::size_t k = all.size() - len; k < all.size(); ++k) ones += all[k];
    const auto s = badness_stats(w, 0.1);
    ASSERT_EQ(s.window_len, len);
    ASSERT_EQ(s.e_hat, static_cast<double>(ones) / static_cast<double>(len));
    ASSERT_EQ(s.d_t, std::sqrt(std::log(1.0 / 0.1) / (2.0 * static_cast<double>(len))));
  }
}

TEST(BadnessLcb, HandEvaluatedExample) {
  BadnessStats a{0.10, 0.05, 1};
  BadnessStats b{0.20, 0.01, 1};
  EXPECT_NEAR(badness_lcb(a, 200), -0.01509, 5e-6);
  EXPECT_NEAR(badness_lcb(b, 200), 0.17698, 5e-6);
}
