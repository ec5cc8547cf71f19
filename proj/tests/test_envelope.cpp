#include <gtest/gtest.h>

#include "support.hpp"

using namespace cactus_center;
using namespace cactus_center::testing;

namespace {

double max_at(const std::vector<Line>& lines, double x) {
  double best = -kInf;
  for (const Line& l : lines) best = std::max(best, l.at(x));
  return best;
}

// Lowest max over [a, b] by checking the ends and every pairwise crossing.
double brute_min(const std::vector<Line>& lines, double a, double b) {
  double best = std::min(max_at(lines, a), max_at(lines, b));
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      if (lines[i].slope == lines[j].slope) continue;
      const double x = (lines[j].intercept - lines[i].intercept) / (lines[i].slope - lines[j].slope);
      if (x > a && x < b) best = std::min(best, max_at(lines, x));
    }
  return best;
}

std::vector<Line> random_lines(Rng& rng, int count) {
  std::vector<Line> out;
  for (int k = 0; k < count; ++k) {
    // Some repeated slopes so ties get exercised.
    const double slope = rng.below(4) == 0 ? static_cast<double>(rng.between(-2, 2)) : rng.uniform(-5, 5);
    out.push_back({slope, rng.uniform(-10, 10)});
  }
  return out;
}

}  // namespace

TEST(Envelope, TwoCrossingLines) {
  const std::vector<Line> lines{{-1, 2}, {1, 0}};
  const EnvelopeMin m = min_of_upper_envelope(lines, 0, 5);
  EXPECT_DOUBLE_EQ(m.x, 1.0);
  EXPECT_DOUBLE_EQ(m.value, 1.0);
}

TEST(Envelope, ClampedToRange) {
  const std::vector<Line> down{{-1, 0}};
  EXPECT_DOUBLE_EQ(min_of_upper_envelope(down, 0, 3).x, 3.0);
  const std::vector<Line> up{{2, 1}};
  const EnvelopeMin m = min_of_upper_envelope(up, -1, 3);
  EXPECT_DOUBLE_EQ(m.x, -1.0);
  EXPECT_DOUBLE_EQ(m.value, -1.0);
}

TEST(Envelope, FlatBottomTakesLeftmost) {
  const std::vector<Line> lines{{-1, 0}, {0, -2}, {1, -6}};
  const EnvelopeMin m = min_of_upper_envelope(lines, 0, 10);
  EXPECT_DOUBLE_EQ(m.x, 2.0);
  EXPECT_DOUBLE_EQ(m.value, -2.0);
}

TEST(Envelope, EqualSlopesKeepTheHigher) {
  const UpperHull h({{1, 0}, {1, 3}, {1, -2}});
  EXPECT_EQ(h.size(), 1u);
  EXPECT_DOUBLE_EQ(h.eval(2), 5.0);
}

TEST(EnvelopeProperties, MatchesPairwiseScan) {
  Rng rng(1);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto lines = random_lines(rng, rng.between(1, 12));
    const double a = rng.uniform(-5, 5), b = a + rng.uniform(0, 6);
    const EnvelopeMin m = min_of_upper_envelope(lines, a, b);
    const double want = brute_min(lines, a, b);
    ASSERT_NEAR(m.value, want, 1e-9 * (1 + std::abs(want))) << "trial " << trial;
    ASSERT_NEAR(m.value, max_at(lines, m.x), 1e-9 * (1 + std::abs(want)));
    ASSERT_GE(m.x, a);
    ASSERT_LE(m.x, b);
  }
}

TEST(EnvelopeProperties, OfflineMatchesActiveSet) {
  Rng rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    const int intervals = rng.between(1, 40);
    const int count = rng.between(1, 15);
    OfflineEnvelope env(intervals);
    std::vector<Line> lines;
    std::vector<std::pair<int, int>> span;
    for (int k = 0; k < count; ++k) {
      const int first = rng.below(intervals), last = rng.between(first, intervals - 1);
      lines.push_back(random_lines(rng, 1)[0]);
      span.push_back({first, last});
      env.add(lines.back(), first, last);
    }
    env.build();
    for (int s = 0; s < intervals; ++s) {
      std::vector<Line> active;
      for (int k = 0; k < count; ++k)
        if (span[k].first <= s && s <= span[k].second) active.push_back(lines[k]);
      if (active.empty()) continue;
      const double a = rng.uniform(-3, 3), b = a + rng.uniform(0, 4);
      const EnvelopeMin m = env.minimize(s, a, b);
      const double want = brute_min(active, a, b);
      ASSERT_NEAR(m.value, want, 1e-9 * (1 + std::abs(want))) << "trial " << trial << " interval " << s;
      ASSERT_NEAR(max_at(active, m.x), want, 1e-9 * (1 + std::abs(want)));
    }
  }
}
