#include <gtest/gtest.h>

#include "support.hpp"

using namespace cactus_center;
using namespace cactus_center::testing;

namespace {

CycleProblem unit_cycle(int size, std::vector<CyclePoint> points) {
  return {std::vector<double>(size, 1.0), std::move(points)};
}

// Graph point at clockwise arc position `pos` on the single cycle of `inst`.
GraphPoint at_position(const Instance& inst, double pos) {
  const CactusGraph& g = inst.graph;
  const Block b = g.block(0);
  double start = 0.0;
  for (std::size_t k = 0; k < b.edges.size(); ++k) {
    const Edge& e = g.edge(b.edges[k]);
    if (pos <= start + e.length || k + 1 == b.edges.size()) {
      const double off = std::clamp(pos - start, 0.0, e.length);
      return g.point_on_edge(b.edges[k], e.u == b.vertices[k] ? off : e.length - off);
    }
    start += e.length;
  }
  return GraphPoint::at_vertex(b.vertices[0]);
}

}  // namespace

TEST(Augment, TriangleGainsThreeAntipodes) {
  const AugmentedCycle ac = augment_cycle({1, 1, 1});
  EXPECT_EQ(ac.size(), 6);
  EXPECT_DOUBLE_EQ(ac.circumference, 3.0);
  for (int s = 0; s < ac.size(); ++s) EXPECT_NEAR(ac.coord(ac.antipode[s]) - ac.x[s], 1.5, 1e-9);
}

TEST(Augment, SquareAntipodesAreVertices) {
  const AugmentedCycle ac = augment_cycle({1, 1, 1, 1});
  EXPECT_EQ(ac.size(), 4);
  for (int s = 0; s < 4; ++s) EXPECT_EQ(ac.antipode[s], s + 2);
}

TEST(Augment, TwoCycle) {
  const AugmentedCycle ac = augment_cycle({1, 1});
  EXPECT_EQ(ac.size(), 2);
  EXPECT_EQ(ac.antipode[0], 1);
  EXPECT_THROW(augment_cycle({1}), Error);
}

TEST(Augment, Invariants) {
  Rng rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> len(rng.between(2, 30));
    for (double& l : len) l = rng.below(3) == 0 ? 1.0 : rng.uniform(0.1, 3.0);
    const AugmentedCycle ac = augment_cycle(len);
    const int N = ac.size();
    ASSERT_LE(N, 2 * static_cast<int>(len.size()));
    EXPECT_EQ(ac.x[0], 0.0);
    for (int s = 0; s + 1 < N; ++s) ASSERT_LT(ac.x[s], ac.x[s + 1]);
    for (int s = 0; s < N; ++s) {
      ASSERT_GT(ac.antipode[s], s);
      ASSERT_LT(ac.antipode[s], s + N);
      ASSERT_NEAR(ac.coord(ac.antipode[s]) - ac.x[s], 0.5 * ac.circumference, 1e-9);
      if (s > 0) ASSERT_GE(ac.antipode[s], ac.antipode[s - 1]);
    }
  }
}

TEST(Coefficients, TrianglePairStartsFlat) {
  const CycleProblem prob = unit_cycle(3, {{1.0, 0.0, {{0, 0.5}, {1, 0.5}}}});
  const AugmentedCycle ac = augment_cycle(prob.edge_length);
  const CoefficientState st(ac, prob);
  EXPECT_DOUBLE_EQ(st.F(0), 0.5);
  EXPECT_DOUBLE_EQ(st.line(0).slope, 0.0);
  EXPECT_DOUBLE_EQ(st.line(0).at(0.0), 0.5);
}

TEST(Coefficients, LocationAtStartCountsCounterclockwise) {
  const CycleProblem prob = unit_cycle(4, {{1.0, 0.0, {{0, 1.0}}}});
  const AugmentedCycle ac = augment_cycle(prob.edge_length);
  const CoefficientState st(ac, prob);
  EXPECT_DOUBLE_EQ(st.F(0), 0.0);
  EXPECT_DOUBLE_EQ(st.line(0).slope, 1.0);
  EXPECT_DOUBLE_EQ(st.line(0).at(0.5), 0.5);
}

TEST(Coefficients, ZeroWeightIsFlat) {
  const CycleProblem prob = unit_cycle(3, {{0.0, 2.0, {{2, 1.0}}}});
  const AugmentedCycle ac = augment_cycle(prob.edge_length);
  const CoefficientState st(ac, prob);
  EXPECT_DOUBLE_EQ(st.line(0).slope, 0.0);
  EXPECT_DOUBLE_EQ(st.line(0).intercept, 2.0);
}

TEST(Coefficients, AdvanceTouchesOnlyAffectedPoints) {
  // Square: advancing to interval 1 touches u_1, its antipode u_3 and u_5 = u_1.
  const CycleProblem prob = unit_cycle(4, {{1.0, 0.0, {{0, 1.0}}}, {1.0, 0.0, {{1, 1.0}}}, {1.0, 0.0, {{3, 1.0}}}});
  const AugmentedCycle ac = augment_cycle(prob.edge_length);
  CoefficientState st(ac, prob);
  const Line before = st.line(0);
  st.advance();
  EXPECT_EQ(st.turned(), (std::vector<int>{1, 2}));
  EXPECT_EQ(st.line(0).slope, before.slope);
  EXPECT_EQ(st.line(0).intercept, before.intercept);
}

TEST(Coefficients, TrianglePairSteppingPastV1) {
  const CycleProblem prob = unit_cycle(3, {{1.0, 0.0, {{0, 0.5}, {1, 0.5}}}});
  const AugmentedCycle ac = augment_cycle(prob.edge_length);
  CoefficientState st(ac, prob);
  const int v1 = ac.aug_of_vertex[1];
  while (st.interval() < v1) st.advance();
  EXPECT_DOUBLE_EQ(st.F(0), 0.0);
  EXPECT_DOUBLE_EQ(st.line(0).slope, 1.0);
}

TEST(CycleProperties, LinesMatchNaiveAndSweepCloses) {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    const Instance inst = random_cycle(seed, 30);
    const CycleProblem prob = cycle_problem_from_instance(inst);
    const AugmentedCycle ac = augment_cycle(prob.edge_length);
    CoefficientState st(ac, prob);
    const CoefficientState start = st;
    const int N = ac.size(), n = static_cast<int>(prob.points.size());
    for (int s = 0; s < N; ++s) {
      if (s > 0) st.advance();
      for (double x : {ac.coord(s), ac.coord(s + 1)}) {
        const auto naive = expected_distances_naive(inst, at_position(inst, std::fmod(x, ac.circumference)));
        for (int i = 0; i < n; ++i) {
          ASSERT_GE(st.F(i), -1e-12);
          ASSERT_LE(st.F(i), 1 + 1e-12);
          ASSERT_NEAR(st.line(i).at(x), naive[i], 1e-7) << "seed " << seed << " interval " << s;
        }
      }
    }
    st.advance();
    for (int i = 0; i < n; ++i) {
      ASSERT_NEAR(st.F(i), start.F(i), 1e-9);
      ASSERT_NEAR(st.line(i).slope, start.line(i).slope, 1e-9);
      ASSERT_NEAR(st.line(i).at(0.3 + ac.circumference), start.line(i).at(0.3), 1e-9);
    }
  }
}

TEST(SolveCycle, SquareAntipodalPairIsFlat) {
  const Instance b = fixture_b();
  const CenterResult r = solve_cycle(b);
  EXPECT_NEAR(r.objective, 1.0, 1e-9);
  EXPECT_EQ(r.point, GraphPoint::at_vertex(0));
}

TEST(SolveCycle, TrianglePair) {
  const CycleSolution sol = solve_cycle(unit_cycle(3, {{1.0, 0.0, {{0, 0.5}, {1, 0.5}}}}));
  EXPECT_NEAR(sol.objective, 0.5, 1e-9);
  EXPECT_NEAR(sol.position, 0.0, 1e-9);
}

TEST(SolveCycle, OppositePointsOnSquare) {
  const CycleSolution sol = solve_cycle(unit_cycle(4, {{1.0, 0.0, {{0, 1.0}}}, {1.0, 0.0, {{2, 1.0}}}}));
  EXPECT_NEAR(sol.objective, 1.0, 1e-9);
  EXPECT_NEAR(sol.position, 1.0, 1e-9);
}

TEST(SolveCycle, WeightedPairOnEdge) {
  // d(v0, x) = t and d(v1, x) = 1 - t near edge 0, with weights 2 and 1.
  const CycleSolution sol = solve_cycle({{1, 3, 3}, {{2.0, 0.0, {{0, 1.0}}}, {1.0, 0.0, {{1, 1.0}}}}});
  EXPECT_NEAR(sol.position, 1.0 / 3.0, 1e-9);
  EXPECT_NEAR(sol.objective, 2.0 / 3.0, 1e-9);
  EXPECT_EQ(sol.edge, 0);
}

TEST(SolveCycle, RejectsWrongShapes) {
  try {
    solve_cycle(fixture_c());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotACycle);
  }
  Instance inst = fixture_b();
  inst.points[0].locations = {{inst.graph.point_on_edge(0, 0.5), 1.0}};
  try {
    solve_cycle(inst);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotVertexConstrained);
  }
}

TEST(CycleProperties, MatchesOracle) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const Instance inst = random_cycle(seed);
    const CenterResult r = solve_cycle(inst);
    const double want = brute_force_center(inst).objective;
    ASSERT_LE(rel_gap(r.objective, want), 1e-7) << "seed " << seed;
    ASSERT_NEAR(max_expected_distance_naive(inst, r.point), r.objective, 1e-7 * (1 + r.objective));
  }
}
