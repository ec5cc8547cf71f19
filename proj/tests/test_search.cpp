#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace cactus_center;
using namespace cactus_center::testing;

TEST(Solve, PathFixture) {
  const CenterResult r = solve(fixture_c());
  EXPECT_EQ(r.point, GraphPoint::at_vertex(1));
  EXPECT_NEAR(r.objective, 1.0, 1e-9);
}

TEST(Solve, PendantFixture) {
  const Instance inst = fixture_d();
  const CenterResult r = solve(inst);
  ASSERT_FALSE(r.point.is_vertex());
  EXPECT_EQ(r.point.edge, 3);
  EXPECT_NEAR(r.point.t, 0.5, 1e-9);
  EXPECT_NEAR(r.objective, 1.5, 1e-9);
}

TEST(Solve, SquareFixture) { EXPECT_NEAR(solve(fixture_b()).objective, 1.0, 1e-9); }

TEST(Solve, InteriorLocationsAreHonored) {
  Instance inst{build_graph(2, {{0, 1, 4}}), {}};
  inst.points.push_back({1.0, 0.0, {{inst.graph.point_on_edge(0, 1.0), 1.0}}});
  inst.points.push_back({1.0, 0.0, {{inst.graph.point_on_edge(0, 3.0), 1.0}}});
  const CenterResult r = solve(inst);
  EXPECT_EQ(r.point.edge, 0);
  EXPECT_NEAR(r.point.t, 2.0, 1e-9);
  EXPECT_NEAR(r.objective, 1.0, 1e-9);
}

TEST(Solve, RejectsInvalidInstances) {
  Instance inst = fixture_c();
  inst.points[0].locations[0].prob = 0.4;
  try {
    solve(inst);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidInstance);
  }
}

TEST(BaseCase, GraftCollapsesTheCycleSide) {
  const Instance inst = fixture_d();
  const SolverContext ctx(inst);
  const CenterResult r = base_case(ctx, ctx.sk.edge_node(3));
  EXPECT_EQ(r.point.edge, 3);
  EXPECT_NEAR(r.point.t, 0.5, 1e-9);
  EXPECT_NEAR(r.objective, 1.5, 1e-9);
}

TEST(BaseCase, CycleCollapsesThePendant) {
  const Instance inst = fixture_d();
  const SolverContext ctx(inst);
  const CenterResult r = base_case(ctx, ctx.sk.edge_node(0));
  EXPECT_EQ(r.point, GraphPoint::at_vertex(0));
  EXPECT_NEAR(r.objective, 2.0, 1e-9);
}

TEST(BaseCase, HingeReturnsItsVertex) {
  const Instance inst = fixture_d();
  const SolverContext ctx(inst);
  const CenterResult r = base_case(ctx, ctx.sk.hinge_node(0));
  EXPECT_EQ(r.point, GraphPoint::at_vertex(0));
  EXPECT_NEAR(r.objective, 2.0, 1e-9);
  EXPECT_THROW(base_case(ctx, 17), Error);
}

TEST(BaseCase, BlockAnswersMatchTheirRegion) {
  // A base case solved on any block is exact for that block, so it can
  // never beat the global optimum and matches the oracle's best on the block.
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Instance inst = reduced(random_general(900 + seed));
    const SolverContext ctx(inst);
    const auto bp = oracle_breakpoints(inst);
    const double opt = brute_force_center(inst).objective;
    for (int u = 0; u < ctx.sk.node_count(); ++u) {
      if (!ctx.sk.node(u).is_block()) continue;
      const CenterResult r = base_case(ctx, u);
      ASSERT_GE(r.objective, opt - 1e-7 * (1 + opt));
      ASSERT_NEAR(max_expected_distance_naive(inst, r.point), r.objective, 1e-7 * (1 + r.objective));
      double best = edges_min(inst, bp, node_edges(ctx.sk, {u}));
      for (int v : ctx.sk.node(u).vertices)
        best = std::min(best, max_expected_distance_naive(inst, GraphPoint::at_vertex(v)));
      ASSERT_LE(rel_gap(r.objective, best), 1e-7) << "seed " << seed << " node " << u;
    }
  }
}

TEST(SearchProperties, MatchesOracle) {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    const Instance inst = random_general(2000 + seed);
    const CenterResult r = solve(inst);
    const double want = brute_force_center(inst).objective;
    ASSERT_LE(rel_gap(r.objective, want), 1e-7) << "seed " << seed;
    ASSERT_NEAR(max_expected_distance_naive(inst, r.point), r.objective, 1e-9 * (1 + r.objective));
  }
}

TEST(SearchProperties, LiveRegionHalves) {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    const Instance inst = random_general(seed, 120, 25, 6, 5);
    SearchTrace tr;
    solve(inst, &tr);
    const int T = tr.skeleton_nodes;
    ASSERT_LE(static_cast<int>(tr.steps.size()), static_cast<int>(std::ceil(std::log2(std::max(T, 1)))) + 1);
    for (std::size_t k = 0; k + 1 < tr.steps.size(); ++k)
      ASSERT_LE(tr.steps[k + 1].live_size, (tr.steps[k].live_size + 1) / 2) << "seed " << seed;
    ASSERT_GE(tr.final_node, 0);
  }
}

TEST(SearchProperties, Deterministic) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const CenterResult a = solve(random_general(seed)), b = solve(random_general(seed));
    ASSERT_EQ(a.point, b.point);
    ASSERT_EQ(a.objective, b.objective);
  }
}
