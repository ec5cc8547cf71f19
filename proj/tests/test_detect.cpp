#include <gtest/gtest.h>

#include "support.hpp"

using namespace cactus_center;
using namespace cactus_center::testing;

namespace {

// Central bridge 0-1 with a triangle at each end and a pendant of length 2
// beyond each triangle; P1 and P2 sit at the two far tips.
Instance mirrored() {
  return {build_graph(8, {{0, 1, 1}, {0, 2, 1}, {2, 3, 1}, {3, 0, 1}, {2, 4, 2},
                          {1, 5, 1}, {5, 6, 1}, {6, 1, 1}, {5, 7, 2}}),
          {at_vertices({{4, 1.0}}), at_vertices({{7, 1.0}})}};
}

}  // namespace

TEST(ClassifyArticulation, SymmetricPathStopsAtMiddle) {
  const Instance inst = fixture_c();
  const SolverContext ctx(inst);
  const Direction d = classify_articulation(ctx, GraphPoint::at_vertex(1));
  EXPECT_EQ(d.verdict, Verdict::AtPoint);
  EXPECT_EQ(d.point, GraphPoint::at_vertex(1));
  EXPECT_DOUBLE_EQ(d.value, 1.0);
}

TEST(ClassifyArticulation, EvenSplitMedianIsTheCut) {
  const Instance inst{build_graph(3, {{0, 1, 1}, {1, 2, 3}}), {at_vertices({{0, 0.5}, {2, 0.5}})}};
  const SolverContext ctx(inst);
  EXPECT_EQ(classify_articulation(ctx, GraphPoint::at_vertex(1)).verdict, Verdict::AtPoint);
}

TEST(ClassifyArticulation, PointsTowardTheHeavySide) {
  const Instance inst{build_graph(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}}),
                      {at_vertices({{3, 0.7}, {0, 0.3}}), at_vertices({{0, 1.0}}, 0.1)}};
  const SolverContext ctx(inst);
  const Direction d = classify_articulation(ctx, GraphPoint::at_vertex(1));
  ASSERT_EQ(d.verdict, Verdict::InSplitSubtree);
  std::vector<int> label;
  detail::label_components(inst.graph, GraphPoint::at_vertex(1), label);
  EXPECT_EQ(d.split, label[3]);
}

TEST(ClassifyArticulation, RejectsNonCuts) {
  const Instance c = fixture_c();
  const SolverContext ctx(c);
  EXPECT_THROW(classify_articulation(ctx, GraphPoint::at_vertex(0)), Error);
  const Instance a = fixture_a();
  const SolverContext actx(a);
  EXPECT_THROW(classify_articulation(actx, a.graph.point_on_edge(0, 0.5)), Error);
}

TEST(HingeDetect, PendantFixture) {
  const Instance inst = fixture_d();
  const SolverContext ctx(inst);
  const int h = ctx.sk.hinge_node(0);
  const Direction d = hinge_detect(ctx, h);
  ASSERT_EQ(d.verdict, Verdict::InSplitSubtree);
  EXPECT_EQ(ctx.sk.node(h).neighbors[d.split], ctx.sk.edge_node(3));
  // The articulation entry point gives the same answer at a hinge.
  EXPECT_EQ(classify_articulation(ctx, GraphPoint::at_vertex(0)).split, d.split);
}

TEST(HingeDetect, RejectsBlockNodes) {
  const Instance inst = fixture_d();
  const SolverContext ctx(inst);
  try {
    hinge_detect(ctx, ctx.sk.edge_node(0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotAHingeNode);
  }
}

TEST(DistanceOracle, PendantFixture) {
  const Instance inst = fixture_d();
  const SolverContext ctx(inst);
  const int cyc = ctx.sk.edge_node(0);
  const DistanceOracle o = build_distance_oracle(ctx, cyc);
  ASSERT_EQ(o.hanging_count(), 1);
  EXPECT_EQ(o.hinge_vertex(0), 0);
  EXPECT_DOUBLE_EQ(o.distance(0, inst.graph.point_on_edge(3, 0.75)), 0.75);
  EXPECT_DOUBLE_EQ(o.block_distance(ctx.sk.local_index(cyc, 0), ctx.sk.local_index(cyc, 1)), 1.0);
  EXPECT_DOUBLE_EQ(o.vertex_distance(0, 1), 1.0);
}

TEST(DistanceOracle, GraftPathUsesCommonAncestor) {
  const Instance inst{build_graph(3, {{0, 1, 1}, {1, 2, 1}}), {at_vertices({{0, 1.0}})}};
  const SolverContext ctx(inst);
  const DistanceOracle o = build_distance_oracle(ctx, 0);
  const int a = ctx.sk.local_index(0, 1), b = ctx.sk.local_index(0, 2);
  EXPECT_DOUBLE_EQ(o.block_distance(a, b), 1.0);
  EXPECT_EQ(o.lca(a, b), o.lca(b, a));
}

TEST(BlockDetect, PendantFixture) {
  const Instance inst = fixture_d();
  const SolverContext ctx(inst);
  const int cyc = ctx.sk.edge_node(0);
  TauReport rep;
  const Direction d = block_detect(ctx, cyc, &rep);
  ASSERT_EQ(rep.tau.size(), 1u);
  EXPECT_EQ(rep.members[0], std::vector<int>{0});
  EXPECT_DOUBLE_EQ(rep.tau[0], 2.0);
  EXPECT_DOUBLE_EQ(rep.gamma, 2.0);
  ASSERT_EQ(d.verdict, Verdict::InSplitSubtree);
  EXPECT_EQ(h_subtree(ctx.sk, cyc).splits[d.split].nodes, std::vector<int>{ctx.sk.edge_node(3)});
}

TEST(BlockDetect, MirroredTausTie) {
  const Instance inst = mirrored();
  const SolverContext ctx(inst);
  const int bridge = ctx.sk.edge_node(0);
  ASSERT_EQ(ctx.sk.node(bridge).kind, NodeKind::Graft);
  TauReport rep;
  EXPECT_EQ(block_detect(ctx, bridge, &rep).verdict, Verdict::AtNode);
  ASSERT_EQ(rep.tau.size(), 2u);
  EXPECT_DOUBLE_EQ(rep.tau[0], rep.tau[1]);
}

TEST(BlockDetect, EverythingOnTheBlock) {
  const Instance inst{fixture_d().graph, {at_vertices({{1, 0.5}, {2, 0.5}}), at_vertices({{0, 1.0}})}};
  const SolverContext ctx(inst);
  TauReport rep;
  EXPECT_EQ(block_detect(ctx, ctx.sk.edge_node(0), &rep).verdict, Verdict::AtNode);
  EXPECT_TRUE(rep.members[0].empty());
}

TEST(BlockDetect, RejectsHingeNodes) {
  const Instance inst = fixture_d();
  const SolverContext ctx(inst);
  EXPECT_THROW(block_detect(ctx, ctx.sk.hinge_node(0)), Error);
}

TEST(DetectProperties, OracleMatchesDijkstra) {
  int checked = 0;
  for (std::uint64_t seed = 1; checked < 10000; ++seed) {
    const Instance inst = reduced(random_general(seed, 40, 8));
    const SolverContext ctx(inst);
    Rng rng(seed);
    for (int u = 0; u < ctx.sk.node_count(); ++u) {
      if (!ctx.sk.node(u).is_block()) continue;
      const DistanceOracle o = build_distance_oracle(ctx, u);
      for (int k = 0; k < o.hanging_count(); ++k)
        for (int q = 0; q < 20; ++q) {
          const GraphPoint x = random_point(rng, inst.graph);
          const double want = shortest_distance(inst.graph, GraphPoint::at_vertex(o.hinge_vertex(k)), x);
          ASSERT_NEAR(o.distance(k, x), want, 1e-9) << "seed " << seed << " node " << u;
          ++checked;
        }
    }
  }
}

TEST(DetectProperties, MembershipIsDisjoint) {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    const Instance inst = reduced(random_general(seed));
    const SolverContext ctx(inst);
    for (int u = 0; u < ctx.sk.node_count(); ++u) {
      if (!ctx.sk.node(u).is_block()) continue;
      const TauReport rep = tau_report(ctx, build_distance_oracle(ctx, u));
      std::vector<int> seen(inst.points.size(), 0);
      double gamma = -kInf;
      for (std::size_t k = 0; k < rep.members.size(); ++k) {
        for (int i : rep.members[k]) ASSERT_EQ(seen[i]++, 0) << "seed " << seed;
        gamma = std::max(gamma, rep.tau[k]);
      }
      ASSERT_EQ(gamma, rep.gamma);
    }
  }
}

TEST(DetectProperties, VerdictsKeepAnOptimum) {
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    const Instance inst = reduced(random_general(70000 + seed));
    const SolverContext ctx(inst);
    const SkeletonTree& sk = ctx.sk;
    const auto bp = oracle_breakpoints(inst);
    const double opt = brute_force_center(inst).objective;
    auto region_best = [&](const std::vector<int>& nodes) {
      double best = edges_min(inst, bp, node_edges(sk, nodes));
      for (int u : nodes)
        for (int v : sk.node(u).vertices)
          best = std::min(best, max_expected_distance_naive(inst, GraphPoint::at_vertex(v)));
      return best;
    };
    for (int u = 0; u < sk.node_count(); ++u) {
      const SkeletonNode& nd = sk.node(u);
      const Direction d = nd.is_block() ? block_detect(ctx, u) : hinge_detect(ctx, u);
      double best = kInf;
      if (d.verdict == Verdict::AtPoint) best = max_expected_distance_naive(inst, d.point);
      else if (d.verdict == Verdict::AtNode) best = region_best({u});
      else if (nd.is_block()) best = region_best(h_subtree(sk, u).splits[d.split].nodes);
      else best = region_best(subtree_nodes(sk, nd.neighbors[d.split], u));
      ASSERT_LE(rel_gap(best, opt), 1e-7) << "seed " << seed << " node " << u;
      if (!nd.is_block()) ASSERT_NE(d.verdict, Verdict::AtNode);
    }
  }
}
