#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cactus_center/cycle_solver.hpp"
#include "cactus_center/detect.hpp"
#include "cactus_center/error.hpp"
#include "cactus_center/model.hpp"
#include "cactus_center/reduction.hpp"
#include "cactus_center/skeleton.hpp"
#include "cactus_center/tree_solver.hpp"

namespace cactus_center {

struct SearchStep {
  int live_size = 0;
  int centroid = -1;
  Direction verdict;
};

struct SearchTrace {
  std::vector<SearchStep> steps;
  int final_node = -1;
  int skeleton_nodes = 0;
  int reduced_vertices = 0;
  int reduced_edges = 0;
};

namespace detail {

inline CenterResult evaluate_at(const SolverContext& ctx, const GraphPoint& x) {
  const auto eds = expected_distances_all(ctx, x);
  return {x, *std::max_element(eds.begin(), eds.end())};
}

// External occupied vertices hanging off block `u` at its k-th hinge, with
// their distances to that hinge.
template <class Fn>
void for_each_external(const SolverContext& ctx, int u, Fn&& fn) {
  const SkeletonNode& bn = ctx.sk.node(u);
  std::vector<double> dist(ctx.graph().vertex_count(), kInf);
  for (std::size_t k = 0; k < bn.neighbors.size(); ++k) {
    const int h = bn.neighbors[k];
    const int hv = ctx.sk.node(h).hinge_vertex();
    skeleton_walk(ctx.graph(), ctx.sk, h, u, GraphPoint::at_vertex(hv), 0.0, dist, [&](int node) {
      for (int v : ctx.sk.node(node).owned)
        if (v != hv && !ctx.locs.empty_at(v)) fn(static_cast<int>(k), v, dist[v]);
    });
  }
}

inline CenterResult graft_base_case(const SolverContext& ctx, int u) {
  const CactusGraph& g = ctx.graph();
  const SkeletonNode& bn = ctx.sk.node(u);
  const int size = static_cast<int>(bn.vertices.size());
  std::vector<Edge> edges;
  std::vector<int> graph_edge;
  for (int a = 0; a < size; ++a)
    for (const LocalArc& arc : bn.arcs(a)) {
      if (arc.to < a) continue;
      const Edge& ed = g.edge(arc.edge);
      const int lu = ed.u == bn.vertices[a] ? a : arc.to;
      edges.push_back({lu, lu == a ? arc.to : a, ed.length});
      graph_edge.push_back(arc.edge);
    }
  Instance tree;
  tree.graph = build_graph(size, edges);
  for (const auto& p : ctx.inst->points) tree.points.push_back({p.weight, p.constant, {}});
  for (int a = 0; a < size; ++a)
    for (const auto& e : ctx.locs.at(bn.vertices[a]))
      tree.points[e.point].locations.push_back({GraphPoint::at_vertex(a), e.prob});
  // The center is on this block, so mass beyond a hinge acts as if it sat
  // on the hinge, with the detour added to the constant.
  for_each_external(ctx, u, [&](int k, int v, double d) {
    for (const auto& e : ctx.locs.at(v)) {
      UncertainPoint& tp = tree.points[e.point];
      tp.locations.push_back({GraphPoint::at_vertex(bn.neighbor_local[k]), e.prob});
      tp.constant += tp.weight * e.prob * d;
    }
  });
  const CenterResult r = solve_tree(tree);
  const GraphPoint x = r.point.is_vertex() ? GraphPoint::at_vertex(bn.vertices[r.point.vertex])
                                           : g.point_on_edge(graph_edge[r.point.edge], r.point.t);
  return evaluate_at(ctx, x);
}

inline CenterResult cycle_base_case(const SolverContext& ctx, int u) {
  const SkeletonNode& bn = ctx.sk.node(u);
  CycleProblem prob;
  for (int e : bn.edges) prob.edge_length.push_back(ctx.graph().edge(e).length);
  for (const auto& p : ctx.inst->points) prob.points.push_back({p.weight, p.constant, {}});
  for (std::size_t k = 0; k < bn.vertices.size(); ++k)
    for (const auto& e : ctx.locs.at(bn.vertices[k]))
      prob.points[e.point].locations.push_back({static_cast<int>(k), e.prob});
  // Locations beyond a hinge collapse onto it; the detour becomes a constant.
  for_each_external(ctx, u, [&](int k, int v, double d) {
    for (const auto& e : ctx.locs.at(v)) {
      CyclePoint& cp = prob.points[e.point];
      cp.locations.push_back({bn.neighbor_local[k], e.prob});
      cp.constant += cp.weight * e.prob * d;
    }
  });
  const CycleSolution sol = solve_cycle(prob);
  return evaluate_at(ctx, cycle_solution_point(ctx.graph(), bn.vertices, bn.edges, sol));
}

}  // namespace detail

/// Exact center restricted to node `u`, assuming the center lies on it.
inline CenterResult base_case(const SolverContext& ctx, int u) {
  if (u < 0 || u >= ctx.sk.node_count()) throw Error(Errc::IndexOutOfRange, "node " + std::to_string(u));
  const SkeletonNode& nd = ctx.sk.node(u);
  switch (nd.kind) {
    case NodeKind::Hinge:
      return detail::evaluate_at(ctx, GraphPoint::at_vertex(nd.hinge_vertex()));
    case NodeKind::Graft:
      return detail::graft_base_case(ctx, u);
    case NodeKind::Cycle:
      return detail::cycle_base_case(ctx, u);
  }
  throw Error(Errc::InternalInconsistency, "unknown node kind");
}

/// Centroid search over the skeleton of a vertex-constrained instance.
inline CenterResult search_center(const SolverContext& ctx, SearchTrace* trace = nullptr) {
  const SkeletonTree& sk = ctx.sk;
  std::vector<int> live(sk.node_count());
  for (int u = 0; u < sk.node_count(); ++u) live[u] = u;
  std::vector<char> in(sk.node_count(), 1);
  if (trace) trace->skeleton_nodes = sk.node_count();

  while (true) {
    if (live.size() == 1) {
      if (trace) trace->final_node = live[0];
      return base_case(ctx, live[0]);
    }
    const int c = centroid(sk, live);
    const SkeletonNode& cn = sk.node(c);
    Direction d;
    std::vector<int> region;
    if (cn.is_block()) {
      d = block_detect(ctx, c);
      if (d.verdict == Verdict::InSplitSubtree) region = h_subtree(sk, c).splits[d.split].nodes;
    } else {
      d = hinge_detect(ctx, c);
      if (d.verdict == Verdict::InSplitSubtree) region = subtree_nodes(sk, cn.neighbors[d.split], c);
    }
    if (trace) trace->steps.push_back({static_cast<int>(live.size()), c, d});
    if (d.verdict == Verdict::AtPoint) {
      if (trace) trace->final_node = c;
      return {d.point, d.value};
    }
    if (d.verdict == Verdict::AtNode) {
      if (trace) trace->final_node = c;
      return base_case(ctx, c);
    }
    std::vector<int> next;
    for (int v : region)
      if (in[v]) next.push_back(v);
    if (next.empty()) throw Error(Errc::InternalInconsistency, "verdict leaves the live subtree");
    std::fill(in.begin(), in.end(), 0);
    for (int v : next) in[v] = 1;
    std::sort(next.begin(), next.end());
    live = std::move(next);
  }
}

/// One-center of a general instance: reduce, search, map back, and verify
/// the objective with an independent evaluation on the original graph.
inline CenterResult solve(const Instance& inst, SearchTrace* trace = nullptr) {
  const ReducedInstance red = to_vertex_constrained(inst);
  const SolverContext ctx(red.instance);
  if (trace) {
    *trace = {};
    trace->reduced_vertices = red.instance.graph.vertex_count();
    trace->reduced_edges = red.instance.graph.edge_count();
  }
  const CenterResult r = search_center(ctx, trace);
  const GraphPoint x = map_back(red, inst.graph, r.point);
  const double objective = max_expected_distance_naive(inst, x);
  if (std::abs(objective - r.objective) > 1e-7 * (1.0 + std::abs(objective)))
    throw Error(Errc::InternalInconsistency, "objective changed when mapped back: " + std::to_string(r.objective) +
                                                 " vs " + std::to_string(objective));
  return {x, objective};
}

}  // namespace cactus_center
