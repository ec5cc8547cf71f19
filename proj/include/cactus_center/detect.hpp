#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "cactus_center/error.hpp"
#include "cactus_center/graph.hpp"
#include "cactus_center/model.hpp"
#include "cactus_center/skeleton.hpp"

namespace cactus_center {

enum class Verdict { AtPoint, AtNode, InSplitSubtree };

/// Where the center lies relative to a cut. `split` indexes the cut's
/// splits: components of G - x for an articulation point, neighbor blocks
/// for a hinge node, HSubtree::splits for a block node.
struct Direction {
  Verdict verdict = Verdict::AtNode;
  int split = -1;
  GraphPoint point;     // AtPoint only
  double value = kInf;  // AtPoint only: max_i Ed(P_i, point)
};

namespace detail {

// Medians of the dominant points decide: -1 when the center is the cut
// itself, otherwise the split all dominant medians agree on.
inline int dominant_direction(const Instance& inst, const std::vector<double>& eds,
                              const std::vector<std::vector<double>>& sums) {
  const double top = *std::max_element(eds.begin(), eds.end());
  int direction = -2;
  for (std::size_t i = 0; i < eds.size(); ++i) {
    if (eds[i] < top - kEps) continue;
    int dir = -1;
    // A weightless dominant point is flat, so the cut is already optimal.
    if (inst.points[i].weight > 0.0)
      for (std::size_t k = 0; k < sums[i].size(); ++k)
        if (sums[i][k] > 0.5 + kEps) dir = static_cast<int>(k);
    if (dir == -1 || (direction >= 0 && dir != direction)) return -1;
    direction = dir;
  }
  return direction < 0 ? -1 : direction;
}

// Component labels of G minus a vertex, or minus the interior of an edge.
inline int label_components(const CactusGraph& g, const GraphPoint& x, std::vector<int>& label) {
  label.assign(g.vertex_count(), -1);
  std::vector<int> starts;
  int cut_edge = -1;
  if (x.is_vertex()) {
    label[x.vertex] = -2;
    for (int e : g.incident(x.vertex)) starts.push_back(g.other_end(e, x.vertex));
  } else {
    cut_edge = x.edge;
    starts = {g.edge(x.edge).u, g.edge(x.edge).v};
  }
  int parts = 0;
  for (int s : starts) {
    if (label[s] != -1) continue;
    std::vector<int> stack{s};
    label[s] = parts;
    while (!stack.empty()) {
      const int a = stack.back();
      stack.pop_back();
      for (int e : g.incident(a)) {
        if (e == cut_edge) continue;
        const int b = g.other_end(e, a);
        if (label[b] != -1) continue;
        label[b] = parts;
        stack.push_back(b);
      }
    }
    ++parts;
  }
  return parts;
}

}  // namespace detail

/// Verdict at an articulation point: the point itself, or the component of
/// G - x holding the center. Hinge vertices are delegated to hinge_detect.
inline Direction hinge_detect(const SolverContext& ctx, int h);

inline Direction classify_articulation(const SolverContext& ctx, const GraphPoint& x) {
  const CactusGraph& g = ctx.graph();
  g.check_point(x);
  if (x.is_vertex() && ctx.sk.hinge_node(x.vertex) >= 0) return hinge_detect(ctx, ctx.sk.hinge_node(x.vertex));
  if (!x.is_vertex() && g.block_of(x.edge) >= 0 && g.is_cycle_block(g.block_of(x.edge)))
    throw Error(Errc::NotAnArticulation, "point inside a cycle edge");
  std::vector<int> label;
  const int parts = detail::label_components(g, x, label);
  if (parts < 2) throw Error(Errc::NotAnArticulation, "cut leaves the graph connected");
  std::vector<std::vector<double>> sums(ctx.n(), std::vector<double>(parts, 0.0));
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (label[v] < 0) continue;
    for (const auto& e : ctx.locs.at(v)) sums[e.point][label[v]] += e.prob;
  }
  const auto eds = expected_distances_all(ctx, x);
  const int dir = detail::dominant_direction(*ctx.inst, eds, sums);
  if (dir < 0) return {Verdict::AtPoint, -1, x, *std::max_element(eds.begin(), eds.end())};
  return {Verdict::InSplitSubtree, dir, {}};
}

/// Verdict at hinge node `h`: its vertex, or the neighbor block (index into
/// the node's neighbors) whose side holds the center.
inline Direction hinge_detect(const SolverContext& ctx, int h) {
  if (h < 0 || h >= ctx.sk.node_count() || ctx.sk.node(h).kind != NodeKind::Hinge)
    throw Error(Errc::NotAHingeNode, "node " + std::to_string(h));
  const SkeletonNode& hn = ctx.sk.node(h);
  const int parts = static_cast<int>(hn.neighbors.size());
  std::vector<std::vector<double>> sums(ctx.n(), std::vector<double>(parts, 0.0));
  for (int k = 0; k < parts; ++k)
    for (int node : subtree_nodes(ctx.sk, hn.neighbors[k], h))
      for (int v : ctx.sk.node(node).owned)
        for (const auto& e : ctx.locs.at(v)) sums[e.point][k] += e.prob;
  const GraphPoint x = GraphPoint::at_vertex(hn.hinge_vertex());
  const auto eds = expected_distances_all(ctx, x);
  const int dir = detail::dominant_direction(*ctx.inst, eds, sums);
  if (dir < 0) return {Verdict::AtPoint, -1, x, *std::max_element(eds.begin(), eds.end())};
  return {Verdict::InSplitSubtree, dir, {}};
}

/// Distances from the hinges of one block node to any point of the graph.
/// Each vertex is tagged with the hanging subgraph holding it (or -1 for the
/// block itself) and its distance to that subgraph's hinge; block-internal
/// distances come from arc positions (cycle) or a rooted tree with binary
/// lifting (graft).
class DistanceOracle {
 public:
  int block() const { return block_; }
  int hanging_count() const { return static_cast<int>(hinge_vertex_.size()); }
  int hinge_vertex(int k) const { return hinge_vertex_[k]; }
  int owner(int v) const { return owner_[v]; }

  double vertex_distance(int k, int v) const {
    const int o = owner_[v];
    if (o == k) return down_[v];
    const int target = o < 0 ? local_[v] : hinge_local_[o];
    return block_distance(hinge_local_[k], target) + (o < 0 ? 0.0 : down_[v]);
  }

  double distance(int k, const GraphPoint& x) const {
    if (x.is_vertex()) return vertex_distance(k, x.vertex);
    const Edge& e = g_->edge(x.edge);
    return std::min(vertex_distance(k, e.u) + x.t, vertex_distance(k, e.v) + e.length - x.t);
  }

  double block_distance(int a, int b) const {
    if (cycle_) {
      const double d = std::abs(position_[a] - position_[b]);
      return std::min(d, circumference_ - d);
    }
    return root_dist_[a] + root_dist_[b] - 2.0 * root_dist_[lca(a, b)];
  }

  int lca(int a, int b) const {
    if (depth_[a] < depth_[b]) std::swap(a, b);
    int diff = depth_[a] - depth_[b];
    for (int j = 0; diff; ++j, diff >>= 1)
      if (diff & 1) a = up_[j][a];
    if (a == b) return a;
    for (int j = static_cast<int>(up_.size()) - 1; j >= 0; --j)
      if (up_[j][a] != up_[j][b]) {
        a = up_[j][a];
        b = up_[j][b];
      }
    return up_[0][a];
  }

  friend DistanceOracle build_distance_oracle(const SolverContext& ctx, int u);

 private:
  const CactusGraph* g_ = nullptr;
  int block_ = -1;
  bool cycle_ = false;
  std::vector<int> hinge_vertex_, hinge_local_;
  std::vector<int> owner_, local_;
  std::vector<double> down_;
  std::vector<double> position_;
  double circumference_ = 0.0;
  std::vector<double> root_dist_;
  std::vector<int> depth_;
  std::vector<std::vector<int>> up_;
};

inline DistanceOracle build_distance_oracle(const SolverContext& ctx, int u) {
  const CactusGraph& g = ctx.graph();
  const SkeletonTree& sk = ctx.sk;
  if (u < 0 || u >= sk.node_count() || !sk.node(u).is_block())
    throw Error(Errc::NotABlockNode, "node " + std::to_string(u));
  const SkeletonNode& bn = sk.node(u);
  DistanceOracle o;
  o.g_ = &g;
  o.block_ = u;
  o.cycle_ = bn.kind == NodeKind::Cycle;
  const int nv = g.vertex_count();
  o.owner_.assign(nv, -1);
  o.local_.assign(nv, -1);
  o.down_.assign(nv, 0.0);
  for (std::size_t a = 0; a < bn.vertices.size(); ++a) o.local_[bn.vertices[a]] = static_cast<int>(a);

  for (std::size_t k = 0; k < bn.neighbors.size(); ++k) {
    const int h = bn.neighbors[k];
    const int hv = sk.node(h).hinge_vertex();
    const int tag = static_cast<int>(k);
    o.hinge_vertex_.push_back(hv);
    o.hinge_local_.push_back(bn.neighbor_local[k]);
    skeleton_walk(g, sk, h, u, GraphPoint::at_vertex(hv), 0.0, o.down_, [&](int node) {
      for (int v : sk.node(node).owned)
        if (v != hv) o.owner_[v] = tag;
    });
  }
  // Vertices of the block itself sit at distance 0 from themselves.
  for (int v : bn.vertices) o.down_[v] = 0.0;

  const int size = static_cast<int>(bn.vertices.size());
  if (o.cycle_) {
    o.position_.assign(bn.position.begin(), bn.position.end());
    o.circumference_ = bn.circumference;
    return o;
  }
  o.root_dist_.assign(size, 0.0);
  o.depth_.assign(size, 0);
  int levels = 1;
  while ((1 << levels) < size) ++levels;
  o.up_.assign(levels, std::vector<int>(size, 0));
  std::vector<int> stack{0};
  std::vector<char> seen(size, 0);
  seen[0] = 1;
  while (!stack.empty()) {
    const int a = stack.back();
    stack.pop_back();
    for (const LocalArc& arc : bn.arcs(a)) {
      if (seen[arc.to]) continue;
      seen[arc.to] = 1;
      o.up_[0][arc.to] = a;
      o.depth_[arc.to] = o.depth_[a] + 1;
      o.root_dist_[arc.to] = o.root_dist_[a] + arc.length;
      stack.push_back(arc.to);
    }
  }
  for (int j = 1; j < levels; ++j)
    for (int a = 0; a < size; ++a) o.up_[j][a] = o.up_[j - 1][o.up_[j - 1][a]];
  return o;
}

/// Per hanging subgraph G_k of a block: its hinge, the points whose mass
/// inside G_k exceeds one half, and tau_k = max over those points of
/// Ed(P_i, hinge).
struct TauReport {
  std::vector<int> hinge_vertex;
  std::vector<int> hinge_node;
  std::vector<std::vector<int>> members;
  std::vector<double> tau;  // -inf when members is empty
  double gamma = -kInf;
};

inline TauReport tau_report(const SolverContext& ctx, const DistanceOracle& oracle) {
  const Instance& inst = *ctx.inst;
  const SkeletonNode& bn = ctx.sk.node(oracle.block());
  const int hanging = oracle.hanging_count();
  TauReport rep;
  rep.hinge_node.assign(bn.neighbors.begin(), bn.neighbors.end());
  rep.members.resize(hanging);
  rep.tau.assign(hanging, -kInf);
  for (int k = 0; k < hanging; ++k) rep.hinge_vertex.push_back(oracle.hinge_vertex(k));

  for (int i = 0; i < ctx.n(); ++i) {
    const UncertainPoint& p = inst.points[i];
    std::vector<double> mass(hanging, 0.0);
    for (const auto& l : p.locations) {
      const int k = oracle.owner(l.position.vertex);
      if (k >= 0) mass[k] += l.prob;
    }
    int home = -1;
    for (int k = 0; k < hanging; ++k)
      if (mass[k] > 0.5 + kEps) home = k;
    if (home < 0) continue;
    rep.members[home].push_back(i);
    double acc = 0.0;
    for (const auto& l : p.locations) acc += l.prob * oracle.vertex_distance(home, l.position.vertex);
    rep.tau[home] = std::max(rep.tau[home], p.constant + p.weight * acc);
  }
  for (double t : rep.tau) rep.gamma = std::max(rep.gamma, t);
  return rep;
}

/// Verdict at block node `u`: the block itself (AtNode), one of its hinge
/// vertices (AtPoint), or a split subtree of its H-subtree.
inline Direction block_detect(const SolverContext& ctx, int u, TauReport* report = nullptr) {
  const HSubtree hs = h_subtree(ctx.sk, u);
  const DistanceOracle oracle = build_distance_oracle(ctx, u);
  TauReport rep = tau_report(ctx, oracle);
  int attaining = 0, r = -1;
  if (rep.gamma > -kInf)
    for (std::size_t k = 0; k < rep.tau.size(); ++k)
      if (rep.tau[k] >= rep.gamma - kEps) {
        ++attaining;
        r = static_cast<int>(k);
      }
  if (report) *report = rep;
  if (attaining != 1) return {Verdict::AtNode, -1, {}};

  const int h = rep.hinge_node[r];
  const Direction d = hinge_detect(ctx, h);
  if (d.verdict == Verdict::AtPoint) return d;
  const int toward = ctx.sk.node(h).neighbors[d.split];
  if (toward == u) return {Verdict::AtNode, -1, {}};
  for (std::size_t s = 0; s < hs.splits.size(); ++s)
    if (hs.splits[s].hinge == h && hs.splits[s].root == toward)
      return {Verdict::InSplitSubtree, static_cast<int>(s), {}};
  throw Error(Errc::InternalInconsistency, "hinge verdict has no matching split");
}

}  // namespace cactus_center
