#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "cactus_center/error.hpp"
#include "cactus_center/graph.hpp"
#include "cactus_center/skeleton.hpp"

namespace cactus_center {

struct Location {
  GraphPoint position;
  double prob = 0.0;
};

/// Discrete distribution over locations, with weight w and additive constant c:
/// Ed(P, x) = c + w * sum_j f_j * d(p_j, x).
struct UncertainPoint {
  double weight = 1.0;
  double constant = 0.0;
  std::vector<Location> locations;
};

struct Instance {
  CactusGraph graph;
  std::vector<UncertainPoint> points;
};

struct CenterResult {
  GraphPoint point;
  double objective = 0.0;
};

struct ValidationReport {
  bool valid = true;
  std::vector<double> prob_deviation;  // |sum_j f_ij - 1| per point
  std::vector<std::string> issues;
};

inline ValidationReport validate_instance(const Instance& inst, double tol = kEps) {
  ValidationReport rep;
  auto fail = [&](std::string msg) {
    rep.valid = false;
    rep.issues.push_back(std::move(msg));
  };
  if (inst.points.empty()) fail("instance has no uncertain points");
  const CactusGraph& g = inst.graph;
  // Offset of the previous location seen on each edge, for the current point.
  std::vector<double> last_on_edge(g.edge_count(), -kInf);
  std::vector<int> touched;
  for (std::size_t i = 0; i < inst.points.size(); ++i) {
    const UncertainPoint& p = inst.points[i];
    const std::string tag = "point " + std::to_string(i);
    if (!(p.weight >= 0.0) || !std::isfinite(p.weight)) fail(tag + ": weight must be finite and >= 0");
    if (!std::isfinite(p.constant)) fail(tag + ": constant must be finite");
    if (p.locations.empty()) fail(tag + ": no locations");
    double sum = 0.0;
    for (std::size_t j = 0; j < p.locations.size(); ++j) {
      const Location& loc = p.locations[j];
      if (!(loc.prob >= 0.0) || !std::isfinite(loc.prob))
        fail(tag + " location " + std::to_string(j) + ": negative probability");
      sum += loc.prob;
      if (!g.valid_point(loc.position)) {
        fail(tag + " location " + std::to_string(j) + ": off-graph");
        continue;
      }
      if (!loc.position.is_vertex()) {
        double& last = last_on_edge[loc.position.edge];
        if (last == -kInf) touched.push_back(loc.position.edge);
        else if (loc.position.t < last) fail(tag + " location " + std::to_string(j) + ": unsorted on edge");
        last = loc.position.t;
      }
    }
    for (int e : touched) last_on_edge[e] = -kInf;
    touched.clear();
    const double dev = std::abs(sum - 1.0);
    rep.prob_deviation.push_back(dev);
    if (dev > tol) fail(tag + ": probabilities sum to " + std::to_string(sum));
  }
  return rep;
}

inline void require_valid(const Instance& inst) {
  const auto rep = validate_instance(inst);
  if (!rep.valid) throw Error(Errc::InvalidInstance, rep.issues.front());
}

inline bool is_vertex_constrained(const Instance& inst) {
  for (const auto& p : inst.points)
    for (const auto& loc : p.locations)
      if (!loc.position.is_vertex()) return false;
  return true;
}

/// Oracle-grade Ed(P_i, x): one Dijkstra from x.
inline double expected_distance_naive(const Instance& inst, int i, const GraphPoint& x) {
  if (i < 0 || i >= static_cast<int>(inst.points.size()))
    throw Error(Errc::IndexOutOfRange, "uncertain point " + std::to_string(i));
  const auto dist = distances_from(inst.graph, x);
  const UncertainPoint& p = inst.points[i];
  double acc = 0.0;
  for (const auto& loc : p.locations) acc += loc.prob * distance_to_point(inst.graph, dist, x, loc.position);
  return p.constant + p.weight * acc;
}

/// Ed(P_i, x) for every i with a single Dijkstra from x.
inline std::vector<double> expected_distances_naive(const Instance& inst, const GraphPoint& x) {
  const auto dist = distances_from(inst.graph, x);
  std::vector<double> out;
  out.reserve(inst.points.size());
  for (const auto& p : inst.points) {
    double acc = 0.0;
    for (const auto& loc : p.locations) acc += loc.prob * distance_to_point(inst.graph, dist, x, loc.position);
    out.push_back(p.constant + p.weight * acc);
  }
  return out;
}

inline double max_expected_distance_naive(const Instance& inst, const GraphPoint& x) {
  const auto eds = expected_distances_naive(inst, x);
  return *std::max_element(eds.begin(), eds.end());
}

// ---------------------------------------------------------------------------
// Vertex-constrained machinery.

/// Per-vertex location lists in CSR form.
class LocationIndex {
 public:
  struct Entry {
    int point;
    double prob;
  };

  LocationIndex() = default;

  explicit LocationIndex(const Instance& inst) {
    const int n = inst.graph.vertex_count();
    offsets_.assign(n + 1, 0);
    for (const auto& p : inst.points)
      for (const auto& loc : p.locations) {
        if (!loc.position.is_vertex())
          throw Error(Errc::NotVertexConstrained, "location interior to an edge");
        offsets_[loc.position.vertex + 1]++;
      }
    for (int v = 0; v < n; ++v) offsets_[v + 1] += offsets_[v];
    entries_.resize(offsets_[n]);
    std::vector<int> fill(offsets_.begin(), offsets_.end() - 1);
    for (int i = 0; i < static_cast<int>(inst.points.size()); ++i)
      for (const auto& loc : inst.points[i].locations)
        entries_[fill[loc.position.vertex]++] = {i, loc.prob};
  }

  std::span<const Entry> at(int v) const {
    return {entries_.data() + offsets_[v], entries_.data() + offsets_[v + 1]};
  }
  bool empty_at(int v) const { return offsets_[v] == offsets_[v + 1]; }

 private:
  std::vector<int> offsets_;
  std::vector<Entry> entries_;
};

/// Instance plus the skeleton and location index the solver works with.
struct SolverContext {
  const Instance* inst = nullptr;
  SkeletonTree sk;
  LocationIndex locs;

  explicit SolverContext(const Instance& instance)
      : inst(&instance), sk(build_skeleton(instance.graph)), locs(instance) {}

  const CactusGraph& graph() const { return inst->graph; }
  int n() const { return static_cast<int>(inst->points.size()); }
};

/// Ed(P_i, x) for all i by one pre-order walk of the skeleton from x's block.
inline std::vector<double> expected_distances_all(const SolverContext& ctx, const GraphPoint& x) {
  const CactusGraph& g = ctx.graph();
  g.check_point(x);
  std::vector<double> dist(g.vertex_count(), kInf);
  std::vector<double> acc(ctx.n(), 0.0);
  skeleton_walk(g, ctx.sk, ctx.sk.node_of_point(x), -1, x, 0.0, dist, [&](int u) {
    for (int v : ctx.sk.node(u).owned)
      for (const auto& e : ctx.locs.at(v)) acc[e.point] += e.prob * dist[v];
  });
  for (int i = 0; i < ctx.n(); ++i) {
    const auto& p = ctx.inst->points[i];
    acc[i] = p.constant + p.weight * acc[i];
  }
  return acc;
}

inline std::vector<double> expected_distances_all(const Instance& inst, const GraphPoint& x) {
  if (!is_vertex_constrained(inst)) throw Error(Errc::NotVertexConstrained, "expected_distances_all");
  const SolverContext ctx(inst);
  return expected_distances_all(ctx, x);
}

/// Probability sums of every point over the split subgraphs of a cut.
struct SplitSums {
  std::vector<std::vector<double>> sums;  // [point][split]
  std::vector<double> at_cut;             // [point] mass located on the cut itself
  int split_count = 0;
};

/// Splits of articulation vertex `v`: components of G - v, ordered by the
/// first incident edge reaching them.
inline SplitSums probability_split_sums_at_vertex(const Instance& inst, int v) {
  const CactusGraph& g = inst.graph;
  if (v < 0 || v >= g.vertex_count()) throw Error(Errc::BadVertexId, "cut vertex");
  const LocationIndex idx(inst);
  std::vector<int> label(g.vertex_count(), -1);
  label[v] = -2;
  int splits = 0;
  for (int e : g.incident(v)) {
    const int start = g.other_end(e, v);
    if (label[start] != -1) continue;
    std::vector<int> stack{start};
    label[start] = splits;
    while (!stack.empty()) {
      const int a = stack.back();
      stack.pop_back();
      for (int f : g.incident(a)) {
        const int b = g.other_end(f, a);
        if (label[b] == -1) {
          label[b] = splits;
          stack.push_back(b);
        }
      }
    }
    ++splits;
  }
  if (splits < 2) throw Error(Errc::NotAnArticulation, "vertex " + std::to_string(v));
  SplitSums out;
  out.split_count = splits;
  out.sums.assign(inst.points.size(), std::vector<double>(splits, 0.0));
  out.at_cut.assign(inst.points.size(), 0.0);
  for (int a = 0; a < g.vertex_count(); ++a)
    for (const auto& e : idx.at(a)) {
      if (a == v) out.at_cut[e.point] += e.prob;
      else out.sums[e.point][label[a]] += e.prob;
    }
  return out;
}

/// Splits of block node `u`: one per split subtree of its H-subtree.
inline SplitSums probability_split_sums_at_block(const SolverContext& ctx, int u) {
  const HSubtree hs = h_subtree(ctx.sk, u);
  SplitSums out;
  out.split_count = static_cast<int>(hs.splits.size());
  out.sums.assign(ctx.n(), std::vector<double>(out.split_count, 0.0));
  out.at_cut.assign(ctx.n(), 0.0);
  for (int k = 0; k < out.split_count; ++k)
    for (int node : hs.splits[k].nodes)
      for (int v : ctx.sk.node(node).owned)
        for (const auto& e : ctx.locs.at(v)) out.sums[e.point][k] += e.prob;
  for (int v : ctx.sk.node(u).vertices)
    for (const auto& e : ctx.locs.at(v)) out.at_cut[e.point] += e.prob;
  return out;
}

}  // namespace cactus_center
