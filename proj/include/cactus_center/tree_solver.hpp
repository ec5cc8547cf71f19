#pragma once

#include <algorithm>
#include <vector>

#include "cactus_center/envelope.hpp"
#include "cactus_center/error.hpp"
#include "cactus_center/model.hpp"

namespace cactus_center {

struct TreeSolveStats {
  int steps = 0;  // centroid evaluations plus the final edge solve
};

namespace detail {

// Centroid of the connected vertex set `live` (flags in `in`); smallest id
// on ties. `par` and `size` are scratch of graph size, left dirty only on
// live entries.
inline int tree_centroid(const CactusGraph& g, const std::vector<int>& live, const std::vector<char>& in,
                         std::vector<int>& par, std::vector<int>& size, std::vector<int>& order) {
  const int total = static_cast<int>(live.size());
  const int root = *std::min_element(live.begin(), live.end());
  for (int a : live) {
    par[a] = -2;
    size[a] = 0;
  }
  order.clear();
  order.push_back(root);
  par[root] = -1;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const int a = order[k];
    for (int e : g.incident(a)) {
      const int b = g.other_end(e, a);
      if (!in[b] || par[b] != -2) continue;
      par[b] = a;
      order.push_back(b);
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    size[*it] += 1;
    if (par[*it] >= 0) size[par[*it]] += size[*it];
  }
  int best = -1;
  for (int a : live) {
    int worst = total - size[a];
    for (int e : g.incident(a)) {
      const int b = g.other_end(e, a);
      if (in[b] && par[b] == a) worst = std::max(worst, size[b]);
    }
    if (worst <= total / 2 && (best < 0 || a < best)) best = a;
  }
  return best;
}

}  // namespace detail

/// One-center of uncertain points (with constants) on a tree. Centroid
/// search over vertices: at each centroid the dominant points' medians
/// decide whether the center is the centroid or which side it lies on.
/// Discarded sides are folded onto the centroid (their mass moves there
/// and the detour goes into the point's constant), so every step only
/// touches the live part.
inline CenterResult solve_tree(const Instance& inst, TreeSolveStats* stats = nullptr) {
  const CactusGraph& g = inst.graph;
  if (g.cycle_count() != 0) throw Error(Errc::NotATree, "graph has a cycle");
  if (!is_vertex_constrained(inst)) throw Error(Errc::NotVertexConstrained, "tree instance");
  if (inst.points.empty()) throw Error(Errc::InvalidInstance, "no uncertain points");
  const LocationIndex locs(inst);
  const int nv = g.vertex_count();
  const int n = static_cast<int>(inst.points.size());
  TreeSolveStats local_stats;
  TreeSolveStats& st = stats ? *stats : local_stats;
  st.steps = 0;

  struct Mass {
    int vertex;
    int point;
    double prob;
  };
  std::vector<double> cst(n);
  for (int i = 0; i < n; ++i) cst[i] = inst.points[i].constant;
  std::vector<Mass> folded;  // mass moved onto earlier centroids

  std::vector<int> live(nv);
  for (int v = 0; v < nv; ++v) live[v] = v;
  std::vector<char> in(nv, 1);
  std::vector<int> label(nv, -1), par(nv), size(nv), order;
  std::vector<double> dist(nv, kInf);

  // Distances from `src` to every live vertex, in BFS order.
  auto fill_dist = [&](int src) {
    order.clear();
    order.push_back(src);
    dist[src] = 0.0;
    label[src] = -2;
    for (std::size_t k = 0; k < order.size(); ++k) {
      const int a = order[k];
      for (int e : g.incident(a)) {
        const int b = g.other_end(e, a);
        if (!in[b] || label[b] == -2) continue;
        label[b] = -2;
        dist[b] = dist[a] + g.edge(e).length;
        order.push_back(b);
      }
    }
    for (int v : order) label[v] = -1;
  };
  auto live_eds = [&]() {
    std::vector<double> acc(n, 0.0);
    for (int v : live)
      for (const auto& e : locs.at(v)) acc[e.point] += e.prob * dist[v];
    for (const Mass& m : folded) acc[m.point] += m.prob * dist[m.vertex];
    for (int i = 0; i < n; ++i) acc[i] = cst[i] + inst.points[i].weight * acc[i];
    return acc;
  };
  auto at_vertex = [&](int v) {
    fill_dist(v);
    const auto eds = live_eds();
    return CenterResult{GraphPoint::at_vertex(v), *std::max_element(eds.begin(), eds.end())};
  };

  std::vector<double> sums, moved(n);
  std::vector<int> parts_start;
  while (live.size() > 2) {
    ++st.steps;
    const int c = detail::tree_centroid(g, live, in, par, size, order);
    fill_dist(c);
    const auto eds = live_eds();
    const double top = *std::max_element(eds.begin(), eds.end());

    // Label the live components of T - c by live neighbor.
    std::vector<int> starts;
    for (int e : g.incident(c))
      if (in[g.other_end(e, c)]) starts.push_back(g.other_end(e, c));
    const int parts = static_cast<int>(starts.size());
    for (int k = 0; k < parts; ++k) {
      std::vector<int> stack{starts[k]};
      label[starts[k]] = k;
      while (!stack.empty()) {
        const int a = stack.back();
        stack.pop_back();
        for (int e : g.incident(a)) {
          const int b = g.other_end(e, a);
          if (b == c || !in[b] || label[b] >= 0) continue;
          label[b] = k;
          stack.push_back(b);
        }
      }
    }
    sums.assign(static_cast<std::size_t>(n) * parts, 0.0);
    for (int v : live) {
      if (v == c) continue;
      for (const auto& e : locs.at(v)) sums[static_cast<std::size_t>(e.point) * parts + label[v]] += e.prob;
    }
    for (const Mass& m : folded)
      if (m.vertex != c) sums[static_cast<std::size_t>(m.point) * parts + label[m.vertex]] += m.prob;

    int direction = -2;  // -2 none yet, -1 at centroid
    for (int i = 0; i < n && direction != -1; ++i) {
      if (eds[i] < top - kEps) continue;
      int dir = -1;
      if (inst.points[i].weight > 0.0)
        for (int k = 0; k < parts; ++k)
          if (sums[static_cast<std::size_t>(i) * parts + k] > 0.5 + kEps) dir = k;
      if (dir == -1 || (direction >= 0 && dir != direction)) direction = -1;
      else direction = dir;
    }
    if (direction < 0) {
      for (int v : live) label[v] = -1;
      return {GraphPoint::at_vertex(c), top};
    }

    // Fold everything outside the chosen side onto c.
    std::fill(moved.begin(), moved.end(), 0.0);
    auto fold = [&](int v, int i, double f) {
      cst[i] += inst.points[i].weight * f * dist[v];
      moved[i] += f;
    };
    std::vector<int> next{c};
    for (int v : live) {
      if (v == c) continue;
      if (label[v] == direction) {
        next.push_back(v);
        continue;
      }
      for (const auto& e : locs.at(v)) fold(v, e.point, e.prob);
    }
    for (int v : live)
      if (v != c && label[v] != direction) in[v] = 0;
    std::vector<Mass> kept;
    for (const Mass& m : folded) {
      if (m.vertex == c) moved[m.point] += m.prob;
      else if (in[m.vertex]) kept.push_back(m);
      else fold(m.vertex, m.point, m.prob);
    }
    for (const auto& e : locs.at(c)) moved[e.point] += e.prob;
    // c's own locations stay in the index; only the extra mass is recorded.
    for (const auto& e : locs.at(c)) moved[e.point] -= e.prob;
    for (int i = 0; i < n; ++i)
      if (moved[i] != 0.0) kept.push_back({c, i, moved[i]});
    folded = std::move(kept);
    for (int v : live) label[v] = -1;
    live = std::move(next);
  }

  if (live.size() == 1) return at_vertex(live[0]);

  ++st.steps;
  int a = live[0], b = live[1];
  int edge = -1;
  for (int e : g.incident(a))
    if (g.other_end(e, a) == b) edge = e;
  const Edge& ed = g.edge(edge);
  fill_dist(ed.u);
  const auto ed_u = live_eds();
  fill_dist(ed.v);
  const auto ed_v = live_eds();
  std::vector<Line> lines(n);
  for (int i = 0; i < n; ++i) lines[i] = {(ed_v[i] - ed_u[i]) / ed.length, ed_u[i]};
  const EnvelopeMin m = min_of_upper_envelope(lines, 0.0, ed.length);
  return {g.point_on_edge(edge, m.x), m.value};
}

}  // namespace cactus_center
