#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "cactus_center/error.hpp"
#include "cactus_center/graph.hpp"
#include "cactus_center/model.hpp"

namespace cactus_center {

/// A stretch of an original edge, walked from offset `from` to offset `to`
/// (offsets measured from the original edge's u; `to` may be below `from`).
struct EdgeSegment {
  int edge = -1;
  double from = 0.0;
  double to = 0.0;

  double length() const { return std::abs(to - from); }
};

/// Provenance of a reduced graph: the original point of every reduced
/// vertex, and for every reduced edge the original path it stands for,
/// oriented from its u to its v.
struct BackMap {
  std::vector<GraphPoint> vertex_point;
  std::vector<EdgeSegment> segments;
  std::vector<int> path_start{0};  // edge k owns segments[path_start[k] .. path_start[k + 1])

  std::span<const EdgeSegment> edge_path(int k) const {
    return {segments.data() + path_start[k], segments.data() + path_start[k + 1]};
  }
};

struct ReductionStats {
  int subdivisions = 0;
  int cycles_removed = 0;
  int cycles_contracted = 0;
  int vertices_pruned = 0;
  int vertices_spliced = 0;
  int padding = 0;
};

struct ReducedInstance {
  Instance instance;
  BackMap back_map;
  ReductionStats stats;
};

namespace detail {

// Edge paths are built by concatenation and only expanded at the end. A
// node is either one segment or the join of two nodes, each possibly
// walked backwards.
struct PathNode {
  EdgeSegment seg;
  int left = -1, right = -1;
  bool flip_left = false, flip_right = false;
};

struct WorkEdge {
  int u, v;
  double length;
  int path;
  int cycle;  // block id of the original cycle it lies on, or -1
  bool alive;
};

// Mutable multigraph for the pruning passes, with forward-star adjacency
// and live degrees.
class WorkGraph {
 public:
  std::vector<GraphPoint> origin;
  std::vector<char> occupied, alive;
  std::vector<int> deg;
  std::vector<WorkEdge> edges;
  std::vector<PathNode> paths;

  void reserve(std::size_t vertices, std::size_t edge_count) {
    origin.reserve(vertices);
    occupied.reserve(vertices);
    alive.reserve(vertices);
    deg.reserve(vertices);
    head_.reserve(vertices);
    edges.reserve(edge_count);
    paths.reserve(2 * edge_count);
    arc_next_.reserve(2 * edge_count);
    arc_edge_.reserve(2 * edge_count);
  }

  int add_vertex(const GraphPoint& p) {
    origin.push_back(p);
    occupied.push_back(0);
    alive.push_back(1);
    deg.push_back(0);
    head_.push_back(-1);
    return static_cast<int>(origin.size()) - 1;
  }
  int segment_path(int e, double from, double to) {
    paths.push_back({{e, from, to}});
    return static_cast<int>(paths.size()) - 1;
  }
  // Path of edge e walked away from its end `from`, joined after `prefix`
  // (or alone when prefix is -1).
  int extend_path(int prefix, int e, int from) {
    const int p = edges[e].path;
    const bool flip = edges[e].u != from;
    if (prefix < 0 && !flip) return p;
    PathNode n;
    n.left = prefix < 0 ? p : prefix;
    n.flip_left = prefix < 0 ? flip : false;
    if (prefix >= 0) {
      n.right = p;
      n.flip_right = flip;
    }
    paths.push_back(n);
    return static_cast<int>(paths.size()) - 1;
  }
  int add_edge(int u, int v, double len, int path, int cycle) {
    const int id = static_cast<int>(edges.size());
    edges.push_back({u, v, len, path, cycle, true});
    for (int x : {u, v}) {
      arc_next_.push_back(head_[x]);
      arc_edge_.push_back(id);
      head_[x] = static_cast<int>(arc_edge_.size()) - 1;
      ++deg[x];
    }
    return id;
  }
  void kill_edge(int e) {
    edges[e].alive = false;
    --deg[edges[e].u];
    --deg[edges[e].v];
  }
  int other(int e, int v) const { return edges[e].u == v ? edges[e].v : edges[e].u; }
  template <class Fn>
  void for_each_live(int v, Fn&& fn) const {
    for (int a = head_[v]; a >= 0; a = arc_next_[a])
      if (edges[arc_edge_[a]].alive) fn(arc_edge_[a]);
  }
  // Up to two live edges at v, in insertion order.
  std::array<int, 2> first_live(int v) const {
    std::array<int, 2> out{-1, -1};
    int k = 0;
    for (int a = head_[v]; a >= 0 && k < 2; a = arc_next_[a])
      if (edges[arc_edge_[a]].alive) out[k++] = arc_edge_[a];
    if (k == 2 && out[0] > out[1]) std::swap(out[0], out[1]);
    return out;
  }
  // Appends the segments of path node p, reversed if `flip`.
  void expand(int p, bool flip, std::vector<EdgeSegment>& out) {
    auto& stack = expand_stack_;
    stack.assign(1, {p, flip});
    while (!stack.empty()) {
      const auto [id, rev] = stack.back();
      stack.pop_back();
      const PathNode& n = paths[id];
      if (n.left < 0) {
        out.push_back(rev ? EdgeSegment{n.seg.edge, n.seg.to, n.seg.from} : n.seg);
        continue;
      }
      // Pushed in reverse of visiting order.
      std::pair<int, bool> first{n.left, n.flip_left != rev}, second{n.right, n.flip_right != rev};
      if (rev) std::swap(first, second);
      if (second.first >= 0) stack.push_back(second);
      if (first.first >= 0) stack.push_back(first);
    }
  }

 private:
  std::vector<int> head_, arc_next_, arc_edge_;
  std::vector<std::pair<int, bool>> expand_stack_;
};

// One pass over the cycles: drop single-hinge empty cycles, contract
// two-hinge empty cycles to their shorter arc.
inline bool prune_cycles(WorkGraph& w, int cycle_ids, ReductionStats& st, std::vector<std::array<int, 2>>& slot) {
  // Live cycle edges bucketed by cycle, ascending within each bucket.
  std::vector<int> start(cycle_ids + 1, 0);
  const int m = static_cast<int>(w.edges.size());
  for (int e = 0; e < m; ++e)
    if (w.edges[e].alive && w.edges[e].cycle >= 0) ++start[w.edges[e].cycle + 1];
  for (int c = 0; c < cycle_ids; ++c) start[c + 1] += start[c];
  std::vector<int> bucket(start.back());
  {
    std::vector<int> fill(start.begin(), start.end() - 1);
    for (int e = 0; e < m; ++e)
      if (w.edges[e].alive && w.edges[e].cycle >= 0) bucket[fill[w.edges[e].cycle]++] = e;
  }
  auto ends = [&](int e) { return std::make_pair(w.edges[e].u, w.edges[e].v); };

  bool changed = false;
  std::vector<int> cyc_v, cyc_e, hinges;
  for (int c = 0; c < cycle_ids; ++c) {
    if (start[c + 1] - start[c] < 2) continue;
    const std::span<const int> grp(bucket.data() + start[c], bucket.data() + start[c + 1]);
    if (!order_cycle(grp, ends, slot, cyc_v, cyc_e))
      throw Error(Errc::InternalInconsistency, "reduced graph is not a cactus");
    const int len = static_cast<int>(cyc_v.size());
    hinges.clear();
    bool empty = true;
    for (int k = 0; k < len; ++k) {
      if (w.deg[cyc_v[k]] >= 3) hinges.push_back(k);
      else if (w.occupied[cyc_v[k]]) empty = false;
    }
    // A cycle made only of hinges has nothing to remove and stays as is.
    if (!empty || hinges.empty() || hinges.size() > 2 || static_cast<int>(hinges.size()) == len) continue;
    changed = true;
    // Clockwise arc h1 -> h2 runs over edges h1 .. h2-1; the other arc wraps.
    auto arc = [&](int from, int to) {
      int path = -1;
      double length = 0.0;
      for (int k = from; k != to; k = (k + 1) % len) {
        path = w.extend_path(path, cyc_e[k], cyc_v[k]);
        length += w.edges[cyc_e[k]].length;
      }
      return std::make_pair(length, path);
    };
    std::pair<double, int> cw{}, ccw{};
    if (hinges.size() == 2) {
      cw = arc(hinges[0], hinges[1]);
      ccw = arc(hinges[1], hinges[0]);
    }
    for (int e : cyc_e) w.kill_edge(e);
    for (int k = 0; k < len; ++k)
      if (w.deg[cyc_v[k]] == 0) {
        w.alive[cyc_v[k]] = 0;
        ++st.vertices_pruned;
      }
    if (hinges.size() == 1) {
      ++st.cycles_removed;
      continue;
    }
    const int a = cyc_v[hinges[0]], b = cyc_v[hinges[1]];
    if (ccw.first < cw.first) w.add_edge(b, a, ccw.first, ccw.second, -1);
    else w.add_edge(a, b, cw.first, cw.second, -1);
    ++st.cycles_contracted;
  }
  return changed;
}

// Removes empty vertices of degree 1 and splices out empty vertices of degree 2.
inline bool prune_vertices(WorkGraph& w, ReductionStats& st) {
  bool changed = false;
  std::vector<int> work;
  for (int v = static_cast<int>(w.origin.size()); v-- > 0;)
    if (w.alive[v] && !w.occupied[v] && w.deg[v] <= 2) work.push_back(v);
  while (!work.empty()) {
    const int v = work.back();
    work.pop_back();
    if (!w.alive[v] || w.occupied[v] || w.deg[v] > 2) continue;
    const auto [e1, e2] = w.first_live(v);
    if (w.deg[v] == 1) {
      const int a = w.other(e1, v);
      w.kill_edge(e1);
      w.alive[v] = 0;
      ++st.vertices_pruned;
      work.push_back(a);
      changed = true;
    } else if (w.deg[v] == 2) {
      const int a = w.other(e1, v), c = w.other(e2, v);
      w.kill_edge(e1);
      w.kill_edge(e2);
      w.alive[v] = 0;
      changed = true;
      if (a == c) {
        // Both edges return to the same neighbor: an empty two-edge cycle.
        ++st.vertices_pruned;
        work.push_back(a);
        continue;
      }
      const int path = w.extend_path(w.extend_path(-1, e1, a), e2, v);
      w.add_edge(a, c, w.edges[e1].length + w.edges[e2].length, path, w.edges[e1].cycle);
      ++st.vertices_spliced;
    }
  }
  return changed;
}

}  // namespace detail

/// Rewrites a general instance as a vertex-constrained one on a smaller
/// graph with the same objective everywhere the center can be: locations
/// inside edges become vertices, empty parts that cannot hold the center
/// are pruned or contracted, and each empty vertex left over gets a
/// zero-probability location.
inline ReducedInstance to_vertex_constrained(const Instance& inst) {
  require_valid(inst);
  const CactusGraph& g = inst.graph;
  ReducedInstance out;
  ReductionStats& st = out.stats;

  // Distinct interior offsets per edge, flat: edge e owns cut_t[cut_start[e] ..).
  const int m = g.edge_count();
  std::vector<int> cut_start(m + 1, 0);
  for (const auto& p : inst.points)
    for (const auto& l : p.locations)
      if (!l.position.is_vertex()) ++cut_start[l.position.edge + 1];
  for (int e = 0; e < m; ++e) cut_start[e + 1] += cut_start[e];
  std::vector<double> cut_t(cut_start[m]);
  {
    std::vector<int> fill(cut_start.begin(), cut_start.end() - 1);
    for (const auto& p : inst.points)
      for (const auto& l : p.locations)
        if (!l.position.is_vertex()) cut_t[fill[l.position.edge]++] = l.position.t;
    // Sort and dedupe each edge's offsets in place, then close the gaps.
    std::size_t out_k = 0;
    for (int e = 0; e < m; ++e) {
      const auto first = cut_t.begin() + cut_start[e], last = cut_t.begin() + cut_start[e + 1];
      std::sort(first, last);
      cut_start[e] = static_cast<int>(out_k);
      for (auto it = first; it != last; ++it)
        if (static_cast<int>(out_k) == cut_start[e] || *it - cut_t[out_k - 1] > kSnapEps) cut_t[out_k++] = *it;
    }
    cut_start[m] = static_cast<int>(out_k);
    cut_t.resize(out_k);
  }

  // Work vertices are numbered depth-first over the input graph, with the
  // cut vertices of an edge right after the endpoint that reaches it first,
  // so that graph neighbors get nearby ids.
  detail::WorkGraph w;
  const int base = g.vertex_count();
  w.reserve(base + cut_t.size(), m + cut_t.size() + 8);
  struct Pending {
    int edge, u, v, cycle;
    double length;
  };
  std::vector<int> vid(base, -1), cut_id(cut_t.size());
  std::vector<Pending> pending;
  pending.reserve(m);
  {
    std::vector<char> edge_seen(m, 0);
    std::vector<int> stack;
    for (int root = 0; root < base; ++root) {
      if (vid[root] >= 0) continue;
      stack.assign(1, root);
      while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        if (vid[v] >= 0) continue;
        vid[v] = w.add_vertex(GraphPoint::at_vertex(v));
        for (int e : g.incident(v)) {
          const Edge& ed = g.edge(e);
          const int x = ed.u == v ? ed.v : ed.u;
          if (vid[x] < 0) stack.push_back(x);
          if (edge_seen[e]) continue;
          edge_seen[e] = 1;
          const int b = g.block_of(e);
          pending.push_back({e, ed.u, ed.v, g.is_cycle_block(b) ? b : -1, ed.length});
          const bool forward = ed.u == v;
          for (int j = 0, cnt = cut_start[e + 1] - cut_start[e]; j < cnt; ++j) {
            const int k = forward ? cut_start[e] + j : cut_start[e + 1] - 1 - j;
            cut_id[k] = w.add_vertex(GraphPoint{-1, e, cut_t[k]});
          }
        }
      }
    }
  }
  // Subdivide every edge at its interior locations.
  for (const Pending& pe : pending) {
    int prev = vid[pe.u];
    double at = 0.0;
    for (int k = cut_start[pe.edge]; k < cut_start[pe.edge + 1]; ++k) {
      const double t = cut_t[k];
      w.add_edge(prev, cut_id[k], t - at, w.segment_path(pe.edge, at, t), pe.cycle);
      prev = cut_id[k];
      at = t;
      ++st.subdivisions;
    }
    w.add_edge(prev, vid[pe.v], pe.length - at, w.segment_path(pe.edge, at, pe.length), pe.cycle);
  }
  auto vertex_of = [&](const GraphPoint& p) {
    if (p.is_vertex()) return vid[p.vertex];
    const auto first = cut_t.begin() + cut_start[p.edge];
    const auto it = std::lower_bound(first, cut_t.begin() + cut_start[p.edge + 1], p.t - kSnapEps);
    return cut_id[it - cut_t.begin()];
  };
  for (const auto& p : inst.points)
    for (const auto& l : p.locations) w.occupied[vertex_of(l.position)] = 1;

  std::vector<std::array<int, 2>> slot(w.origin.size(), {-1, -1});
  const int cycle_ids = g.block_count();
  for (bool again = true; again;) {
    const bool a = detail::prune_cycles(w, cycle_ids, st, slot);
    const bool b = detail::prune_vertices(w, st);
    again = a || b;
  }

  // Compact the survivors in work order, edges by their lower end.
  std::vector<int> id(w.origin.size(), -1);
  BackMap& bm = out.back_map;
  for (std::size_t v = 0; v < w.origin.size(); ++v)
    if (w.alive[v]) {
      id[v] = static_cast<int>(bm.vertex_point.size());
      bm.vertex_point.push_back(w.origin[v]);
    }
  std::vector<int> by_low(bm.vertex_point.size() + 1, 0);
  for (const auto& e : w.edges)
    if (e.alive) ++by_low[std::min(id[e.u], id[e.v]) + 1];
  for (std::size_t v = 0; v + 1 < by_low.size(); ++v) by_low[v + 1] += by_low[v];
  std::vector<int> order(by_low.back());
  for (int e = 0; e < static_cast<int>(w.edges.size()); ++e)
    if (w.edges[e].alive) order[by_low[std::min(id[w.edges[e].u], id[w.edges[e].v])]++] = e;
  std::vector<Edge> list;
  list.reserve(order.size());
  bm.path_start.reserve(order.size() + 1);
  bm.segments.reserve(w.paths.size());
  for (int k : order) {
    const auto& e = w.edges[k];
    list.push_back({id[e.u], id[e.v], e.length});
    w.expand(e.path, false, bm.segments);
    bm.path_start.push_back(static_cast<int>(bm.segments.size()));
  }
  Instance& r = out.instance;
  r.graph = build_graph(static_cast<int>(bm.vertex_point.size()), list);
  // Empty survivors get a zero-probability location, dealt round-robin.
  std::vector<int> empty;
  for (std::size_t v = 0; v < w.origin.size(); ++v)
    if (w.alive[v] && !w.occupied[v]) empty.push_back(id[v]);
  const std::size_t n = inst.points.size();
  r.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const UncertainPoint& p = inst.points[i];
    UncertainPoint q{p.weight, p.constant, {}};
    q.locations.reserve(p.locations.size() + empty.size() / n + 1);
    for (const auto& l : p.locations) q.locations.push_back({GraphPoint::at_vertex(id[vertex_of(l.position)]), l.prob});
    for (std::size_t k = i; k < empty.size(); k += n) q.locations.push_back({GraphPoint::at_vertex(empty[k]), 0.0});
    r.points.push_back(std::move(q));
  }
  st.padding = static_cast<int>(empty.size());
  return out;
}

/// The original point behind point `x` of the reduced graph.
inline GraphPoint map_back(const ReducedInstance& red, const CactusGraph& original, const GraphPoint& x) {
  const CactusGraph& rg = red.instance.graph;
  if (!rg.valid_point(x)) throw Error(Errc::UnmappablePoint, "point is not on the reduced graph");
  const BackMap& bm = red.back_map;
  if (x.is_vertex()) return bm.vertex_point[x.vertex];
  double rem = x.t;
  const auto path = bm.edge_path(x.edge);
  for (std::size_t k = 0; k < path.size(); ++k) {
    const EdgeSegment& s = path[k];
    const double len = s.length();
    if (rem <= len || k + 1 == path.size()) {
      rem = std::min(rem, len);
      const double t = s.to >= s.from ? s.from + rem : s.from - rem;
      return original.point_on_edge(s.edge, t);
    }
    rem -= len;
  }
  throw Error(Errc::UnmappablePoint, "reduced edge has no recorded path");
}

}  // namespace cactus_center
