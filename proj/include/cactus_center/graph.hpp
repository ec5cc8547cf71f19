#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cactus_center/error.hpp"

namespace cactus_center {

/// Default absolute tolerance for distance and objective comparisons.
inline constexpr double kEps = 1e-9;

/// Offsets this close to an edge end snap to the endpoint vertex.
inline constexpr double kSnapEps = 1e-12;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Edge {
  int u = 0;
  int v = 0;
  double length = 0.0;
};

/// A point on the graph: either a vertex, or an offset `t` along `edge`
/// measured from the edge's stored `u` endpoint.
struct GraphPoint {
  int vertex = -1;
  int edge = -1;
  double t = 0.0;

  static GraphPoint at_vertex(int v) { return GraphPoint{v, -1, 0.0}; }

  bool is_vertex() const { return vertex >= 0; }

  friend bool operator==(const GraphPoint&, const GraphPoint&) = default;
};

/// A biconnected block of a cactus: a single bridge edge or a simple cycle.
/// For cycles, `edges[k]` joins `vertices[k]` and `vertices[(k + 1) % size]`.
/// The spans view storage owned by the graph.
struct Block {
  bool is_cycle = false;
  std::span<const int> vertices;
  std::span<const int> edges;
};

class CactusGraph {
 public:
  CactusGraph() = default;

  int vertex_count() const { return static_cast<int>(adj_offset_.size()) - 1; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  /// Size |G| = |V| + |E|.
  int size() const { return vertex_count() + edge_count(); }

  const Edge& edge(int e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const int> incident(int v) const {
    return {adj_.data() + adj_offset_[v], adj_.data() + adj_offset_[v + 1]};
  }
  int degree(int v) const { return adj_offset_[v + 1] - adj_offset_[v]; }

  int other_end(int e, int v) const {
    const Edge& ed = edges_[e];
    return ed.u == v ? ed.v : ed.u;
  }

  int block_of(int e) const { return edge_block_[e]; }
  int block_count() const { return static_cast<int>(block_cycle_.size()); }
  bool is_cycle_block(int b) const { return block_cycle_[b] != 0; }
  Block block(int b) const {
    const bool cycle = block_cycle_[b] != 0;
    return {cycle,
            {block_vertices_.data() + block_start_[b] + b,
             block_vertices_.data() + block_start_[b + 1] + b + (cycle ? 0 : 1)},
            {block_edges_.data() + block_start_[b], block_edges_.data() + block_start_[b + 1]}};
  }
  bool on_cycle(int v) const { return on_cycle_[v] != 0; }
  int cycle_count() const { return static_cast<int>(std::count(block_cycle_.begin(), block_cycle_.end(), 1)); }

  /// Canonical point at offset `t` on edge `e`; snaps to an endpoint vertex
  /// when `t` is within kSnapEps of 0 or the edge length.
  GraphPoint point_on_edge(int e, double t) const {
    if (e < 0 || e >= edge_count()) throw Error(Errc::InvalidPoint, "edge id out of range");
    const Edge& ed = edges_[e];
    if (!(t >= -kSnapEps && t <= ed.length + kSnapEps))
      throw Error(Errc::InvalidPoint, "offset outside edge");
    if (t <= kSnapEps) return GraphPoint::at_vertex(ed.u);
    if (t >= ed.length - kSnapEps) return GraphPoint::at_vertex(ed.v);
    return GraphPoint{-1, e, t};
  }

  bool valid_point(const GraphPoint& p) const {
    if (p.is_vertex()) return p.vertex < vertex_count();
    if (p.edge < 0 || p.edge >= edge_count()) return false;
    return p.t >= 0.0 && p.t <= edges_[p.edge].length;
  }

  void check_point(const GraphPoint& p) const {
    if (!valid_point(p)) throw Error(Errc::InvalidPoint, "point not on graph");
  }

  friend CactusGraph build_graph(int vertex_count, const std::vector<Edge>& edge_list);

 private:
  std::vector<Edge> edges_;
  std::vector<int> adj_offset_{0};  // CSR: incident edges of v are adj_[adj_offset_[v] .. adj_offset_[v + 1])
  std::vector<int> adj_;
  std::vector<int> edge_block_;
  // Block b owns edges block_edges_[block_start_[b] ..) and, since a bridge
  // has one more vertex than edges, vertices from block_start_[b] + b. A
  // cycle stores its first vertex again as the extra one.
  std::vector<char> block_cycle_;
  std::vector<int> block_start_{0};
  std::vector<int> block_edges_;
  std::vector<int> block_vertices_;
  std::vector<char> on_cycle_;
};

namespace detail {

/// Biconnected components as edge groups, stored flat: group k holds
/// edges[start[k] .. start[k + 1]). The DFS starts at vertex 0 and marks
/// every vertex it reaches in `visited`.
struct EdgeGroups {
  std::vector<int> edges;
  std::vector<int> start{0};

  int count() const { return static_cast<int>(start.size()) - 1; }
  std::span<const int> group(int k) const { return {edges.data() + start[k], edges.data() + start[k + 1]}; }
};

// Edge-stack Tarjan over any graph given by incident(v) -> range of edge
// ids and other(e, v) -> the far end of e.
template <class Incident, class Other>
EdgeGroups biconnected_edge_groups(int n, Incident&& incident, Other&& other, std::vector<char>& visited) {
  std::vector<int> disc(n, -1), low(n, 0);
  EdgeGroups out;
  std::vector<int> edge_stack;
  struct Frame {
    int v;
    int parent_edge;
    std::size_t next;
  };
  std::vector<Frame> stack;
  int timer = 0;
  disc[0] = low[0] = timer++;
  stack.push_back({0, -1, 0});
  while (!stack.empty()) {
    Frame& f = stack.back();
    const auto inc = incident(f.v);
    if (f.next < inc.size()) {
      const int e = inc[f.next++];
      if (e == f.parent_edge) continue;
      const int w = other(e, f.v);
      if (disc[w] < 0) {
        edge_stack.push_back(e);
        disc[w] = low[w] = timer++;
        stack.push_back({w, e, 0});
      } else if (disc[w] < disc[f.v]) {
        edge_stack.push_back(e);
        low[f.v] = std::min(low[f.v], disc[w]);
      }
      continue;
    }
    const Frame done = f;
    stack.pop_back();
    if (stack.empty()) break;
    Frame& parent = stack.back();
    low[parent.v] = std::min(low[parent.v], low[done.v]);
    if (low[done.v] >= disc[parent.v]) {
      while (true) {
        const int e = edge_stack.back();
        edge_stack.pop_back();
        out.edges.push_back(e);
        if (e == done.parent_edge) break;
      }
      out.start.push_back(static_cast<int>(out.edges.size()));
    }
  }
  visited.assign(n, 0);
  for (int v = 0; v < n; ++v) visited[v] = disc[v] >= 0;
  return out;
}

/// Walks the edges of one cycle group (sorted ascending) starting from the
/// u end of its smallest edge. `slot` is per-vertex scratch holding
/// {-1, -1}, restored on return. Returns false if the group is not a
/// simple cycle.
template <class Ends>
bool order_cycle(std::span<const int> grp, Ends&& ends, std::vector<std::array<int, 2>>& slot,
                 std::vector<int>& vertices, std::vector<int>& edges) {
  vertices.clear();
  edges.clear();
  bool ok = true;
  std::size_t distinct = 0;
  for (int e : grp) {
    const auto [a, b] = ends(e);
    for (int x : {a, b}) {
      auto& sl = slot[x];
      if (sl[0] < 0) {
        sl[0] = e;
        ++distinct;
      } else if (sl[1] < 0) {
        sl[1] = e;
      } else {
        ok = false;
      }
    }
  }
  if (ok && distinct == grp.size()) {
    int cur = ends(grp[0]).first;
    int via = grp[0];
    for (std::size_t k = 0; k < grp.size(); ++k) {
      vertices.push_back(cur);
      edges.push_back(via);
      const auto [a, b] = ends(via);
      const int next = a == cur ? b : a;
      via = slot[next][0] == via ? slot[next][1] : slot[next][0];
      cur = next;
    }
  } else {
    ok = false;
  }
  for (int e : grp) {
    const auto [a, b] = ends(e);
    slot[a] = slot[b] = {-1, -1};
  }
  return ok;
}

}  // namespace detail

/// Builds and validates a cactus. Every biconnected component must be a
/// bridge or a simple cycle; two parallel edges form a 2-vertex cycle.
inline CactusGraph build_graph(int vertex_count, const std::vector<Edge>& edge_list) {
  if (vertex_count <= 0) throw Error(Errc::EmptyGraph, "graph needs at least one vertex");
  if (edge_list.empty() && vertex_count != 1)
    throw Error(Errc::NotConnected, "no edges for more than one vertex");

  CactusGraph g;
  g.edges_ = edge_list;
  g.adj_offset_.assign(vertex_count + 1, 0);
  for (int e = 0; e < static_cast<int>(edge_list.size()); ++e) {
    const Edge& ed = edge_list[e];
    if (ed.u < 0 || ed.u >= vertex_count || ed.v < 0 || ed.v >= vertex_count)
      throw Error(Errc::BadVertexId, "edge " + std::to_string(e) + " has a bad vertex id");
    if (ed.u == ed.v) throw Error(Errc::SelfLoop, "edge " + std::to_string(e) + " is a self-loop");
    if (!(ed.length > 0.0) || !std::isfinite(ed.length))
      throw Error(Errc::NonpositiveEdgeLength, "edge " + std::to_string(e));
    ++g.adj_offset_[ed.u + 1];
    ++g.adj_offset_[ed.v + 1];
  }
  for (int v = 0; v < vertex_count; ++v) g.adj_offset_[v + 1] += g.adj_offset_[v];
  g.adj_.resize(2 * edge_list.size());
  {
    std::vector<int> fill(g.adj_offset_.begin(), g.adj_offset_.end() - 1);
    for (int e = 0; e < static_cast<int>(edge_list.size()); ++e) {
      g.adj_[fill[edge_list[e].u]++] = e;
      g.adj_[fill[edge_list[e].v]++] = e;
    }
  }

  std::vector<char> visited;
  auto groups = detail::biconnected_edge_groups(
      vertex_count, [&](int v) { return g.incident(v); }, [&](int e, int v) { return g.other_end(e, v); },
      visited);
  if (std::find(visited.begin(), visited.end(), 0) != visited.end())
    throw Error(Errc::NotConnected, "graph is not connected");

  // Blocks are numbered by their smallest edge.
  std::vector<int> group_of_min(edge_list.size(), -1);
  for (int k = 0; k < groups.count(); ++k) {
    std::sort(groups.edges.begin() + groups.start[k], groups.edges.begin() + groups.start[k + 1]);
    group_of_min[groups.edges[groups.start[k]]] = k;
  }
  std::vector<int> order;
  order.reserve(groups.count());
  for (int k : group_of_min)
    if (k >= 0) order.push_back(k);

  g.edge_block_.assign(edge_list.size(), -1);
  g.on_cycle_.assign(vertex_count, 0);
  g.block_cycle_.reserve(order.size());
  g.block_start_.reserve(order.size() + 1);
  g.block_edges_.reserve(edge_list.size());
  g.block_vertices_.reserve(edge_list.size() + order.size());
  std::vector<std::array<int, 2>> slot(vertex_count, {-1, -1});
  std::vector<int> cyc_v, cyc_e;
  auto ends = [&](int e) { return std::make_pair(edge_list[e].u, edge_list[e].v); };
  for (int k : order) {
    const auto grp = groups.group(k);
    const int id = static_cast<int>(g.block_cycle_.size());
    for (int e : grp) g.edge_block_[e] = id;
    if (grp.size() == 1) {
      g.block_cycle_.push_back(0);
      g.block_edges_.push_back(grp[0]);
      g.block_vertices_.push_back(edge_list[grp[0]].u);
      g.block_vertices_.push_back(edge_list[grp[0]].v);
    } else {
      if (!detail::order_cycle(grp, ends, slot, cyc_v, cyc_e))
        throw Error(Errc::NotACactus, "biconnected component is not a simple cycle");
      g.block_cycle_.push_back(1);
      g.block_edges_.insert(g.block_edges_.end(), cyc_e.begin(), cyc_e.end());
      g.block_vertices_.insert(g.block_vertices_.end(), cyc_v.begin(), cyc_v.end());
      g.block_vertices_.push_back(cyc_v.front());
      for (int y : cyc_v) g.on_cycle_[y] = 1;
    }
    g.block_start_.push_back(static_cast<int>(g.block_edges_.size()));
  }
  return g;
}

/// Every block of `g` in block-id order.
inline std::vector<Block> biconnected_blocks(const CactusGraph& g) {
  std::vector<Block> out;
  out.reserve(g.block_count());
  for (int b = 0; b < g.block_count(); ++b) out.push_back(g.block(b));
  return out;
}

/// Single-source shortest distances from point `p` to every vertex.
inline std::vector<double> distances_from(const CactusGraph& g, const GraphPoint& p) {
  g.check_point(p);
  std::vector<double> dist(g.vertex_count(), kInf);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  auto relax = [&](int v, double d) {
    if (d < dist[v]) {
      dist[v] = d;
      pq.push({d, v});
    }
  };
  if (p.is_vertex()) {
    relax(p.vertex, 0.0);
  } else {
    const Edge& ed = g.edge(p.edge);
    relax(ed.u, p.t);
    relax(ed.v, ed.length - p.t);
  }
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (d > dist[v]) continue;
    for (int e : g.incident(v)) relax(g.other_end(e, v), d + g.edge(e).length);
  }
  return dist;
}

/// Distance to point `q` given vertex distances from some source point `p`.
inline double distance_to_point(const CactusGraph& g, const std::vector<double>& dist,
                                const GraphPoint& p, const GraphPoint& q) {
  double best;
  if (q.is_vertex()) {
    best = dist[q.vertex];
  } else {
    const Edge& ed = g.edge(q.edge);
    best = std::min(dist[ed.u] + q.t, dist[ed.v] + ed.length - q.t);
  }
  if (!p.is_vertex() && !q.is_vertex() && p.edge == q.edge) best = std::min(best, std::abs(p.t - q.t));
  if (p.is_vertex() && q.is_vertex() && p.vertex == q.vertex) best = 0.0;
  return best;
}

/// Exact shortest-path length between two points (Dijkstra from `p`).
inline double shortest_distance(const CactusGraph& g, const GraphPoint& p, const GraphPoint& q) {
  g.check_point(q);
  const auto dist = distances_from(g, p);
  return distance_to_point(g, dist, p, q);
}

}  // namespace cactus_center
