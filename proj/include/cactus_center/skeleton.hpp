#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "cactus_center/error.hpp"
#include "cactus_center/graph.hpp"

namespace cactus_center {

enum class NodeKind { Graft, Cycle, Hinge };

struct LocalArc {
  int to;        // local index of the neighbor vertex
  double length;
  int edge;      // graph edge id
};

struct SkeletonNode {
  NodeKind kind = NodeKind::Graft;
  // Block vertices (cycle: clockwise order) or the single hinge vertex.
  std::span<const int> vertices;
  // Block edges; for cycles edges[k] joins vertices[k] and vertices[k + 1].
  std::span<const int> edges;
  // Cycle only: clockwise arc position of vertices[k] from vertices[0].
  std::span<const double> position;
  double circumference = 0.0;
  // Graft only: tree adjacency over local vertex indices, arcs of local
  // vertex a at arc_list[arc_start[a] .. arc_start[a + 1]).
  std::span<const int> arc_start;
  std::span<const LocalArc> arc_list;
  std::span<const int> neighbors;
  // Block node: local index of the hinge vertex of neighbors[k].
  // Hinge node: local index of the hinge vertex inside block neighbors[k].
  std::span<const int> neighbor_local;
  // Vertices whose home node is this one (hinge vertices belong to hinge nodes).
  std::span<const int> owned;

  bool is_block() const { return kind != NodeKind::Hinge; }
  int hinge_vertex() const { return vertices.front(); }
  std::span<const LocalArc> arcs(int a) const {
    return arc_list.subspan(arc_start[a], arc_start[a + 1] - arc_start[a]);
  }
};

/// Block tree of a cactus: graft, cycle and hinge nodes, hinges joined to
/// every block containing them. Node arrays live in pools owned by the tree.
class SkeletonTree {
 public:
  SkeletonTree() = default;
  SkeletonTree(SkeletonTree&&) noexcept = default;
  SkeletonTree& operator=(SkeletonTree&&) noexcept = default;
  SkeletonTree(const SkeletonTree& other) { *this = other; }
  SkeletonTree& operator=(const SkeletonTree& other) {
    if (this == &other) return *this;
    nodes_ = other.nodes_;
    home_ = other.home_;
    hinge_of_vertex_ = other.hinge_of_vertex_;
    local_of_vertex_ = other.local_of_vertex_;
    edge_node_ = other.edge_node_;
    edge_local_ = other.edge_local_;
    edge_slot_ = other.edge_slot_;
    ints_ = other.ints_;
    reals_ = other.reals_;
    arcs_ = other.arcs_;
    auto rebase = [](auto& sp, const auto& from, auto& to) {
      if (!sp.empty()) sp = {to.data() + (sp.data() - from.data()), sp.size()};
    };
    for (SkeletonNode& nd : nodes_) {
      for (auto* sp : {&nd.vertices, &nd.edges, &nd.arc_start, &nd.neighbors, &nd.neighbor_local, &nd.owned})
        rebase(*sp, other.ints_, ints_);
      rebase(nd.position, other.reals_, reals_);
      rebase(nd.arc_list, other.arcs_, arcs_);
    }
    return *this;
  }

  int node_count() const { return static_cast<int>(nodes_.size()); }
  const SkeletonNode& node(int id) const { return nodes_[id]; }
  const std::vector<SkeletonNode>& nodes() const { return nodes_; }

  /// Node owning vertex `v` (its hinge node when `v` is a hinge).
  int home_node(int v) const { return home_[v]; }
  /// Hinge node of vertex `v`, or -1.
  int hinge_node(int v) const { return hinge_of_vertex_[v]; }
  /// Block node containing edge `e`.
  int edge_node(int e) const { return edge_node_[e]; }
  /// Local indices of the endpoints (u, v) of edge `e` inside its block.
  std::pair<int, int> edge_local(int e) const { return edge_local_[e]; }
  /// Cycle blocks only: slot of edge `e` in the cyclic edge order.
  int edge_slot(int e) const { return edge_slot_[e]; }

  /// Local index of vertex `v` in block node `b`, or -1.
  int local_index(int b, int v) const {
    const int h = hinge_of_vertex_[v];
    if (h < 0) return home_[v] == b ? local_of_vertex_[v] : -1;
    const SkeletonNode& bn = nodes_[b];
    for (std::size_t k = 0; k < bn.neighbors.size(); ++k)
      if (bn.neighbors[k] == h) return bn.neighbor_local[k];
    return -1;
  }

  /// Block node whose block contains point `x`; hinge node when `x` sits on a hinge.
  int node_of_point(const GraphPoint& x) const {
    return x.is_vertex() ? home_[x.vertex] : edge_node_[x.edge];
  }

  friend SkeletonTree build_skeleton(const CactusGraph& g);

 private:
  std::vector<SkeletonNode> nodes_;
  std::vector<int> home_;
  std::vector<int> hinge_of_vertex_;
  std::vector<int> local_of_vertex_;
  std::vector<int> edge_node_;
  std::vector<std::pair<int, int>> edge_local_;
  std::vector<int> edge_slot_;
  std::vector<int> ints_;
  std::vector<double> reals_;
  std::vector<LocalArc> arcs_;
};

inline SkeletonTree build_skeleton(const CactusGraph& g) {
  const int n = g.vertex_count();
  const int m = g.edge_count();
  SkeletonTree sk;
  sk.home_.assign(n, -1);
  sk.hinge_of_vertex_.assign(n, -1);
  sk.local_of_vertex_.assign(n, -1);
  sk.edge_node_.assign(m, -1);
  sk.edge_local_.assign(m, {-1, -1});
  sk.edge_slot_.assign(m, -1);

  if (m == 0) {
    sk.ints_ = {0, 0, 0, 0};  // vertex 0, arc_start {0, 0}, owned {0}
    SkeletonNode only;
    only.kind = NodeKind::Graft;
    only.vertices = {sk.ints_.data(), 1};
    only.arc_start = {sk.ints_.data() + 1, 2};
    only.owned = {sk.ints_.data() + 3, 1};
    sk.nodes_.push_back(only);
    sk.home_[0] = 0;
    sk.local_of_vertex_[0] = 0;
    return sk;
  }

  // Bridges are grouped into grafts through shared non-cycle vertices.
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int v = 0; v < n; ++v) {
    if (g.on_cycle(v)) continue;
    int first = -1;
    for (int e : g.incident(v)) {
      if (first < 0) first = e;
      else parent[find(e)] = find(first);
    }
  }

  // Block nodes in order of their smallest edge, then hinge nodes by vertex.
  std::vector<NodeKind> kind;
  std::vector<int> source;  // cycle: graph block id; hinge: vertex
  {
    std::vector<int> block_node(g.block_count(), -1);
    std::vector<int> graft_node(m, -1);
    for (int e = 0; e < m; ++e) {
      const int b = g.block_of(e);
      int& slot = g.is_cycle_block(b) ? block_node[b] : graft_node[find(e)];
      if (slot < 0) {
        slot = static_cast<int>(kind.size());
        kind.push_back(g.is_cycle_block(b) ? NodeKind::Cycle : NodeKind::Graft);
        source.push_back(b);
      }
      sk.edge_node_[e] = slot;
    }
  }
  const int block_count = static_cast<int>(kind.size());
  for (int v = 0; v < n; ++v) {
    if (!g.on_cycle(v) || g.degree(v) < 3) continue;
    sk.hinge_of_vertex_[v] = sk.home_[v] = static_cast<int>(kind.size());
    kind.push_back(NodeKind::Hinge);
    source.push_back(v);
  }
  const int total = static_cast<int>(kind.size());

  // Sizes of every node's arrays.
  std::vector<int> n_edges(total, 0), n_nbrs(total, 0), n_owned(total, 0);
  for (int e = 0; e < m; ++e) ++n_edges[sk.edge_node_[e]];
  std::vector<int> seen(total, -1);
  for (int h = block_count; h < total; ++h)
    for (int e : g.incident(source[h])) {
      const int b = sk.edge_node_[e];
      if (seen[b] == h) continue;
      seen[b] = h;
      ++n_nbrs[h];
      ++n_nbrs[b];
    }
  for (int v = 0; v < n; ++v) {
    if (sk.home_[v] < 0) sk.home_[v] = sk.edge_node_[g.incident(v).front()];
    ++n_owned[sk.home_[v]];
  }

  // Each node's ints are contiguous: vertices, edges, arc_start, neighbors,
  // neighbor_local, owned.
  struct Layout {
    int vert, edge, arc_start, nbr, nbr_local, own, end;
    int arc, real;
  };
  std::vector<Layout> lay(total);
  std::size_t ints = 0, arcs = 0, reals = 0;
  for (int u = 0; u < total; ++u) {
    const int k = n_edges[u];
    const int nv = kind[u] == NodeKind::Hinge ? 1 : kind[u] == NodeKind::Cycle ? k : k + 1;
    Layout& l = lay[u];
    l.vert = static_cast<int>(ints);
    l.edge = l.vert + nv;
    l.arc_start = l.edge + k;
    l.nbr = l.arc_start + (kind[u] == NodeKind::Graft ? nv + 1 : 0);
    l.nbr_local = l.nbr + n_nbrs[u];
    l.own = l.nbr_local + n_nbrs[u];
    l.end = l.own + n_owned[u];
    ints = l.end;
    l.arc = static_cast<int>(arcs);
    l.real = static_cast<int>(reals);
    if (kind[u] == NodeKind::Graft) arcs += 2 * k;
    if (kind[u] == NodeKind::Cycle) reals += k;
  }
  sk.ints_.assign(ints, 0);
  sk.arcs_.resize(arcs);
  sk.reals_.resize(reals);
  int* const I = sk.ints_.data();

  // Edges: cycles in clockwise order, grafts ascending.
  std::vector<int> cursor(total);
  for (int u = 0; u < total; ++u) cursor[u] = lay[u].edge;
  for (int u = 0; u < block_count; ++u)
    if (kind[u] == NodeKind::Cycle) {
      const Block blk = g.block(source[u]);
      std::copy(blk.edges.begin(), blk.edges.end(), I + lay[u].edge);
      std::copy(blk.vertices.begin(), blk.vertices.end(), I + lay[u].vert);
    }
  for (int e = 0; e < m; ++e) {
    const int u = sk.edge_node_[e];
    if (kind[u] == NodeKind::Graft) I[cursor[u]++] = e;
  }

  // Local indices inside each block, plus graft adjacency.
  std::vector<int> stamp(n, -1), local(n, -1), fill;
  for (int b = 0; b < block_count; ++b) {
    const Layout& l = lay[b];
    const int k = n_edges[b];
    int* verts = I + l.vert;
    const int* edges = I + l.edge;
    if (kind[b] == NodeKind::Cycle) {
      double acc = 0.0;
      for (int j = 0; j < k; ++j) {
        stamp[verts[j]] = b;
        local[verts[j]] = j;
        sk.edge_slot_[edges[j]] = j;
        sk.reals_[l.real + j] = acc;
        acc += g.edge(edges[j]).length;
      }
      sk.nodes_.push_back({});
      sk.nodes_.back().circumference = acc;
    } else {
      int nv = 0;
      int* arc_start = I + l.arc_start;
      for (int j = 0; j < k; ++j) {
        const Edge& ed = g.edge(edges[j]);
        for (int x : {ed.u, ed.v})
          if (stamp[x] != b) {
            stamp[x] = b;
            local[x] = nv;
            verts[nv++] = x;
          }
        ++arc_start[local[ed.u] + 1];
        ++arc_start[local[ed.v] + 1];
      }
      for (int a = 0; a < nv; ++a) arc_start[a + 1] += arc_start[a];
      LocalArc* arc_list = sk.arcs_.data() + l.arc;
      fill.assign(arc_start, arc_start + nv);
      for (int j = 0; j < k; ++j) {
        const Edge& ed = g.edge(edges[j]);
        const int a = local[ed.u], c = local[ed.v];
        arc_list[fill[a]++] = {c, ed.length, edges[j]};
        arc_list[fill[c]++] = {a, ed.length, edges[j]};
      }
      sk.nodes_.push_back({});
    }
    for (int j = 0; j < k; ++j) {
      const Edge& ed = g.edge(edges[j]);
      sk.edge_local_[edges[j]] = {local[ed.u], local[ed.v]};
    }
    const int nv = kind[b] == NodeKind::Cycle ? k : k + 1;
    for (int j = 0; j < nv; ++j)
      if (sk.local_of_vertex_[verts[j]] < 0 && sk.hinge_of_vertex_[verts[j]] < 0)
        sk.local_of_vertex_[verts[j]] = local[verts[j]];
  }
  for (int h = block_count; h < total; ++h) {
    I[lay[h].vert] = source[h];
    sk.nodes_.push_back({});
  }

  // Hinge adjacency, in vertex order of the hinges.
  for (int u = 0; u < total; ++u) cursor[u] = 0;
  std::fill(seen.begin(), seen.end(), -1);
  for (int h = block_count; h < total; ++h) {
    const int v = source[h];
    for (int e : g.incident(v)) {
      const int b = sk.edge_node_[e];
      if (seen[b] == h) continue;
      seen[b] = h;
      const auto [lu, lv] = sk.edge_local_[e];
      const int li = g.edge(e).u == v ? lu : lv;
      I[lay[h].nbr + cursor[h]] = b;
      I[lay[h].nbr_local + cursor[h]++] = li;
      I[lay[b].nbr + cursor[b]] = h;
      I[lay[b].nbr_local + cursor[b]++] = li;
    }
  }
  for (int u = 0; u < total; ++u) cursor[u] = lay[u].own;
  for (int v = 0; v < n; ++v) I[cursor[sk.home_[v]]++] = v;

  for (int u = 0; u < total; ++u) {
    const Layout& l = lay[u];
    SkeletonNode& nd = sk.nodes_[u];
    const int k = n_edges[u];
    nd.kind = kind[u];
    nd.vertices = {I + l.vert, static_cast<std::size_t>(l.edge - l.vert)};
    nd.edges = {I + l.edge, static_cast<std::size_t>(k)};
    if (kind[u] == NodeKind::Graft) {
      nd.arc_start = {I + l.arc_start, static_cast<std::size_t>(l.nbr - l.arc_start)};
      nd.arc_list = {sk.arcs_.data() + l.arc, static_cast<std::size_t>(2 * k)};
    }
    if (kind[u] == NodeKind::Cycle) nd.position = {sk.reals_.data() + l.real, static_cast<std::size_t>(k)};
    nd.neighbors = {I + l.nbr, static_cast<std::size_t>(n_nbrs[u])};
    nd.neighbor_local = {I + l.nbr_local, static_cast<std::size_t>(n_nbrs[u])};
    nd.owned = {I + l.own, static_cast<std::size_t>(n_owned[u])};
  }
  return sk;
}

// ---------------------------------------------------------------------------
// Distance propagation through blocks.

namespace detail {

using TreeStack = std::vector<std::pair<int, int>>;

// Pushes distances outward through a graft from the entries already on `stack`.
inline void grow_graft(const SkeletonNode& nd, TreeStack& stack, std::vector<double>& dist) {
  while (!stack.empty()) {
    auto [a, from] = stack.back();
    stack.pop_back();
    for (const LocalArc& arc : nd.arcs(a)) {
      if (arc.to == from) continue;
      dist[nd.vertices[arc.to]] = dist[nd.vertices[a]] + arc.length;
      stack.push_back({arc.to, a});
    }
  }
}

inline void fill_block_from_local(const SkeletonNode& nd, int src, double base, std::vector<double>& dist,
                                  TreeStack& stack) {
  if (nd.kind == NodeKind::Cycle) {
    const double p = nd.position[src];
    const double len = nd.circumference;
    for (std::size_t k = 0; k < nd.vertices.size(); ++k) {
      double d = std::abs(nd.position[k] - p);
      d = std::min(d, len - d);
      dist[nd.vertices[k]] = base + d;
    }
    return;
  }
  dist[nd.vertices[src]] = base;
  stack.push_back({src, -1});
  grow_graft(nd, stack, dist);
}

}  // namespace detail

/// Writes into `dist` the distance from local vertex `src` (at distance
/// `base`) to every vertex of block node `b`.
inline void fill_block_from_local(const CactusGraph& g, const SkeletonTree& sk, int b, int src,
                                  double base, std::vector<double>& dist) {
  (void)g;
  detail::TreeStack stack;
  detail::fill_block_from_local(sk.node(b), src, base, dist, stack);
}

/// Clockwise arc position of point `x` on cycle node `b`.
inline double cycle_position(const CactusGraph& g, const SkeletonTree& sk, int b, const GraphPoint& x) {
  const SkeletonNode& nd = sk.node(b);
  if (x.is_vertex()) return nd.position[sk.local_index(b, x.vertex)];
  const int k = sk.edge_slot(x.edge);
  const Edge& ed = g.edge(x.edge);
  const double off = ed.u == nd.vertices[k] ? x.t : ed.length - x.t;
  return nd.position[k] + off;
}

/// Distances from point `x` (lying on block `b`) to every vertex of the block.
inline void fill_block_from_point(const CactusGraph& g, const SkeletonTree& sk, int b,
                                  const GraphPoint& x, double base, std::vector<double>& dist) {
  const SkeletonNode& nd = sk.node(b);
  if (x.is_vertex()) {
    fill_block_from_local(g, sk, b, sk.local_index(b, x.vertex), base, dist);
    return;
  }
  if (nd.kind == NodeKind::Cycle) {
    const double p = cycle_position(g, sk, b, x);
    for (std::size_t k = 0; k < nd.vertices.size(); ++k) {
      double d = std::abs(nd.position[k] - p);
      d = std::min(d, nd.circumference - d);
      dist[nd.vertices[k]] = base + d;
    }
    return;
  }
  // Graft edge: grow the two sides of the edge separately.
  const Edge& ed = g.edge(x.edge);
  const auto [lu, lv] = sk.edge_local(x.edge);
  detail::TreeStack stack{{lu, lv}, {lv, lu}};
  dist[ed.u] = base + x.t;
  dist[ed.v] = base + ed.length - x.t;
  detail::grow_graft(nd, stack, dist);
}

/// Pre-order walk over the component of T - {parent} that contains `root`,
/// filling `dist` for every vertex of every visited node. `source` must lie
/// on the block of `root` (or be the vertex of hinge `root`).
template <class Visit>
void skeleton_walk(const CactusGraph& g, const SkeletonTree& sk, int root, int parent,
                   const GraphPoint& source, double base, std::vector<double>& dist, Visit&& visit) {
  struct Item {
    int node;
    int parent;
    int entry;  // local index of the parent hinge inside this block
  };
  std::vector<Item> stack;
  detail::TreeStack scratch;
  const SkeletonNode& rn = sk.node(root);
  if (rn.is_block()) {
    fill_block_from_point(g, sk, root, source, base, dist);
  } else {
    dist[rn.hinge_vertex()] = base;
  }
  visit(root);
  auto push_children = [&](int u, int from) {
    const SkeletonNode& nd = sk.node(u);
    for (std::size_t k = nd.neighbors.size(); k-- > 0;) {
      const int w = nd.neighbors[k];
      if (w == from) continue;
      stack.push_back({w, u, nd.is_block() ? -1 : nd.neighbor_local[k]});
    }
  };
  push_children(root, parent);
  while (!stack.empty()) {
    const Item it = stack.back();
    stack.pop_back();
    const SkeletonNode& nd = sk.node(it.node);
    if (nd.is_block()) {
      const int hv = sk.node(it.parent).hinge_vertex();
      detail::fill_block_from_local(nd, it.entry, dist[hv], dist, scratch);
    }
    visit(it.node);
    push_children(it.node, it.parent);
  }
}

/// Pre-order list of nodes of the component of T - {parent} containing `root`.
inline std::vector<int> subtree_nodes(const SkeletonTree& sk, int root, int parent) {
  std::vector<int> out;
  std::vector<std::pair<int, int>> stack{{root, parent}};
  while (!stack.empty()) {
    auto [u, from] = stack.back();
    stack.pop_back();
    out.push_back(u);
    const auto& nb = sk.node(u).neighbors;
    for (std::size_t k = nb.size(); k-- > 0;)
      if (nb[k] != from) stack.push_back({nb[k], u});
  }
  return out;
}

// ---------------------------------------------------------------------------
// H-subtrees and centroids.

struct SplitSubtree {
  int hinge = -1;  // hinge node of the H-subtree the split hangs from
  int root = -1;   // block node adjacent to `hinge`, root of the split
  std::vector<int> nodes;
};

struct HSubtree {
  int block = -1;
  std::vector<int> hinges;
  std::vector<SplitSubtree> splits;
};

inline HSubtree h_subtree(const SkeletonTree& sk, int u) {
  if (u < 0 || u >= sk.node_count() || !sk.node(u).is_block())
    throw Error(Errc::NotABlockNode, "node " + std::to_string(u));
  HSubtree hs;
  hs.block = u;
  for (int h : sk.node(u).neighbors) {
    hs.hinges.push_back(h);
    for (int b : sk.node(h).neighbors) {
      if (b == u) continue;
      hs.splits.push_back({h, b, subtree_nodes(sk, b, h)});
    }
  }
  return hs;
}

/// Node of the connected node set `live` whose every split part within
/// `live` has at most floor(|live| / 2) nodes; smallest id on ties.
inline int centroid(const SkeletonTree& sk, const std::vector<int>& live) {
  if (live.empty()) throw Error(Errc::EmptySubtree, "centroid of an empty subtree");
  const int total = static_cast<int>(live.size());
  std::vector<char> in(sk.node_count(), 0);
  for (int u : live) in[u] = 1;
  const int root = *std::min_element(live.begin(), live.end());
  std::vector<int> order, par(sk.node_count(), -1), size(sk.node_count(), 0);
  std::vector<int> stack{root};
  par[root] = root;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    order.push_back(u);
    for (int w : sk.node(u).neighbors) {
      if (!in[w] || par[w] != -1) continue;
      par[w] = u;
      stack.push_back(w);
    }
  }
  if (static_cast<int>(order.size()) != total)
    throw Error(Errc::InternalInconsistency, "live node set is not connected");
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    size[*it] += 1;
    if (*it != root) size[par[*it]] += size[*it];
  }
  int best = -1;
  for (int u : live) {
    int worst = total - size[u];
    for (int w : sk.node(u).neighbors)
      if (in[w] && par[w] == u) worst = std::max(worst, size[w]);
    if (worst <= total / 2 && (best < 0 || u < best)) best = u;
  }
  return best;
}

}  // namespace cactus_center
