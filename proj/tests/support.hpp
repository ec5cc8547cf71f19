#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "cactus_center/cactus_center.hpp"
#include "cactus_center/generator.hpp"

namespace cactus_center::testing {

inline double rel_gap(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

inline UncertainPoint at_vertices(std::vector<std::pair<int, double>> locs, double weight = 1.0,
                                  double constant = 0.0) {
  UncertainPoint p{weight, constant, {}};
  for (auto [v, f] : locs) p.locations.push_back({GraphPoint::at_vertex(v), f});
  return p;
}

// Small hand-checkable instances.
inline Instance fixture_a() {
  return {build_graph(3, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}}), {at_vertices({{0, 0.5}, {1, 0.5}})}};
}
inline Instance fixture_b() {
  return {build_graph(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}}), {at_vertices({{0, 0.5}, {2, 0.5}})}};
}
inline Instance fixture_c() {
  return {build_graph(3, {{0, 1, 1}, {1, 2, 1}}), {at_vertices({{0, 1.0}}), at_vertices({{2, 1.0}})}};
}
inline Instance fixture_d() {
  return {build_graph(4, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}, {0, 3, 2}}),
          {at_vertices({{3, 1.0}}), at_vertices({{1, 1.0}})}};
}

/// General cactus with |V| <= max_v, up to max_cycles cycles, n <= max_n, m <= max_m.
inline GenParams general_params(Rng& rng, std::uint64_t seed, int max_v = 40, int max_cycles = 6, int max_n = 6,
                                int max_m = 5, double interior = 0.3) {
  GenParams p;
  p.vertices = rng.between(1, max_v);
  p.cycle_min = 2;
  p.cycle_max = rng.between(2, 8);
  p.cycles = std::min(rng.between(0, max_cycles), (p.vertices - 1) / (p.cycle_min - 1));
  p.n = rng.between(1, max_n);
  p.m = rng.between(1, max_m);
  p.interior_fraction = interior;
  p.constant_max = rng.below(2) ? 3.0 : 0.0;
  p.seed = seed;
  return p;
}

inline Instance random_general(std::uint64_t seed, int max_v = 40, int max_cycles = 6, int max_n = 6, int max_m = 5,
                               double interior = 0.3) {
  Rng rng(seed * 0x9E3779B97F4A7C15ULL + 17);
  return generate_instance(general_params(rng, seed, max_v, max_cycles, max_n, max_m, interior));
}

/// Random tree with vertex-only or mixed locations.
inline Instance random_tree(std::uint64_t seed, int max_v = 50, double interior = 0.0) {
  Rng rng(seed * 0xD1B54A32D192ED03ULL + 5);
  GenParams p;
  p.vertices = rng.between(1, max_v);
  p.cycles = 0;
  p.n = rng.between(1, 6);
  p.m = rng.between(1, 5);
  p.interior_fraction = interior;
  p.constant_max = rng.below(2) ? 3.0 : 0.0;
  p.seed = seed;
  return generate_instance(p);
}

/// One cycle on N vertices with every location on a vertex.
inline Instance random_cycle(std::uint64_t seed, int max_vertices = 60) {
  Rng rng(seed * 0xA24BAED4963EE407ULL + 11);
  GenParams p;
  p.vertices = rng.between(2, max_vertices);
  p.cycles = 1;
  p.cycle_min = p.cycle_max = p.vertices;
  p.n = rng.between(1, 6);
  p.m = rng.between(1, 5);
  p.interior_fraction = 0.0;
  p.constant_min = 0.0;
  p.constant_max = 5.0;
  p.seed = seed;
  return generate_instance(p);
}

/// Random point anywhere on the graph: a vertex or an edge interior.
inline GraphPoint random_point(Rng& rng, const CactusGraph& g) {
  if (g.edge_count() == 0 || rng.below(3) == 0) return GraphPoint::at_vertex(rng.below(g.vertex_count()));
  const int e = rng.below(g.edge_count());
  return g.point_on_edge(e, g.edge(e).length * rng.uniform(0.01, 0.99));
}

/// Lowest max_i Ed(P_i, .) over offsets [a, b] of edge e, from the oracle's
/// breakpoints and the naive evaluator only.
inline double edge_range_min(const Instance& inst, const std::vector<std::vector<double>>& bp, int e, double a,
                             double b) {
  std::vector<double> ts{a, b};
  for (double t : bp[e])
    if (t > a && t < b) ts.push_back(t);
  std::sort(ts.begin(), ts.end());
  const int n = static_cast<int>(inst.points.size());
  std::vector<double> prev = expected_distances_naive(inst, inst.graph.point_on_edge(e, ts[0]));
  double best = *std::max_element(prev.begin(), prev.end());
  std::vector<Line> lines(n);
  for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
    if (ts[k + 1] - ts[k] <= 0.0) continue;
    const auto next = expected_distances_naive(inst, inst.graph.point_on_edge(e, ts[k + 1]));
    for (int i = 0; i < n; ++i) {
      const double slope = (next[i] - prev[i]) / (ts[k + 1] - ts[k]);
      lines[i] = {slope, prev[i] - slope * ts[k]};
    }
    best = std::min(best, pairwise_envelope_min(lines, ts[k], ts[k + 1]).value);
    prev = next;
  }
  return best;
}

/// Lowest objective over the union of whole edges.
inline double edges_min(const Instance& inst, const std::vector<std::vector<double>>& bp,
                        const std::vector<int>& edges) {
  double best = kInf;
  for (int e : edges) best = std::min(best, edge_range_min(inst, bp, e, 0.0, inst.graph.edge(e).length));
  return best;
}

/// Edges of all block nodes in `nodes`.
inline std::vector<int> node_edges(const SkeletonTree& sk, const std::vector<int>& nodes) {
  std::vector<int> out;
  for (int u : nodes)
    if (sk.node(u).is_block()) out.insert(out.end(), sk.node(u).edges.begin(), sk.node(u).edges.end());
  return out;
}

/// Vertex-constrained version of an instance, for code that needs one.
inline Instance reduced(const Instance& inst) { return to_vertex_constrained(inst).instance; }

}  // namespace cactus_center::testing
