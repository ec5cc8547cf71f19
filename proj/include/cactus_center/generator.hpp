#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cactus_center/error.hpp"
#include "cactus_center/graph.hpp"
#include "cactus_center/model.hpp"

namespace cactus_center {

struct GenParams {
  int vertices = 20;
  int cycles = 2;
  int cycle_min = 3;
  int cycle_max = 6;
  int n = 3;
  int m = 3;
  double weight_min = 0.5;
  double weight_max = 2.0;
  double length_min = 0.5;
  double length_max = 3.0;
  double constant_min = 0.0;
  double constant_max = 0.0;
  double interior_fraction = 0.3;  // share of locations placed inside edges
  std::uint64_t seed = 1;
};

/// Draws from mt19937_64 with fixed arithmetic so a seed means the same
/// instance on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  int below(int k) { return static_cast<int>(eng_() % static_cast<std::uint64_t>(k)); }
  int between(int a, int b) { return a + below(b - a + 1); }

 private:
  std::mt19937_64 eng_;
};

/// Random cactus: a random tree whose vertices or bridges are then grown into cycles.
inline CactusGraph random_cactus(Rng& rng, const GenParams& p) {
  if (p.vertices < 1) throw Error(Errc::InfeasibleParams, "vertex budget must be positive");
  if (p.cycles < 0 || p.cycle_min < 2 || p.cycle_max < p.cycle_min)
    throw Error(Errc::InfeasibleParams, "bad cycle parameters");
  if (!(p.length_min > 0.0) || p.length_max < p.length_min) throw Error(Errc::InfeasibleParams, "bad edge lengths");
  if (p.cycles > 0 && p.cycles * (p.cycle_min - 1) + 1 > p.vertices)
    throw Error(Errc::InfeasibleParams, "cycles do not fit in " + std::to_string(p.vertices) + " vertices");

  std::vector<int> sizes(p.cycles);
  int spent = 0;
  for (int c = 0; c < p.cycles; ++c) {
    const int room = p.vertices - 1 - spent - (p.cycles - c - 1) * (p.cycle_min - 1);
    sizes[c] = std::min(rng.between(p.cycle_min, p.cycle_max), room + 1);
    spent += sizes[c] - 1;
  }
  const int tree_n = p.vertices - spent;
  auto len = [&]() { return rng.uniform(p.length_min, p.length_max); };
  std::vector<Edge> edges;
  std::vector<int> bridges;
  for (int v = 1; v < tree_n; ++v) {
    bridges.push_back(static_cast<int>(edges.size()));
    edges.push_back({rng.below(v), v, len()});
  }
  int next = tree_n;
  for (int s : sizes) {
    if (!bridges.empty() && rng.below(2) == 0) {
      // Close a bridge into a cycle and spend the spare vertex on a leaf.
      const int slot = rng.below(static_cast<int>(bridges.size()));
      const Edge b = edges[bridges[slot]];
      bridges.erase(bridges.begin() + slot);
      int prev = b.u;
      for (int k = 0; k < s - 2; ++k) {
        edges.push_back({prev, next, len()});
        prev = next++;
      }
      edges.push_back({prev, b.v, len()});
      bridges.push_back(static_cast<int>(edges.size()));
      edges.push_back({rng.below(next), next, len()});
      ++next;
    } else {
      const int at = rng.below(next);
      int prev = at;
      for (int k = 0; k < s - 1; ++k) {
        edges.push_back({prev, next, len()});
        prev = next++;
      }
      edges.push_back({prev, at, len()});
    }
  }
  return build_graph(next, edges);
}

/// Random uncertain points with m locations each on graph `g`.
inline std::vector<UncertainPoint> random_points(Rng& rng, const CactusGraph& g, const GenParams& p) {
  if (p.n < 1 || p.m < 1) throw Error(Errc::InfeasibleParams, "n and m must be positive");
  std::vector<UncertainPoint> out;
  for (int i = 0; i < p.n; ++i) {
    UncertainPoint up;
    up.weight = rng.uniform(p.weight_min, p.weight_max);
    up.constant = rng.uniform(p.constant_min, p.constant_max);
    std::vector<GraphPoint> where;
    for (int j = 0; j < p.m; ++j) {
      if (g.edge_count() > 0 && rng.uniform() < p.interior_fraction) {
        const int e = rng.below(g.edge_count());
        where.push_back(g.point_on_edge(e, g.edge(e).length * rng.uniform(0.05, 0.95)));
      } else {
        where.push_back(GraphPoint::at_vertex(rng.below(g.vertex_count())));
      }
    }
    std::sort(where.begin(), where.end(), [](const GraphPoint& a, const GraphPoint& b) {
      if (a.edge != b.edge) return a.edge < b.edge;
      return a.is_vertex() ? a.vertex < b.vertex : a.t < b.t;
    });
    std::vector<double> raw(p.m);
    double total = 0.0;
    for (double& r : raw) total += (r = rng.uniform(0.1, 1.0));
    double used = 0.0;
    for (int j = 0; j < p.m; ++j) {
      const double f = j + 1 == p.m ? 1.0 - used : raw[j] / total;
      used += f;
      up.locations.push_back({where[j], f});
    }
    out.push_back(std::move(up));
  }
  return out;
}

inline Instance generate_instance(const GenParams& p) {
  Rng rng(p.seed);
  Instance inst;
  inst.graph = random_cactus(rng, p);
  inst.points = random_points(rng, inst.graph, p);
  return inst;
}

}  // namespace cactus_center
