#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "cactus_center/envelope.hpp"
#include "cactus_center/graph.hpp"
#include "cactus_center/model.hpp"

// Brute-force ground truth. Shares only the graph core and the naive
// evaluator with the solver: no skeleton, no sweep, no detection.

namespace cactus_center {

/// Leftmost lowest point of max(lines) on [a, b] by trying every pairwise
/// intersection inside the range.
inline EnvelopeMin pairwise_envelope_min(std::span<const Line> lines, double a, double b) {
  auto f = [&](double x) {
    double v = -kInf;
    for (const Line& l : lines) v = std::max(v, l.at(x));
    return v;
  };
  std::vector<double> cand{a, b};
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const double ds = lines[i].slope - lines[j].slope;
      if (ds == 0.0) continue;
      const double x = (lines[j].intercept - lines[i].intercept) / ds;
      if (x > a && x < b) cand.push_back(x);
    }
  std::sort(cand.begin(), cand.end());
  EnvelopeMin best{a, kInf};
  for (double x : cand) {
    const double v = f(x);
    if (v < best.value - 1e-12 * (1.0 + std::abs(v))) best = {x, v};
  }
  return best;
}

/// Per edge, the sorted offsets between which every Ed(P_i, .) is linear:
/// edge ends, interior locations, and on cycle edges the antipodes of every
/// cycle vertex and interior location.
inline std::vector<std::vector<double>> oracle_breakpoints(const Instance& inst) {
  const CactusGraph& g = inst.graph;
  std::vector<std::vector<double>> bp(g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) bp[e] = {0.0, g.edge(e).length};
  for (const auto& p : inst.points)
    for (const auto& l : p.locations)
      if (!l.position.is_vertex()) bp[l.position.edge].push_back(l.position.t);

  for (const Block& b : biconnected_blocks(g)) {
    if (!b.is_cycle) continue;
    const int k = static_cast<int>(b.edges.size());
    std::vector<double> start(k);
    std::vector<char> forward(k);
    double len = 0.0;
    for (int s = 0; s < k; ++s) {
      start[s] = len;
      forward[s] = g.edge(b.edges[s]).u == b.vertices[s];
      len += g.edge(b.edges[s]).length;
    }
    // Arc positions of every cycle vertex and interior location.
    std::vector<double> marks(start);
    for (int s = 0; s < k; ++s) {
      const int e = b.edges[s];
      const double el = g.edge(e).length;
      for (double t : bp[e])
        if (t > 0.0 && t < el) marks.push_back(start[s] + (forward[s] ? t : el - t));
    }
    for (double m : marks) {
      double a = m + 0.5 * len;
      if (a >= len) a -= len;
      int s = static_cast<int>(std::upper_bound(start.begin(), start.end(), a) - start.begin()) - 1;
      s = std::clamp(s, 0, k - 1);
      const int e = b.edges[s];
      const double el = g.edge(e).length;
      const double off = std::clamp(a - start[s], 0.0, el);
      bp[e].push_back(forward[s] ? off : el - off);
    }
  }
  for (auto& v : bp) {
    std::sort(v.begin(), v.end());
    std::vector<double> uniq;
    for (double t : v)
      if (uniq.empty() || t - uniq.back() > kSnapEps) uniq.push_back(t);
    uniq.back() = v.back();
    v = std::move(uniq);
  }
  return bp;
}

/// Exact center by evaluating every Ed at all breakpoints and minimizing the
/// upper envelope edge piece by edge piece. Ties go to the lowest edge id,
/// then the smallest offset.
inline CenterResult brute_force_center(const Instance& inst) {
  require_valid(inst);
  const CactusGraph& g = inst.graph;
  if (g.edge_count() == 0) {
    const GraphPoint x = GraphPoint::at_vertex(0);
    return {x, max_expected_distance_naive(inst, x)};
  }
  const auto bp = oracle_breakpoints(inst);
  const int n = static_cast<int>(inst.points.size());
  std::vector<Line> lines(n);
  int best_edge = -1;
  EnvelopeMin best{0.0, kInf};
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto& ts = bp[e];
    std::vector<std::vector<double>> eds;
    eds.reserve(ts.size());
    for (double t : ts) {
      GraphPoint x{-1, e, t};
      eds.push_back(expected_distances_naive(inst, x));
    }
    for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
      const double t0 = ts[k], t1 = ts[k + 1];
      for (int i = 0; i < n; ++i) {
        const double slope = (eds[k + 1][i] - eds[k][i]) / (t1 - t0);
        lines[i] = {slope, eds[k][i] - slope * t0};
      }
      const EnvelopeMin m = pairwise_envelope_min(lines, t0, t1);
      if (m.value < best.value - 1e-12 * (1.0 + std::abs(m.value))) {
        best = m;
        best_edge = e;
      }
    }
  }
  const GraphPoint x = g.point_on_edge(best_edge, best.x);
  return {x, max_expected_distance_naive(inst, x)};
}

}  // namespace cactus_center
