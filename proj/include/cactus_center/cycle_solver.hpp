#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "cactus_center/envelope.hpp"
#include "cactus_center/error.hpp"
#include "cactus_center/model.hpp"

namespace cactus_center {

/// Positions closer than this on a cycle are merged into one vertex.
inline constexpr double kMergeEps = 1e-9;

struct CycleLocation {
  int vertex = 0;  // local cycle vertex index
  double prob = 0.0;
};

struct CyclePoint {
  double weight = 1.0;
  double constant = 0.0;
  std::vector<CycleLocation> locations;
};

/// Uncertain points on a bare cycle. Edge k joins local vertices k and k + 1 (mod M).
struct CycleProblem {
  std::vector<double> edge_length;
  std::vector<CyclePoint> points;

  int vertex_count() const { return static_cast<int>(edge_length.size()); }
};

/// The cycle with every vertex's antipodal point inserted, unrolled on the
/// x-axis starting at vertex 0.
struct AugmentedCycle {
  double circumference = 0.0;
  std::vector<double> x;          // x[0] = 0, strictly increasing, all < circumference
  std::vector<int> original;      // original vertex at x[s], or -1
  std::vector<int> antipode;      // unrolled index s^c with s < s^c < s + N
  std::vector<double> vertex_pos; // arc position of each original vertex
  std::vector<int> aug_of_vertex; // augmented index of each original vertex

  int size() const { return static_cast<int>(x.size()); }
  /// Coordinate of unrolled index k (u_{k+N} is u_k shifted by the circumference).
  double coord(int k) const {
    const int n = size();
    return x[k % n] + static_cast<double>(k / n) * circumference;
  }
};

inline AugmentedCycle augment_cycle(const std::vector<double>& edge_length) {
  const int m = static_cast<int>(edge_length.size());
  if (m < 2) throw Error(Errc::NotACycle, "a cycle needs at least two vertices");
  AugmentedCycle ac;
  double acc = 0.0;
  for (int k = 0; k < m; ++k) {
    ac.vertex_pos.push_back(acc);
    acc += edge_length[k];
  }
  const double len = acc;
  ac.circumference = len;

  struct Cand {
    double pos;
    int original;
  };
  std::vector<Cand> cand;
  cand.reserve(2 * m);
  for (int k = 0; k < m; ++k) cand.push_back({ac.vertex_pos[k], k});
  for (int k = 0; k < m; ++k) {
    double p = ac.vertex_pos[k] + 0.5 * len;
    if (p >= len) p -= len;
    if (p >= len - kMergeEps) p = 0.0;
    cand.push_back({p, -1});
  }
  std::stable_sort(cand.begin(), cand.end(), [](const Cand& a, const Cand& b) { return a.pos < b.pos; });
  ac.aug_of_vertex.assign(m, -1);
  for (const Cand& c : cand) {
    if (!ac.x.empty() && c.pos - ac.x.back() <= kMergeEps) {
      if (ac.original.back() < 0 && c.original >= 0) {
        ac.original.back() = c.original;
        ac.x.back() = c.pos;
      }
      if (c.original >= 0) ac.aug_of_vertex[c.original] = ac.size() - 1;
      continue;
    }
    ac.x.push_back(c.pos);
    ac.original.push_back(c.original);
    if (c.original >= 0) ac.aug_of_vertex[c.original] = ac.size() - 1;
  }
  // Vertex 0 sits at the origin by construction.
  ac.x[0] = 0.0;

  // Two-pointer sweep for the antipodal indices.
  const int n = ac.size();
  ac.antipode.resize(n);
  int j = 1;
  for (int s = 0; s < n; ++s) {
    const double target = ac.x[s] + 0.5 * len;
    if (j <= s) j = s + 1;
    while (j < s + n && ac.coord(j) < target - kMergeEps) ++j;
    if (j >= s + n || std::abs(ac.coord(j) - target) > 10 * kMergeEps)
      throw Error(Errc::InternalInconsistency, "antipodal point missing from augmented cycle");
    ac.antipode[s] = j;
  }
  return ac;
}

namespace detail {

struct AugLocations {
  std::vector<int> offsets;
  std::vector<CycleLocation> entries;  // vertex field holds the point index

  std::span<const CycleLocation> at(int s) const {
    return {entries.data() + offsets[s], entries.data() + offsets[s + 1]};
  }
};

inline AugLocations index_locations(const AugmentedCycle& ac, const CycleProblem& prob) {
  const auto& aug_of = ac.aug_of_vertex;
  AugLocations out;
  out.offsets.assign(ac.size() + 1, 0);
  for (const auto& p : prob.points)
    for (const auto& l : p.locations) out.offsets[aug_of[l.vertex] + 1]++;
  for (int s = 0; s < ac.size(); ++s) out.offsets[s + 1] += out.offsets[s];
  out.entries.resize(out.offsets.back());
  std::vector<int> fill(out.offsets.begin(), out.offsets.end() - 1);
  for (int i = 0; i < static_cast<int>(prob.points.size()); ++i)
    for (const auto& l : prob.points[i].locations) out.entries[fill[aug_of[l.vertex]]++] = {i, l.prob};
  return out;
}

}  // namespace detail

/// Per-point line coefficients for the current interval [x_s, x_{s+1}].
///
/// F is the probability mass in the clockwise window [x_{s+1}, x_{s^c}],
/// D = w * sum f * x over that window and Dc = w * sum f * (x - L) over the
/// counterclockwise window [x_{s^c+1}, x_{s+N}], with unrolled coordinates.
/// On the interval Ed(P_i, x) = w (1 - 2F) x + c + D - Dc.
class CoefficientState {
 public:
  CoefficientState(const AugmentedCycle& ac, const CycleProblem& prob)
      : ac_(&ac), prob_(&prob), locs_(detail::index_locations(ac, prob)) {
    const int n = static_cast<int>(prob.points.size());
    f_.assign(n, 0.0);
    d_.assign(n, 0.0);
    dc_.assign(n, 0.0);
    const int N = ac.size();
    const int c = ac.antipode[0];
    for (int a = 0; a < N; ++a) {
      const int k = a == 0 ? N : a;
      const double xk = ac.coord(k);
      for (const auto& e : locs_.at(a)) {
        const double w = prob.points[e.vertex].weight;
        if (k <= c) {
          f_[e.vertex] += e.prob;
          d_[e.vertex] += w * e.prob * xk;
        } else {
          dc_[e.vertex] += w * e.prob * (xk - ac.circumference);
        }
      }
    }
    turned_.resize(n);
    for (int i = 0; i < n; ++i) turned_[i] = i;
  }

  int interval() const { return s_; }
  double F(int i) const { return f_[i]; }
  double D(int i) const { return d_[i]; }
  double Dc(int i) const { return dc_[i]; }
  /// Points whose line changed when entering the current interval.
  const std::vector<int>& turned() const { return turned_; }

  Line line(int i) const {
    const auto& p = prob_->points[i];
    return {p.weight * (1.0 - 2.0 * f_[i]), p.constant + d_[i] - dc_[i]};
  }

  /// Moves from interval s to s + 1, touching only locations at u_{s+1},
  /// the vertices entering the clockwise window, and u_{s+1+N}.
  void advance() {
    const AugmentedCycle& ac = *ac_;
    const int N = ac.size();
    const int s = s_ + 1;
    const int c_old = ac.antipode[s_ % N] + (s_ / N) * N;
    const int c_new = ac.antipode[s % N] + (s / N) * N;
    const double len = ac.circumference;
    ++epoch_;
    turned_.clear();
    if (mark_.size() != f_.size()) mark_.assign(f_.size(), 0);
    auto touch = [&](int i) {
      if (mark_[i] != epoch_) {
        mark_[i] = epoch_;
        turned_.push_back(i);
      }
    };
    const double xs = ac.coord(s);
    for (const auto& e : locs_.at(s % N)) {
      const double w = prob_->points[e.vertex].weight;
      f_[e.vertex] -= e.prob;
      d_[e.vertex] -= w * e.prob * xs;
      touch(e.vertex);
    }
    for (int k = c_old + 1; k <= c_new; ++k) {
      const double xk = ac.coord(k);
      for (const auto& e : locs_.at(k % N)) {
        const double w = prob_->points[e.vertex].weight;
        f_[e.vertex] += e.prob;
        d_[e.vertex] += w * e.prob * xk;
        dc_[e.vertex] -= w * e.prob * (xk - len);
        touch(e.vertex);
      }
    }
    const double xsn = ac.coord(s + N);
    for (const auto& e : locs_.at(s % N)) {
      const double w = prob_->points[e.vertex].weight;
      dc_[e.vertex] += w * e.prob * (xsn - len);
    }
    std::sort(turned_.begin(), turned_.end());
    s_ = s;
  }

 private:
  const AugmentedCycle* ac_;
  const CycleProblem* prob_;
  detail::AugLocations locs_;
  std::vector<double> f_, d_, dc_;
  std::vector<int> turned_;
  std::vector<int> mark_;
  int epoch_ = 0;
  int s_ = 0;
};

struct CycleSolution {
  double position = 0.0;  // clockwise arc from local vertex 0, in [0, L)
  int vertex = -1;        // local vertex when the center sits on one
  int edge = -1;          // local edge otherwise
  double offset = 0.0;    // along edge `edge` from its vertex `edge`
  double objective = 0.0;
};

inline CycleSolution solve_cycle(const CycleProblem& prob) {
  const AugmentedCycle ac = augment_cycle(prob.edge_length);
  const int N = ac.size();
  const int n = static_cast<int>(prob.points.size());
  CoefficientState state(ac, prob);
  OfflineEnvelope env(N);
  std::vector<Line> active(n);
  std::vector<int> since(n, 0);
  for (int i = 0; i < n; ++i) active[i] = state.line(i);
  for (int s = 1; s < N; ++s) {
    state.advance();
    for (int i : state.turned()) {
      env.add(active[i], since[i], s - 1);
      active[i] = state.line(i);
      since[i] = s;
    }
  }
  for (int i = 0; i < n; ++i) env.add(active[i], since[i], N - 1);
  env.build();

  EnvelopeMin best{0.0, kInf};
  for (int s = 0; s < N; ++s) {
    const EnvelopeMin m = env.minimize(s, ac.coord(s), ac.coord(s + 1));
    if (m.value < best.value - 1e-12 * (1.0 + std::abs(m.value))) best = m;
  }

  CycleSolution sol;
  sol.objective = best.value;
  double x = best.x;
  if (x >= ac.circumference - kSnapEps) x = 0.0;
  sol.position = x;
  const auto& pos = ac.vertex_pos;
  int k = static_cast<int>(std::upper_bound(pos.begin(), pos.end(), x) - pos.begin()) - 1;
  k = std::max(k, 0);
  const double off = x - pos[k];
  const int m = prob.vertex_count();
  if (off <= kSnapEps) {
    sol.vertex = k;
  } else if (off >= prob.edge_length[k] - kSnapEps) {
    sol.vertex = (k + 1) % m;
  } else {
    sol.edge = k;
    sol.offset = off;
  }
  return sol;
}

// ---------------------------------------------------------------------------
// Instance-level entry points.

/// Converts an instance whose graph is one cycle into a CycleProblem
/// following the block's clockwise vertex order.
inline CycleProblem cycle_problem_from_instance(const Instance& inst) {
  const CactusGraph& g = inst.graph;
  if (g.block_count() != 1 || !g.is_cycle_block(0)) throw Error(Errc::NotACycle, "graph is not a single cycle");
  if (!is_vertex_constrained(inst)) throw Error(Errc::NotVertexConstrained, "cycle instance");
  const Block b = g.block(0);
  std::vector<int> local(g.vertex_count(), -1);
  for (std::size_t k = 0; k < b.vertices.size(); ++k) local[b.vertices[k]] = static_cast<int>(k);
  CycleProblem prob;
  for (int e : b.edges) prob.edge_length.push_back(g.edge(e).length);
  for (const auto& p : inst.points) {
    CyclePoint cp{p.weight, p.constant, {}};
    for (const auto& l : p.locations) cp.locations.push_back({local[l.position.vertex], l.prob});
    prob.points.push_back(std::move(cp));
  }
  return prob;
}

/// Maps a cycle solution back onto a graph cycle given in clockwise order.
inline GraphPoint cycle_solution_point(const CactusGraph& g, std::span<const int> vertices, std::span<const int> edges,
                                       const CycleSolution& sol) {
  if (sol.vertex >= 0) return GraphPoint::at_vertex(vertices[sol.vertex]);
  const int e = edges[sol.edge];
  const Edge& ed = g.edge(e);
  const double t = ed.u == vertices[sol.edge] ? sol.offset : ed.length - sol.offset;
  return g.point_on_edge(e, t);
}

inline CenterResult solve_cycle(const Instance& inst) {
  const CycleProblem prob = cycle_problem_from_instance(inst);
  const CycleSolution sol = solve_cycle(prob);
  const Block b = inst.graph.block(0);
  return {cycle_solution_point(inst.graph, b.vertices, b.edges, sol), sol.objective};
}

}  // namespace cactus_center
