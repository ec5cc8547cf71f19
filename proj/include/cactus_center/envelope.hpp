#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace cactus_center {

struct Line {
  double slope = 0.0;
  double intercept = 0.0;

  double at(double x) const { return slope * x + intercept; }
};

struct EnvelopeMin {
  double x = 0.0;
  double value = 0.0;
};

/// Upper envelope (pointwise max) of a set of lines.
class UpperHull {
 public:
  UpperHull() = default;

  explicit UpperHull(std::vector<Line> lines) {
    std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
      return a.slope < b.slope || (a.slope == b.slope && a.intercept < b.intercept);
    });
    for (const Line& l : lines) {
      if (!hull_.empty() && hull_.back().slope == l.slope) hull_.pop_back();
      while (hull_.size() >= 2 && redundant(hull_[hull_.size() - 2], hull_.back(), l)) hull_.pop_back();
      hull_.push_back(l);
    }
    for (std::size_t k = 0; k + 1 < hull_.size(); ++k) breaks_.push_back(cross(hull_[k], hull_[k + 1]));
  }

  bool empty() const { return hull_.empty(); }
  std::size_t size() const { return hull_.size(); }
  const std::vector<Line>& lines() const { return hull_; }

  /// Line attaining the max just right of x.
  const Line& right_line(double x) const {
    return hull_[std::upper_bound(breaks_.begin(), breaks_.end(), x) - breaks_.begin()];
  }
  /// Line attaining the max just left of x.
  const Line& left_line(double x) const {
    return hull_[std::lower_bound(breaks_.begin(), breaks_.end(), x) - breaks_.begin()];
  }
  double eval(double x) const { return right_line(x).at(x); }

  /// Leftmost minimizer of the envelope over [a, b].
  EnvelopeMin minimize(double a, double b) const {
    std::size_t k = std::upper_bound(breaks_.begin(), breaks_.end(), a) - breaks_.begin();
    double x = a;
    while (k < hull_.size() && hull_[k].slope < 0.0) {
      if (k == breaks_.size() || breaks_[k] >= b) {
        x = b;
        break;
      }
      x = breaks_[k];
      ++k;
    }
    return {x, eval(x)};
  }

 private:
  static double cross(const Line& a, const Line& b) {
    return (a.intercept - b.intercept) / (b.slope - a.slope);
  }
  // l2 never attains the max when slopes satisfy l1 < l2 < l3.
  static bool redundant(const Line& l1, const Line& l2, const Line& l3) {
    return (l1.intercept - l3.intercept) * (l2.slope - l1.slope) <=
           (l1.intercept - l2.intercept) * (l3.slope - l1.slope);
  }

  std::vector<Line> hull_;
  std::vector<double> breaks_;
};

/// Leftmost lowest point of the upper envelope of `lines` on [a, b].
inline EnvelopeMin min_of_upper_envelope(std::span<const Line> lines, double a, double b) {
  return UpperHull(std::vector<Line>(lines.begin(), lines.end())).minimize(a, b);
}

/// Envelope index over a fixed sequence of intervals 0..N-1. Each line is
/// active on a contiguous run of intervals; the whole schedule is known
/// before the first query, so lines are stored in a segment tree over
/// interval indices and every tree node keeps the upper hull of its lines.
/// A query combines the O(log N) hulls on the root-to-leaf path.
class OfflineEnvelope {
 public:
  explicit OfflineEnvelope(int intervals) : n_(std::max(1, intervals)) {
    size_ = 1;
    while (size_ < n_) size_ <<= 1;
    pending_.resize(2 * size_);
    hulls_.resize(2 * size_);
  }

  /// Makes `line` active on intervals first..last (inclusive).
  void add(const Line& line, int first, int last) {
    int lo = first + size_, hi = last + size_ + 1;
    while (lo < hi) {
      if (lo & 1) pending_[lo++].push_back(line);
      if (hi & 1) pending_[--hi].push_back(line);
      lo >>= 1;
      hi >>= 1;
    }
  }

  void build() {
    for (std::size_t k = 0; k < pending_.size(); ++k) {
      if (!pending_[k].empty()) hulls_[k] = UpperHull(std::move(pending_[k]));
    }
    pending_.clear();
  }

  struct Probe {
    double value;
    const Line* right;  // max line just right of x (largest slope among ties)
    const Line* left;   // max line just left of x (smallest slope among ties)
  };

  /// Max over the lines active on `interval`, evaluated at x.
  Probe probe(int interval, double x) const {
    Probe best{-kHuge, nullptr, nullptr};
    for (int k = interval + size_; k >= 1; k >>= 1) {
      const UpperHull& h = hulls_[k];
      if (h.empty()) continue;
      const Line& r = h.right_line(x);
      const Line& l = h.left_line(x);
      const double v = r.at(x);
      const double tol = 1e-12 * (1.0 + std::abs(v));
      if (best.right == nullptr || v > best.value + tol) {
        best = {v, &r, &l};
        continue;
      }
      if (v >= best.value - tol) {
        best.value = std::max(best.value, v);
        if (r.slope > best.right->slope) best.right = &r;
        if (l.slope < best.left->slope) best.left = &l;
      }
    }
    return best;
  }

  /// Leftmost lowest point on [a, b] of the envelope of the lines active on `interval`.
  EnvelopeMin minimize(int interval, double a, double b) const {
    const Probe pa = probe(interval, a);
    if (pa.right == nullptr) return {a, 0.0};
    if (pa.right->slope >= 0.0 || b <= a) return {a, pa.value};
    const Probe pb = probe(interval, b);
    if (pb.left->slope < 0.0) return {b, pb.value};
    double lo = a, hi = b;
    Line down = *pa.right;
    Line up = *pb.left;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const Probe pm = probe(interval, mid);
      if (pm.right->slope < 0.0) {
        lo = mid;
        down = *pm.right;
      } else {
        hi = mid;
        up = *pm.left;
        if (pm.left->slope < 0.0) {
          // mid is the kink itself
          lo = hi = mid;
          break;
        }
      }
    }
    double x = hi;
    if (lo < hi && up.slope > down.slope) {
      x = (down.intercept - up.intercept) / (up.slope - down.slope);
      x = std::clamp(x, lo, hi);
    }
    const double vx = probe(interval, x).value;
    const double vh = probe(interval, hi).value;
    if (vh < vx - 1e-12 * (1.0 + std::abs(vx))) return {hi, vh};
    return {x, vx};
  }

  int intervals() const { return n_; }

 private:
  static constexpr double kHuge = 1e300;

  int n_;
  int size_;
  std::vector<std::vector<Line>> pending_;
  std::vector<UpperHull> hulls_;
};

}  // namespace cactus_center
