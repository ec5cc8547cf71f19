#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "cactus_center/generator.hpp"
#include "cactus_center/oracle.hpp"
#include "cactus_center/search.hpp"

namespace cactus_center {

struct BenchRow {
  long mn = 0;
  double build_ms = 0.0;
  double solve_ms = 0.0;
  std::optional<double> oracle_ms;
};

struct BenchOptions {
  std::vector<long> sizes{1000, 4000, 16000, 64000};
  int seeds = 3;
  int points = 10;          // n; m is mn / n
  long oracle_limit = 2000;  // largest mn the oracle is timed on
};

/// Generator settings used for a benchmark cell of total size mn.
inline GenParams bench_params(long mn, int points, std::uint64_t seed) {
  GenParams p;
  p.n = points;
  p.m = static_cast<int>(std::max<long>(1, mn / points));
  p.vertices = static_cast<int>(std::max<long>(8, mn / 4));
  p.cycles = p.vertices / 8;
  p.cycle_min = 3;
  p.cycle_max = 8;
  p.interior_fraction = 0.3;
  p.seed = seed;
  return p;
}

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size() / 2;
  return v.size() % 2 ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

/// One row per size holding median times over the seeds. Sizes are run
/// round-robin within each seed so that slow spells on the machine spread
/// over all sizes.
inline std::vector<BenchRow> run_bench(const BenchOptions& opt) {
  using clock = std::chrono::steady_clock;
  auto ms = [](clock::time_point a, clock::time_point b) {
    return std::chrono::duration<double, std::milli>(b - a).count();
  };
  const std::size_t cells = opt.sizes.size();
  std::vector<std::vector<double>> build(cells), solve_t(cells), oracle_t(cells);
  for (int s = 0; s < opt.seeds; ++s)
    for (std::size_t k = 0; k < cells; ++k) {
      const long mn = opt.sizes[k];
      const auto t0 = clock::now();
      const Instance inst = generate_instance(bench_params(mn, opt.points, 1000003ULL * mn + s));
      const auto t1 = clock::now();
      const CenterResult r = solve(inst);
      const auto t2 = clock::now();
      build[k].push_back(ms(t0, t1));
      solve_t[k].push_back(ms(t1, t2));
      if (mn <= opt.oracle_limit) {
        const CenterResult o = brute_force_center(inst);
        oracle_t[k].push_back(ms(t2, clock::now()));
        (void)o;
      }
      (void)r;
    }
  std::vector<BenchRow> rows;
  for (std::size_t k = 0; k < cells; ++k) {
    BenchRow row{opt.sizes[k], median(build[k]), median(solve_t[k]), std::nullopt};
    if (!oracle_t[k].empty()) row.oracle_ms = median(oracle_t[k]);
    rows.push_back(row);
  }
  return rows;
}

inline void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << "mn,build_ms,solve_ms,oracle_ms\n";
  for (const BenchRow& r : rows) {
    os << r.mn << ',' << r.build_ms << ',' << r.solve_ms << ',';
    if (r.oracle_ms) os << *r.oracle_ms;
    os << '\n';
  }
}

}  // namespace cactus_center
