// cactus_center: command-line front end for the uncertain one-center solver.
//
// Exit codes: 0 success (or agreement for `compare`), 1 usage error,
// 2 invalid instance, 3 solver/oracle mismatch.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cactus_center/bench.hpp"
#include "cactus_center/cactus_center.hpp"
#include "cactus_center/generator.hpp"
#include "cactus_center/io.hpp"

namespace cc = cactus_center;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kInvalid = 2;
constexpr int kMismatch = 3;

const char* verdict_name(cc::Verdict v) {
  switch (v) {
    case cc::Verdict::AtPoint: return "AtPoint";
    case cc::Verdict::AtNode: return "AtNode";
    case cc::Verdict::InSplitSubtree: return "InSplitSubtree";
  }
  return "?";
}

// Location order inside a point carries no meaning, so interior locations
// are put in edge order before validation. Probabilities within `tol` of a
// unit sum are rescaled to sum to one.
void prepare(cc::Instance& inst, double tol) {
  for (auto& p : inst.points)
    std::stable_sort(p.locations.begin(), p.locations.end(), [](const cc::Location& a, const cc::Location& b) {
      const bool ia = !a.position.is_vertex(), ib = !b.position.is_vertex();
      if (ia != ib) return ib;
      if (!ia) return false;
      return a.position.edge != b.position.edge ? a.position.edge < b.position.edge : a.position.t < b.position.t;
    });
  const cc::ValidationReport rep = cc::validate_instance(inst, tol);
  if (!rep.valid) throw cc::Error(cc::Errc::InvalidInstance, rep.issues.front());
  for (auto& p : inst.points) {
    double sum = 0.0;
    for (const auto& l : p.locations) sum += l.prob;
    if (sum != 1.0)
      for (auto& l : p.locations) l.prob /= sum;
  }
}

cc::Instance load(const std::string& path, double tol) {
  cc::Instance inst = cc::load_instance(path);
  prepare(inst, tol);
  return inst;
}

std::string describe(const cc::CactusGraph& g, const cc::CenterResult& r) {
  std::ostringstream os;
  os.precision(12);
  if (r.point.is_vertex()) {
    os << "center: vertex " << r.point.vertex;
  } else {
    const cc::Edge& e = g.edge(r.point.edge);
    os << "center: edge (" << e.u << ", " << e.v << ") at t = " << r.point.t << " from " << e.u;
  }
  os << "\nobjective: " << r.objective;
  return os.str();
}

void print_result(const cc::CactusGraph& g, const cc::CenterResult& r, bool as_json) {
  if (as_json)
    std::cout << cc::result_to_json(g, r).dump() << '\n';
  else
    std::cout << describe(g, r) << '\n';
}

void dump_trace(const cc::SearchTrace& tr) {
  for (std::size_t k = 0; k < tr.steps.size(); ++k) {
    const cc::SearchStep& s = tr.steps[k];
    nlohmann::json j = {{"step", k},
                        {"live", s.live_size},
                        {"centroid", s.centroid},
                        {"verdict", verdict_name(s.verdict.verdict)}};
    if (s.verdict.verdict == cc::Verdict::InSplitSubtree) j["split"] = s.verdict.split;
    std::cerr << j.dump() << '\n';
  }
  std::cerr << nlohmann::json{{"final_node", tr.final_node},
                              {"skeleton_nodes", tr.skeleton_nodes},
                              {"reduced_vertices", tr.reduced_vertices},
                              {"reduced_edges", tr.reduced_edges}}
                   .dump()
            << '\n';
}

std::vector<long> parse_sizes(const std::string& text) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const long v = std::stol(item, &used);
    if (used != item.size() || v < 1) throw CLI::ValidationError("--sizes", "bad size '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw CLI::ValidationError("--sizes", "empty list");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted one-center of uncertain points on a cactus graph"};
  app.require_subcommand(1);

  std::string file;
  bool as_json = false;
  bool trace = false;
  double tolerance = cc::kEps;
  double rel_tol = 1e-7;

  auto* validate = app.add_subcommand("validate", "Check that an instance file is well formed");
  validate->add_option("file", file, "Instance JSON")->required();
  validate->add_option("--tolerance", tolerance, "Allowed deviation of probability sums from 1");

  auto* solve = app.add_subcommand("solve", "Compute the center with the fast solver");
  solve->add_option("file", file, "Instance JSON")->required();
  solve->add_flag("--json", as_json, "Print the result as JSON");
  solve->add_option("--tolerance", tolerance, "Allowed deviation of probability sums from 1");
  solve->add_flag("--trace", trace, "Write search steps to stderr as JSON lines");

  auto* oracle = app.add_subcommand("oracle", "Compute the center by brute force");
  oracle->add_option("file", file, "Instance JSON")->required();
  oracle->add_flag("--json", as_json, "Print the result as JSON");

  auto* compare = app.add_subcommand("compare", "Check the solver against the brute-force oracle");
  compare->add_option("file", file, "Instance JSON")->required();
  compare->add_option("--rel-tol", rel_tol, "Relative tolerance on objectives")->check(CLI::NonNegativeNumber);

  cc::GenParams gp;
  std::string out_path;
  auto* gen = app.add_subcommand("gen", "Write a random instance");
  gen->add_option("--vertices", gp.vertices, "Vertex budget");
  gen->add_option("--cycles", gp.cycles, "Number of cycles");
  gen->add_option("--cycle-min", gp.cycle_min, "Smallest cycle size");
  gen->add_option("--cycle-max", gp.cycle_max, "Largest cycle size");
  gen->add_option("-n,--points", gp.n, "Number of uncertain points");
  gen->add_option("-m,--locations", gp.m, "Locations per point");
  gen->add_option("--weight-min", gp.weight_min);
  gen->add_option("--weight-max", gp.weight_max);
  gen->add_option("--length-min", gp.length_min);
  gen->add_option("--length-max", gp.length_max);
  gen->add_option("--constant-min", gp.constant_min);
  gen->add_option("--constant-max", gp.constant_max);
  gen->add_option("--interior", gp.interior_fraction, "Share of locations inside edges")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--seed", gp.seed, "64-bit seed");
  gen->add_option("-o,--output", out_path, "Output file (stdout if omitted)");

  cc::BenchOptions bo;
  std::string sizes_text = "1000,4000,16000,64000";
  auto* bench = app.add_subcommand("bench", "Time generation, solving and the oracle");
  bench->add_option("--sizes", sizes_text, "Comma-separated mn values");
  bench->add_option("--seeds", bo.seeds, "Seeds per size")->check(CLI::PositiveNumber);
  bench->add_option("--points", bo.points, "Uncertain points per instance")->check(CLI::PositiveNumber);
  bench->add_option("--oracle-limit", bo.oracle_limit, "Largest mn timed with the oracle");
  bench->add_option("-o,--output", out_path, "CSV file (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*validate) {
      cc::Instance inst;
      try {
        inst = cc::load_instance(file);
      } catch (const cc::Error& e) {
        std::cout << "invalid: " << e.what() << '\n';
        return kInvalid;
      }
      const cc::ValidationReport rep = cc::validate_instance(inst, tolerance);
      if (rep.valid) {
        std::cout << "valid: " << inst.graph.vertex_count() << " vertices, " << inst.graph.edge_count()
                  << " edges, " << inst.graph.cycle_count() << " cycles, " << inst.points.size()
                  << " uncertain points\n";
        return kOk;
      }
      for (const auto& issue : rep.issues) std::cout << "invalid: " << issue << '\n';
      return kInvalid;
    }
    if (*solve) {
      const cc::Instance inst = load(file, tolerance);
      cc::SearchTrace tr;
      const cc::CenterResult r = cc::solve(inst, trace ? &tr : nullptr);
      if (trace) dump_trace(tr);
      print_result(inst.graph, r, as_json);
      return kOk;
    }
    if (*oracle) {
      const cc::Instance inst = load(file, cc::kEps);
      print_result(inst.graph, cc::brute_force_center(inst), as_json);
      return kOk;
    }
    if (*compare) {
      const cc::Instance inst = load(file, cc::kEps);
      const cc::CenterResult s = cc::solve(inst);
      const cc::CenterResult o = cc::brute_force_center(inst);
      const double gap = std::abs(s.objective - o.objective) / std::max(1.0, std::abs(o.objective));
      std::cout.precision(12);
      std::cout << "solve: " << s.objective << "\noracle: " << o.objective << "\nrel gap: " << gap << '\n';
      if (gap <= rel_tol) {
        std::cout << "agree\n";
        return kOk;
      }
      std::cout << "MISMATCH\n";
      return kMismatch;
    }
    if (*gen) {
      const std::string text = cc::serialize_instance(cc::generate_instance(gp), 1) + "\n";
      if (out_path.empty()) {
        std::cout << text;
      } else {
        std::ofstream os(out_path);
        if (!(os << text)) throw std::runtime_error("cannot write " + out_path);
      }
      return kOk;
    }
    if (*bench) {
      bo.sizes = parse_sizes(sizes_text);
      const auto rows = cc::run_bench(bo);
      if (out_path.empty()) {
        cc::write_bench_csv(std::cout, rows);
      } else {
        std::ofstream os(out_path);
        cc::write_bench_csv(os, rows);
        if (!os) throw std::runtime_error("cannot write " + out_path);
      }
      for (std::size_t k = 1; k < rows.size(); ++k)
        std::cerr << "growth " << rows[k - 1].mn << " -> " << rows[k].mn << ": x"
                  << rows[k].solve_ms / rows[k - 1].solve_ms << '\n';
      return kOk;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const cc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    if (e.code() == cc::Errc::InfeasibleParams) return kUsage;
    return e.code() == cc::Errc::InternalInconsistency ? kMismatch : kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
