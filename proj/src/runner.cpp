#include "rdfalign/runner.hpp"

#include <chrono>
#include <stdexcept>

namespace rdfalign {

Method parse_method(std::string_view name) {
  if (name == "trivial") return Method::Trivial;
  if (name == "deblank") return Method::Deblank;
  if (name == "hybrid") return Method::Hybrid;
  if (name == "bisim") return Method::Bisim;
  if (name == "overlap") return Method::Overlap;
  if (name == "edit-oracle") return Method::EditOracle;
  throw std::invalid_argument("unknown method: " + std::string(name));
}

std::string_view method_name(Method m) {
  switch (m) {
    case Method::Trivial: return "trivial";
    case Method::Deblank: return "deblank";
    case Method::Hybrid: return "hybrid";
    case Method::Bisim: return "bisim";
    case Method::Overlap: return "overlap";
    case Method::EditOracle: return "edit-oracle";
  }
  return "?";
}

RunResult run_alignment(const TripleGraph& g, ColorInterner& in, const RunConfig& cfg) {
  using Clock = std::chrono::steady_clock;
  auto start = Clock::now();

  RunResult result;
  RefineOptions ropt;
  ropt.threads = cfg.threads;

  auto partition_pairs = [&](Partition p) {
    for (const auto& [n, m] : align(p, g)) result.pairs.push_back({n, m, 0.0});
    result.partition = std::move(p);
  };

  switch (cfg.method) {
    case Method::Trivial:
      partition_pairs(trivial_partition(g, in));
      break;
    case Method::Deblank:
      partition_pairs(deblank_partition(g, in, ropt));
      break;
    case Method::Hybrid:
      partition_pairs(hybrid_partition(g, in, ropt));
      break;
    case Method::Bisim:
      partition_pairs(bisim_partition(g, in, ropt));
      break;
    case Method::Overlap: {
      OverlapOptions opt;
      opt.theta = cfg.theta;
      opt.eps = cfg.eps;
      opt.prefix_mode = cfg.prefix_mode;
      opt.max_rounds = cfg.max_rounds;
      opt.threads = cfg.threads;
      OverlapRoundStats stats;
      WeightedPartition xi = overlap_partition(g, in, opt, &stats);
      result.rounds = stats.rounds;
      result.pairs = align_theta(xi, g, cfg.theta);
      result.partition = xi.partition;
      result.weighted = std::move(xi);
      break;
    }
    case Method::EditOracle: {
      EditOracleOptions opt;
      opt.eps = cfg.oracle_eps;
      opt.cell_budget = cfg.cell_budget;
      opt.threads = cfg.threads;
      DistanceMatrix d = sigma_edit(g, in, opt);
      result.rounds = d.rounds;
      result.pairs = align_sigma(d, cfg.theta);
      break;
    }
  }

  result.wall_ms =
      std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return result;
}

} // namespace rdfalign
