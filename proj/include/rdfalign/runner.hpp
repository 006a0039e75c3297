#pragma once

#include <optional>
#include <string>

#include "rdfalign/edit_oracle.hpp"
#include "rdfalign/eval.hpp"
#include "rdfalign/overlap.hpp"

namespace rdfalign {

enum class Method { Trivial, Deblank, Hybrid, Bisim, Overlap, EditOracle };

Method parse_method(std::string_view name); // throws std::invalid_argument
std::string_view method_name(Method m);

struct RunConfig {
  Method method = Method::Hybrid;
  Weight theta = 0.65;
  Weight eps = 1e-3;
  PrefixMode prefix_mode = PrefixMode::Paper;
  std::size_t max_rounds = 100;
  int threads = 1;
  std::size_t cell_budget = 10'000'000;
  Weight oracle_eps = 1e-6;
};

struct RunResult {
  std::vector<WeightedPair> pairs; // sigma is 0 for partition methods
  std::optional<Partition> partition;
  std::optional<WeightedPartition> weighted;
  std::size_t rounds = 0;
  double wall_ms = 0.0;

  std::vector<AlignPair> plain_pairs() const {
    std::vector<AlignPair> out;
    out.reserve(pairs.size());
    for (const auto& p : pairs) out.emplace_back(p.src, p.tgt);
    return out;
  }
};

RunResult run_alignment(const TripleGraph& g, ColorInterner& in, const RunConfig& cfg);

} // namespace rdfalign
