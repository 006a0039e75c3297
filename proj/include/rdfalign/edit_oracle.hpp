#pragma once

#include <stdexcept>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rdfalign/weighted.hpp"

namespace rdfalign {

// Minimal insert/delete/substitute count between two byte strings.
std::size_t levenshtein(std::string_view s, std::string_view t);

struct Assignment {
  std::vector<int> row_to_col; // over the padded square matrix
  double cost = 0.0;
};

// Minimum-cost perfect assignment. Rectangular inputs are padded to square
// with unit-cost cells, one full unit per unmatched edge. Costs must be
// finite and non-negative.
Assignment hungarian(const std::vector<std::vector<double>>& cost);

struct EditOracleOptions {
  Weight eps = 1e-6;
  std::size_t cell_budget = 10'000'000;
  std::size_t max_iterations = 10'000;
  int threads = 1;
};

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dense pairwise node distance over source x target.
class DistanceMatrix {
public:
  DistanceMatrix(std::vector<NodeId> sources, std::vector<NodeId> targets);

  Weight at(NodeId n, NodeId m) const;
  Weight& cell(std::size_t i, std::size_t j) { return values_[i * targets_.size() + j]; }
  Weight cell(std::size_t i, std::size_t j) const { return values_[i * targets_.size() + j]; }

  const std::vector<NodeId>& sources() const { return sources_; }
  const std::vector<NodeId>& targets() const { return targets_; }
  std::size_t source_index(NodeId n) const { return src_index_.at(n); }
  std::size_t target_index(NodeId m) const { return tgt_index_.at(m); }

  std::size_t rounds = 0;
  double final_delta = 0.0;

private:
  std::vector<NodeId> sources_, targets_;
  std::unordered_map<NodeId, std::size_t> src_index_, tgt_index_;
  std::vector<Weight> values_;
};

// Reference edit-tolerant node distance, materialized for every cross pair:
// 0 inside hybrid-aligned clusters, 1 whenever exactly one end is aligned
// elsewhere, normalized string edit distance between unaligned literals, 1
// between a literal and a non-literal, and for unaligned non-literal pairs a
// fixpoint of Hungarian-matched neighbor distances normalized by the larger
// out-degree, iterated Jacobi-style downward from 1.
DistanceMatrix sigma_edit(const TripleGraph& g, ColorInterner& in,
                          const EditOracleOptions& opt = {});

// All pairs at distance <= theta (inclusive).
std::vector<WeightedPair> align_sigma(const DistanceMatrix& d, Weight theta);

} // namespace rdfalign
