#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rdfalign/overlap.hpp"

namespace rdfalign {

// Known correspondence between source and target nodes, keyed by stable
// node keys. Functional: each source key maps to at most one target key.
struct GroundTruth {
  std::vector<std::pair<std::string, std::string>> pairs;

  static GroundTruth load_tsv(std::istream& in);
  static GroundTruth load_tsv_file(const std::string& path);
  void save_tsv(std::ostream& out) const;
};

// Per-node classification against the ground truth, for one side:
//   exact     aligned to exactly the truth's set
//   inclusive aligned to a proper superset of the truth's (nonempty) set
//   missing   the truth partner is absent from the node's aligned set
//   false     aligned to something while the truth aligns it to nothing
// Nodes absent from both the alignment and the truth are not counted.
struct SideCounts {
  std::size_t exact = 0, inclusive = 0, missing = 0, false_matches = 0;
  std::vector<NodeId> exact_nodes, inclusive_nodes, missing_nodes, false_nodes;
};

struct PrecisionReport {
  SideCounts source, target;
  double aligned_edge_ratio = 0.0;

  std::size_t exact_total() const { return source.exact + target.exact; }
  std::size_t inclusive_total() const { return source.inclusive + target.inclusive; }
  std::size_t missing_total() const { return source.missing + target.missing; }
  std::size_t false_total() const { return source.false_matches + target.false_matches; }
};

// Resolves the truth's keys against the combined graph; throws on keys that
// match no node of the expected side.
std::vector<AlignPair> resolve_truth(const GroundTruth& truth, const TripleGraph& g,
                                     const std::vector<std::string>& node_keys);

PrecisionReport evaluate(const TripleGraph& g, std::span<const AlignPair> alignment,
                         std::span<const AlignPair> truth_pairs);

// Fraction of edge classes aligned across the two sides. Edges are grouped
// by the alignment classes of their three nodes; a group spanning both
// sides counts once as aligned, anything else counts once per edge.
double aligned_edge_ratio(const TripleGraph& g, std::span<const AlignPair> alignment);

struct SweepEntry {
  Weight theta;
  PrecisionReport report;
};

struct SweepResult {
  std::vector<SweepEntry> entries;
  Weight best_theta = 0.0; // maximizes total exact count
};

// Runs the overlap pipeline per threshold and evaluates each alignment.
SweepResult threshold_sweep(const TripleGraph& g, ColorInterner& in,
                            std::span<const Weight> thetas,
                            std::span<const AlignPair> truth_pairs,
                            const OverlapOptions& base_options);

} // namespace rdfalign
