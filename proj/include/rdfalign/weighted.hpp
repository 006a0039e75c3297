#pragma once

#include <vector>

#include "rdfalign/refine.hpp"

namespace rdfalign {

// Truncated addition min{x + y, 1}; the distance combination operator.
// Arguments must lie in [0, 1].
Weight oplus(Weight x, Weight y);

// Partition plus per-node confidence weight in [0, 1]: the node's distance
// from the center of its cluster.
struct WeightedPartition {
  Partition partition;
  std::vector<Weight> weights;

  static WeightedPartition zero(Partition p) {
    WeightedPartition xi;
    xi.weights.assign(p.size(), 0.0);
    xi.partition = std::move(p);
    return xi;
  }
};

// Distance induced by a weighted partition: oplus of the weights inside one
// cluster, 1 across clusters.
Weight sigma_xi(const WeightedPartition& xi, NodeId n, NodeId m);

struct WeightedPair {
  NodeId src, tgt;
  Weight sigma;
  bool operator==(const WeightedPair& o) const {
    return src == o.src && tgt == o.tgt && sigma == o.sigma;
  }
};

// Cross-origin same-cluster pairs with combined weight strictly below theta,
// sorted by (src, tgt).
std::vector<WeightedPair> align_theta(const WeightedPartition& xi, const TripleGraph& g,
                                      Weight theta);

// Newly discovered close node pairs: a weighted bipartite graph between
// unaligned source nodes and unaligned target nodes. No node is isolated.
struct CandidateMatchGraph {
  struct Edge {
    NodeId a, b;
    Weight d;
  };
  std::vector<NodeId> a, b;
  std::vector<Edge> edges;

  bool empty() const { return edges.empty(); }
};

// Folds the match graph into the weighted partition: each connected
// component becomes a fresh cluster, and every member's weight is half its
// maximum oplus-shortest-path distance to the opposite side of the
// component. Nodes outside the match graph are untouched.
WeightedPartition enrich(const WeightedPartition& xi, const TripleGraph& g,
                         const CandidateMatchGraph& h, ColorInterner& in);

// Average of the combined endpoint weights over the outbound edges; the
// node's own weight when it has none.
Weight reweight(const WeightedPartition& xi, const TripleGraph& g, NodeId n);

struct WeightedRefineOptions {
  RefineOptions refine;
  std::size_t max_iterations = 1000;
};

// Iterates color refinement and reweighting over the scope until the
// partition stabilizes and no weight moves by eps or more. Scope weights
// must start at 0; they only grow.
WeightedPartition weighted_refine_fixpoint(const WeightedPartition& xi, const TripleGraph& g,
                                           ColorInterner& in, const Scope& scope, Weight eps,
                                           const WeightedRefineOptions& opt = {});

// Blanks the colors and zeroes the weights of all unaligned non-literal
// nodes, then refines over them, flowing new alignment evidence along
// outbound edges.
WeightedPartition propagate(const WeightedPartition& xi, const TripleGraph& g,
                            ColorInterner& in, Weight eps,
                            const WeightedRefineOptions& opt = {});

} // namespace rdfalign
