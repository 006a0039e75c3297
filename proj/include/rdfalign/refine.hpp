#pragma once

#include <span>
#include <vector>

#include "rdfalign/partition.hpp"

namespace rdfalign {

// Node subset a refinement pass recolors; all other nodes keep their color.
class Scope {
public:
  Scope() = default;
  Scope(std::size_t universe, std::span<const NodeId> nodes);

  static Scope all(std::size_t universe);
  static Scope none(std::size_t universe);

  bool contains(NodeId n) const { return n < mask_.size() && mask_[n]; }
  const std::vector<NodeId>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }

private:
  std::vector<char> mask_;
  std::vector<NodeId> nodes_;
};

struct RefineOptions {
  int threads = 1;
  // Recolor only nodes whose dependencies changed class after the first
  // pass; equivalent to the synchronous step, checked by tests.
  bool worklist = true;
  // Safety valve; refinement provably needs at most |N|+1 synchronous steps.
  std::size_t max_passes_slack = 16;
};

struct RefineStats {
  std::size_t passes = 0;
  std::size_t recolorings = 0;
};

// Color of n combined with the colors of its outbound (predicate, object)
// pairs, hash-consed.
Color recolor(const Partition& p, const TripleGraph& g, ColorInterner& in, NodeId n);

// One synchronous refinement pass: scope nodes get recolor(p, g, n), the
// rest keep their color. Reads only the input partition.
Partition refine_step(const Partition& p, const TripleGraph& g, ColorInterner& in,
                      const Scope& scope, int threads = 1);

// Iterate refine_step until the result is equivalent to the previous
// iterate; returns the first stable iterate.
Partition refine_fixpoint(const Partition& p, const TripleGraph& g, ColorInterner& in,
                          const Scope& scope, const RefineOptions& opt = {},
                          RefineStats* stats = nullptr);

// Refinement fixpoint over all nodes from the node labeling; its classes
// are exactly the maximal bisimulation.
Partition bisim_partition(const TripleGraph& g, ColorInterner& in,
                          const RefineOptions& opt = {});

// Refinement fixpoint over blank nodes only, from the node labeling.
Partition deblank_partition(const TripleGraph& g, ColorInterner& in,
                            const RefineOptions& opt = {});

// Deblank, then blank out all unaligned non-literal nodes and refine over
// them. Aligns renamed URIs and the blanks their colors blocked.
Partition hybrid_partition(const TripleGraph& g, ColorInterner& in,
                           const RefineOptions& opt = {});

// Nodes in x get the neutral blank color; others keep theirs.
Partition blank_out(const Partition& p, std::span<const NodeId> x, ColorInterner& in);

// Unaligned nodes of both sides minus literal-labeled nodes.
std::vector<NodeId> unaligned_nonliterals(const Partition& p, const TripleGraph& g);

// Blanks outside `blanked_set` whose colors are structural (label or
// recoloring) rather than enrichment clusters; such classes can be
// reconstructed from the graph alone.
std::vector<NodeId> rederivable_blanks(const Partition& p, const TripleGraph& g,
                                       const ColorInterner& in,
                                       std::span<const NodeId> blanked_set);

// Restores the re-derived nodes' original colors and maps whatever joined
// their refined classes onto those originals.
Partition map_rederived_back(Partition refined, const Partition& base,
                             std::span<const NodeId> rederived);

// Blank the given nodes plus all re-derivable blanks, refine over them, and
// map the aligned blanks' classes back onto their original colors. The tail
// step of the hybrid construction and of propagation.
Partition refine_blanked(const Partition& base, std::span<const NodeId> un,
                         const TripleGraph& g, ColorInterner& in,
                         const RefineOptions& opt = {});

} // namespace rdfalign
