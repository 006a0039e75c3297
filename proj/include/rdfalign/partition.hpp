#pragma once

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "rdfalign/interner.hpp"
#include "rdfalign/triple_graph.hpp"
#include "rdfalign/types.hpp"

namespace rdfalign {

// Total coloring of a graph's nodes; equal color means same class.
struct Partition {
  std::vector<Color> colors;

  Color operator[](NodeId n) const { return colors[n]; }
  Color& operator[](NodeId n) { return colors[n]; }
  std::size_t size() const { return colors.size(); }
};

using AlignPair = std::pair<NodeId, NodeId>;

// Node labeling as a partition: groups nodes by label, all blanks together.
Partition label_partition(const TripleGraph& g, ColorInterner& in);

// Non-blank nodes colored by label, each blank a singleton class.
Partition trivial_partition(const TripleGraph& g, ColorInterner& in);

// All cross-origin pairs with equal color, sorted by (source, target) id.
std::vector<AlignPair> align(const Partition& p, const TripleGraph& g);

// Per-node flag: class contains at least one node of the opposite origin.
std::vector<char> aligned_mask(const Partition& p, const TripleGraph& g);

// Source nodes whose class has no target node, and vice versa.
std::pair<std::vector<NodeId>, std::vector<NodeId>> unaligned(const Partition& p,
                                                              const TripleGraph& g);

// True iff the induced equivalence relations coincide.
bool equivalent(const Partition& p1, const Partition& p2);

// True iff every p1 class is contained in some p2 class.
bool finer(const Partition& p1, const Partition& p2);

// True iff (n,m),(n,m'),(n',m) in a imply (n',m') in a.
bool crossover_check(std::span<const AlignPair> a);

// Number of distinct colors in use.
std::size_t class_count(const Partition& p);

// Debug dump: one "nodeKey \t colorId" line per node.
void dump_partition(const TripleGraph& g, const Partition& p,
                    const std::vector<std::string>& node_keys, std::ostream& out);

} // namespace rdfalign
