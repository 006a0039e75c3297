#pragma once

#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rdfalign/label.hpp"
#include "rdfalign/types.hpp"

namespace rdfalign {

struct Triple {
  NodeId s, p, o;
  bool operator==(const Triple& t) const { return s == t.s && p == t.p && o == t.o; }
  bool operator<(const Triple& t) const {
    if (s != t.s) return s < t.s;
    if (p != t.p) return p < t.p;
    return o < t.o;
  }
};

// (predicate, object) pair of an outbound edge.
using OutPair = std::pair<NodeId, NodeId>;

struct Violation {
  enum Kind {
    LiteralSubject,
    LiteralPredicate,
    BlankPredicate,
    DuplicateUriLabel,
    DuplicateLiteralLabel,
  } kind;
  NodeId node = kNoNode;       // offending node
  std::size_t triple_index = 0; // offending triple where applicable
  std::string message;
};

// Node-identified triple graph. Immutable once built: labels, origins and
// the deduplicated triple set are fixed, and the out-adjacency is indexed
// both in insertion order and sorted by (p, o).
class TripleGraph {
public:
  std::size_t node_count() const { return labels_.size(); }
  std::size_t triple_count() const { return triples_.size(); }

  const Label& label(NodeId n) const { return labels_[n]; }
  Origin origin(NodeId n) const { return origins_[n]; }

  const std::vector<Triple>& triples() const { return triples_; }

  bool is_combined() const { return combined_; }

  // (p, o) pairs of triples with subject n, sorted by (p, o).
  std::span<const OutPair> out(NodeId n) const;
  // Same pairs in file/insertion order of the underlying triples.
  std::span<const OutPair> out_file_order(NodeId n) const;

  std::size_t out_degree(NodeId n) const;

  // Nodes whose subject-position edges reference n as predicate or object.
  std::span<const NodeId> dependents(NodeId n) const;

  const std::vector<NodeId>& blanks() const { return blanks_; }
  const std::vector<NodeId>& literals() const { return literals_; }
  const std::vector<NodeId>& uris() const { return uris_; }

  std::vector<NodeId> nodes_of_origin(Origin g) const;

  // Counts per origin: [uris, literals, blanks, triples].
  struct SideStats {
    std::size_t uris = 0, literals = 0, blanks = 0, triples = 0;
  };
  SideStats side_stats(Origin g) const;

  std::vector<Violation> validate() const;

  // First node carrying the label; in a combined graph this is the Source
  // side one when both sides carry it.
  NodeId find_uri(std::string_view text) const;
  NodeId find_literal(std::string_view full_text) const;
  NodeId find_uri(std::string_view text, Origin g) const;
  NodeId find_literal(std::string_view full_text, Origin g) const;

private:
  friend class GraphBuilder;
  friend TripleGraph disjoint_union(const TripleGraph&, const TripleGraph&);

  void finalize();

  std::vector<Label> labels_;
  std::vector<Origin> origins_;
  std::vector<Triple> triples_; // insertion order, deduplicated
  bool combined_ = false;

  // CSR adjacency, sorted by (p, o) per subject.
  std::vector<std::size_t> out_offsets_;
  std::vector<OutPair> out_pairs_;
  // CSR adjacency in insertion order per subject.
  std::vector<OutPair> out_pairs_file_;
  // Reverse dependency index: node -> subjects that mention it in (p, o).
  std::vector<std::size_t> dep_offsets_;
  std::vector<NodeId> dep_nodes_;

  std::vector<NodeId> uris_, literals_, blanks_;
  std::unordered_map<std::string, NodeId> uri_index_;
  std::unordered_map<std::string, NodeId> literal_index_;
};

// Incremental construction; node labels are deduplicated per origin for
// URIs and literals, blank nodes are always fresh.
class GraphBuilder {
public:
  NodeId add_uri(std::string_view text);
  NodeId add_literal(std::string_view text, std::string_view suffix = {});
  NodeId add_blank();
  void add_triple(NodeId s, NodeId p, NodeId o);

  std::size_t node_count() const { return g_.labels_.size(); }

  TripleGraph build();

private:
  TripleGraph g_;
  std::unordered_map<std::string, NodeId> uri_seen_;
  std::unordered_map<std::string, NodeId> literal_seen_;
};

// Combined graph: nodes renumbered, g1 tagged Source and g2 Target.
// Nodes with equal labels on opposite sides stay distinct.
TripleGraph disjoint_union(const TripleGraph& g1, const TripleGraph& g2);

} // namespace rdfalign
