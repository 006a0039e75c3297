#pragma once

#include <string>
#include <vector>

#include "rdfalign/edit_oracle.hpp"
#include "rdfalign/generator.hpp"
#include "rdfalign/ntriples.hpp"
#include "rdfalign/overlap.hpp"
#include "rdfalign/util.hpp"

namespace rdfalign::testing {

// --- fixture graphs -------------------------------------------------------
//
// tiny_graph: one version with three record blanks, two of which carry the
// same content ({q -> "a"}) and are therefore bisimilar.
//
// evolved_* : two versions of tiny_graph where the duplicated record blanks
// were merged into one and the URI u was renamed to v.
//
// edited_*  : two versions without blanks where one literal lost a
// character ("abc" -> "ac"), one literal disappeared ("b"), and all
// non-predicate URIs were renamed.

std::string tiny_graph_nt();
std::string evolved_v1_nt(); // same graph as tiny_graph
std::string evolved_v2_nt();
std::string edited_v1_nt();
std::string edited_v2_nt();

TripleGraph graph_from_nt(const std::string& text);

// k-th blank node of the given origin in node-id order.
NodeId nth_blank(const TripleGraph& g, Origin origin, std::size_t k);

NodeId uri_node(const TripleGraph& g, const std::string& text,
                Origin origin = Origin::Source);
NodeId literal_node(const TripleGraph& g, const std::string& text,
                    Origin origin = Origin::Source);

// Alignment rendered as sorted human-readable label pairs, blanks shown as
// b<index-within-origin>.
std::vector<std::pair<std::string, std::string>> readable(const TripleGraph& g,
                                                          std::span<const AlignPair> pairs);
std::string node_name(const TripleGraph& g, NodeId n);

// --- independent oracles --------------------------------------------------

// Greatest fixpoint of the bisimulation conditions, computed by repeated
// removal over the full relation matrix.
std::vector<std::vector<char>> brute_bisimulation(const TripleGraph& g);

// Minimum assignment cost by enumerating all permutations of the padded
// square matrix (n <= 8).
double brute_assignment_cost(const std::vector<std::vector<double>>& cost);

// Full-matrix edit distance table, kept separate from the production
// implementation.
std::size_t brute_levenshtein(const std::string& a, const std::string& b);

// Oplus-accumulated all-pairs shortest paths by Floyd-Warshall over an
// explicit edge list; 1 where disconnected.
std::vector<std::vector<Weight>> brute_oplus_paths(
    std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, Weight>>& edges);

// --- random instances -----------------------------------------------------

// Small random RDF graph obeying the conventions (no literal subjects or
// predicates, no blank predicates, unique labels).
TripleGraph random_rdf_graph(SplitMix64& rng, std::size_t max_nodes);

// Combined graph of either two independent random graphs or a graph and a
// lightly mutated copy of itself.
TripleGraph random_combined(SplitMix64& rng, std::size_t max_nodes_per_side);

} // namespace rdfalign::testing
