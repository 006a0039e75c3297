#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rdfalign/triple_graph.hpp"

namespace rdfalign {

std::string sha1_hex(std::string_view data);

// Stable per-node textual identifiers:
//   U:<uri>                      for URIs
//   L:<sha1 of the lexical form> for literals
//   B:<1|2>:<canonical index>    for blanks
// The canonical blank index is the rank in a per-side breadth-first
// traversal seeded from the non-blank nodes in label order, following
// triples in file order. It depends only on the input bytes, never on any
// alignment.
std::vector<std::string> node_keys(const TripleGraph& g);

} // namespace rdfalign
