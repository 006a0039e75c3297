#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rdfalign/triple_graph.hpp"

namespace rdfalign {

// Synthetic versioned-graph generator in the relational direct-mapping
// style: every row becomes a URI node, value attributes become literal
// edges, foreign keys become URI-to-URI edges, and an optional record blank
// hangs off a row. Version 2 applies seeded row deletions, insertions and
// character-level literal edits; with prefix renaming no URI is shared
// between the versions.
struct GeneratorSpec {
  std::size_t tables = 2;
  std::size_t rows = 50;       // per table
  std::size_t attrs = 3;       // value attributes per table
  double fk_density = 0.5;     // probability a row carries a foreign key
  double edit_rate = 0.1;      // per-literal typo probability
  double insert_rate = 0.1;    // v2 insertions as a fraction of rows
  double delete_rate = 0.1;    // probability a v1 row is dropped from v2
  bool rename_prefix = false;  // export v2 under a different URI prefix
  double blank_prob = 0.0;     // probability a row carries a record blank
  std::uint64_t seed = 1;

  static GeneratorSpec parse(std::istream& in);
  static GeneratorSpec parse_file(const std::string& path);
  void check() const; // throws std::invalid_argument on bad rates
};

struct GeneratedVersions {
  TripleGraph v1, v2;
  // Node-key pairs (source, target) for every URI whose identity survives.
  std::vector<std::pair<std::string, std::string>> truth;
};

GeneratedVersions generate_versions(const GeneratorSpec& spec);

} // namespace rdfalign
