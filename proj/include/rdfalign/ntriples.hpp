#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "rdfalign/triple_graph.hpp"

namespace rdfalign {

struct ParseError : std::runtime_error {
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
  std::size_t line;
};

// One triple per line: <iri> <iri> (<iri> | _:name | "literal"["^^<iri>" | "@lang"]) .
// Escapes \\ \" \n \t \r \uXXXX are honored inside literals. Lines starting
// with '#' and blank lines are skipped. Gzip input is detected by magic bytes
// and decompressed transparently.
TripleGraph parse_ntriples(std::istream& in);
TripleGraph parse_ntriples(std::string_view text);
TripleGraph parse_ntriples_file(const std::string& path);

void serialize_ntriples(const TripleGraph& g, std::ostream& out);
std::string serialize_ntriples(const TripleGraph& g);

} // namespace rdfalign
