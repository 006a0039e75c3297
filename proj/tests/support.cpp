#include "support.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace rdfalign::testing {

std::string tiny_graph_nt() {
  return R"(_:b1 <ex:q> <ex:u> .
_:b1 <ex:r> "b" .
<ex:u> <ex:p> _:b2 .
<ex:u> <ex:q> "a" .
<ex:u> <ex:q> "b" .
<ex:u> <ex:r> <ex:w> .
_:b2 <ex:q> "a" .
_:b3 <ex:q> "a" .
<ex:w> <ex:p> _:b1 .
<ex:w> <ex:p> _:b3 .
)";
}

std::string evolved_v1_nt() { return tiny_graph_nt(); }

std::string evolved_v2_nt() {
  return R"(_:b5 <ex:q> <ex:v> .
_:b5 <ex:r> "b" .
<ex:v> <ex:p> _:b4 .
<ex:v> <ex:q> "a" .
<ex:v> <ex:q> "b" .
<ex:v> <ex:r> <ex:w> .
_:b4 <ex:q> "a" .
<ex:w> <ex:p> _:b4 .
<ex:w> <ex:p> _:b5 .
)";
}

std::string edited_v1_nt() {
  return R"(<ex:w> <ex:r> <ex:u> .
<ex:w> <ex:q> <ex:v> .
<ex:u> <ex:p> "a" .
<ex:u> <ex:p> "b" .
<ex:u> <ex:p> "c" .
<ex:v> <ex:p> "c" .
<ex:v> <ex:q> "abc" .
)";
}

std::string edited_v2_nt() {
  return R"(<ex:w2> <ex:r> <ex:u2> .
<ex:w2> <ex:q> <ex:v2> .
<ex:u2> <ex:p> "a" .
<ex:u2> <ex:p> "c" .
<ex:v2> <ex:p> "c" .
<ex:v2> <ex:q> "ac" .
)";
}

TripleGraph graph_from_nt(const std::string& text) { return parse_ntriples(text); }

NodeId nth_blank(const TripleGraph& g, Origin origin, std::size_t k) {
  std::size_t seen = 0;
  for (NodeId n : g.blanks()) {
    if (g.origin(n) != origin) continue;
    if (seen++ == k) return n;
  }
  throw std::out_of_range("no such blank");
}

NodeId uri_node(const TripleGraph& g, const std::string& text, Origin origin) {
  NodeId n = g.find_uri(text, origin);
  if (n == kNoNode) throw std::out_of_range("no uri " + text);
  return n;
}

NodeId literal_node(const TripleGraph& g, const std::string& text, Origin origin) {
  NodeId n = g.find_literal(text, origin);
  if (n == kNoNode) throw std::out_of_range("no literal " + text);
  return n;
}

std::string node_name(const TripleGraph& g, NodeId n) {
  const Label& l = g.label(n);
  switch (l.kind) {
    case LabelKind::Uri: return l.text;
    case LabelKind::Literal: return '"' + l.full_text() + '"';
    case LabelKind::Blank: {
      std::size_t index = 0;
      for (NodeId b : g.blanks()) {
        if (b == n) break;
        if (g.origin(b) == g.origin(n)) ++index;
      }
      return "b" + std::to_string(index);
    }
  }
  return "?";
}

std::vector<std::pair<std::string, std::string>> readable(const TripleGraph& g,
                                                          std::span<const AlignPair> pairs) {
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(pairs.size());
  for (const auto& [n, m] : pairs) out.emplace_back(node_name(g, n), node_name(g, m));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<char>> brute_bisimulation(const TripleGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<char>> rel(n, std::vector<char>(n, 0));
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = 0; b < n; ++b) rel[a][b] = g.label(a) == g.label(b);

  auto simulated = [&](NodeId a, NodeId b) {
    // every out-pair of a must be matched by some out-pair of b
    for (const auto& [p, o] : g.out(a)) {
      bool matched = false;
      for (const auto& [p2, o2] : g.out(b)) {
        if (rel[p][p2] && rel[o][o2]) {
          matched = true;
          break;
        }
      }
      if (!matched) return false;
    }
    return true;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (NodeId a = 0; a < n; ++a) {
      for (NodeId b = 0; b < n; ++b) {
        if (!rel[a][b]) continue;
        if (!simulated(a, b) || !simulated(b, a)) {
          rel[a][b] = 0;
          changed = true;
        }
      }
    }
  }
  return rel;
}

double brute_assignment_cost(const std::vector<std::vector<double>>& cost) {
  if (cost.empty()) return 0.0;
  std::size_t rows = cost.size(), cols = 0;
  for (const auto& r : cost) cols = std::max(cols, r.size());
  if (cols == 0) return 0.0;
  std::size_t n = std::max(rows, cols);
  auto cell = [&](std::size_t i, std::size_t j) {
    return (i < rows && j < cost[i].size()) ? cost[i][j] : 1.0;
  };
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += cell(i, perm[i]);
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::size_t brute_levenshtein(const std::string& a, const std::string& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1,
                                          std::vector<std::size_t>(b.size() + 1, 0));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i)
    for (std::size_t j = 1; j <= b.size(); ++j)
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0u : 1u)});
  return d[a.size()][b.size()];
}

std::vector<std::vector<Weight>> brute_oplus_paths(
    std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, Weight>>& edges) {
  std::vector<std::vector<Weight>> d(n, std::vector<Weight>(n, 1.0));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0.0;
  for (const auto& [a, b, w] : edges) {
    d[a][b] = std::min(d[a][b], w);
    d[b][a] = std::min(d[b][a], w);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        d[i][j] = std::min(d[i][j], std::min(d[i][k] + d[k][j], 1.0));
  return d;
}

TripleGraph random_rdf_graph(SplitMix64& rng, std::size_t max_nodes) {
  static const char* uri_pool[] = {"x0", "x1", "x2", "x3", "x4", "x5"};
  static const char* lit_pool[] = {"la", "lb", "lc"};

  GraphBuilder b;
  std::vector<NodeId> uris, literals, blanks;
  std::size_t n_uris = 1 + rng.below(4);
  std::size_t n_lits = rng.below(4);
  std::size_t n_blanks = rng.below(5);
  while (n_uris + n_lits + n_blanks > max_nodes) {
    if (n_blanks > 0) --n_blanks;
    else if (n_lits > 0) --n_lits;
    else --n_uris;
  }
  for (std::size_t i = 0; i < n_uris; ++i) uris.push_back(b.add_uri(uri_pool[i]));
  for (std::size_t i = 0; i < n_lits; ++i) literals.push_back(b.add_literal(lit_pool[i]));
  for (std::size_t i = 0; i < n_blanks; ++i) blanks.push_back(b.add_blank());

  std::vector<NodeId> subjects = uris;
  subjects.insert(subjects.end(), blanks.begin(), blanks.end());
  std::vector<NodeId> objects = subjects;
  objects.insert(objects.end(), literals.begin(), literals.end());

  std::size_t n_triples = rng.below(2 * (n_uris + n_lits + n_blanks) + 1);
  for (std::size_t i = 0; i < n_triples; ++i) {
    NodeId s = subjects[rng.below(subjects.size())];
    NodeId p = uris[rng.below(uris.size())];
    NodeId o = objects[rng.below(objects.size())];
    b.add_triple(s, p, o);
  }
  return b.build();
}

TripleGraph random_combined(SplitMix64& rng, std::size_t max_nodes_per_side) {
  TripleGraph g1 = random_rdf_graph(rng, max_nodes_per_side);
  if (rng.chance(0.5)) {
    TripleGraph g2 = random_rdf_graph(rng, max_nodes_per_side);
    return disjoint_union(g1, g2);
  }
  // Mutated copy: re-parse the serialization with a few random line drops.
  std::istringstream lines(serialize_ntriples(g1));
  std::string line, kept;
  while (std::getline(lines, line)) {
    if (rng.chance(0.2)) continue;
    kept += line;
    kept += '\n';
  }
  TripleGraph g2 = parse_ntriples(kept);
  return disjoint_union(g1, g2);
}

} // namespace rdfalign::testing
