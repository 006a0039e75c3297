#include <doctest.h>

#include "support.hpp"

using namespace rdfalign;
using namespace rdfalign::testing;

namespace {

Partition identity_partition(const TripleGraph& g, ColorInterner& in) {
  Partition p;
  p.colors.resize(g.node_count());
  for (NodeId n = 0; n < g.node_count(); ++n) p[n] = in.node_color(n);
  return p;
}

Partition constant_partition(const TripleGraph& g, ColorInterner& in) {
  Partition p;
  p.colors.assign(g.node_count(), in.blank_color());
  return p;
}

} // namespace

TEST_CASE("label equality aligns exactly the shared non-blank labels") {
  TripleGraph g = disjoint_union(graph_from_nt(evolved_v1_nt()), graph_from_nt(evolved_v2_nt()));
  ColorInterner in;
  Partition p = trivial_partition(g, in);
  auto pairs = readable(g, align(p, g));
  std::vector<std::pair<std::string, std::string>> expected = {
      {"\"a\"", "\"a\""}, {"\"b\"", "\"b\""}, {"ex:p", "ex:p"},
      {"ex:q", "ex:q"},   {"ex:r", "ex:r"},   {"ex:w", "ex:w"},
  };
  std::sort(expected.begin(), expected.end());
  CHECK(pairs == expected);
}

TEST_CASE("no shared labels means an empty alignment") {
  TripleGraph g = disjoint_union(graph_from_nt("<a:x> <a:p> \"u\" .\n"),
                                 graph_from_nt("<b:y> <b:q> \"v\" .\n"));
  ColorInterner in;
  CHECK(align(trivial_partition(g, in), g).empty());
}

TEST_CASE("self-union of a blank-free graph aligns every node") {
  TripleGraph one = graph_from_nt(edited_v1_nt());
  TripleGraph g = disjoint_union(one, one);
  ColorInterner in;
  CHECK(align(trivial_partition(g, in), g).size() == one.node_count());
}

TEST_CASE("identity and constant colorings bound the alignment") {
  TripleGraph g = disjoint_union(graph_from_nt(evolved_v1_nt()), graph_from_nt(evolved_v2_nt()));
  ColorInterner in;
  CHECK(align(identity_partition(g, in), g).empty());
  std::size_t n1 = 10, n2 = 9;
  CHECK(align(constant_partition(g, in), g).size() == n1 * n2);

  auto [u1, u2] = unaligned(constant_partition(g, in), g);
  CHECK(u1.empty());
  CHECK(u2.empty());
  auto [v1, v2] = unaligned(identity_partition(g, in), g);
  CHECK(v1.size() == n1);
  CHECK(v2.size() == n2);
}

TEST_CASE("unaligned nodes under label equality on the evolved pair") {
  TripleGraph g = disjoint_union(graph_from_nt(evolved_v1_nt()), graph_from_nt(evolved_v2_nt()));
  ColorInterner in;
  auto [src, tgt] = unaligned(trivial_partition(g, in), g);
  auto names = [&](const std::vector<NodeId>& nodes) {
    std::vector<std::string> out;
    for (NodeId n : nodes) out.push_back(node_name(g, n));
    std::sort(out.begin(), out.end());
    return out;
  };
  CHECK(names(src) == std::vector<std::string>{"b0", "b1", "b2", "ex:u"});
  CHECK(names(tgt) == std::vector<std::string>{"b0", "b1", "ex:v"});
}

TEST_CASE("partition equivalence ignores color names") {
  TripleGraph g = graph_from_nt(tiny_graph_nt());
  ColorInterner in;
  Partition p = trivial_partition(g, in);
  CHECK(equivalent(p, p));

  // Renamed copy: map every color to a fresh one, consistently.
  Partition renamed = p;
  std::unordered_map<Color, Color> renaming;
  for (NodeId n = 0; n < g.node_count(); ++n) {
    auto [it, fresh] = renaming.try_emplace(p[n], kNoColor);
    if (fresh) it->second = in.fresh_cluster_color();
    renamed[n] = it->second;
  }
  CHECK(equivalent(p, renamed));

  ColorInterner in2;
  Partition ident = identity_partition(g, in2);
  Partition constant = constant_partition(g, in2);
  CHECK_FALSE(equivalent(ident, constant));
}

TEST_CASE("finer orders partitions by refinement") {
  TripleGraph g = graph_from_nt(tiny_graph_nt());
  ColorInterner in;
  Partition ident = identity_partition(g, in);
  Partition constant = constant_partition(g, in);
  Partition trivial = trivial_partition(g, in);
  CHECK(finer(ident, trivial));
  CHECK(finer(ident, constant));
  CHECK(finer(trivial, constant));
  CHECK_FALSE(finer(constant, ident));
  CHECK(finer(ident, ident));

  // finer both ways is exactly equivalence
  SplitMix64 rng(7);
  for (int round = 0; round < 50; ++round) {
    TripleGraph h = random_combined(rng, 8);
    ColorInterner hin;
    Partition a = trivial_partition(h, hin);
    Partition b = label_partition(h, hin);
    bool both = finer(a, b) && finer(b, a);
    CHECK(both == equivalent(a, b));
  }
}

TEST_CASE("crossover property characterizes partition alignments") {
  std::vector<AlignPair> missing_corner = {{1, 10}, {1, 11}, {2, 10}};
  CHECK_FALSE(crossover_check(missing_corner));
  std::vector<AlignPair> full = {{1, 10}, {1, 11}, {2, 10}, {2, 11}};
  CHECK(crossover_check(full));

  SplitMix64 rng(21);
  for (int round = 0; round < 100; ++round) {
    TripleGraph g = random_combined(rng, 8);
    ColorInterner in;
    Partition p = rng.chance(0.5) ? trivial_partition(g, in) : label_partition(g, in);
    CHECK(crossover_check(align(p, g)));
  }
}

TEST_CASE("alignment and unaligned sets cover each side exactly once") {
  SplitMix64 rng(22);
  for (int round = 0; round < 100; ++round) {
    TripleGraph g = random_combined(rng, 8);
    ColorInterner in;
    Partition p = label_partition(g, in);
    auto pairs = align(p, g);
    auto [u1, u2] = unaligned(p, g);
    std::vector<char> in_pair(g.node_count(), 0);
    for (const auto& [n, m] : pairs) {
      in_pair[n] = 1;
      in_pair[m] = 1;
    }
    std::vector<char> in_unaligned(g.node_count(), 0);
    for (NodeId n : u1) in_unaligned[n] = 1;
    for (NodeId n : u2) in_unaligned[n] = 1;
    for (NodeId n = 0; n < g.node_count(); ++n) CHECK(in_pair[n] + in_unaligned[n] == 1);
  }
}

TEST_CASE("interner round-trips every description") {
  ColorInterner in;
  std::vector<ColorDescription> descriptions;
  {
    ColorDescription d;
    d.kind = ColorDescription::LabelDesc;
    d.label = Label::uri("http://x");
    descriptions.push_back(d);
    d.label = Label::literal("v", "@en");
    descriptions.push_back(d);
    d.label = Label::blank();
    descriptions.push_back(d);
    ColorDescription r;
    r.kind = ColorDescription::RawNode;
    r.node = 42;
    descriptions.push_back(r);
  }
  Color base = in.label_color(Label::uri("seed"));
  {
    ColorDescription pd;
    pd.kind = ColorDescription::Pairs;
    pd.prev = base;
    pd.pairs = {{base, base}};
    descriptions.push_back(pd);
    pd.pairs = {};
    descriptions.push_back(pd);
  }
  for (const auto& d : descriptions) {
    Color c = in.intern(d);
    CHECK(in.describe(c) == d);
    CHECK(in.intern(d) == c); // interning is injective and stable
  }
  // Distinct descriptions get distinct colors.
  Color a = in.label_color(Label::uri("http://x"));
  Color b = in.label_color(Label::literal("http://x"));
  CHECK(a != b);
}

TEST_CASE("pair colors deduplicate and sort their child sets") {
  ColorInterner in;
  Color c1 = in.label_color(Label::uri("a"));
  Color c2 = in.label_color(Label::uri("b"));
  Color x = in.pair_color(c1, {{c2, c1}, {c1, c2}, {c2, c1}});
  Color y = in.pair_color(c1, {{c1, c2}, {c2, c1}});
  CHECK(x == y);
}
