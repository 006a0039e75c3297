#include "rdfalign/partition.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

namespace rdfalign {

Partition label_partition(const TripleGraph& g, ColorInterner& in) {
  Partition p;
  p.colors.resize(g.node_count());
  for (NodeId n = 0; n < g.node_count(); ++n)
    p.colors[n] = in.label_color(g.label(n));
  return p;
}

Partition trivial_partition(const TripleGraph& g, ColorInterner& in) {
  Partition p;
  p.colors.resize(g.node_count());
  for (NodeId n = 0; n < g.node_count(); ++n)
    p.colors[n] = g.label(n).is_blank() ? in.node_color(n) : in.label_color(g.label(n));
  return p;
}

namespace {

struct ClassBuckets {
  std::unordered_map<Color, std::pair<std::vector<NodeId>, std::vector<NodeId>>> buckets;

  ClassBuckets(const Partition& p, const TripleGraph& g) {
    for (NodeId n = 0; n < g.node_count(); ++n) {
      auto& b = buckets[p[n]];
      (g.origin(n) == Origin::Source ? b.first : b.second).push_back(n);
    }
  }
};

} // namespace

std::vector<AlignPair> align(const Partition& p, const TripleGraph& g) {
  assert(p.size() == g.node_count());
  ClassBuckets cb(p, g);
  std::vector<AlignPair> out;
  for (const auto& [color, b] : cb.buckets)
    for (NodeId n : b.first)
      for (NodeId m : b.second) out.emplace_back(n, m);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<char> aligned_mask(const Partition& p, const TripleGraph& g) {
  ClassBuckets cb(p, g);
  std::vector<char> mask(g.node_count(), 0);
  for (const auto& [color, b] : cb.buckets) {
    if (b.first.empty() || b.second.empty()) continue;
    for (NodeId n : b.first) mask[n] = 1;
    for (NodeId m : b.second) mask[m] = 1;
  }
  return mask;
}

std::pair<std::vector<NodeId>, std::vector<NodeId>> unaligned(const Partition& p,
                                                              const TripleGraph& g) {
  std::vector<char> mask = aligned_mask(p, g);
  std::pair<std::vector<NodeId>, std::vector<NodeId>> out;
  for (NodeId n = 0; n < g.node_count(); ++n) {
    if (mask[n]) continue;
    (g.origin(n) == Origin::Source ? out.first : out.second).push_back(n);
  }
  return out;
}

bool equivalent(const Partition& p1, const Partition& p2) {
  assert(p1.size() == p2.size());
  std::unordered_map<Color, Color> fwd, bwd;
  for (std::size_t n = 0; n < p1.size(); ++n) {
    auto [f, fresh_f] = fwd.emplace(p1.colors[n], p2.colors[n]);
    if (!fresh_f && f->second != p2.colors[n]) return false;
    auto [b, fresh_b] = bwd.emplace(p2.colors[n], p1.colors[n]);
    if (!fresh_b && b->second != p1.colors[n]) return false;
  }
  return true;
}

bool finer(const Partition& p1, const Partition& p2) {
  assert(p1.size() == p2.size());
  std::unordered_map<Color, Color> fwd;
  for (std::size_t n = 0; n < p1.size(); ++n) {
    auto [it, fresh] = fwd.emplace(p1.colors[n], p2.colors[n]);
    if (!fresh && it->second != p2.colors[n]) return false;
  }
  return true;
}

bool crossover_check(std::span<const AlignPair> a) {
  // Group targets per source; sources sharing any target must share the
  // whole target set.
  std::unordered_map<NodeId, std::vector<NodeId>> per_source;
  for (const auto& [n, m] : a) per_source[n].push_back(m);
  std::unordered_map<NodeId, const std::vector<NodeId>*> rep_for_target;
  for (auto& [n, ms] : per_source) {
    std::sort(ms.begin(), ms.end());
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  }
  for (const auto& [n, ms] : per_source) {
    for (NodeId m : ms) {
      auto [it, fresh] = rep_for_target.emplace(m, &ms);
      if (!fresh && *it->second != ms) return false;
    }
  }
  return true;
}

std::size_t class_count(const Partition& p) {
  std::unordered_set<Color> seen(p.colors.begin(), p.colors.end());
  return seen.size();
}

void dump_partition(const TripleGraph& g, const Partition& p,
                    const std::vector<std::string>& node_keys, std::ostream& out) {
  assert(node_keys.size() == g.node_count());
  for (NodeId n = 0; n < g.node_count(); ++n)
    out << node_keys[n] << '\t' << p[n] << '\n';
}

} // namespace rdfalign
