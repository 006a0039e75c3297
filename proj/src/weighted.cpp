#include "rdfalign/weighted.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <unordered_map>

#include "rdfalign/util.hpp"

namespace rdfalign {

Weight oplus(Weight x, Weight y) {
  if (x < 0.0 || x > 1.0 || y < 0.0 || y > 1.0)
    throw std::invalid_argument("oplus argument outside [0,1]");
  return std::min(x + y, 1.0);
}

Weight sigma_xi(const WeightedPartition& xi, NodeId n, NodeId m) {
  if (xi.partition[n] != xi.partition[m]) return 1.0;
  return oplus(xi.weights[n], xi.weights[m]);
}

std::vector<WeightedPair> align_theta(const WeightedPartition& xi, const TripleGraph& g,
                                      Weight theta) {
  if (theta < 0.0 || theta > 1.0) throw std::invalid_argument("theta outside [0,1]");
  std::unordered_map<Color, std::pair<std::vector<NodeId>, std::vector<NodeId>>> buckets;
  for (NodeId n = 0; n < g.node_count(); ++n) {
    auto& b = buckets[xi.partition[n]];
    (g.origin(n) == Origin::Source ? b.first : b.second).push_back(n);
  }
  std::vector<WeightedPair> out;
  for (const auto& [color, b] : buckets) {
    for (NodeId n : b.first) {
      for (NodeId m : b.second) {
        Weight s = oplus(xi.weights[n], xi.weights[m]);
        if (s < theta) out.push_back({n, m, s});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const WeightedPair& x, const WeightedPair& y) {
    return x.src != y.src ? x.src < y.src : x.tgt < y.tgt;
  });
  return out;
}

namespace {

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<std::uint32_t>(i);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Oplus-accumulated shortest-path distances from `start` inside the match
// graph. Oplus is monotone, so Dijkstra applies.
std::vector<Weight> oplus_dijkstra(std::size_t n,
                                   const std::vector<std::vector<std::pair<std::uint32_t, Weight>>>& adj,
                                   std::uint32_t start) {
  std::vector<Weight> dist(n, 2.0); // above any reachable value
  using Item = std::pair<Weight, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  dist[start] = 0.0;
  pq.push({0.0, start});
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (d > dist[v]) continue;
    for (const auto& [w, dw] : adj[v]) {
      Weight nd = oplus(d, dw);
      if (nd < dist[w]) {
        dist[w] = nd;
        pq.push({nd, w});
      }
    }
  }
  return dist;
}

} // namespace

WeightedPartition enrich(const WeightedPartition& xi, const TripleGraph& g,
                         const CandidateMatchGraph& h, ColorInterner& in) {
  (void)g;
  if (h.edges.empty()) return xi;

  // Compact the match graph's nodes.
  std::vector<NodeId> nodes;
  nodes.reserve(h.a.size() + h.b.size());
  nodes.insert(nodes.end(), h.a.begin(), h.a.end());
  nodes.insert(nodes.end(), h.b.begin(), h.b.end());
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  std::unordered_map<NodeId, std::uint32_t> slot;
  slot.reserve(nodes.size() * 2);
  for (std::uint32_t i = 0; i < nodes.size(); ++i) slot.emplace(nodes[i], i);

  std::vector<char> is_target(nodes.size(), 0);
  for (NodeId b : h.b) is_target[slot.at(b)] = 1;

  std::vector<std::vector<std::pair<std::uint32_t, Weight>>> adj(nodes.size());
  UnionFind uf(nodes.size());
  for (const auto& e : h.edges) {
    std::uint32_t ia = slot.at(e.a), ib = slot.at(e.b);
    adj[ia].push_back({ib, e.d});
    adj[ib].push_back({ia, e.d});
    uf.unite(ia, ib);
  }
  for (std::uint32_t i = 0; i < nodes.size(); ++i)
    if (adj[i].empty())
      throw std::invalid_argument("match graph has an isolated node");

  // Group members per component; every component must span both sides.
  std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> comps;
  for (std::uint32_t i = 0; i < nodes.size(); ++i) comps[uf.find(i)].push_back(i);

  WeightedPartition out = xi;
  std::vector<std::uint32_t> roots;
  roots.reserve(comps.size());
  for (const auto& [root, members] : comps) roots.push_back(root);
  std::sort(roots.begin(), roots.end());

  for (std::uint32_t root : roots) {
    const auto& members = comps[root];
    bool has_a = false, has_b = false;
    for (std::uint32_t m : members) (is_target[m] ? has_b : has_a) = true;
    if (!has_a || !has_b)
      throw std::invalid_argument("match graph component covers only one side");

    Color cluster = in.fresh_cluster_color();
    for (std::uint32_t m : members) {
      auto dist = oplus_dijkstra(nodes.size(), adj, m);
      Weight far = 0.0;
      for (std::uint32_t other : members) {
        if (is_target[other] == is_target[m]) continue;
        far = std::max(far, dist[other]);
      }
      out.partition[nodes[m]] = cluster;
      out.weights[nodes[m]] = far / 2.0;
    }
  }
  return out;
}

Weight reweight(const WeightedPartition& xi, const TripleGraph& g, NodeId n) {
  auto out = g.out(n);
  if (out.empty()) return xi.weights[n];
  const Weight k = static_cast<Weight>(out.size());
  Weight acc = 0.0;
  for (const auto& [p, o] : out) {
    acc = oplus(acc, oplus(xi.weights[p], xi.weights[o]) / k);
    if (acc >= 1.0) break;
  }
  return acc;
}

namespace {

WeightedPartition weighted_fixpoint_impl(const WeightedPartition& xi, const TripleGraph& g,
                                         ColorInterner& in, const Scope& color_scope,
                                         const Scope& weight_scope, Weight eps,
                                         const WeightedRefineOptions& opt) {
  if (eps <= 0.0) throw std::invalid_argument("eps must be positive");
  if (color_scope.empty() && weight_scope.empty()) return xi;

  WeightedPartition cur = xi;
  std::vector<Weight> next_weights = cur.weights;
  bool colors_stable = false;
  std::size_t iterations = 0;

  for (;;) {
    if (++iterations > opt.max_iterations)
      throw std::runtime_error(
          "weighted refinement exceeded " + std::to_string(opt.max_iterations) +
          " iterations without stabilizing; eps may be too small");

    Partition next = colors_stable
                         ? cur.partition
                         : refine_step(cur.partition, g, in, color_scope, opt.refine.threads);
    bool part_stable = colors_stable || equivalent(next, cur.partition);

    // Jacobi reweighting: all scope nodes read the previous weights.
    const auto& nodes = weight_scope.nodes();
    Weight max_delta = 0.0;
    for (NodeId n : nodes) {
      Weight w = reweight(cur, g, n);
      max_delta = std::max(max_delta, std::abs(w - cur.weights[n]));
      next_weights[n] = w;
    }

    bool weights_stable = max_delta < eps;
    if (part_stable && weights_stable) return cur;

    if (!part_stable) cur.partition = std::move(next);
    colors_stable = part_stable;
    for (NodeId n : nodes) cur.weights[n] = next_weights[n];
  }
}

} // namespace

WeightedPartition weighted_refine_fixpoint(const WeightedPartition& xi, const TripleGraph& g,
                                           ColorInterner& in, const Scope& scope, Weight eps,
                                           const WeightedRefineOptions& opt) {
  return weighted_fixpoint_impl(xi, g, in, scope, scope, eps, opt);
}

WeightedPartition propagate(const WeightedPartition& xi, const TripleGraph& g,
                            ColorInterner& in, Weight eps,
                            const WeightedRefineOptions& opt) {
  std::vector<NodeId> un = unaligned_nonliterals(xi.partition, g);
  if (un.empty()) return xi;

  // Colors refine over the unaligned nodes plus the re-derivable aligned
  // blanks (whose classes are restored afterwards); weights move only on
  // the unaligned nodes themselves.
  std::vector<NodeId> rederived = rederivable_blanks(xi.partition, g, in, un);
  std::vector<NodeId> all(un.begin(), un.end());
  all.insert(all.end(), rederived.begin(), rederived.end());

  WeightedPartition blanked = xi;
  blanked.partition = blank_out(xi.partition, all, in);
  for (NodeId n : un) blanked.weights[n] = 0.0;

  Scope color_scope(g.node_count(), all);
  Scope weight_scope(g.node_count(), un);
  WeightedPartition out =
      weighted_fixpoint_impl(blanked, g, in, color_scope, weight_scope, eps, opt);
  out.partition = map_rederived_back(std::move(out.partition), xi.partition, rederived);
  for (NodeId b : rederived) out.weights[b] = xi.weights[b];
  return out;
}

} // namespace rdfalign
