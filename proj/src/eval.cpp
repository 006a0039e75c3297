#include "rdfalign/eval.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <tuple>
#include <unordered_set>

namespace rdfalign {

GroundTruth GroundTruth::load_tsv(std::istream& in) {
  GroundTruth t;
  std::unordered_set<std::string> seen_src;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw std::runtime_error("truth line " + std::to_string(lineno) + ": expected two columns");
    std::string src = line.substr(0, tab);
    std::string tgt = line.substr(tab + 1);
    if (!tgt.empty() && tgt.back() == '\r') tgt.pop_back();
    if (!seen_src.insert(src).second)
      throw std::runtime_error("truth line " + std::to_string(lineno) + ": duplicate source key " + src);
    t.pairs.emplace_back(std::move(src), std::move(tgt));
  }
  return t;
}

GroundTruth GroundTruth::load_tsv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return load_tsv(in);
}

void GroundTruth::save_tsv(std::ostream& out) const {
  for (const auto& [s, t] : pairs) out << s << '\t' << t << '\n';
}

std::vector<AlignPair> resolve_truth(const GroundTruth& truth, const TripleGraph& g,
                                     const std::vector<std::string>& node_keys) {
  std::unordered_map<std::string, NodeId> src_by_key, tgt_by_key;
  for (NodeId n = 0; n < g.node_count(); ++n) {
    auto& m = g.origin(n) == Origin::Source ? src_by_key : tgt_by_key;
    m.emplace(node_keys[n], n);
  }
  std::vector<AlignPair> out;
  out.reserve(truth.pairs.size());
  for (const auto& [sk, tk] : truth.pairs) {
    auto si = src_by_key.find(sk);
    if (si == src_by_key.end()) throw std::runtime_error("unresolvable source key " + sk);
    auto ti = tgt_by_key.find(tk);
    if (ti == tgt_by_key.end()) throw std::runtime_error("unresolvable target key " + tk);
    out.emplace_back(si->second, ti->second);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void classify_side(const std::unordered_map<NodeId, std::vector<NodeId>>& aligned,
                   const std::unordered_map<NodeId, NodeId>& truth, SideCounts& counts) {
  std::unordered_set<NodeId> universe;
  for (const auto& [n, _] : aligned) universe.insert(n);
  for (const auto& [n, _] : truth) universe.insert(n);
  std::vector<NodeId> nodes(universe.begin(), universe.end());
  std::sort(nodes.begin(), nodes.end());

  static const std::vector<NodeId> kEmpty;
  for (NodeId n : nodes) {
    auto ai = aligned.find(n);
    const std::vector<NodeId>& s = ai == aligned.end() ? kEmpty : ai->second;
    auto ti = truth.find(n);
    if (ti != truth.end()) {
      bool contains = std::binary_search(s.begin(), s.end(), ti->second);
      if (!contains) {
        ++counts.missing;
        counts.missing_nodes.push_back(n);
      } else if (s.size() == 1) {
        ++counts.exact;
        counts.exact_nodes.push_back(n);
      } else {
        ++counts.inclusive;
        counts.inclusive_nodes.push_back(n);
      }
    } else if (!s.empty()) {
      ++counts.false_matches;
      counts.false_nodes.push_back(n);
    }
  }
}

} // namespace

PrecisionReport evaluate(const TripleGraph& g, std::span<const AlignPair> alignment,
                         std::span<const AlignPair> truth_pairs) {
  (void)g;
  std::unordered_map<NodeId, std::vector<NodeId>> fwd, bwd;
  for (const auto& [n, m] : alignment) {
    fwd[n].push_back(m);
    bwd[m].push_back(n);
  }
  for (auto& [n, v] : fwd) std::sort(v.begin(), v.end());
  for (auto& [m, v] : bwd) std::sort(v.begin(), v.end());

  std::unordered_map<NodeId, NodeId> truth_fwd, truth_bwd;
  for (const auto& [n, m] : truth_pairs) {
    truth_fwd.emplace(n, m);
    truth_bwd.emplace(m, n);
  }

  PrecisionReport r;
  classify_side(fwd, truth_fwd, r.source);
  classify_side(bwd, truth_bwd, r.target);
  return r;
}

double aligned_edge_ratio(const TripleGraph& g, std::span<const AlignPair> alignment) {
  // Alignment classes as connected components of the alignment pairs.
  std::unordered_map<NodeId, NodeId> parent;
  std::function<NodeId(NodeId)> find = [&](NodeId x) {
    auto it = parent.find(x);
    if (it == parent.end() || it->second == x) return x;
    NodeId root = find(it->second);
    it->second = root;
    return root;
  };
  auto unite = [&](NodeId a, NodeId b) {
    NodeId ra = find(a), rb = find(b);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    parent.try_emplace(std::min(ra, rb), std::min(ra, rb));
  };
  for (const auto& [n, m] : alignment) unite(n, m);

  struct EdgeClass {
    std::size_t src_edges = 0, tgt_edges = 0;
  };
  std::map<std::tuple<NodeId, NodeId, NodeId>, EdgeClass> classes;
  for (const Triple& t : g.triples()) {
    auto key = std::make_tuple(find(t.s), find(t.p), find(t.o));
    auto& c = classes[key];
    (g.origin(t.s) == Origin::Source ? c.src_edges : c.tgt_edges) += 1;
  }
  std::size_t aligned_classes = 0, unaligned_edges = 0;
  for (const auto& [key, c] : classes) {
    if (c.src_edges > 0 && c.tgt_edges > 0)
      ++aligned_classes;
    else
      unaligned_edges += c.src_edges + c.tgt_edges;
  }
  std::size_t total = aligned_classes + unaligned_edges;
  return total == 0 ? 0.0 : static_cast<double>(aligned_classes) / static_cast<double>(total);
}

SweepResult threshold_sweep(const TripleGraph& g, ColorInterner& in,
                            std::span<const Weight> thetas,
                            std::span<const AlignPair> truth_pairs,
                            const OverlapOptions& base_options) {
  SweepResult result;
  std::size_t best_exact = 0;
  bool first = true;
  for (Weight theta : thetas) {
    OverlapOptions opt = base_options;
    opt.theta = theta;
    opt.overlap_theta = -1.0;
    opt.sigma_theta = -1.0;
    WeightedPartition xi = overlap_partition(g, in, opt);
    std::vector<WeightedPair> weighted = align_theta(xi, g, theta);
    std::vector<AlignPair> pairs;
    pairs.reserve(weighted.size());
    for (const auto& wp : weighted) pairs.emplace_back(wp.src, wp.tgt);
    PrecisionReport rep = evaluate(g, pairs, truth_pairs);
    rep.aligned_edge_ratio = aligned_edge_ratio(g, pairs);
    if (first || rep.exact_total() > best_exact) {
      best_exact = rep.exact_total();
      result.best_theta = theta;
      first = false;
    }
    result.entries.push_back({theta, std::move(rep)});
  }
  return result;
}

} // namespace rdfalign
