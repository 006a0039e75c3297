#include "rdfalign/refine.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "rdfalign/util.hpp"

namespace rdfalign {

Scope::Scope(std::size_t universe, std::span<const NodeId> nodes)
    : mask_(universe, 0), nodes_(nodes.begin(), nodes.end()) {
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
  for (NodeId n : nodes_) {
    assert(n < universe);
    mask_[n] = 1;
  }
}

Scope Scope::all(std::size_t universe) {
  Scope s;
  s.mask_.assign(universe, 1);
  s.nodes_.resize(universe);
  for (std::size_t i = 0; i < universe; ++i) s.nodes_[i] = static_cast<NodeId>(i);
  return s;
}

Scope Scope::none(std::size_t universe) {
  Scope s;
  s.mask_.assign(universe, 0);
  return s;
}

Color recolor(const Partition& p, const TripleGraph& g, ColorInterner& in, NodeId n) {
  auto pairs = g.out(n);
  std::vector<ColorPair> sig;
  sig.reserve(pairs.size());
  for (const auto& [pred, obj] : pairs) sig.emplace_back(p[pred], p[obj]);
  return in.pair_color(p[n], std::move(sig));
}

namespace {

// Recolors the nodes in `work` (sorted by id) from `cur` and writes the new
// colors into `next`. Signatures are computed first (parallelizable), then
// interned sequentially in node order so color ids are deterministic for
// any thread count.
//
// A node whose current color already carries the freshly computed signature
// keeps that color. Without this, a stabilized node would wrap its color
// once more every pass, so its tree depth would track the iteration count
// and nodes stabilizing in different rounds (or against classes frozen by
// an earlier refinement) could never meet in one class even with equal
// contents.
void recolor_batch(const Partition& cur, const TripleGraph& g, ColorInterner& in,
                   std::span<const NodeId> work, int threads, std::vector<Color>& next) {
  const std::size_t m = work.size();
  std::vector<std::size_t> offsets(m + 1, 0);
  for (std::size_t i = 0; i < m; ++i) offsets[i + 1] = offsets[i] + g.out_degree(work[i]);
  std::vector<ColorPair> sigs(offsets[m]);
  std::vector<std::uint32_t> lens(m);

  parallel_for(m, threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      NodeId n = work[i];
      auto out = g.out(n);
      ColorPair* dst = sigs.data() + offsets[i];
      std::size_t k = 0;
      for (const auto& [pred, obj] : out) dst[k++] = {cur[pred], cur[obj]};
      std::sort(dst, dst + k);
      k = static_cast<std::size_t>(std::unique(dst, dst + k) - dst);
      lens[i] = static_cast<std::uint32_t>(k);
    }
  });

  for (std::size_t i = 0; i < m; ++i) {
    NodeId n = work[i];
    std::span<const ColorPair> sig{sigs.data() + offsets[i], lens[i]};
    next[n] = in.signature_matches(cur[n], sig) ? cur[n] : in.pair_color_sorted(cur[n], sig);
  }
}

Partition fixpoint_synchronous(const Partition& start, const TripleGraph& g,
                               ColorInterner& in, const Scope& scope,
                               const RefineOptions& opt, RefineStats* stats) {
  Partition cur = start;
  const std::size_t cap = g.node_count() + 1 + opt.max_passes_slack;
  std::size_t passes = 0;
  for (;;) {
    Partition next = refine_step(cur, g, in, scope, opt.threads);
    ++passes;
    if (stats) {
      stats->passes = passes;
      stats->recolorings += scope.size();
    }
    if (equivalent(next, cur)) return cur;
    cur = std::move(next);
    if (passes > cap)
      throw std::runtime_error("refinement did not stabilize within the pass bound");
  }
}

Partition fixpoint_worklist(const Partition& start, const TripleGraph& g, ColorInterner& in,
                            const Scope& scope, const RefineOptions& opt,
                            RefineStats* stats) {
  Partition cur = start;
  const std::size_t n = g.node_count();

  std::unordered_map<Color, std::size_t> class_size;
  class_size.reserve(n * 2);
  for (Color c : cur.colors) ++class_size[c];

  std::vector<NodeId> work = scope.nodes();
  std::vector<char> queued(n, 0);
  std::vector<Color> old_colors;
  const std::size_t cap = n + 1 + opt.max_passes_slack;
  std::size_t passes = 0;

  while (!work.empty()) {
    if (++passes > cap)
      throw std::runtime_error("refinement did not stabilize within the pass bound");

    const Color fresh_floor = static_cast<Color>(in.size());
    old_colors.resize(work.size());
    for (std::size_t i = 0; i < work.size(); ++i) old_colors[i] = cur[work[i]];

    recolor_batch(cur, g, in, work, opt.threads, cur.colors);
    if (stats) {
      stats->passes = passes;
      stats->recolorings += work.size();
    }

    // A previous class is "settled" by this pass when all its recolored
    // members landed on one brand-new color and nobody stayed behind: a pure
    // rename that cannot regroup any dependent. Everything else (a split, or
    // a move onto a pre-existing color) can, so the movers' dependents get
    // requeued.
    struct MoveInfo {
      Color first_new = kNoColor;
      std::size_t moved = 0;
      bool disturbed = false;
    };
    std::unordered_map<Color, MoveInfo> verdict;
    for (std::size_t i = 0; i < work.size(); ++i) {
      Color oldc = old_colors[i];
      Color newc = cur[work[i]];
      MoveInfo& mi = verdict[oldc];
      if (mi.moved == 0)
        mi.first_new = newc;
      else if (mi.first_new != newc)
        mi.disturbed = true; // split
      if (newc != oldc && newc < fresh_floor) mi.disturbed = true; // merged into an existing class
      ++mi.moved;
    }
    for (auto& [oldc, mi] : verdict)
      if (mi.moved < class_size[oldc]) mi.disturbed = true; // stale members remain

    for (std::size_t i = 0; i < work.size(); ++i) {
      --class_size[old_colors[i]];
      ++class_size[cur[work[i]]];
    }

    std::vector<NodeId> next_work;
    for (std::size_t i = 0; i < work.size(); ++i) {
      if (cur[work[i]] == old_colors[i]) continue; // kept its color
      if (!verdict[old_colors[i]].disturbed) continue;
      for (NodeId dep : g.dependents(work[i])) {
        if (!scope.contains(dep) || queued[dep]) continue;
        queued[dep] = 1;
        next_work.push_back(dep);
      }
    }
    std::sort(next_work.begin(), next_work.end());
    for (NodeId d : next_work) queued[d] = 0;
    work = std::move(next_work);
  }
  return cur;
}

} // namespace

Partition refine_step(const Partition& p, const TripleGraph& g, ColorInterner& in,
                      const Scope& scope, int threads) {
  assert(p.size() == g.node_count());
  Partition next = p;
  recolor_batch(p, g, in, scope.nodes(), threads, next.colors);
  return next;
}

Partition refine_fixpoint(const Partition& p, const TripleGraph& g, ColorInterner& in,
                          const Scope& scope, const RefineOptions& opt,
                          RefineStats* stats) {
  if (scope.empty()) {
    if (stats) stats->passes = 0;
    return p;
  }
  if (opt.worklist) return fixpoint_worklist(p, g, in, scope, opt, stats);
  return fixpoint_synchronous(p, g, in, scope, opt, stats);
}

Partition bisim_partition(const TripleGraph& g, ColorInterner& in, const RefineOptions& opt) {
  return refine_fixpoint(label_partition(g, in), g, in, Scope::all(g.node_count()), opt);
}

Partition deblank_partition(const TripleGraph& g, ColorInterner& in,
                            const RefineOptions& opt) {
  Scope scope(g.node_count(), g.blanks());
  return refine_fixpoint(label_partition(g, in), g, in, scope, opt);
}

Partition blank_out(const Partition& p, std::span<const NodeId> x, ColorInterner& in) {
  Partition out = p;
  const Color blank = in.blank_color();
  for (NodeId n : x) out[n] = blank;
  return out;
}

std::vector<NodeId> unaligned_nonliterals(const Partition& p, const TripleGraph& g) {
  auto [src, tgt] = unaligned(p, g);
  std::vector<NodeId> out;
  out.reserve(src.size() + tgt.size());
  for (NodeId n : src)
    if (!g.label(n).is_literal()) out.push_back(n);
  for (NodeId n : tgt)
    if (!g.label(n).is_literal()) out.push_back(n);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NodeId> rederivable_blanks(const Partition& p, const TripleGraph& g,
                                       const ColorInterner& in,
                                       std::span<const NodeId> blanked_set) {
  std::vector<char> already(g.node_count(), 0);
  for (NodeId n : blanked_set) already[n] = 1;
  std::vector<NodeId> extra;
  for (NodeId b : g.blanks()) {
    if (already[b]) continue;
    // Structurally colored blanks only; enrichment clusters group merely
    // similar nodes and cannot be reconstructed from the graph.
    ColorDescription::Kind kind = in.kind_of(p[b]);
    if (kind == ColorDescription::Pairs || kind == ColorDescription::LabelDesc)
      extra.push_back(b);
  }
  return extra;
}

Partition map_rederived_back(Partition refined, const Partition& base,
                             std::span<const NodeId> rederived) {
  // Restore the original colors of the re-derived nodes and pull everything
  // that landed in their classes onto the same original colors. Classes
  // that would collapse two distinct original colors are left apart.
  std::unordered_map<Color, Color> to_original;
  std::unordered_set<Color> ambiguous;
  for (NodeId b : rederived) {
    auto [it, fresh] = to_original.try_emplace(refined[b], base[b]);
    if (!fresh && it->second != base[b]) ambiguous.insert(refined[b]);
  }
  for (std::size_t n = 0; n < refined.size(); ++n) {
    auto it = to_original.find(refined[n]);
    if (it != to_original.end() && !ambiguous.count(refined[n])) refined[n] = it->second;
  }
  for (NodeId b : rederived) refined[b] = base[b];
  return refined;
}

// Shared tail of the hybrid construction: blank out the unaligned
// non-literals together with every structurally colored blank, refine, and
// restore the untouched nodes' colors. Re-deriving the aligned blanks lets
// a blanked node reach their classes; without it, a node whose contents
// equal an already-aligned blank cluster could never join it.
Partition refine_blanked(const Partition& base, std::span<const NodeId> un,
                         const TripleGraph& g, ColorInterner& in, const RefineOptions& opt) {
  std::vector<NodeId> rederived = rederivable_blanks(base, g, in, un);
  std::vector<NodeId> all(un.begin(), un.end());
  all.insert(all.end(), rederived.begin(), rederived.end());
  Scope scope(g.node_count(), all);
  Partition refined = refine_fixpoint(blank_out(base, all, in), g, in, scope, opt);
  return map_rederived_back(std::move(refined), base, rederived);
}

Partition hybrid_partition(const TripleGraph& g, ColorInterner& in, const RefineOptions& opt) {
  Partition deblank = deblank_partition(g, in, opt);
  std::vector<NodeId> un = unaligned_nonliterals(deblank, g);
  return refine_blanked(deblank, un, g, in, opt);
}

} // namespace rdfalign
