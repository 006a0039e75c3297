#include "rdfalign/triple_graph.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_set>

namespace rdfalign {

namespace {

struct TripleHash {
  std::size_t operator()(const Triple& t) const {
    std::size_t h = t.s;
    h = h * 0x100000001b3ULL ^ t.p;
    h = h * 0x100000001b3ULL ^ t.o;
    return h;
  }
};

} // namespace

std::span<const OutPair> TripleGraph::out(NodeId n) const {
  assert(n < node_count());
  return {out_pairs_.data() + out_offsets_[n], out_offsets_[n + 1] - out_offsets_[n]};
}

std::span<const OutPair> TripleGraph::out_file_order(NodeId n) const {
  assert(n < node_count());
  return {out_pairs_file_.data() + out_offsets_[n], out_offsets_[n + 1] - out_offsets_[n]};
}

std::size_t TripleGraph::out_degree(NodeId n) const {
  return out_offsets_[n + 1] - out_offsets_[n];
}

std::span<const NodeId> TripleGraph::dependents(NodeId n) const {
  assert(n < node_count());
  return {dep_nodes_.data() + dep_offsets_[n], dep_offsets_[n + 1] - dep_offsets_[n]};
}

std::vector<NodeId> TripleGraph::nodes_of_origin(Origin g) const {
  std::vector<NodeId> out;
  for (NodeId n = 0; n < node_count(); ++n)
    if (origins_[n] == g) out.push_back(n);
  return out;
}

TripleGraph::SideStats TripleGraph::side_stats(Origin g) const {
  SideStats s;
  for (NodeId n = 0; n < node_count(); ++n) {
    if (origins_[n] != g) continue;
    switch (labels_[n].kind) {
      case LabelKind::Uri: ++s.uris; break;
      case LabelKind::Literal: ++s.literals; break;
      case LabelKind::Blank: ++s.blanks; break;
    }
  }
  for (const Triple& t : triples_)
    if (origins_[t.s] == g) ++s.triples;
  return s;
}

NodeId TripleGraph::find_uri(std::string_view text) const {
  auto it = uri_index_.find(std::string(text));
  return it == uri_index_.end() ? kNoNode : it->second;
}

NodeId TripleGraph::find_literal(std::string_view full_text) const {
  auto it = literal_index_.find(std::string(full_text));
  return it == literal_index_.end() ? kNoNode : it->second;
}

NodeId TripleGraph::find_uri(std::string_view text, Origin g) const {
  for (NodeId n : uris_)
    if (origins_[n] == g && labels_[n].text == text) return n;
  return kNoNode;
}

NodeId TripleGraph::find_literal(std::string_view full_text, Origin g) const {
  for (NodeId n : literals_)
    if (origins_[n] == g && labels_[n].full_text() == full_text) return n;
  return kNoNode;
}

void TripleGraph::finalize() {
  const std::size_t n = labels_.size();

  // Deduplicate triples, keeping first-occurrence order.
  {
    std::unordered_set<Triple, TripleHash> seen;
    seen.reserve(triples_.size() * 2);
    std::vector<Triple> unique;
    unique.reserve(triples_.size());
    for (const Triple& t : triples_)
      if (seen.insert(t).second) unique.push_back(t);
    triples_ = std::move(unique);
  }

  out_offsets_.assign(n + 1, 0);
  for (const Triple& t : triples_) ++out_offsets_[t.s + 1];
  for (std::size_t i = 0; i < n; ++i) out_offsets_[i + 1] += out_offsets_[i];

  out_pairs_file_.resize(triples_.size());
  {
    std::vector<std::size_t> cursor(out_offsets_.begin(), out_offsets_.end() - 1);
    for (const Triple& t : triples_)
      out_pairs_file_[cursor[t.s]++] = {t.p, t.o};
  }
  out_pairs_ = out_pairs_file_;
  for (std::size_t i = 0; i < n; ++i)
    std::sort(out_pairs_.begin() + out_offsets_[i], out_pairs_.begin() + out_offsets_[i + 1]);

  dep_offsets_.assign(n + 1, 0);
  for (const Triple& t : triples_) {
    ++dep_offsets_[t.p + 1];
    ++dep_offsets_[t.o + 1];
  }
  for (std::size_t i = 0; i < n; ++i) dep_offsets_[i + 1] += dep_offsets_[i];
  dep_nodes_.resize(2 * triples_.size());
  {
    std::vector<std::size_t> cursor(dep_offsets_.begin(), dep_offsets_.end() - 1);
    for (const Triple& t : triples_) {
      dep_nodes_[cursor[t.p]++] = t.s;
      dep_nodes_[cursor[t.o]++] = t.s;
    }
  }
  // Deduplicate dependent lists.
  {
    std::vector<NodeId> compact;
    compact.reserve(dep_nodes_.size());
    std::vector<std::size_t> new_offsets(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
      auto first = dep_nodes_.begin() + dep_offsets_[i];
      auto last = dep_nodes_.begin() + dep_offsets_[i + 1];
      std::sort(first, last);
      auto end = std::unique(first, last);
      new_offsets[i] = compact.size();
      compact.insert(compact.end(), first, end);
    }
    new_offsets[n] = compact.size();
    dep_nodes_ = std::move(compact);
    dep_offsets_ = std::move(new_offsets);
  }

  uris_.clear();
  literals_.clear();
  blanks_.clear();
  uri_index_.clear();
  literal_index_.clear();
  for (NodeId i = 0; i < n; ++i) {
    switch (labels_[i].kind) {
      case LabelKind::Uri:
        uris_.push_back(i);
        uri_index_.emplace(labels_[i].text, i);
        break;
      case LabelKind::Literal:
        literals_.push_back(i);
        literal_index_.emplace(labels_[i].full_text(), i);
        break;
      case LabelKind::Blank:
        blanks_.push_back(i);
        break;
    }
  }
}

std::vector<Violation> TripleGraph::validate() const {
  std::vector<Violation> out;
  for (std::size_t i = 0; i < triples_.size(); ++i) {
    const Triple& t = triples_[i];
    if (labels_[t.s].is_literal())
      out.push_back({Violation::LiteralSubject, t.s, i, "literal node in subject position"});
    if (labels_[t.p].is_literal())
      out.push_back({Violation::LiteralPredicate, t.p, i, "literal node in predicate position"});
    if (labels_[t.p].is_blank())
      out.push_back({Violation::BlankPredicate, t.p, i, "blank node in predicate position"});
  }
  // Label uniqueness is per origin; a combined graph may repeat a label
  // across sides.
  for (int side = 0; side < 2; ++side) {
    std::unordered_map<std::string, NodeId> uris, lits;
    for (NodeId n = 0; n < node_count(); ++n) {
      if (origins_[n] != static_cast<Origin>(side)) continue;
      if (labels_[n].is_uri()) {
        auto [it, fresh] = uris.emplace(labels_[n].text, n);
        if (!fresh)
          out.push_back({Violation::DuplicateUriLabel, n, 0,
                         "duplicate URI label <" + labels_[n].text + ">"});
      } else if (labels_[n].is_literal()) {
        auto [it, fresh] = lits.emplace(labels_[n].full_text(), n);
        if (!fresh)
          out.push_back({Violation::DuplicateLiteralLabel, n, 0,
                         "duplicate literal label \"" + labels_[n].full_text() + "\""});
      }
    }
  }
  return out;
}

NodeId GraphBuilder::add_uri(std::string_view text) {
  auto it = uri_seen_.find(std::string(text));
  if (it != uri_seen_.end()) return it->second;
  NodeId id = static_cast<NodeId>(g_.labels_.size());
  g_.labels_.push_back(Label::uri(std::string(text)));
  g_.origins_.push_back(Origin::Source);
  uri_seen_.emplace(std::string(text), id);
  return id;
}

NodeId GraphBuilder::add_literal(std::string_view text, std::string_view suffix) {
  Label l = Label::literal(std::string(text), std::string(suffix));
  std::string key = l.full_text();
  auto it = literal_seen_.find(key);
  if (it != literal_seen_.end()) return it->second;
  NodeId id = static_cast<NodeId>(g_.labels_.size());
  g_.labels_.push_back(std::move(l));
  g_.origins_.push_back(Origin::Source);
  literal_seen_.emplace(std::move(key), id);
  return id;
}

NodeId GraphBuilder::add_blank() {
  NodeId id = static_cast<NodeId>(g_.labels_.size());
  g_.labels_.push_back(Label::blank());
  g_.origins_.push_back(Origin::Source);
  return id;
}

void GraphBuilder::add_triple(NodeId s, NodeId p, NodeId o) {
  assert(s < g_.labels_.size() && p < g_.labels_.size() && o < g_.labels_.size());
  g_.triples_.push_back({s, p, o});
}

TripleGraph GraphBuilder::build() {
  TripleGraph g = std::move(g_);
  g_ = TripleGraph{};
  uri_seen_.clear();
  literal_seen_.clear();
  g.finalize();
  return g;
}

TripleGraph disjoint_union(const TripleGraph& g1, const TripleGraph& g2) {
  TripleGraph g;
  const NodeId shift = static_cast<NodeId>(g1.node_count());
  g.labels_.reserve(g1.node_count() + g2.node_count());
  g.labels_ = g1.labels_;
  g.labels_.insert(g.labels_.end(), g2.labels_.begin(), g2.labels_.end());
  g.origins_.assign(g1.node_count(), Origin::Source);
  g.origins_.insert(g.origins_.end(), g2.node_count(), Origin::Target);
  g.triples_ = g1.triples_;
  g.triples_.reserve(g1.triple_count() + g2.triple_count());
  for (const Triple& t : g2.triples_)
    g.triples_.push_back({t.s + shift, t.p + shift, t.o + shift});
  g.combined_ = true;
  g.finalize();
  return g;
}

} // namespace rdfalign
