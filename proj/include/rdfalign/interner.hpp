#pragma once

#include <deque>
#include <mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rdfalign/label.hpp"
#include "rdfalign/types.hpp"

namespace rdfalign {

using ColorPair = std::pair<Color, Color>;

// Structural description behind an interned color: a node label, a raw
// node id, a (previous color, outbound color pairs) pair, or a fresh
// cluster marker.
struct ColorDescription {
  enum Kind { LabelDesc, RawNode, Pairs, Cluster } kind = LabelDesc;
  Label label;
  NodeId node = kNoNode;
  Color prev = kNoColor;
  std::vector<ColorPair> pairs; // sorted, deduplicated
  std::uint64_t seq = 0;

  bool operator==(const ColorDescription& o) const;
};

// Injective bidirectional map between color descriptions and dense color
// ids. Recursive colors share structure: a description refers to previously
// interned colors, so iterated recoloring builds a DAG rather than trees.
// Interning only grows; concurrent intern calls are serialized internally.
class ColorInterner {
public:
  ColorInterner();

  Color label_color(const Label& l);
  Color node_color(NodeId n);
  Color blank_color() { return blank_; }

  // pairs are sorted and deduplicated by the callee.
  Color pair_color(Color prev, std::vector<ColorPair> pairs);
  Color pair_color_sorted(Color prev, std::span<const ColorPair> pairs);

  // True when c is a recoloring whose stored signature equals pairs (sorted).
  bool signature_matches(Color c, std::span<const ColorPair> pairs) const;

  // A brand-new color with no structural content, for enrichment clusters.
  Color fresh_cluster_color();

  Color intern(const ColorDescription& d);
  ColorDescription describe(Color c) const;
  ColorDescription::Kind kind_of(Color c) const;

  std::size_t size() const;

private:
  Color intern_key(std::string&& key);

  mutable std::mutex mu_;
  std::deque<std::string> keys_; // stable storage; index == color id
  std::unordered_map<std::string_view, Color> by_key_;
  std::uint64_t cluster_seq_ = 0;
  Color blank_ = kNoColor;
};

} // namespace rdfalign
