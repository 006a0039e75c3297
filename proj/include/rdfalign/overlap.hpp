#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rdfalign/weighted.hpp"

namespace rdfalign {

// Interned characterizing object: a word token from literal splitting or an
// out-edge (predicate color, object color) pair.
using ObjectId = std::uint32_t;

class ObjectInterner {
public:
  ObjectId word(std::string_view token);
  ObjectId color_pair(Color p, Color o);
  std::size_t size() const { return count_; }

private:
  std::unordered_map<std::string, ObjectId> words_;
  std::unordered_map<std::uint64_t, ObjectId> pairs_;
  ObjectId count_ = 0;
};

// Jaccard similarity of two sorted object sets; overlap({}, {}) = 1.
Weight overlap(std::span<const ObjectId> o1, std::span<const ObjectId> o2);
// 1 - overlap; diff({}, {}) = 0.
Weight diff(std::span<const ObjectId> o1, std::span<const ObjectId> o2);

// Lowercased word tokens of a literal: split on whitespace and punctuation,
// empties dropped, deduplicated, sorted.
std::vector<std::string> split(std::string_view text);

// Normalized string edit distance between two literal nodes' labels.
Weight sigma_literals(const TripleGraph& g, NodeId n, NodeId m);

// Deduplicated colors of a node's outgoing edges under the partition.
std::vector<ObjectId> out_color(const WeightedPartition& xi, const TripleGraph& g,
                                ObjectInterner& objects, NodeId n);

// Non-literal distance: pair up same-colored out-edges positionally by
// combined endpoint weight and charge one unit per unmatched edge, all
// normalized by the larger out-color count.
Weight sigma_nl(const WeightedPartition& xi, const TripleGraph& g, NodeId n, NodeId m);

enum class PrefixMode {
  Paper, // probe the ceil(k*theta) least frequent objects
  Safe,  // probe k - ceil(k*theta) + 1, the classical complete prefix
};

struct OverlapOptions {
  Weight theta = 0.65;
  Weight eps = 1e-3;
  PrefixMode prefix_mode = PrefixMode::Paper;
  std::size_t max_rounds = 100;
  int threads = 1;
  // Candidate (similarity >= overlap_theta) and verification
  // (distance < sigma_theta) thresholds; both default to theta.
  Weight overlap_theta = -1.0;
  Weight sigma_theta = -1.0;

  Weight candidate_threshold() const { return overlap_theta >= 0 ? overlap_theta : theta; }
  Weight verify_threshold() const { return sigma_theta >= 0 ? sigma_theta : theta; }
};

using CharFn = std::function<std::vector<ObjectId>(NodeId)>;
using SigmaFn = std::function<Weight(NodeId, NodeId)>;

// Inverted-index candidate generation over b plus distance verification:
// for each node of a, the least frequent fraction of its characterizing
// objects is probed, candidates are kept at overlap >= theta and verified
// at sigma < theta. Isolated nodes are dropped from the result.
CandidateMatchGraph overlap_match(std::span<const NodeId> a, std::span<const NodeId> b,
                                  const OverlapOptions& opt, const CharFn& char_fn,
                                  const SigmaFn& sigma_fn);

// Characterizing objects used for the literal matching round: word tokens,
// falling back to character unigrams for single-token literals, where word
// overlap carries no signal. See README notes on literal matching.
std::vector<ObjectId> literal_char_objects(std::string_view text, ObjectInterner& objects);

struct OverlapRoundStats {
  std::size_t rounds = 0;
  std::size_t matched_pairs = 0;
};

// The full pipeline: seed with the hybrid partition at weight zero, match
// unaligned literals once, then alternate enrichment, propagation, and
// non-literal matching until a round finds nothing.
WeightedPartition overlap_partition(const TripleGraph& g, ColorInterner& in,
                                    const OverlapOptions& opt = {},
                                    OverlapRoundStats* stats = nullptr);

} // namespace rdfalign
