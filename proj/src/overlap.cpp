#include "rdfalign/overlap.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "rdfalign/edit_oracle.hpp"
#include "rdfalign/util.hpp"

namespace rdfalign {

ObjectId ObjectInterner::word(std::string_view token) {
  auto it = words_.find(std::string(token));
  if (it != words_.end()) return it->second;
  ObjectId id = count_++;
  words_.emplace(std::string(token), id);
  return id;
}

ObjectId ObjectInterner::color_pair(Color p, Color o) {
  std::uint64_t key = (static_cast<std::uint64_t>(p) << 32) | o;
  auto it = pairs_.find(key);
  if (it != pairs_.end()) return it->second;
  ObjectId id = count_++;
  pairs_.emplace(key, id);
  return id;
}

Weight overlap(std::span<const ObjectId> o1, std::span<const ObjectId> o2) {
  assert(std::is_sorted(o1.begin(), o1.end()) && std::is_sorted(o2.begin(), o2.end()));
  if (o1.empty() && o2.empty()) return 1.0;
  std::size_t inter = 0, i = 0, j = 0;
  while (i < o1.size() && j < o2.size()) {
    if (o1[i] == o2[j]) {
      ++inter;
      ++i;
      ++j;
    } else if (o1[i] < o2[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  std::size_t uni = o1.size() + o2.size() - inter;
  return static_cast<Weight>(inter) / static_cast<Weight>(uni);
}

Weight diff(std::span<const ObjectId> o1, std::span<const ObjectId> o2) {
  return 1.0 - overlap(o1, o2);
}

namespace {

// Decodes one UTF-8 code point; malformed bytes are taken verbatim.
std::uint32_t next_codepoint(std::string_view s, std::size_t& i) {
  unsigned char c = static_cast<unsigned char>(s[i]);
  std::size_t len = c < 0x80 ? 1 : c < 0xE0 ? 2 : c < 0xF0 ? 3 : 4;
  if (c < 0xC0 || i + len > s.size()) {
    ++i;
    return c;
  }
  static const std::uint32_t mask[5] = {0, 0x7F, 0x1F, 0x0F, 0x07};
  std::uint32_t cp = c & mask[len];
  for (std::size_t k = 1; k < len; ++k) {
    unsigned char cc = static_cast<unsigned char>(s[i + k]);
    if ((cc & 0xC0) != 0x80) {
      ++i;
      return c;
    }
    cp = (cp << 6) | (cc & 0x3F);
  }
  i += len;
  return cp;
}

bool is_separator(std::uint32_t cp) {
  if (cp < 0x80) {
    char c = static_cast<char>(cp);
    bool alnum = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
    return !alnum;
  }
  // Common Unicode whitespace and punctuation blocks; everything else is a
  // word character.
  if (cp == 0xA0 || cp == 0x1680 || (cp >= 0x2000 && cp <= 0x200A)) return true;
  if (cp == 0x2028 || cp == 0x2029 || cp == 0x202F || cp == 0x205F || cp == 0x3000) return true;
  if (cp >= 0x2010 && cp <= 0x205E) return true; // general punctuation
  return false;
}

void append_lower_utf8(std::string& out, std::uint32_t cp) {
  if (cp >= 'A' && cp <= 'Z') cp += 'a' - 'A';
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

} // namespace

std::vector<std::string> split(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  std::size_t i = 0;
  while (i < text.size()) {
    std::uint32_t cp = next_codepoint(text, i);
    if (is_separator(cp)) {
      if (!cur.empty()) tokens.push_back(std::move(cur));
      cur.clear();
    } else {
      append_lower_utf8(cur, cp);
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  std::sort(tokens.begin(), tokens.end());
  tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
  return tokens;
}

std::vector<ObjectId> literal_char_objects(std::string_view text, ObjectInterner& objects) {
  std::vector<std::string> tokens = split(text);
  std::vector<ObjectId> out;
  if (tokens.size() == 1) {
    // A single word has no word-level overlap signal; characterize it by
    // its characters so near-identical tokens become candidates.
    const std::string& t = tokens.front();
    std::size_t i = 0;
    while (i < t.size()) {
      std::size_t start = i;
      next_codepoint(t, i);
      out.push_back(objects.word(std::string_view(t).substr(start, i - start)));
    }
  } else {
    out.reserve(tokens.size());
    for (const std::string& t : tokens) out.push_back(objects.word(t));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Weight sigma_literals(const TripleGraph& g, NodeId n, NodeId m) {
  if (!g.label(n).is_literal() || !g.label(m).is_literal())
    throw std::invalid_argument("sigma_literals expects literal nodes");
  std::string a = g.label(n).full_text(), b = g.label(m).full_text();
  std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 0.0;
  return static_cast<Weight>(levenshtein(a, b)) / static_cast<Weight>(longest);
}

std::vector<ObjectId> out_color(const WeightedPartition& xi, const TripleGraph& g,
                                ObjectInterner& objects, NodeId n) {
  std::vector<ObjectId> out;
  auto pairs = g.out(n);
  out.reserve(pairs.size());
  for (const auto& [p, o] : pairs)
    out.push_back(objects.color_pair(xi.partition[p], xi.partition[o]));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Weight sigma_nl(const WeightedPartition& xi, const TripleGraph& g, NodeId n, NodeId m) {
  if (g.label(n).is_literal() || g.label(m).is_literal())
    throw std::invalid_argument("sigma_nl expects non-literal nodes");

  // Group each side's out-edges by edge color.
  using Group = std::vector<OutPair>;
  auto group_edges = [&](NodeId x) {
    std::unordered_map<std::uint64_t, Group> groups;
    for (const auto& [p, o] : g.out(x)) {
      std::uint64_t key =
          (static_cast<std::uint64_t>(xi.partition[p]) << 32) | xi.partition[o];
      groups[key].push_back({p, o});
    }
    return groups;
  };
  auto groups_n = group_edges(n);
  auto groups_m = group_edges(m);

  const std::size_t f = std::max(groups_n.size(), groups_m.size());
  if (f == 0) return 0.0;

  auto weight_of = [&](const OutPair& e) { return oplus(xi.weights[e.first], xi.weights[e.second]); };
  auto order = [&](Group& gr) {
    std::sort(gr.begin(), gr.end(), [&](const OutPair& a, const OutPair& b) {
      Weight wa = weight_of(a), wb = weight_of(b);
      if (wa != wb) return wa < wb;
      return a < b;
    });
  };

  Weight acc = 0.0;
  std::size_t residual = 0;
  for (auto& [key, gn] : groups_n) {
    auto it = groups_m.find(key);
    if (it == groups_m.end()) {
      residual += gn.size();
      continue;
    }
    Group& gm = it->second;
    order(gn);
    order(gm);
    std::size_t matched = std::min(gn.size(), gm.size());
    for (std::size_t i = 0; i < matched; ++i) {
      Weight term = oplus(sigma_xi(xi, gn[i].first, gm[i].first),
                          sigma_xi(xi, gn[i].second, gm[i].second));
      acc = std::min(acc + term / static_cast<Weight>(f), 1.0);
    }
    residual += gn.size() - matched + gm.size() - matched;
    gm.clear(); // consumed
  }
  for (const auto& [key, gm] : groups_m) residual += gm.size();
  acc = std::min(acc + static_cast<Weight>(residual) / static_cast<Weight>(f), 1.0);
  return acc;
}

CandidateMatchGraph overlap_match(std::span<const NodeId> a, std::span<const NodeId> b,
                                  const OverlapOptions& opt, const CharFn& char_fn,
                                  const SigmaFn& sigma_fn) {
  const Weight th_overlap = opt.candidate_threshold();
  const Weight th_sigma = opt.verify_threshold();

  // Characterize both sides once, in node order.
  std::unordered_map<NodeId, std::vector<ObjectId>> chars;
  chars.reserve((a.size() + b.size()) * 2);
  for (NodeId m : b) chars.emplace(m, char_fn(m));
  for (NodeId n : a)
    if (!chars.count(n)) chars.emplace(n, char_fn(n));

  // Inverted index and frequency counts over b.
  std::unordered_map<ObjectId, std::vector<NodeId>> inv;
  for (NodeId m : b)
    for (ObjectId o : chars.at(m)) inv[o].push_back(m);
  auto freq = [&](ObjectId o) {
    auto it = inv.find(o);
    return it == inv.end() ? std::size_t{0} : it->second.size();
  };

  std::vector<CandidateMatchGraph::Edge> edges;
  std::vector<std::vector<CandidateMatchGraph::Edge>> chunk_edges;

  std::size_t chunks = 0;
  {
    // Probe loop; parallel chunks write disjoint slots, merged in order.
    int threads = opt.threads;
    std::size_t n_items = a.size();
    std::size_t workers = threads <= 1 ? 1 : std::min<std::size_t>(threads, n_items ? n_items : 1);
    std::size_t chunk = workers ? (n_items + workers - 1) / workers : 0;
    chunks = workers;
    chunk_edges.assign(std::max<std::size_t>(workers, 1), {});

    auto probe_range = [&](std::size_t w, std::size_t lo, std::size_t hi) {
      std::vector<ObjectId> ordered;
      std::vector<NodeId> cands;
      for (std::size_t idx = lo; idx < hi; ++idx) {
        NodeId n = a[idx];
        const std::vector<ObjectId>& cn = chars.at(n);
        const std::size_t k = cn.size();
        if (k == 0) continue;
        ordered.assign(cn.begin(), cn.end());
        std::sort(ordered.begin(), ordered.end(), [&](ObjectId x, ObjectId y) {
          std::size_t fx = freq(x), fy = freq(y);
          if (fx != fy) return fx < fy;
          return x < y;
        });
        std::size_t probe;
        if (opt.prefix_mode == PrefixMode::Paper) {
          probe = static_cast<std::size_t>(std::ceil(static_cast<double>(k) * opt.theta));
        } else {
          std::size_t c = static_cast<std::size_t>(std::ceil(static_cast<double>(k) * opt.theta));
          probe = k - c + 1;
        }
        probe = std::min(probe, k);

        cands.clear();
        for (std::size_t i = 0; i < probe; ++i) {
          auto it = inv.find(ordered[i]);
          if (it == inv.end()) continue;
          for (NodeId m : it->second) {
            if (overlap(cn, chars.at(m)) >= th_overlap) cands.push_back(m);
          }
        }
        std::sort(cands.begin(), cands.end());
        cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
        for (NodeId m : cands) {
          Weight s = sigma_fn(n, m);
          if (s < th_sigma) chunk_edges[w].push_back({n, m, s});
        }
      }
    };

    if (workers <= 1) {
      probe_range(0, 0, n_items);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < workers; ++w) {
        std::size_t lo = w * chunk, hi = std::min(n_items, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back(probe_range, w, lo, hi);
      }
      for (auto& t : pool) t.join();
    }
  }
  for (std::size_t w = 0; w < chunks; ++w)
    edges.insert(edges.end(), chunk_edges[w].begin(), chunk_edges[w].end());

  CandidateMatchGraph h;
  h.edges = std::move(edges);
  std::vector<NodeId> an, bn;
  for (const auto& e : h.edges) {
    an.push_back(e.a);
    bn.push_back(e.b);
  }
  std::sort(an.begin(), an.end());
  an.erase(std::unique(an.begin(), an.end()), an.end());
  std::sort(bn.begin(), bn.end());
  bn.erase(std::unique(bn.begin(), bn.end()), bn.end());
  h.a = std::move(an);
  h.b = std::move(bn);
  return h;
}

WeightedPartition overlap_partition(const TripleGraph& g, ColorInterner& in,
                                    const OverlapOptions& opt, OverlapRoundStats* stats) {
  if (opt.theta < 0.0 || opt.theta > 1.0) throw std::invalid_argument("theta outside [0,1]");

  RefineOptions ropt;
  ropt.threads = opt.threads;
  WeightedRefineOptions wopt;
  wopt.refine = ropt;

  WeightedPartition xi = WeightedPartition::zero(hybrid_partition(g, in, ropt));

  ObjectInterner objects;
  const Weight th_sigma = opt.verify_threshold();

  // Literal round: unaligned literals matched on word/character sets and
  // verified by normalized edit distance.
  CandidateMatchGraph h;
  {
    auto [ua, ub] = unaligned(xi.partition, g);
    std::vector<NodeId> a, b;
    for (NodeId n : ua)
      if (g.label(n).is_literal()) a.push_back(n);
    for (NodeId m : ub)
      if (g.label(m).is_literal()) b.push_back(m);
    CharFn char_fn = [&](NodeId n) {
      return literal_char_objects(g.label(n).full_text(), objects);
    };
    SigmaFn sigma_fn = [&](NodeId n, NodeId m) -> Weight {
      const std::string sa = g.label(n).full_text(), sb = g.label(m).full_text();
      const std::size_t longest = std::max(sa.size(), sb.size());
      if (longest == 0) return 0.0;
      const std::size_t gap = sa.size() > sb.size() ? sa.size() - sb.size() : sb.size() - sa.size();
      Weight lower = static_cast<Weight>(gap) / static_cast<Weight>(longest);
      if (lower >= th_sigma) return lower; // cannot pass verification
      return sigma_literals(g, n, m);
    };
    h = overlap_match(a, b, opt, char_fn, sigma_fn);
  }

  std::size_t rounds = 0;
  std::size_t matched = 0;
  for (;;) {
    if (++rounds > opt.max_rounds)
      throw std::runtime_error("overlap alignment exceeded " +
                               std::to_string(opt.max_rounds) + " rounds");
    matched += h.edges.size();
    xi = propagate(enrich(xi, g, h, in), g, in, opt.eps, wopt);

    auto [ua, ub] = unaligned(xi.partition, g);
    std::vector<NodeId> a, b;
    for (NodeId n : ua)
      if (!g.label(n).is_literal()) a.push_back(n);
    for (NodeId m : ub)
      if (!g.label(m).is_literal()) b.push_back(m);

    CharFn char_fn = [&](NodeId n) { return out_color(xi, g, objects, n); };
    SigmaFn sigma_fn = [&](NodeId n, NodeId m) { return sigma_nl(xi, g, n, m); };
    h = overlap_match(a, b, opt, char_fn, sigma_fn);
    if (h.empty()) break;
  }
  if (stats) {
    stats->rounds = rounds;
    stats->matched_pairs = matched;
  }
  return xi;
}

} // namespace rdfalign
