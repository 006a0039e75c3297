#include "rdfalign/edit_oracle.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#include "rdfalign/util.hpp"

namespace rdfalign {

std::size_t levenshtein(std::string_view s, std::string_view t) {
  if (s.size() > t.size()) std::swap(s, t);
  std::vector<std::size_t> row(s.size() + 1);
  for (std::size_t i = 0; i <= s.size(); ++i) row[i] = i;
  for (std::size_t j = 1; j <= t.size(); ++j) {
    std::size_t prev_diag = row[0];
    row[0] = j;
    for (std::size_t i = 1; i <= s.size(); ++i) {
      std::size_t cur = row[i];
      std::size_t sub = prev_diag + (s[i - 1] == t[j - 1] ? 0 : 1);
      row[i] = std::min({row[i] + 1, row[i - 1] + 1, sub});
      prev_diag = cur;
    }
  }
  return row[s.size()];
}

Assignment hungarian(const std::vector<std::vector<double>>& cost) {
  Assignment result;
  if (cost.empty()) return result;
  const std::size_t rows = cost.size();
  std::size_t cols = 0;
  for (const auto& r : cost) cols = std::max(cols, r.size());
  if (cols == 0) return result;
  const std::size_t n = std::max(rows, cols);

  auto cell = [&](std::size_t i, std::size_t j) -> double {
    if (i < rows && j < cost[i].size()) return cost[i][j];
    return 1.0; // pad: an unmatched edge costs one full unit
  };

  // Potentials method; p[j] holds the row matched to column j (1-based).
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = static_cast<int>(i);
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      std::size_t i0 = static_cast<std::size_t>(p[j0]), j1 = 0;
      double delta = inf;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double cur = cell(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = static_cast<int>(j0);
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[static_cast<std::size_t>(p[j])] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      std::size_t j1 = static_cast<std::size_t>(way[j0]);
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }

  result.row_to_col.assign(n, -1);
  for (std::size_t j = 1; j <= n; ++j)
    if (p[j] > 0) result.row_to_col[static_cast<std::size_t>(p[j] - 1)] = static_cast<int>(j - 1);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    total += cell(i, static_cast<std::size_t>(result.row_to_col[i]));
  result.cost = total;
  return result;
}

DistanceMatrix::DistanceMatrix(std::vector<NodeId> sources, std::vector<NodeId> targets)
    : sources_(std::move(sources)), targets_(std::move(targets)) {
  src_index_.reserve(sources_.size() * 2);
  tgt_index_.reserve(targets_.size() * 2);
  for (std::size_t i = 0; i < sources_.size(); ++i) src_index_.emplace(sources_[i], i);
  for (std::size_t j = 0; j < targets_.size(); ++j) tgt_index_.emplace(targets_[j], j);
  values_.assign(sources_.size() * targets_.size(), 1.0);
}

Weight DistanceMatrix::at(NodeId n, NodeId m) const {
  return cell(src_index_.at(n), tgt_index_.at(m));
}

namespace {

Weight normalized_lev(const Label& a, const Label& b) {
  std::string sa = a.full_text(), sb = b.full_text();
  std::size_t longest = std::max(sa.size(), sb.size());
  if (longest == 0) return 0.0;
  return static_cast<Weight>(levenshtein(sa, sb)) / static_cast<Weight>(longest);
}

} // namespace

DistanceMatrix sigma_edit(const TripleGraph& g, ColorInterner& in,
                          const EditOracleOptions& opt) {
  std::vector<NodeId> sources, targets;
  for (NodeId n = 0; n < g.node_count(); ++n)
    (g.origin(n) == Origin::Source ? sources : targets).push_back(n);
  if (sources.size() * targets.size() > opt.cell_budget)
    throw BudgetExceeded("distance matrix would exceed the cell budget");

  RefineOptions ropt;
  ropt.threads = opt.threads;
  Partition hybrid = hybrid_partition(g, in, ropt);
  std::vector<char> aligned = aligned_mask(hybrid, g);

  DistanceMatrix d(sources, targets);

  struct DynPair {
    std::size_t i, j;
    NodeId n, m;
  };
  std::vector<DynPair> dyn;

  for (std::size_t i = 0; i < sources.size(); ++i) {
    NodeId n = sources[i];
    for (std::size_t j = 0; j < targets.size(); ++j) {
      NodeId m = targets[j];
      Weight& slot = d.cell(i, j);
      if (hybrid[n] == hybrid[m]) {
        slot = 0.0;
      } else if (aligned[n] || aligned[m]) {
        slot = 1.0;
      } else if (g.label(n).is_literal() && g.label(m).is_literal()) {
        slot = normalized_lev(g.label(n), g.label(m));
      } else if (g.label(n).is_literal() || g.label(m).is_literal()) {
        slot = 1.0;
      } else {
        std::size_t dn = g.out_degree(n), dm = g.out_degree(m);
        if (dn == 0 && dm == 0) {
          slot = 0.0; // identical (empty) contents
        } else if (dn == 0 || dm == 0) {
          slot = 1.0; // all edges unmatched
        } else {
          slot = 1.0;
          dyn.push_back({i, j, n, m});
        }
      }
    }
  }

  // Jacobi iteration on the unaligned non-literal pairs: every value is
  // recomputed from the previous matrix, so updates are order-independent.
  std::vector<Weight> next(dyn.size());
  for (std::size_t round = 1; round <= opt.max_iterations; ++round) {
    d.rounds = round;
    parallel_for(dyn.size(), opt.threads, [&](std::size_t lo, std::size_t hi) {
      std::vector<std::vector<double>> cost;
      for (std::size_t k = lo; k < hi; ++k) {
        const DynPair& dp = dyn[k];
        auto out_n = g.out(dp.n);
        auto out_m = g.out(dp.m);
        const std::size_t f = std::max(out_n.size(), out_m.size());
        cost.assign(out_n.size(), std::vector<double>(out_m.size(), 0.0));
        for (std::size_t a = 0; a < out_n.size(); ++a)
          for (std::size_t b = 0; b < out_m.size(); ++b)
            cost[a][b] = oplus(d.at(out_n[a].first, out_m[b].first),
                               d.at(out_n[a].second, out_m[b].second));
        double total = hungarian(cost).cost;
        next[k] = std::min(total / static_cast<double>(f), 1.0);
      }
    });
    double delta = 0.0;
    for (std::size_t k = 0; k < dyn.size(); ++k)
      delta = std::max(delta, std::abs(d.cell(dyn[k].i, dyn[k].j) - next[k]));
    for (std::size_t k = 0; k < dyn.size(); ++k) d.cell(dyn[k].i, dyn[k].j) = next[k];
    d.final_delta = delta;
    if (delta < opt.eps) break;
  }
  return d;
}

std::vector<WeightedPair> align_sigma(const DistanceMatrix& d, Weight theta) {
  std::vector<WeightedPair> out;
  for (std::size_t i = 0; i < d.sources().size(); ++i)
    for (std::size_t j = 0; j < d.targets().size(); ++j)
      if (d.cell(i, j) <= theta)
        out.push_back({d.sources()[i], d.targets()[j], d.cell(i, j)});
  std::sort(out.begin(), out.end(), [](const WeightedPair& x, const WeightedPair& y) {
    return x.src != y.src ? x.src < y.src : x.tgt < y.tgt;
  });
  return out;
}

} // namespace rdfalign
