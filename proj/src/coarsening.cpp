#include "hgpart/coarsening.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "hgpart/error.hpp"

namespace hgpart {
namespace {

double edge_score(const Hypergraph& h, EdgeId e) {
  const auto size = static_cast<double>(h.edge_size(e));
  return static_cast<double>(h.edge_weight(e)) / std::max(1.0, size - 1.0);
}

constexpr VertexId kUnmatched = static_cast<VertexId>(-1);

}  // namespace

double matching_score(const Hypergraph& h, VertexId u, VertexId v) {
  const auto a = h.incident_edges(u);
  const auto b = h.incident_edges(v);
  double score = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      score += edge_score(h, a[i]);
      ++i;
      ++j;
    }
  }
  return score;
}

Matching build_matching(const Hypergraph& h, Weight cap) {
  const std::size_t n = h.num_vertices();
  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&h](VertexId a, VertexId b) {
    return h.vertex_weight(a) > h.vertex_weight(b);
  });

  std::vector<VertexId> mate(n, kUnmatched);
  std::vector<double> score(n, 0.0);
  std::vector<VertexId> touched;
  Matching matching;

  for (VertexId u : order) {
    if (mate[u] != kUnmatched) continue;
    const Weight wu = h.vertex_weight(u);
    if (wu > cap) continue;
    touched.clear();
    for (EdgeId e : h.incident_edges(u)) {
      const double s = edge_score(h, e);
      for (VertexId v : h.pins(e)) {
        if (v == u || mate[v] != kUnmatched || wu + h.vertex_weight(v) > cap) continue;
        if (score[v] == 0.0) touched.push_back(v);
        score[v] += s;
      }
    }
    VertexId best = kUnmatched;
    double best_score = 0.0;
    for (VertexId v : touched) {
      if (score[v] > best_score || (score[v] == best_score && v < best)) {
        best = v;
        best_score = score[v];
      }
      score[v] = 0.0;
    }
    if (best != kUnmatched) {
      mate[u] = best;
      mate[best] = u;
      matching.pairs.emplace_back(u, best);
    }
  }
  return matching;
}

CoarseLevel contract(const Hypergraph& h, const Matching& matching) {
  const std::size_t n = h.num_vertices();
  std::vector<VertexId> mate(n, kUnmatched);
  for (const auto& [a, b] : matching.pairs) {
    if (a >= n || b >= n || a == b || mate[a] != kUnmatched || mate[b] != kUnmatched) {
      throw InvalidArgument("matching is not a set of disjoint vertex pairs");
    }
    mate[a] = b;
    mate[b] = a;
  }

  CoarseLevel level;
  level.map_to_coarse.assign(n, kUnmatched);
  std::vector<Weight> coarse_weights;
  for (VertexId v = 0; v < n; ++v) {
    if (level.map_to_coarse[v] != kUnmatched) continue;
    const auto id = static_cast<VertexId>(coarse_weights.size());
    level.map_to_coarse[v] = id;
    Weight w = h.vertex_weight(v);
    if (mate[v] != kUnmatched) {
      level.map_to_coarse[mate[v]] = id;
      w += h.vertex_weight(mate[v]);
    }
    coarse_weights.push_back(w);
  }

  // Parallel edges collapse onto the first occurrence of their pin set.
  std::map<std::vector<VertexId>, std::size_t> index_of;
  std::vector<std::vector<VertexId>> coarse_pins;
  std::vector<Weight> coarse_edge_weights;
  std::vector<VertexId> pins;
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    pins.clear();
    for (VertexId v : h.pins(e)) pins.push_back(level.map_to_coarse[v]);
    std::sort(pins.begin(), pins.end());
    pins.erase(std::unique(pins.begin(), pins.end()), pins.end());
    if (pins.size() < 2) continue;
    auto [it, inserted] = index_of.try_emplace(pins, coarse_pins.size());
    if (inserted) {
      coarse_pins.push_back(pins);
      coarse_edge_weights.push_back(h.edge_weight(e));
    } else {
      coarse_edge_weights[it->second] += h.edge_weight(e);
    }
  }
  level.hypergraph =
      Hypergraph(std::move(coarse_weights), std::move(coarse_edge_weights), coarse_pins);
  return level;
}

Hierarchy coarsen(const Hypergraph& h, const BalanceSpec& spec,
                  const CoarseningOptions& options) {
  Hierarchy hierarchy;
  const Weight cap = spec.max_block_weight();
  const std::size_t target = options.vertices_per_block * static_cast<std::size_t>(spec.k);
  const Hypergraph* current = &h;
  for (int round = 0;; ++round) {
    if (current->num_vertices() <= target) {
      hierarchy.stop_reason = CoarseningStop::kSmallEnough;
      break;
    }
    if (round >= options.max_rounds) {
      hierarchy.stop_reason = CoarseningStop::kRoundLimit;
      break;
    }
    const Matching matching = build_matching(*current, cap);
    if (matching.pairs.empty()) {
      hierarchy.stop_reason = CoarseningStop::kEmptyMatching;
      break;
    }
    const std::size_t before = current->num_vertices();
    hierarchy.levels.push_back(contract(*current, matching));
    current = &hierarchy.levels.back().hypergraph;
    if (static_cast<double>(current->num_vertices()) >
        options.min_reduction * static_cast<double>(before)) {
      hierarchy.stop_reason = CoarseningStop::kStalled;
      break;
    }
  }
  return hierarchy;
}

Partition project_partition(const Hypergraph& fine, const CoarseLevel& level,
                            const Partition& coarse) {
  if (level.map_to_coarse.size() != fine.num_vertices()) {
    throw InvalidArgument("level map does not match the fine hypergraph");
  }
  if (coarse.size() != level.hypergraph.num_vertices()) {
    throw InvalidArgument("coarse partition does not match the coarse hypergraph");
  }
  std::vector<BlockId> assignment(fine.num_vertices());
  for (VertexId v = 0; v < fine.num_vertices(); ++v) {
    assignment[v] = coarse.block(level.map_to_coarse[v]);
  }
  return Partition(fine, coarse.k(), std::move(assignment));
}

}  // namespace hgpart
