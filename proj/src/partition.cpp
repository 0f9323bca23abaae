#include "hgpart/partition.hpp"

#include <algorithm>
#include <string>

#include "hgpart/error.hpp"

namespace hgpart {

Weight cutsize(const Hypergraph& h, std::span<const BlockId> assignment) {
  Weight total = 0;
  std::vector<BlockId> seen;
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    seen.clear();
    for (VertexId v : h.pins(e)) seen.push_back(assignment[v]);
    std::sort(seen.begin(), seen.end());
    const auto distinct = std::unique(seen.begin(), seen.end()) - seen.begin();
    total += h.edge_weight(e) * static_cast<Weight>(distinct - 1);
  }
  return total;
}

Partition::Partition(const Hypergraph& h, BlockId k, std::vector<BlockId> assignment)
    : h_(&h), k_(k), assignment_(std::move(assignment)) {
  if (k < 1) throw InvalidArgument("partition needs k >= 1");
  if (assignment_.size() != h.num_vertices()) {
    throw InvalidArgument("assignment has " + std::to_string(assignment_.size()) +
                          " entries for " + std::to_string(h.num_vertices()) + " vertices");
  }
  block_weights_.assign(k, 0);
  for (VertexId v = 0; v < assignment_.size(); ++v) {
    const BlockId b = assignment_[v];
    if (b < 0 || b >= k) {
      throw InvalidArgument("vertex " + std::to_string(v) + " has block id " +
                            std::to_string(b) + " outside [0, " + std::to_string(k) + ")");
    }
    block_weights_[b] += h.vertex_weight(v);
  }
  pin_counts_.assign(h.num_edges() * static_cast<std::size_t>(k), 0);
  connectivity_.assign(h.num_edges(), 0);
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    auto* counts = pin_counts_.data() + static_cast<std::size_t>(e) * k;
    for (VertexId v : h.pins(e)) {
      if (counts[assignment_[v]]++ == 0) ++connectivity_[e];
    }
    cutsize_ += h.edge_weight(e) * (static_cast<Weight>(connectivity_[e]) - 1);
  }
}

Partition Partition::trivial(const Hypergraph& h, BlockId k) {
  return Partition(h, k, std::vector<BlockId>(h.num_vertices(), 0));
}

Weight Partition::move_delta(VertexId v, BlockId to) const {
  const BlockId from = assignment_[v];
  if (from == to) return 0;
  Weight delta = 0;
  for (EdgeId e : h_->incident_edges(v)) {
    const auto* counts = pin_counts_.data() + static_cast<std::size_t>(e) * k_;
    if (counts[from] == 1) delta -= h_->edge_weight(e);
    if (counts[to] == 0) delta += h_->edge_weight(e);
  }
  return delta;
}

Weight Partition::move(VertexId v, BlockId to) {
  const BlockId from = assignment_[v];
  if (from == to) return 0;
  Weight delta = 0;
  for (EdgeId e : h_->incident_edges(v)) {
    auto* counts = pin_counts_.data() + static_cast<std::size_t>(e) * k_;
    if (--counts[from] == 0) {
      --connectivity_[e];
      delta -= h_->edge_weight(e);
    }
    if (counts[to]++ == 0) {
      ++connectivity_[e];
      delta += h_->edge_weight(e);
    }
  }
  const Weight w = h_->vertex_weight(v);
  block_weights_[from] -= w;
  block_weights_[to] += w;
  assignment_[v] = to;
  cutsize_ += delta;
  return delta;
}

Weight Partition::overload(const BalanceSpec& spec) const {
  const Weight cap = spec.max_block_weight();
  Weight total = 0;
  for (Weight w : block_weights_) total += std::max<Weight>(0, w - cap);
  return total;
}

bool is_feasible(std::span<const Weight> block_weights, const BalanceSpec& spec) {
  if (static_cast<BlockId>(block_weights.size()) != spec.k) return false;
  const Weight cap = spec.max_block_weight();
  return std::all_of(block_weights.begin(), block_weights.end(),
                     [cap](Weight w) { return w <= cap; });
}

bool is_feasible(const Partition& p, const BalanceSpec& spec) {
  if (p.k() != spec.k) {
    throw InvalidArgument("partition has k=" + std::to_string(p.k()) +
                          " but balance spec has k=" + std::to_string(spec.k));
  }
  return is_feasible(p.block_weights(), spec);
}

}  // namespace hgpart
