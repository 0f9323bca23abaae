#pragma once

#include <span>
#include <vector>

#include "hgpart/hypergraph.hpp"

namespace hgpart {

/// Connectivity-1 cutsize: sum over edges of weight * (blocks spanned - 1).
/// Computed from scratch.
Weight cutsize(const Hypergraph& h, std::span<const BlockId> assignment);

/// Vertex-to-block assignment bound to a hypergraph. Keeps block weights,
/// per-edge block pin counts and the cutsize in sync under single-vertex moves.
/// The hypergraph must outlive the partition.
class Partition {
 public:
  Partition(const Hypergraph& h, BlockId k, std::vector<BlockId> assignment);

  /// Every vertex in block 0.
  static Partition trivial(const Hypergraph& h, BlockId k);

  const Hypergraph& hypergraph() const noexcept { return *h_; }
  BlockId k() const noexcept { return k_; }
  std::size_t size() const noexcept { return assignment_.size(); }

  BlockId block(VertexId v) const { return assignment_[v]; }
  std::span<const BlockId> assignment() const noexcept { return assignment_; }

  Weight block_weight(BlockId b) const { return block_weights_[b]; }
  std::span<const Weight> block_weights() const noexcept { return block_weights_; }

  Weight cutsize() const noexcept { return cutsize_; }

  /// Number of pins of edge e in block b.
  std::uint32_t pin_count(EdgeId e, BlockId b) const {
    return pin_counts_[static_cast<std::size_t>(e) * k_ + b];
  }
  /// Number of distinct blocks spanned by edge e.
  std::uint32_t connectivity(EdgeId e) const { return connectivity_[e]; }

  /// Cutsize change if v moved to block `to` (negative = improvement).
  Weight move_delta(VertexId v, BlockId to) const;

  /// Moves v and returns the cutsize delta that was applied.
  Weight move(VertexId v, BlockId to);

  /// Total weight above the cap, summed over overloaded blocks.
  Weight overload(const BalanceSpec& spec) const;

 private:
  const Hypergraph* h_;
  BlockId k_;
  std::vector<BlockId> assignment_;
  std::vector<Weight> block_weights_;
  std::vector<std::uint32_t> pin_counts_;
  std::vector<std::uint32_t> connectivity_;
  Weight cutsize_ = 0;
};

bool is_feasible(const Partition& p, const BalanceSpec& spec);
bool is_feasible(std::span<const Weight> block_weights, const BalanceSpec& spec);

}  // namespace hgpart
