#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace hgpart {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using BlockId = std::int32_t;
using Weight = std::int64_t;

/// Immutable weighted hypergraph stored as two CSR arrays (pins per edge and
/// incident edges per vertex). Pin lists are sorted and free of duplicates.
class Hypergraph {
 public:
  Hypergraph() = default;

  /// Builds the hypergraph, sorting and deduplicating every pin list.
  /// Throws InvalidArgument on out-of-range pins, empty edges or weights < 1.
  Hypergraph(std::vector<Weight> vertex_weights,
             std::vector<Weight> edge_weights,
             const std::vector<std::vector<VertexId>>& pins);

  /// Unit vertex and edge weights.
  static Hypergraph unweighted(std::size_t n,
                               const std::vector<std::vector<VertexId>>& pins);

  std::size_t num_vertices() const noexcept { return vertex_weights_.size(); }
  std::size_t num_edges() const noexcept { return edge_weights_.size(); }
  std::size_t num_pins() const noexcept { return pin_list_.size(); }

  Weight vertex_weight(VertexId v) const { return vertex_weights_[v]; }
  Weight edge_weight(EdgeId e) const { return edge_weights_[e]; }
  std::span<const Weight> vertex_weights() const noexcept { return vertex_weights_; }
  std::span<const Weight> edge_weights() const noexcept { return edge_weights_; }

  std::span<const VertexId> pins(EdgeId e) const {
    return {pin_list_.data() + pin_offsets_[e], pin_list_.data() + pin_offsets_[e + 1]};
  }
  std::size_t edge_size(EdgeId e) const { return pin_offsets_[e + 1] - pin_offsets_[e]; }

  /// Incident hyperedges of v in increasing edge order.
  std::span<const EdgeId> incident_edges(VertexId v) const {
    return {incidence_list_.data() + incidence_offsets_[v],
            incidence_list_.data() + incidence_offsets_[v + 1]};
  }
  std::size_t degree(VertexId v) const {
    return incidence_offsets_[v + 1] - incidence_offsets_[v];
  }

  Weight total_vertex_weight() const noexcept { return total_vertex_weight_; }
  Weight total_edge_weight() const noexcept { return total_edge_weight_; }

  friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

 private:
  std::vector<Weight> vertex_weights_;
  std::vector<Weight> edge_weights_;
  std::vector<std::size_t> pin_offsets_{0};
  std::vector<VertexId> pin_list_;
  std::vector<std::size_t> incidence_offsets_{0};
  std::vector<EdgeId> incidence_list_;
  Weight total_vertex_weight_ = 0;
  Weight total_edge_weight_ = 0;
};

/// Per-block capacity model. Every block shares the cap
/// (1 + epsilon) * ceil(total / k).
struct BalanceSpec {
  BlockId k = 2;
  double epsilon = 0.0;
  double upper_bound = 0.0;

  static BalanceSpec make(Weight total_weight, BlockId k, double epsilon);
  static BalanceSpec make(const Hypergraph& h, BlockId k, double epsilon) {
    return make(h.total_vertex_weight(), k, epsilon);
  }

  /// Largest integer block weight that satisfies the cap. A relative slack of
  /// 1e-12 absorbs the representation error of epsilon (1.04 * 25 and friends).
  Weight max_block_weight() const;
};

/// epsilon = ((50 + ubfactor) / 100)^log2(k) * k - 1, the balance factor that
/// reproduces hMetis' recursive-bisection cap. Requires 0 < ubfactor < 50, k >= 2.
double epsilon_from_ubfactor(double ubfactor, BlockId k);

/// Default balance factor per block count: 0.04, 0.06, 0.08 for k = 2, 3, 4
/// and 0.02 above.
double default_epsilon(BlockId k);

}  // namespace hgpart
