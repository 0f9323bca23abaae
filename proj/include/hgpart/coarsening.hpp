#pragma once

#include <utility>
#include <vector>

#include "hgpart/hypergraph.hpp"
#include "hgpart/partition.hpp"

namespace hgpart {

/// Gamma(u, v): sum over shared hyperedges of weight / max(1, |e| - 1).
double matching_score(const Hypergraph& h, VertexId u, VertexId v);

struct Matching {
  std::vector<std::pair<VertexId, VertexId>> pairs;
};

/// Greedy heavy-pair matching. Vertices are visited by descending weight
/// (ties by index); each unmatched vertex pairs with the unmatched neighbor
/// of highest score whose combined weight fits `cap` (ties by lower index).
Matching build_matching(const Hypergraph& h, Weight cap);

struct CoarseLevel {
  Hypergraph hypergraph;
  std::vector<VertexId> map_to_coarse;
};

/// Merges matched pairs. Coarse ids follow first appearance in fine index
/// order; single-pin edges are dropped and identical pin sets merge with
/// summed weight.
CoarseLevel contract(const Hypergraph& h, const Matching& matching);

enum class CoarseningStop { kSmallEnough, kEmptyMatching, kStalled, kRoundLimit };

struct CoarseningOptions {
  /// Coarsening stops once |V| <= vertices_per_block * k.
  std::size_t vertices_per_block = 625;
  double min_reduction = 0.8;
  int max_rounds = 20;
};

struct Hierarchy {
  /// Finest (first contraction) to coarsest.
  std::vector<CoarseLevel> levels;
  CoarseningStop stop_reason = CoarseningStop::kSmallEnough;

  const Hypergraph& coarsest(const Hypergraph& original) const {
    return levels.empty() ? original : levels.back().hypergraph;
  }
  /// Hypergraph one step finer than levels[i].
  const Hypergraph& finer(const Hypergraph& original, std::size_t i) const {
    return i == 0 ? original : levels[i - 1].hypergraph;
  }
};

/// Repeats matching and contraction until any stop condition holds:
/// |V| <= 625k, an empty matching, a round that keeps more than 80% of the
/// vertices, or 20 rounds. The pair cap is the block cap of `spec`.
Hierarchy coarsen(const Hypergraph& h, const BalanceSpec& spec,
                  const CoarseningOptions& options = {});

/// Gives every fine vertex the block of its coarse representative.
Partition project_partition(const Hypergraph& fine, const CoarseLevel& level,
                            const Partition& coarse);

}  // namespace hgpart
