#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hgpart/graph_ops.hpp"
#include "hgpart/hypergraph.hpp"
#include "hgpart/optimizer.hpp"
#include "hgpart/partition.hpp"

namespace hgpart {

/// 1/4 y^T L y for labels y in {+1, -1}: the weight of graph edges whose
/// endpoints carry different labels.
double cut_objective(const SparseMatrix& laplacian, std::span<const int> labels);

struct BipartitionOptions {
  /// Share of vertices (heaviest first) that span the key-node tree.
  double key_fraction = 0.05;
  /// Share of key-tree edges (heaviest first) tried as the separating cut.
  double cut_fraction = 0.2;
};

struct BipartitionCandidate {
  double objective = 0.0;
  bool feasible = false;
  Weight positive_weight = 0;
  Weight negative_weight = 0;
};

struct BipartitionResult {
  std::vector<int> labels;
  double objective = 0.0;
  bool feasible = false;
  /// Every labeling that was evaluated, in the order tried.
  std::vector<BipartitionCandidate> candidates;
};

/// Splits the rows of a two-column embedding in two. A spanning tree over the
/// heaviest vertices is cut at each of its heaviest edges; the two sides give
/// centers c1, c2 and every vertex takes +1 when it is farther from c1 than
/// from c2, else -1. The +1 side is checked against caps.first and the -1
/// side against caps.second. Returns the feasible labeling with the smallest
/// cut objective, or the least overloaded one (then smallest objective),
/// flagged infeasible, when none fits.
BipartitionResult mst_bipartition(const FeatureMatrix& x, std::span<const Weight> vertex_weights,
                                  std::pair<double, double> caps, const SparseMatrix& laplacian,
                                  const BipartitionOptions& options = {});

struct PairPlan {
  std::vector<std::pair<BlockId, BlockId>> pairs;
  std::optional<BlockId> leftover;
};

/// strength[i * k + j]: total weight of hyperedges with pins in both i and j.
std::vector<Weight> connectivity_strength(const Partition& p);

/// Greedily pairs the two unpaired blocks of highest mutual strength (ties
/// by the smaller pair of ids) until floor(k/2) pairs exist; with odd k the
/// remaining block is left over.
PairPlan pair_blocks(const Partition& p);

struct RefinementOptions {
  std::vector<double> xi1 = {0.5, 0.15};
  std::vector<double> xi2 = {1.0, 0.8, 0.2};
  ApgParams apg;
  BipartitionOptions bipartition;
  int max_rounds = 20;
  int threads = 1;
};

struct PairwiseStats {
  int rounds = 0;
  int accepted = 0;
  /// Proposals that lowered the clique cut but raised the hypergraph cutsize.
  int reverted = 0;
};

/// Re-splits paired blocks with the partite objective and the MST
/// bipartition. A pair's proposal is kept only when it is feasible for the
/// pair, strictly lowers the pair's clique cut and does not raise the
/// hypergraph cutsize. Rounds repeat until none is kept.
Partition pairwise_improve(Partition p, const BalanceSpec& spec,
                           const RefinementOptions& options = {},
                           PairwiseStats* stats = nullptr);

struct RepairResult {
  Partition partition;
  bool feasible = false;
  std::size_t moves = 0;
  std::size_t swaps = 0;
};

/// Moves vertices out of the most overloaded block, preferring the move to a
/// block with room that raises the cutsize least (ties: lighter vertex, lower
/// index, lower target). Without such a move, a move that still lowers the
/// total overload is taken; failing that, the cheapest weight-reducing swap
/// with a block that has room. Gives up after 2n steps or when nothing helps.
RepairResult repair_feasibility(Partition p, const BalanceSpec& spec);

struct FmOptions {
  /// A pass ends after this many consecutive moves without a new best.
  int max_nonimproving_moves = 1000;
  int max_passes = 20;
  /// Edges larger than this do not trigger neighbor gain updates.
  std::size_t update_edge_limit = 1000;
};

struct FmStats {
  int passes = 0;
  std::size_t moves_kept = 0;
};

/// Pass-based k-way FM: each vertex moves at most once per pass, always the
/// highest-gain move into a block with room; the pass is rolled back to its
/// best prefix. Never raises the cutsize and never overloads a block.
Partition kway_fm(Partition p, const BalanceSpec& spec, const FmOptions& options = {},
                  FmStats* stats = nullptr);

}  // namespace hgpart
