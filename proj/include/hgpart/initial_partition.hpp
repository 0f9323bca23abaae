#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hgpart/hypergraph.hpp"
#include "hgpart/optimizer.hpp"
#include "hgpart/partition.hpp"

namespace hgpart {

struct WeightedEdge {
  VertexId u = 0;
  VertexId v = 0;
  double weight = 0.0;
};

/// Undirected weighted graph as adjacency lists.
struct WeightedGraph {
  std::vector<std::vector<std::pair<VertexId, double>>> adjacency;

  std::size_t size() const noexcept { return adjacency.size(); }
  void add_edge(VertexId u, VertexId v, double weight);
  /// Each edge once, u < v, sorted by (u, v).
  std::vector<WeightedEdge> edges() const;
};

/// Edge (i, j) iff s_ij = X_i . X_j > tau, with weight 1 - s_ij.
WeightedGraph build_similarity_graph(const FeatureMatrix& x, double tau);

struct SpanningTree {
  /// Vertex ids covered, in input order.
  std::vector<VertexId> vertices;
  std::vector<WeightedEdge> edges;
  /// parent[i] is the position in `vertices` of vertex i's parent, or -1.
  std::vector<std::ptrdiff_t> parent;
  /// Connected components of the graph the tree was grown on. More than one
  /// means the tree was completed with joining edges (or is a forest, for
  /// the explicit-graph variant).
  std::size_t components = 1;

  /// Sum of edge weights taken in ascending order, so equal edge multisets
  /// give bit-identical totals.
  double total_weight() const;
};

/// Prim's algorithm on an explicit graph; yields a spanning forest when the
/// graph is disconnected.
SpanningTree prim_mst(const WeightedGraph& g);

/// Prim's algorithm over `vertices` on the thresholded similarity graph of x
/// (edges with similarity > tau, weight 1 - similarity), started at
/// vertices[0]. A disconnected threshold graph is grown per component and the
/// components are joined by their lightest connecting edges.
SpanningTree prim_mst(const FeatureMatrix& x, std::span<const VertexId> vertices, double tau);

struct ClusterSet {
  std::vector<std::vector<VertexId>> clusters;
  std::vector<Weight> weights;
  /// One row per cluster: mean feature vector of its members.
  Matrix centroids;
};

/// Removes the p - 1 heaviest tree edges (ties by smaller endpoints first)
/// and returns the p resulting components, ordered by first member in the
/// tree's vertex order.
ClusterSet prune_clusters(const SpanningTree& tree, std::size_t p,
                          std::span<const Weight> vertex_weights, const FeatureMatrix& x);

enum class MergeRule {
  /// Nearest block by centroid; if it would overflow, the lightest block.
  kNearestThenLightest,
  /// Nearest block among those with room; if none, the lightest block.
  kNearestFeasible,
};

struct ClusterMerge {
  /// Block of every cluster.
  std::vector<BlockId> cluster_block;
  std::vector<Weight> block_weights;
  /// Row sums of member features and member counts, per block.
  Matrix block_sums;
  std::vector<std::size_t> block_counts;

  Eigen::RowVectorXd centroid(BlockId b) const {
    return block_sums.row(b) / static_cast<double>(std::max<std::size_t>(1, block_counts[b]));
  }
};

/// Seeds k blocks with the k heaviest clusters (ties by cluster index) and
/// merges the rest, in cluster order, under `cap`.
ClusterMerge merge_clusters(const ClusterSet& clusters, BlockId k, double cap, MergeRule rule);

/// MST over every vertex, pruned into p clusters and merged into k blocks.
/// The result may violate the caps. Requires k <= p <= n.
Partition mst_partition_small(const FeatureMatrix& x, const Hypergraph& h,
                              const BalanceSpec& spec, std::size_t p, double tau = 0.2);

/// The max(k, ceil(0.2 n)) heaviest vertices (ties by lower index), sorted.
std::vector<VertexId> representative_vertices(const Hypergraph& h, BlockId k);

/// MST over the ceil(0.2 n) heaviest vertices, merged under the relaxed cap
/// (1 + eps) * (representative weight) / k; every other vertex then joins the
/// nearest block centroid with room under the real cap, else the lightest.
Partition representative_partition_large(const FeatureMatrix& x, const Hypergraph& h,
                                         const BalanceSpec& spec, std::size_t p,
                                         double tau = 0.2);

enum class PRule { kSqrtHalfN, kNOverFiveK };

std::size_t p_from_rule(PRule rule, std::size_t n, BlockId k);
std::string p_rule_name(PRule rule);

struct InitialOptions {
  std::vector<double> lambda1 = {0.9, 0.5, 0.15, 0.015};
  std::vector<double> lambda2 = {1.0, 0.9, 0.8};
  int num_init = 10;
  std::vector<PRule> p_rules = {PRule::kSqrtHalfN, PRule::kNOverFiveK};
  /// Overrides p_rules when set.
  std::optional<std::size_t> fixed_p;
  double tau = 0.2;
  std::size_t large_threshold = 35000;
  ApgParams apg;
  int threads = 1;
};

struct Candidate {
  Partition partition;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  std::size_t p = 0;
  std::string p_label;
  std::size_t solver_iterations = 0;
  bool solver_converged = false;
};

/// The (lambda1, lambda2) pair used by candidate i: the grid in lambda1-major
/// order, cycled when num_init exceeds its size.
std::pair<double, double> lambda_pair(const InitialOptions& options, std::size_t i);

/// num_init embeddings of the coarse hypergraph, each turned into a
/// partition with every p rule; the best p per embedding is kept (feasible
/// first, then lower cutsize).
std::vector<Candidate> generate_candidates(const Hypergraph& h, const BalanceSpec& spec,
                                           const InitialOptions& options);

}  // namespace hgpart
