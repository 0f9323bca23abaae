#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hgpart/coarsening.hpp"
#include "hgpart/hypergraph.hpp"
#include "hgpart/initial_partition.hpp"
#include "hgpart/refinement.hpp"

namespace hgpart {

struct RunConfig {
  BlockId k = 2;
  /// At most one of epsilon and ubfactor may be set; with neither, the
  /// default for k applies.
  std::optional<double> epsilon;
  std::optional<double> ubfactor;
  InitialOptions initial;
  RefinementOptions refinement;
  FmOptions fm;
  CoarseningOptions coarsening;
  /// 0 means all available cores.
  int threads = 0;
  /// Forces a single thread so every run is reproducible bit for bit.
  bool deterministic = false;
};

/// Resolves epsilon from the config and builds the block caps.
BalanceSpec resolve_balance(const Hypergraph& h, const RunConfig& config);

/// Worker count after applying the deterministic flag.
int effective_threads(const RunConfig& config);

struct CandidateRecord {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  std::size_t p = 0;
  std::string p_label;
  std::size_t solver_iterations = 0;
  Weight initial_cutsize = 0;
  bool initial_feasible = false;
  Weight refined_cutsize = 0;
  bool refined_feasible = false;
};

struct PhaseTimes {
  double coarsen = 0.0;
  double initial = 0.0;
  double refine = 0.0;
  double uncoarsen = 0.0;
  double total = 0.0;
};

struct PartitionResult {
  std::vector<BlockId> assignment;
  BalanceSpec spec;
  Weight cutsize = 0;
  std::vector<Weight> block_weights;
  bool feasible = false;
  std::size_t levels = 0;
  std::size_t coarse_vertices = 0;
  std::vector<CandidateRecord> candidates;
  std::size_t chosen = 0;
  PhaseTimes seconds;
};

/// Coarsen, embed and split the coarsest level into candidates, repair and
/// pairwise-improve each, keep the best (feasible first, then cutsize), and
/// project back with FM at every level.
PartitionResult run_partition(const Hypergraph& h, const RunConfig& config);

struct ImproveReport {
  std::vector<BlockId> assignment;
  Weight before_cutsize = 0;
  bool before_feasible = false;
  Weight after_cutsize = 0;
  bool after_feasible = false;
  /// Whether the input had to be repaired before improvement.
  bool repaired = false;
  double ratio = 1.0;
};

/// Repair (when needed), pairwise improvement and FM on an existing partition.
ImproveReport improve_partition(const Hypergraph& h, std::span<const BlockId> assignment,
                                const RunConfig& config);

struct Evaluation {
  Weight cutsize = 0;
  /// Number of hyperedges per count of spanned blocks.
  std::map<std::uint32_t, std::size_t> connectivity_histogram;
  std::vector<Weight> block_weights;
  BalanceSpec spec;
  bool feasible = false;
};

Evaluation evaluate_partition(const Hypergraph& h, std::span<const BlockId> assignment,
                              const BalanceSpec& spec);

/// key=value lines.
std::string format_metrics(const Hypergraph& h, const PartitionResult& result);
std::string format_evaluation(const Evaluation& evaluation);
std::string format_improvement(const ImproveReport& report);

}  // namespace hgpart
