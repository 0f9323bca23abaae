#include "hgpart/pipeline.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

#include "hgpart/error.hpp"
#include "hgpart/parallel.hpp"

namespace hgpart {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string number(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

template <typename T>
std::string joined(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

bool better(bool feasible_a, Weight cut_a, bool feasible_b, Weight cut_b) {
  if (feasible_a != feasible_b) return feasible_a;
  return cut_a < cut_b;
}

}  // namespace

BalanceSpec resolve_balance(const Hypergraph& h, const RunConfig& config) {
  if (config.k < 1) throw InvalidArgument("k must be at least 1");
  if (config.epsilon && config.ubfactor) {
    throw InvalidArgument("epsilon and ubfactor are mutually exclusive");
  }
  double epsilon = default_epsilon(config.k);
  if (config.epsilon) {
    if (!(*config.epsilon >= 0.0)) throw InvalidArgument("epsilon must be nonnegative");
    epsilon = *config.epsilon;
  } else if (config.ubfactor) {
    epsilon = config.k == 1 ? 0.0 : epsilon_from_ubfactor(*config.ubfactor, config.k);
  }
  return BalanceSpec::make(h, config.k, epsilon);
}

int effective_threads(const RunConfig& config) {
  return config.deterministic ? 1 : resolve_threads(config.threads);
}

PartitionResult run_partition(const Hypergraph& h, const RunConfig& config) {
  const auto start = Clock::now();
  PartitionResult result;
  result.spec = resolve_balance(h, config);
  const BalanceSpec& spec = result.spec;
  const int threads = effective_threads(config);

  auto finish = [&](const Partition& p) {
    result.assignment.assign(p.assignment().begin(), p.assignment().end());
    result.cutsize = p.cutsize();
    result.block_weights.assign(p.block_weights().begin(), p.block_weights().end());
    result.feasible = is_feasible(p, spec);
    result.seconds.total = seconds_since(start);
  };

  if (spec.k == 1) {
    result.coarse_vertices = h.num_vertices();
    finish(Partition::trivial(h, 1));
    return result;
  }

  auto phase = Clock::now();
  const Hierarchy hierarchy = coarsen(h, spec, config.coarsening);
  const Hypergraph& coarse = hierarchy.coarsest(h);
  result.levels = hierarchy.levels.size();
  result.coarse_vertices = coarse.num_vertices();
  result.seconds.coarsen = seconds_since(phase);

  phase = Clock::now();
  InitialOptions initial = config.initial;
  initial.threads = threads;
  std::vector<Candidate> candidates = generate_candidates(coarse, spec, initial);
  result.seconds.initial = seconds_since(phase);

  phase = Clock::now();
  RefinementOptions refinement = config.refinement;
  refinement.threads = 1;
  std::vector<std::optional<Partition>> refined(candidates.size());
  parallel_for(candidates.size(), threads, [&](std::size_t i) {
    RepairResult repaired = repair_feasibility(candidates[i].partition, spec);
    refined[i] = pairwise_improve(std::move(repaired.partition), spec, refinement);
  });
  result.candidates.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const Candidate& c = candidates[i];
    CandidateRecord record;
    record.lambda1 = c.lambda1;
    record.lambda2 = c.lambda2;
    record.p = c.p;
    record.p_label = c.p_label;
    record.solver_iterations = c.solver_iterations;
    record.initial_cutsize = c.partition.cutsize();
    record.initial_feasible = is_feasible(c.partition, spec);
    record.refined_cutsize = refined[i]->cutsize();
    record.refined_feasible = is_feasible(*refined[i], spec);
    const CandidateRecord& chosen = result.candidates.empty() ? record : result.candidates[result.chosen];
    if (!result.candidates.empty() &&
        better(record.refined_feasible, record.refined_cutsize, chosen.refined_feasible,
               chosen.refined_cutsize)) {
      result.chosen = i;
    }
    result.candidates.push_back(record);
  }
  Partition current = kway_fm(std::move(*refined[result.chosen]), spec, config.fm);
  result.seconds.refine = seconds_since(phase);

  phase = Clock::now();
  for (std::size_t i = hierarchy.levels.size(); i-- > 0;) {
    const Hypergraph& finer = hierarchy.finer(h, i);
    current = kway_fm(project_partition(finer, hierarchy.levels[i], current), spec, config.fm);
  }
  if (!is_feasible(current, spec)) {
    RepairResult repaired = repair_feasibility(std::move(current), spec);
    current = kway_fm(std::move(repaired.partition), spec, config.fm);
  }
  result.seconds.uncoarsen = seconds_since(phase);
  finish(current);
  return result;
}

ImproveReport improve_partition(const Hypergraph& h, std::span<const BlockId> assignment,
                                const RunConfig& config) {
  const BalanceSpec spec = resolve_balance(h, config);
  Partition p(h, spec.k, std::vector<BlockId>(assignment.begin(), assignment.end()));
  ImproveReport report;
  report.before_cutsize = p.cutsize();
  report.before_feasible = is_feasible(p, spec);
  if (!report.before_feasible) {
    RepairResult repaired = repair_feasibility(std::move(p), spec);
    report.repaired = true;
    p = std::move(repaired.partition);
  }
  if (spec.k >= 2) {
    RefinementOptions refinement = config.refinement;
    refinement.threads = effective_threads(config);
    p = pairwise_improve(std::move(p), spec, refinement);
    p = kway_fm(std::move(p), spec, config.fm);
  }
  report.assignment.assign(p.assignment().begin(), p.assignment().end());
  report.after_cutsize = p.cutsize();
  report.after_feasible = is_feasible(p, spec);
  report.ratio = report.before_cutsize == 0
                     ? 1.0
                     : static_cast<double>(report.after_cutsize) /
                           static_cast<double>(report.before_cutsize);
  return report;
}

Evaluation evaluate_partition(const Hypergraph& h, std::span<const BlockId> assignment,
                              const BalanceSpec& spec) {
  const Partition p(h, spec.k, std::vector<BlockId>(assignment.begin(), assignment.end()));
  Evaluation out;
  out.cutsize = p.cutsize();
  for (EdgeId e = 0; e < h.num_edges(); ++e) ++out.connectivity_histogram[p.connectivity(e)];
  out.block_weights.assign(p.block_weights().begin(), p.block_weights().end());
  out.spec = spec;
  out.feasible = is_feasible(p, spec);
  return out;
}

std::string format_metrics(const Hypergraph& h, const PartitionResult& result) {
  std::ostringstream out;
  out << "vertices=" << h.num_vertices() << '\n'
      << "hyperedges=" << h.num_edges() << '\n'
      << "k=" << result.spec.k << '\n'
      << "epsilon=" << number(result.spec.epsilon) << '\n'
      << "max_block_weight=" << result.spec.max_block_weight() << '\n'
      << "cutsize=" << result.cutsize << '\n'
      << "feasible=" << (result.feasible ? "true" : "false") << '\n'
      << "block_weights=" << joined(result.block_weights) << '\n'
      << "levels=" << result.levels << '\n'
      << "coarse_vertices=" << result.coarse_vertices << '\n'
      << "candidates=" << result.candidates.size() << '\n'
      << "chosen_candidate=" << result.chosen << '\n';
  for (std::size_t i = 0; i < result.candidates.size(); ++i) {
    const CandidateRecord& c = result.candidates[i];
    out << "candidate." << i << "=lambda1:" << number(c.lambda1) << ";lambda2:" << number(c.lambda2)
        << ";p:" << c.p << ";p_rule:" << c.p_label << ";solver_iterations:" << c.solver_iterations
        << ";initial_cutsize:" << c.initial_cutsize
        << ";initial_feasible:" << (c.initial_feasible ? "true" : "false")
        << ";refined_cutsize:" << c.refined_cutsize
        << ";refined_feasible:" << (c.refined_feasible ? "true" : "false") << '\n';
  }
  out << "time_coarsen_s=" << number(result.seconds.coarsen) << '\n'
      << "time_initial_s=" << number(result.seconds.initial) << '\n'
      << "time_refine_s=" << number(result.seconds.refine) << '\n'
      << "time_uncoarsen_s=" << number(result.seconds.uncoarsen) << '\n'
      << "time_total_s=" << number(result.seconds.total) << '\n';
  return out.str();
}

std::string format_evaluation(const Evaluation& evaluation) {
  std::ostringstream out;
  out << "cutsize=" << evaluation.cutsize << '\n'
      << "k=" << evaluation.spec.k << '\n'
      << "epsilon=" << number(evaluation.spec.epsilon) << '\n'
      << "upper_bound=" << number(evaluation.spec.upper_bound) << '\n'
      << "max_block_weight=" << evaluation.spec.max_block_weight() << '\n'
      << "block_weights=" << joined(evaluation.block_weights) << '\n'
      << "feasible=" << (evaluation.feasible ? "true" : "false") << '\n';
  for (const auto& [blocks, count] : evaluation.connectivity_histogram) {
    out << "edges_spanning_" << blocks << "=" << count << '\n';
  }
  return out.str();
}

std::string format_improvement(const ImproveReport& report) {
  std::ostringstream out;
  out << "before_cutsize=" << report.before_cutsize << '\n'
      << "before_feasible=" << (report.before_feasible ? "true" : "false") << '\n'
      << "repaired=" << (report.repaired ? "true" : "false") << '\n'
      << "after_cutsize=" << report.after_cutsize << '\n'
      << "after_feasible=" << (report.after_feasible ? "true" : "false") << '\n'
      << "ratio=" << number(report.ratio) << '\n';
  return out.str();
}

}  // namespace hgpart
