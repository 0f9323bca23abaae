#include "hgpart/refinement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <tuple>

#include "hgpart/error.hpp"
#include "hgpart/initial_partition.hpp"
#include "hgpart/parallel.hpp"
#include "hgpart/union_find.hpp"

namespace hgpart {
namespace {

Weight overload_of(Weight weight, double cap) {
  const double over = static_cast<double>(weight) - cap;
  return over > 0.0 ? static_cast<Weight>(std::ceil(over)) : 0;
}

std::vector<VertexId> key_vertices(std::span<const Weight> vertex_weights, double fraction) {
  const std::size_t n = vertex_weights.size();
  std::size_t count = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n)));
  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), VertexId{0});
  if (count < 2) return order;
  count = std::min(count, n);
  std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    return vertex_weights[a] > vertex_weights[b];
  });
  order.resize(count);
  std::sort(order.begin(), order.end());
  return order;
}

bool better_candidate(const BipartitionCandidate& a, Weight a_over, const BipartitionCandidate& b,
                      Weight b_over) {
  if (a.feasible != b.feasible) return a.feasible;
  if (!a.feasible && a_over != b_over) return a_over < b_over;
  return a.objective < b.objective;
}

}  // namespace

double cut_objective(const SparseMatrix& laplacian, std::span<const int> labels) {
  if (static_cast<Eigen::Index>(labels.size()) != laplacian.rows()) {
    throw InvalidArgument("label count does not match the Laplacian");
  }
  Vector y(laplacian.rows());
  for (Eigen::Index i = 0; i < y.size(); ++i) y[i] = labels[static_cast<std::size_t>(i)];
  return 0.25 * y.dot(laplacian * y);
}

BipartitionResult mst_bipartition(const FeatureMatrix& x, std::span<const Weight> vertex_weights,
                                  std::pair<double, double> caps, const SparseMatrix& laplacian,
                                  const BipartitionOptions& options) {
  const std::size_t n = static_cast<std::size_t>(x.rows());
  if (n < 2) throw InvalidArgument("bipartition needs at least two vertices");
  if (vertex_weights.size() != n || static_cast<std::size_t>(laplacian.rows()) != n) {
    throw InvalidArgument("bipartition inputs disagree in size");
  }

  const std::vector<VertexId> keys = key_vertices(vertex_weights, options.key_fraction);
  // Every similarity exceeds -2, so the key tree is grown on the complete graph.
  const SpanningTree tree = prim_mst(x, keys, -2.0);

  std::vector<WeightedEdge> order = tree.edges;
  std::sort(order.begin(), order.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return std::minmax(a.u, a.v) < std::minmax(b.u, b.v);
  });
  const double wanted = std::ceil(options.cut_fraction * static_cast<double>(keys.size() - 1));
  const std::size_t cuts =
      std::min(order.size(), std::max<std::size_t>(1, static_cast<std::size_t>(wanted)));

  std::vector<std::size_t> position(n, 0);
  for (std::size_t i = 0; i < keys.size(); ++i) position[keys[i]] = i;

  Weight total = 0;
  for (Weight w : vertex_weights) total += w;

  BipartitionResult result;
  BipartitionCandidate best;
  Weight best_over = 0;
  std::vector<int> labels(n);
  for (std::size_t c = 0; c < cuts; ++c) {
    DisjointSets sets(keys.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (i != c) sets.unite(position[order[i].u], position[order[i].v]);
    }
    const std::size_t side = sets.find(position[order[c].u]);
    Eigen::RowVectorXd c1 = Eigen::RowVectorXd::Zero(x.cols());
    Eigen::RowVectorXd c2 = Eigen::RowVectorXd::Zero(x.cols());
    std::size_t n1 = 0, n2 = 0;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (sets.find(i) == side) {
        c1 += x.row(keys[i]);
        ++n1;
      } else {
        c2 += x.row(keys[i]);
        ++n2;
      }
    }
    c1 /= static_cast<double>(std::max<std::size_t>(1, n1));
    c2 /= static_cast<double>(std::max<std::size_t>(1, n2));

    Weight positive = 0;
    for (std::size_t v = 0; v < n; ++v) {
      const auto row = x.row(static_cast<Eigen::Index>(v));
      const double d1 = (row - c1).squaredNorm();
      const double d2 = (row - c2).squaredNorm();
      labels[v] = d1 - d2 >= 0.0 ? 1 : -1;
      if (labels[v] > 0) positive += vertex_weights[v];
    }
    BipartitionCandidate candidate;
    candidate.objective = cut_objective(laplacian, labels);
    candidate.positive_weight = positive;
    candidate.negative_weight = total - positive;
    const Weight over = overload_of(positive, caps.first) + overload_of(total - positive, caps.second);
    candidate.feasible = over == 0;
    if (result.candidates.empty() || better_candidate(candidate, over, best, best_over)) {
      result.labels = labels;
      result.objective = candidate.objective;
      result.feasible = candidate.feasible;
      best = candidate;
      best_over = over;
    }
    result.candidates.push_back(candidate);
  }
  return result;
}

std::vector<Weight> connectivity_strength(const Partition& p) {
  const Hypergraph& h = p.hypergraph();
  const auto k = static_cast<std::size_t>(p.k());
  std::vector<Weight> strength(k * k, 0);
  std::vector<BlockId> present;
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    if (p.connectivity(e) < 2) continue;
    present.clear();
    for (BlockId b = 0; b < p.k(); ++b) {
      if (p.pin_count(e, b) > 0) present.push_back(b);
    }
    for (std::size_t i = 0; i < present.size(); ++i) {
      for (std::size_t j = i + 1; j < present.size(); ++j) {
        strength[present[i] * k + present[j]] += h.edge_weight(e);
        strength[present[j] * k + present[i]] += h.edge_weight(e);
      }
    }
  }
  return strength;
}

PairPlan pair_blocks(const Partition& p) {
  const BlockId k = p.k();
  if (k < 2) throw InvalidArgument("pairing needs k >= 2");
  const std::vector<Weight> strength = connectivity_strength(p);
  std::vector<std::pair<BlockId, BlockId>> all;
  for (BlockId i = 0; i < k; ++i) {
    for (BlockId j = i + 1; j < k; ++j) all.emplace_back(i, j);
  }
  const auto ks = static_cast<std::size_t>(k);
  std::stable_sort(all.begin(), all.end(), [&](const auto& a, const auto& b) {
    return strength[a.first * ks + a.second] > strength[b.first * ks + b.second];
  });
  PairPlan plan;
  std::vector<bool> used(ks, false);
  for (const auto& [i, j] : all) {
    if (used[i] || used[j]) continue;
    used[i] = used[j] = true;
    plan.pairs.emplace_back(i, j);
    if (plan.pairs.size() == ks / 2) break;
  }
  for (BlockId b = 0; b < k; ++b) {
    if (!used[b]) plan.leftover = b;
  }
  return plan;
}

namespace {

struct Proposal {
  BlockId a = 0;
  BlockId b = 0;
  std::vector<VertexId> vertices;
  std::vector<BlockId> blocks;
};

std::optional<Proposal> propose_pair(const Partition& p, const CliqueGraph& graph,
                                     const BalanceSpec& spec, BlockId a, BlockId b,
                                     const RefinementOptions& options) {
  const Hypergraph& h = p.hypergraph();
  std::vector<VertexId> vertices;
  for (VertexId v = 0; v < h.num_vertices(); ++v) {
    if (p.block(v) == a || p.block(v) == b) vertices.push_back(v);
  }
  if (vertices.size() < 2) return std::nullopt;

  const CliqueGraph sub = induced_subgraph(graph, vertices);
  const SparseMatrix lap = laplacian(sub);
  std::vector<Weight> weights(vertices.size());
  std::vector<int> parts(vertices.size());
  std::vector<int> current(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    weights[i] = h.vertex_weight(vertices[i]);
    parts[i] = p.block(vertices[i]) == a ? 0 : 1;
    current[i] = parts[i] == 0 ? 1 : -1;
  }
  const double current_objective = cut_objective(lap, current);
  const double cap = static_cast<double>(spec.max_block_weight());

  std::optional<BipartitionResult> best;
  std::uint64_t stream = 0;
  for (double xi1 : options.xi1) {
    for (double xi2 : options.xi2) {
      const ObjectiveOperator op = ObjectiveOperator::c2(sub, weights, xi1, xi2, parts, 2);
      const ApgResult solved = modapg_solve(op, initial_embedding(vertices.size(), 2, stream++),
                                            options.apg);
      BipartitionResult split =
          mst_bipartition(solved.x, weights, {cap, cap}, lap, options.bipartition);
      if (!split.feasible) continue;
      if (!best || split.objective < best->objective) best = std::move(split);
    }
  }
  const double slack = 1e-12 * std::max(1.0, std::abs(current_objective));
  if (!best || !(best->objective < current_objective - slack)) return std::nullopt;

  std::size_t kept_if_positive_is_a = 0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if ((best->labels[i] > 0) == (parts[i] == 0)) ++kept_if_positive_is_a;
  }
  const bool positive_is_a = 2 * kept_if_positive_is_a >= vertices.size();
  Proposal proposal{a, b, std::move(vertices), {}};
  proposal.blocks.resize(proposal.vertices.size());
  for (std::size_t i = 0; i < proposal.vertices.size(); ++i) {
    const bool positive = best->labels[i] > 0;
    proposal.blocks[i] = positive == positive_is_a ? a : b;
  }
  return proposal;
}

}  // namespace

Partition pairwise_improve(Partition p, const BalanceSpec& spec, const RefinementOptions& options,
                           PairwiseStats* stats) {
  PairwiseStats local;
  if (p.k() < 2 || p.size() < 2) {
    if (stats) *stats = local;
    return p;
  }
  const CliqueGraph graph = clique_expand(p.hypergraph());
  for (int round = 0; round < options.max_rounds; ++round) {
    ++local.rounds;
    const PairPlan plan = pair_blocks(p);
    std::vector<std::optional<Proposal>> proposals(plan.pairs.size());
    parallel_for(plan.pairs.size(), options.threads, [&](std::size_t i) {
      proposals[i] = propose_pair(p, graph, spec, plan.pairs[i].first, plan.pairs[i].second, options);
    });

    bool changed = false;
    for (const auto& proposal : proposals) {
      if (!proposal) continue;
      const Weight before = p.cutsize();
      std::vector<BlockId> previous(proposal->vertices.size());
      for (std::size_t i = 0; i < proposal->vertices.size(); ++i) {
        previous[i] = p.block(proposal->vertices[i]);
        p.move(proposal->vertices[i], proposal->blocks[i]);
      }
      if (p.cutsize() > before) {
        for (std::size_t i = 0; i < proposal->vertices.size(); ++i) {
          p.move(proposal->vertices[i], previous[i]);
        }
        ++local.reverted;
        continue;
      }
      ++local.accepted;
      changed = true;
    }
    if (!changed) break;
  }
  if (stats) *stats = local;
  return p;
}

RepairResult repair_feasibility(Partition p, const BalanceSpec& spec) {
  const Hypergraph& h = p.hypergraph();
  const std::size_t n = h.num_vertices();
  const Weight cap = spec.max_block_weight();
  const BlockId k = p.k();
  std::size_t moves = 0, swaps = 0;

  while (p.overload(spec) > 0 && moves + swaps < 2 * n) {
    BlockId over = 0;
    for (BlockId b = 1; b < k; ++b) {
      if (p.block_weight(b) > p.block_weight(over)) over = b;
    }

    // Best move into a block with room; failing that, any overload-reducing move.
    using Key = std::tuple<Weight, Weight, VertexId, BlockId>;
    std::optional<Key> fitting, reducing;
    const Weight overload_now = p.overload(spec);
    for (VertexId v = 0; v < n; ++v) {
      if (p.block(v) != over) continue;
      const Weight w = h.vertex_weight(v);
      for (BlockId t = 0; t < k; ++t) {
        if (t == over) continue;
        const Key key{p.move_delta(v, t), w, v, t};
        if (p.block_weight(t) + w <= cap) {
          if (!fitting || key < *fitting) fitting = key;
        } else if (!fitting) {
          const Weight after = overload_now - std::min(w, p.block_weight(over) - cap) +
                               (p.block_weight(t) + w - std::max(cap, p.block_weight(t)));
          if (after < overload_now && (!reducing || key < *reducing)) reducing = key;
        }
      }
    }
    if (fitting || reducing) {
      const Key& key = fitting ? *fitting : *reducing;
      p.move(std::get<2>(key), std::get<3>(key));
      ++moves;
      continue;
    }

    // Swap a heavier vertex of the overloaded block with a lighter one elsewhere.
    std::optional<std::tuple<Weight, VertexId, VertexId>> swap;
    for (BlockId t = 0; t < k; ++t) {
      if (t == over || p.block_weight(t) >= cap) continue;
      std::vector<std::pair<VertexId, Weight>> outgoing, incoming;
      for (VertexId v = 0; v < n; ++v) {
        if (p.block(v) == over) outgoing.emplace_back(v, p.move_delta(v, t));
        if (p.block(v) == t) incoming.emplace_back(v, p.move_delta(v, over));
      }
      for (const auto& [v, dv] : outgoing) {
        for (const auto& [u, du] : incoming) {
          const Weight gain = h.vertex_weight(v) - h.vertex_weight(u);
          if (gain <= 0 || p.block_weight(t) + gain > cap) continue;
          const std::tuple<Weight, VertexId, VertexId> key{dv + du, v, u};
          if (!swap || key < *swap) swap = key;
        }
      }
    }
    if (!swap) break;
    const auto [delta, v, u] = *swap;
    const BlockId t = p.block(u);
    p.move(v, t);
    p.move(u, over);
    ++swaps;
  }
  const bool feasible = p.overload(spec) == 0;
  return RepairResult{std::move(p), feasible, moves, swaps};
}

namespace {

struct FmMove {
  Weight gain;
  VertexId vertex;
  BlockId target;
};

class FmPass {
 public:
  FmPass(Partition& p, Weight cap, const FmOptions& options)
      : p_(p),
        h_(p.hypergraph()),
        cap_(cap),
        options_(options),
        locked_(h_.num_vertices(), false),
        stamp_(h_.num_vertices(), 0),
        seen_(h_.num_vertices(), 0),
        adjacent_(static_cast<std::size_t>(p.k()), 0) {}

  /// Returns the number of moves kept after rolling back to the best prefix.
  std::size_t run() {
    for (VertexId v = 0; v < h_.num_vertices(); ++v) {
      if (is_boundary(v)) push(v);
    }
    const Weight start = p_.cutsize();
    Weight best = start;
    std::size_t best_prefix = 0;
    std::vector<std::pair<VertexId, BlockId>> log;
    int since_best = 0;
    while (!heap_.empty() && since_best <= options_.max_nonimproving_moves) {
      const auto [gain, neg_v, neg_t, stamp] = heap_.top();
      heap_.pop();
      const auto v = static_cast<VertexId>(-neg_v);
      if (locked_[v] || stamp != stamp_[v]) continue;
      const std::optional<FmMove> fresh = best_move(v);
      if (!fresh) continue;
      if (fresh->gain != gain || fresh->target != static_cast<BlockId>(-neg_t)) {
        enqueue(*fresh);
        continue;
      }
      log.emplace_back(v, p_.block(v));
      p_.move(v, fresh->target);
      locked_[v] = true;
      if (p_.cutsize() < best) {
        best = p_.cutsize();
        best_prefix = log.size();
        since_best = 0;
      } else {
        ++since_best;
      }
      update_neighbors(v);
    }
    while (log.size() > best_prefix) {
      p_.move(log.back().first, log.back().second);
      log.pop_back();
    }
    return best_prefix;
  }

 private:
  using Entry = std::tuple<Weight, std::int64_t, std::int64_t, std::uint32_t>;

  bool is_boundary(VertexId v) const {
    for (EdgeId e : h_.incident_edges(v)) {
      if (p_.connectivity(e) > 1) return true;
    }
    return false;
  }

  std::optional<FmMove> best_move(VertexId v) {
    const BlockId from = p_.block(v);
    const Weight w = h_.vertex_weight(v);
    std::fill(adjacent_.begin(), adjacent_.end(), 0);
    for (EdgeId e : h_.incident_edges(v)) {
      if (p_.connectivity(e) < 2 && p_.pin_count(e, from) > 0) continue;
      for (BlockId b = 0; b < p_.k(); ++b) {
        if (p_.pin_count(e, b) > 0) adjacent_[b] = 1;
      }
    }
    std::optional<FmMove> best;
    for (BlockId t = 0; t < p_.k(); ++t) {
      if (t == from || !adjacent_[t] || p_.block_weight(t) + w > cap_) continue;
      const Weight gain = -p_.move_delta(v, t);
      if (!best || gain > best->gain) best = FmMove{gain, v, t};
    }
    return best;
  }

  void enqueue(const FmMove& m) {
    heap_.emplace(m.gain, -static_cast<std::int64_t>(m.vertex), -static_cast<std::int64_t>(m.target),
                  stamp_[m.vertex]);
  }

  void push(VertexId v) {
    ++stamp_[v];
    if (const auto m = best_move(v)) enqueue(*m);
  }

  void update_neighbors(VertexId v) {
    ++round_;
    for (EdgeId e : h_.incident_edges(v)) {
      if (h_.edge_size(e) > options_.update_edge_limit) continue;
      for (VertexId u : h_.pins(e)) {
        if (locked_[u] || seen_[u] == round_) continue;
        seen_[u] = round_;
        push(u);
      }
    }
  }

  Partition& p_;
  const Hypergraph& h_;
  Weight cap_;
  const FmOptions& options_;
  std::vector<bool> locked_;
  std::vector<std::uint32_t> stamp_;
  std::vector<std::uint64_t> seen_;
  std::uint64_t round_ = 0;
  std::vector<char> adjacent_;
  std::priority_queue<Entry> heap_;
};

}  // namespace

Partition kway_fm(Partition p, const BalanceSpec& spec, const FmOptions& options,
                  FmStats* stats) {
  FmStats local;
  if (p.k() >= 2) {
    const Weight cap = spec.max_block_weight();
    for (int pass = 0; pass < options.max_passes; ++pass) {
      ++local.passes;
      const Weight before = p.cutsize();
      FmPass fm(p, cap, options);
      local.moves_kept += fm.run();
      if (p.cutsize() >= before) break;
    }
  }
  if (stats) *stats = local;
  return p;
}

}  // namespace hgpart
