#include "hgpart/initial_partition.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

#include "hgpart/error.hpp"
#include "hgpart/graph_ops.hpp"
#include "hgpart/parallel.hpp"
#include "hgpart/union_find.hpp"

namespace hgpart {
namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

bool fits(Weight weight, double cap) {
  return static_cast<double>(weight) <= cap * (1.0 + 1e-12);
}

BlockId lightest_block(const std::vector<Weight>& weights) {
  return static_cast<BlockId>(std::min_element(weights.begin(), weights.end()) - weights.begin());
}

/// Positions in the input order, recomputed from the edge set by BFS from 0.
std::vector<std::ptrdiff_t> parents_from_edges(const std::vector<VertexId>& vertices,
                                               const std::vector<WeightedEdge>& edges) {
  const std::size_t m = vertices.size();
  VertexId max_id = 0;
  for (VertexId v : vertices) max_id = std::max(max_id, v);
  std::vector<std::ptrdiff_t> position(static_cast<std::size_t>(max_id) + 1, -1);
  for (std::size_t i = 0; i < m; ++i) position[vertices[i]] = static_cast<std::ptrdiff_t>(i);
  std::vector<std::vector<std::size_t>> adjacent(m);
  for (const auto& e : edges) {
    const auto a = static_cast<std::size_t>(position[e.u]);
    const auto b = static_cast<std::size_t>(position[e.v]);
    adjacent[a].push_back(b);
    adjacent[b].push_back(a);
  }
  std::vector<std::ptrdiff_t> parent(m, -1);
  std::vector<bool> seen(m, false);
  for (std::size_t root = 0; root < m; ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    std::vector<std::size_t> stack{root};
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t w : adjacent[u]) {
        if (seen[w]) continue;
        seen[w] = true;
        parent[w] = static_cast<std::ptrdiff_t>(u);
        stack.push_back(w);
      }
    }
  }
  return parent;
}

}  // namespace

void WeightedGraph::add_edge(VertexId u, VertexId v, double weight) {
  adjacency[u].emplace_back(v, weight);
  adjacency[v].emplace_back(u, weight);
}

std::vector<WeightedEdge> WeightedGraph::edges() const {
  std::vector<WeightedEdge> out;
  for (VertexId u = 0; u < adjacency.size(); ++u) {
    for (const auto& [v, w] : adjacency[u]) {
      if (u < v) out.push_back({u, v, w});
    }
  }
  std::sort(out.begin(), out.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
  return out;
}

WeightedGraph build_similarity_graph(const FeatureMatrix& x, double tau) {
  WeightedGraph g;
  const auto n = static_cast<std::size_t>(x.rows());
  g.adjacency.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double s = x.row(static_cast<Eigen::Index>(i)).dot(x.row(static_cast<Eigen::Index>(j)));
      if (s > tau) g.add_edge(static_cast<VertexId>(i), static_cast<VertexId>(j), 1.0 - s);
    }
  }
  return g;
}

double SpanningTree::total_weight() const {
  std::vector<double> weights;
  weights.reserve(edges.size());
  for (const auto& e : edges) weights.push_back(e.weight);
  std::sort(weights.begin(), weights.end());
  double total = 0.0;
  for (double w : weights) total += w;
  return total;
}

SpanningTree prim_mst(const WeightedGraph& g) {
  const std::size_t n = g.size();
  SpanningTree tree;
  tree.vertices.resize(n);
  std::iota(tree.vertices.begin(), tree.vertices.end(), VertexId{0});
  tree.parent.assign(n, -1);
  tree.components = 0;

  using Entry = std::tuple<double, VertexId, VertexId>;  // weight, vertex, parent
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> frontier;
  std::vector<bool> visited(n, false);
  for (VertexId root = 0; root < n; ++root) {
    if (visited[root]) continue;
    ++tree.components;
    frontier.emplace(0.0, root, root);
    while (!frontier.empty()) {
      const auto [w, u, from] = frontier.top();
      frontier.pop();
      if (visited[u]) continue;
      visited[u] = true;
      if (u != from) {
        tree.parent[u] = static_cast<std::ptrdiff_t>(from);
        tree.edges.push_back({from, u, w});
      }
      for (const auto& [v, wv] : g.adjacency[u]) {
        if (!visited[v]) frontier.emplace(wv, v, u);
      }
    }
  }
  return tree;
}

SpanningTree prim_mst(const FeatureMatrix& x, std::span<const VertexId> vertices, double tau) {
  const std::size_t m = vertices.size();
  SpanningTree tree;
  tree.vertices.assign(vertices.begin(), vertices.end());
  tree.parent.assign(m, -1);
  tree.components = 0;
  if (m == 0) return tree;

  // Gather the rows once so the inner loop walks contiguous memory.
  const Eigen::Index dims = x.cols();
  Matrix rows(static_cast<Eigen::Index>(m), dims);
  for (std::size_t i = 0; i < m; ++i) {
    if (vertices[i] >= static_cast<VertexId>(x.rows())) {
      throw InvalidArgument("vertex outside the feature matrix");
    }
    rows.row(static_cast<Eigen::Index>(i)) = x.row(vertices[i]);
  }

  std::vector<double> distance(m, kInfinity);
  std::vector<bool> visited(m, false);
  std::vector<std::size_t> component(m, 0);
  distance[0] = 0.0;
  for (std::size_t step = 0; step < m; ++step) {
    std::size_t u = m;
    double best = kInfinity;
    for (std::size_t i = 0; i < m; ++i) {
      if (visited[i]) continue;
      if (u == m || distance[i] < best) {
        u = i;
        best = distance[i];
      }
    }
    if (best == kInfinity || step == 0) ++tree.components;
    visited[u] = true;
    component[u] = tree.components - 1;
    if (tree.parent[u] >= 0 && best != kInfinity) {
      tree.edges.push_back({vertices[static_cast<std::size_t>(tree.parent[u])], vertices[u], best});
    } else {
      tree.parent[u] = -1;
    }
    const auto row_u = rows.row(static_cast<Eigen::Index>(u));
    for (std::size_t v = 0; v < m; ++v) {
      if (visited[v]) continue;
      const double s = row_u.dot(rows.row(static_cast<Eigen::Index>(v)));
      if (s > tau && 1.0 - s < distance[v]) {
        distance[v] = 1.0 - s;
        tree.parent[v] = static_cast<std::ptrdiff_t>(u);
      }
    }
  }

  if (tree.components > 1) {
    // Prim over the components: each step adds the lightest edge leaving the
    // joined components and absorbs the whole component it reaches.
    std::vector<std::vector<std::size_t>> members(tree.components);
    for (std::size_t i = 0; i < m; ++i) members[component[i]].push_back(i);
    std::vector<bool> joined(tree.components, false);
    std::vector<double> gap(m, kInfinity);
    std::vector<std::size_t> link(m, 0);
    auto absorb = [&](std::size_t c) {
      joined[c] = true;
      for (std::size_t u : members[c]) {
        const auto row_u = rows.row(static_cast<Eigen::Index>(u));
        for (std::size_t v = 0; v < m; ++v) {
          if (joined[component[v]]) continue;
          const double w = 1.0 - row_u.dot(rows.row(static_cast<Eigen::Index>(v)));
          if (w < gap[v]) {
            gap[v] = w;
            link[v] = u;
          }
        }
      }
    };
    absorb(0);
    for (std::size_t step = 1; step < tree.components; ++step) {
      std::size_t v = m;
      for (std::size_t i = 0; i < m; ++i) {
        if (!joined[component[i]] && (v == m || gap[i] < gap[v])) v = i;
      }
      tree.edges.push_back({vertices[link[v]], vertices[v], gap[v]});
      absorb(component[v]);
    }
    tree.parent = parents_from_edges(tree.vertices, tree.edges);
  }
  return tree;
}

ClusterSet prune_clusters(const SpanningTree& tree, std::size_t p,
                          std::span<const Weight> vertex_weights, const FeatureMatrix& x) {
  const std::size_t m = tree.vertices.size();
  if (p < 1 || p > m) {
    throw InvalidArgument("cluster count " + std::to_string(p) + " outside [1, " +
                          std::to_string(m) + "]");
  }
  VertexId max_id = 0;
  for (VertexId v : tree.vertices) max_id = std::max(max_id, v);
  std::vector<std::size_t> position(static_cast<std::size_t>(max_id) + 1, 0);
  for (std::size_t i = 0; i < m; ++i) position[tree.vertices[i]] = i;

  std::vector<WeightedEdge> edges = tree.edges;
  std::sort(edges.begin(), edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    const auto ka = std::minmax(a.u, a.v);
    const auto kb = std::minmax(b.u, b.v);
    return ka < kb;
  });
  DisjointSets sets(m);
  const std::size_t removed = std::min(p - 1, edges.size());
  for (std::size_t i = removed; i < edges.size(); ++i) {
    sets.unite(position[edges[i].u], position[edges[i].v]);
  }

  ClusterSet result;
  std::vector<std::ptrdiff_t> cluster_of_root(m, -1);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t root = sets.find(i);
    if (cluster_of_root[root] < 0) {
      cluster_of_root[root] = static_cast<std::ptrdiff_t>(result.clusters.size());
      result.clusters.emplace_back();
      result.weights.push_back(0);
    }
    const auto c = static_cast<std::size_t>(cluster_of_root[root]);
    result.clusters[c].push_back(tree.vertices[i]);
    result.weights[c] += vertex_weights[tree.vertices[i]];
  }
  result.centroids = Matrix::Zero(static_cast<Eigen::Index>(result.clusters.size()), x.cols());
  for (std::size_t c = 0; c < result.clusters.size(); ++c) {
    for (VertexId v : result.clusters[c]) result.centroids.row(static_cast<Eigen::Index>(c)) += x.row(v);
    result.centroids.row(static_cast<Eigen::Index>(c)) /= static_cast<double>(result.clusters[c].size());
  }
  return result;
}

ClusterMerge merge_clusters(const ClusterSet& clusters, BlockId k, double cap, MergeRule rule) {
  const std::size_t p = clusters.clusters.size();
  if (k < 1 || static_cast<std::size_t>(k) > p) {
    throw InvalidArgument("need at least k clusters to seed k blocks");
  }
  ClusterMerge merge;
  merge.cluster_block.assign(p, -1);
  merge.block_weights.assign(static_cast<std::size_t>(k), 0);
  merge.block_sums = Matrix::Zero(k, clusters.centroids.cols());
  merge.block_counts.assign(static_cast<std::size_t>(k), 0);

  auto absorb = [&](std::size_t c, BlockId b) {
    merge.cluster_block[c] = b;
    merge.block_weights[b] += clusters.weights[c];
    const auto count = clusters.clusters[c].size();
    merge.block_sums.row(b) += clusters.centroids.row(static_cast<Eigen::Index>(c)) *
                               static_cast<double>(count);
    merge.block_counts[b] += count;
  };

  std::vector<std::size_t> by_weight(p);
  std::iota(by_weight.begin(), by_weight.end(), std::size_t{0});
  std::stable_sort(by_weight.begin(), by_weight.end(), [&](std::size_t a, std::size_t b) {
    return clusters.weights[a] > clusters.weights[b];
  });
  for (BlockId b = 0; b < k; ++b) absorb(by_weight[b], b);

  for (std::size_t c = 0; c < p; ++c) {
    if (merge.cluster_block[c] >= 0) continue;
    const auto centroid = clusters.centroids.row(static_cast<Eigen::Index>(c));
    BlockId nearest = -1;
    double nearest_distance = kInfinity;
    for (BlockId b = 0; b < k; ++b) {
      if (rule == MergeRule::kNearestFeasible &&
          !fits(merge.block_weights[b] + clusters.weights[c], cap)) {
        continue;
      }
      const double d = (centroid - merge.centroid(b)).norm();
      if (nearest < 0 || d < nearest_distance) {
        nearest = b;
        nearest_distance = d;
      }
    }
    if (nearest >= 0 && fits(merge.block_weights[nearest] + clusters.weights[c], cap)) {
      absorb(c, nearest);
    } else {
      absorb(c, lightest_block(merge.block_weights));
    }
  }
  return merge;
}

Partition mst_partition_small(const FeatureMatrix& x, const Hypergraph& h,
                              const BalanceSpec& spec, std::size_t p, double tau) {
  const std::size_t n = h.num_vertices();
  if (static_cast<std::size_t>(x.rows()) != n) {
    throw InvalidArgument("feature matrix does not match the hypergraph");
  }
  if (p < static_cast<std::size_t>(spec.k) || p > n) {
    throw InvalidArgument("cluster count p=" + std::to_string(p) + " must lie in [k, n]");
  }
  std::vector<VertexId> all(n);
  std::iota(all.begin(), all.end(), VertexId{0});
  const SpanningTree tree = prim_mst(x, all, tau);
  const ClusterSet clusters = prune_clusters(tree, p, h.vertex_weights(), x);
  const ClusterMerge merge = merge_clusters(
      clusters, spec.k, static_cast<double>(spec.max_block_weight()), MergeRule::kNearestThenLightest);

  std::vector<BlockId> assignment(n, 0);
  for (std::size_t c = 0; c < clusters.clusters.size(); ++c) {
    for (VertexId v : clusters.clusters[c]) assignment[v] = merge.cluster_block[c];
  }
  return Partition(h, spec.k, std::move(assignment));
}

std::vector<VertexId> representative_vertices(const Hypergraph& h, BlockId k) {
  const std::size_t n = h.num_vertices();
  const std::size_t count = std::min(
      n, std::max(static_cast<std::size_t>(k),
                  static_cast<std::size_t>(std::ceil(0.2 * static_cast<double>(n)))));
  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), VertexId{0});
  std::stable_sort(order.begin(), order.end(), [&h](VertexId a, VertexId b) {
    return h.vertex_weight(a) > h.vertex_weight(b);
  });
  order.resize(count);
  std::sort(order.begin(), order.end());
  return order;
}

Partition representative_partition_large(const FeatureMatrix& x, const Hypergraph& h,
                                         const BalanceSpec& spec, std::size_t p, double tau) {
  const std::size_t n = h.num_vertices();
  const auto k = static_cast<std::size_t>(spec.k);
  if (static_cast<std::size_t>(x.rows()) != n) {
    throw InvalidArgument("feature matrix does not match the hypergraph");
  }
  if (n < k) throw InvalidArgument("fewer vertices than blocks");

  const std::vector<VertexId> representatives = representative_vertices(h, spec.k);
  const std::size_t count = representatives.size();

  const SpanningTree tree = prim_mst(x, representatives, tau);
  const std::size_t clusters_wanted = std::clamp(p, k, count);
  const ClusterSet clusters = prune_clusters(tree, clusters_wanted, h.vertex_weights(), x);

  Weight representative_weight = 0;
  for (Weight w : clusters.weights) representative_weight += w;
  const double relaxed_cap =
      (1.0 + spec.epsilon) * static_cast<double>(representative_weight) / static_cast<double>(k);
  ClusterMerge merge =
      merge_clusters(clusters, spec.k, relaxed_cap, MergeRule::kNearestFeasible);

  std::vector<BlockId> assignment(n, -1);
  for (std::size_t c = 0; c < clusters.clusters.size(); ++c) {
    for (VertexId v : clusters.clusters[c]) assignment[v] = merge.cluster_block[c];
  }

  const double cap = static_cast<double>(spec.max_block_weight());
  for (VertexId v = 0; v < n; ++v) {
    if (assignment[v] >= 0) continue;
    const auto row = x.row(v);
    BlockId best = -1;
    double best_distance = kInfinity;
    for (BlockId b = 0; b < spec.k; ++b) {
      if (!fits(merge.block_weights[b] + h.vertex_weight(v), cap)) continue;
      const double d = (row - merge.centroid(b)).norm();
      if (best < 0 || d < best_distance) {
        best = b;
        best_distance = d;
      }
    }
    if (best < 0) best = lightest_block(merge.block_weights);
    assignment[v] = best;
    merge.block_weights[best] += h.vertex_weight(v);
    merge.block_sums.row(best) += row;
    ++merge.block_counts[best];
  }
  return Partition(h, spec.k, std::move(assignment));
}

std::size_t p_from_rule(PRule rule, std::size_t n, BlockId k) {
  const auto nn = static_cast<double>(n);
  switch (rule) {
    case PRule::kSqrtHalfN:
      return static_cast<std::size_t>(std::ceil(std::sqrt(nn / 2.0)));
    case PRule::kNOverFiveK:
      return static_cast<std::size_t>(std::ceil(nn / (5.0 * static_cast<double>(k))));
  }
  return 1;
}

std::string p_rule_name(PRule rule) {
  return rule == PRule::kSqrtHalfN ? "sqrt(n/2)" : "n/(5k)";
}

std::pair<double, double> lambda_pair(const InitialOptions& options, std::size_t i) {
  if (options.lambda1.empty() || options.lambda2.empty()) {
    throw InvalidArgument("lambda grids must not be empty");
  }
  const std::size_t grid = options.lambda1.size() * options.lambda2.size();
  const std::size_t slot = i % grid;
  return {options.lambda1[slot / options.lambda2.size()],
          options.lambda2[slot % options.lambda2.size()]};
}

std::vector<Candidate> generate_candidates(const Hypergraph& h, const BalanceSpec& spec,
                                           const InitialOptions& options) {
  const std::size_t n = h.num_vertices();
  const auto k = static_cast<std::size_t>(spec.k);
  if (options.num_init < 1) throw InvalidArgument("num_init must be positive");
  if (n <= k) {
    std::vector<BlockId> assignment(n);
    std::iota(assignment.begin(), assignment.end(), BlockId{0});
    std::vector<Candidate> trivial;
    trivial.push_back({Partition(h, spec.k, std::move(assignment)), 0.0, 0.0, n, "identity"});
    return trivial;
  }

  struct Trial {
    std::size_t p;
    std::string label;
  };
  std::vector<Trial> trials;
  if (options.fixed_p) {
    trials.push_back({*options.fixed_p, std::to_string(*options.fixed_p)});
  } else {
    for (PRule rule : options.p_rules) trials.push_back({p_from_rule(rule, n, spec.k), p_rule_name(rule)});
  }
  if (trials.empty()) throw InvalidArgument("no p rule given");

  const CliqueGraph graph = clique_expand(h);
  const bool large = n > options.large_threshold;
  const auto count = static_cast<std::size_t>(options.num_init);
  std::vector<std::optional<Candidate>> slots(count);
  parallel_for(count, options.threads, [&](std::size_t i) {
    const auto [lambda1, lambda2] = lambda_pair(options, i);
    const ObjectiveOperator op = ObjectiveOperator::c1(graph, h.vertex_weights(), lambda1, lambda2);
    const ApgResult solved = modapg_solve(op, initial_embedding(n, k, i), options.apg);

    std::optional<Candidate> best;
    bool best_feasible = false;
    for (const Trial& trial : trials) {
      const std::size_t p = std::clamp(trial.p, k, n);
      Partition part = large ? representative_partition_large(solved.x, h, spec, p, options.tau)
                             : mst_partition_small(solved.x, h, spec, p, options.tau);
      const bool feasible = is_feasible(part, spec);
      if (!best || (feasible && !best_feasible) ||
          (feasible == best_feasible && part.cutsize() < best->partition.cutsize())) {
        best_feasible = feasible;
        best.emplace(Candidate{std::move(part), lambda1, lambda2, p, trial.label,
                               solved.iterations(), solved.converged});
      }
    }
    slots[i] = std::move(best);
  });

  std::vector<Candidate> candidates;
  candidates.reserve(count);
  for (auto& slot : slots) candidates.push_back(std::move(*slot));
  return candidates;
}

}  // namespace hgpart
