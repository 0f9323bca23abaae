#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <set>

#include "hgpart/error.hpp"
#include "hgpart/initial_partition.hpp"
#include "support.hpp"

using namespace hgpart;

namespace {

/// Plain union-find kept apart from the library's own.
struct OracleSets {
  std::vector<std::size_t> parent;
  explicit OracleSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

/// Kruskal over an explicit edge list; returns the total forest weight.
double kruskal_total(std::size_t n, std::vector<WeightedEdge> edges) {
  std::sort(edges.begin(), edges.end(),
            [](const WeightedEdge& a, const WeightedEdge& b) { return a.weight < b.weight; });
  OracleSets sets(n);
  std::vector<double> chosen;
  for (const auto& e : edges) {
    if (sets.unite(e.u, e.v)) chosen.push_back(e.weight);
  }
  std::sort(chosen.begin(), chosen.end());
  return std::accumulate(chosen.begin(), chosen.end(), 0.0);
}

std::size_t component_count(std::size_t n, const std::vector<WeightedEdge>& edges) {
  OracleSets sets(n);
  std::size_t count = n;
  for (const auto& e : edges) {
    if (sets.unite(e.u, e.v)) --count;
  }
  return count;
}

WeightedGraph random_connected_graph(hgtest::Rng& rng, std::size_t n, std::size_t extra) {
  std::uniform_real_distribution<double> weight(0.0, 2.0);
  WeightedGraph g;
  g.adjacency.resize(n);
  std::set<std::pair<VertexId, VertexId>> used;
  for (VertexId v = 1; v < n; ++v) {
    const auto u = static_cast<VertexId>(rng() % v);
    used.insert({u, v});
    g.add_edge(u, v, weight(rng));
  }
  for (std::size_t i = 0; i < extra; ++i) {
    auto u = static_cast<VertexId>(rng() % n);
    auto v = static_cast<VertexId>(rng() % n);
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (!used.insert({u, v}).second) continue;
    g.add_edge(u, v, weight(rng));
  }
  return g;
}

FeatureMatrix random_features(hgtest::Rng& rng, std::size_t n, std::size_t d) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) = normal(rng);
  }
  return project_rows(x);
}

/// Checks |E| = |V| - 1, no cycle, and consistent parent pointers.
void check_spanning_tree(const SpanningTree& tree) {
  const std::size_t m = tree.vertices.size();
  REQUIRE(tree.edges.size() + 1 == m);
  std::vector<std::size_t> position(
      *std::max_element(tree.vertices.begin(), tree.vertices.end()) + 1, 0);
  for (std::size_t i = 0; i < m; ++i) position[tree.vertices[i]] = i;
  OracleSets sets(m);
  for (const auto& e : tree.edges) {
    CHECK(sets.unite(position[e.u], position[e.v]));
    CHECK(e.weight >= -1e-12);
    CHECK(e.weight <= 2.0 + 1e-12);
  }
  REQUIRE(tree.parent.size() == m);
  std::size_t roots = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (tree.parent[i] < 0) ++roots;
  }
  CHECK(roots == 1);
}

ClusterSet hand_clusters(std::vector<Weight> weights, Matrix centroids) {
  ClusterSet set;
  for (std::size_t c = 0; c < weights.size(); ++c) {
    set.clusters.push_back({static_cast<VertexId>(c)});
  }
  set.weights = std::move(weights);
  set.centroids = std::move(centroids);
  return set;
}

}  // namespace

TEST_SUITE("initial_partition") {

TEST_CASE("similarity graph examples") {
  Matrix same(2, 2);
  same << 1, 0, 1, 0;
  const WeightedGraph a = build_similarity_graph(project_rows(same), 0.5);
  REQUIRE(a.edges().size() == 1);
  CHECK(a.edges()[0].weight == doctest::Approx(0.0));

  Matrix orth(2, 2);
  orth << 1, 0, 0, 1;
  CHECK(build_similarity_graph(project_rows(orth), 0.2).edges().empty());
}

TEST_CASE("similarity graph equals the dense threshold oracle") {
  hgtest::Rng rng(101);
  for (int trial = 0; trial < 10; ++trial) {
    const FeatureMatrix x = random_features(rng, 30, 3);
    const auto edges = build_similarity_graph(x, 0.2).edges();
    std::vector<WeightedEdge> expected;
    for (VertexId i = 0; i < 30; ++i) {
      for (VertexId j = i + 1; j < 30; ++j) {
        double s = 0.0;
        for (Eigen::Index c = 0; c < 3; ++c) s += x.matrix()(i, c) * x.matrix()(j, c);
        if (s > 0.2) expected.push_back({i, j, 1.0 - s});
      }
    }
    REQUIRE(edges.size() == expected.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
      CHECK(edges[i].u == expected[i].u);
      CHECK(edges[i].v == expected[i].v);
      CHECK(edges[i].weight == doctest::Approx(expected[i].weight));
    }
  }
}

TEST_CASE("three-point spanning tree") {
  // Similarities s_AB = 0.9, s_BC = 0.9, s_AC = 0.6 as edge weights 1 - s.
  WeightedGraph g;
  g.adjacency.resize(3);
  g.add_edge(0, 1, 0.1);
  g.add_edge(1, 2, 0.1);
  g.add_edge(0, 2, 0.4);
  const SpanningTree tree = prim_mst(g);
  check_spanning_tree(tree);
  CHECK(tree.total_weight() == doctest::Approx(0.2));
  for (const auto& e : tree.edges) CHECK(std::minmax(e.u, e.v) != std::minmax(VertexId{0}, VertexId{2}));

  // The same similarities realised as unit feature rows at angles 0, a, 2a.
  const double angle = std::acos(0.9);
  Matrix x(3, 2);
  x << 1, 0, std::cos(angle), std::sin(angle), std::cos(2 * angle), std::sin(2 * angle);
  const std::vector<VertexId> all{0, 1, 2};
  const SpanningTree from_features = prim_mst(project_rows(x), all, 0.2);
  check_spanning_tree(from_features);
  CHECK(from_features.total_weight() == doctest::Approx(0.2));
}

TEST_CASE("two vertices give the single edge") {
  Matrix x(2, 2);
  x << 1, 0, 0.6, 0.8;
  const std::vector<VertexId> all{0, 1};
  const SpanningTree tree = prim_mst(project_rows(x), all, 0.2);
  REQUIRE(tree.edges.size() == 1);
  CHECK(tree.edges[0].weight == doctest::Approx(0.4));
}

TEST_CASE("prim matches kruskal on random graphs") {
  hgtest::Rng rng(103);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 29;
    const WeightedGraph g = random_connected_graph(rng, n, 2 * n);
    const SpanningTree tree = prim_mst(g);
    check_spanning_tree(tree);
    CHECK(tree.total_weight() == doctest::Approx(kruskal_total(n, g.edges())).epsilon(1e-12));
  }
}

TEST_CASE("prim on features matches kruskal on the complete graph") {
  // Threshold edges are all lighter than any edge between threshold
  // components, so the joined tree is a minimum tree of the complete graph.
  hgtest::Rng rng(107);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 40;
    const FeatureMatrix x = random_features(rng, n, 1 + rng() % 4);
    std::vector<VertexId> all(n);
    std::iota(all.begin(), all.end(), VertexId{0});
    const double tau = trial % 2 == 0 ? 0.2 : 0.8;
    const SpanningTree tree = prim_mst(x, all, tau);
    check_spanning_tree(tree);
    std::vector<WeightedEdge> complete;
    for (VertexId i = 0; i < n; ++i) {
      for (VertexId j = i + 1; j < n; ++j) {
        complete.push_back({i, j, 1.0 - x.row(i).dot(x.row(j))});
      }
    }
    CHECK(tree.total_weight() == doctest::Approx(kruskal_total(n, complete)).epsilon(1e-12));
    CHECK(tree.components == component_count(n, build_similarity_graph(x, tau).edges()));
  }
}

TEST_CASE("prim on a vertex subset") {
  hgtest::Rng rng(109);
  const FeatureMatrix x = random_features(rng, 20, 3);
  const std::vector<VertexId> subset{3, 7, 8, 15, 19};
  const SpanningTree tree = prim_mst(x, subset, 0.2);
  check_spanning_tree(tree);
  CHECK(tree.vertices == subset);
  for (const auto& e : tree.edges) {
    CHECK(std::find(subset.begin(), subset.end(), e.u) != subset.end());
    CHECK(std::find(subset.begin(), subset.end(), e.v) != subset.end());
  }
}

TEST_CASE("dropping a removable heaviest edge keeps the tree weight") {
  hgtest::Rng rng(113);
  int tested = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + rng() % 28;
    const WeightedGraph g = random_connected_graph(rng, n, n);
    auto edges = g.edges();
    const auto heaviest = std::max_element(
        edges.begin(), edges.end(),
        [](const WeightedEdge& a, const WeightedEdge& b) { return a.weight < b.weight; });
    std::vector<WeightedEdge> rest;
    for (auto it = edges.begin(); it != edges.end(); ++it) {
      if (it != heaviest) rest.push_back(*it);
    }
    if (component_count(n, rest) != 1) continue;
    ++tested;
    WeightedGraph reduced;
    reduced.adjacency.resize(n);
    for (const auto& e : rest) reduced.add_edge(e.u, e.v, e.weight);
    CHECK(prim_mst(reduced).total_weight() ==
          doctest::Approx(prim_mst(g).total_weight()).epsilon(1e-12));
  }
  CHECK(tested > 50);
}

TEST_CASE("reconnecting pruned components by lightest cut edges restores the tree weight") {
  hgtest::Rng rng(127);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 4 + rng() % 27;
    const WeightedGraph g = random_connected_graph(rng, n, 2 * n);
    const SpanningTree tree = prim_mst(g);
    auto tree_edges = tree.edges;
    std::sort(tree_edges.begin(), tree_edges.end(),
              [](const WeightedEdge& a, const WeightedEdge& b) { return a.weight > b.weight; });
    const std::size_t removed = 1 + rng() % (n - 1);
    OracleSets sets(n);
    for (std::size_t i = removed; i < tree_edges.size(); ++i) sets.unite(tree_edges[i].u, tree_edges[i].v);
    // Re-add the lightest graph edges that join distinct components.
    auto all = g.edges();
    std::sort(all.begin(), all.end(),
              [](const WeightedEdge& a, const WeightedEdge& b) { return a.weight < b.weight; });
    double total = 0.0;
    for (std::size_t i = removed; i < tree_edges.size(); ++i) total += tree_edges[i].weight;
    std::size_t added = 0;
    for (const auto& e : all) {
      if (sets.unite(e.u, e.v)) {
        total += e.weight;
        ++added;
      }
    }
    CHECK(added == removed);
    CHECK(total == doctest::Approx(tree.total_weight()).epsilon(1e-12));
  }
}

TEST_CASE("prune examples") {
  hgtest::Rng rng(131);
  const FeatureMatrix x = random_features(rng, 6, 2);
  std::vector<VertexId> all(6);
  std::iota(all.begin(), all.end(), VertexId{0});
  const SpanningTree tree = prim_mst(x, all, 0.2);
  const std::vector<Weight> w(6, 1);

  const ClusterSet one = prune_clusters(tree, 1, w, x);
  REQUIRE(one.clusters.size() == 1);
  CHECK(one.clusters[0].size() == 6);
  CHECK(one.weights[0] == 6);

  const ClusterSet singletons = prune_clusters(tree, 6, w, x);
  REQUIRE(singletons.clusters.size() == 6);
  for (const auto& c : singletons.clusters) CHECK(c.size() == 1);

  CHECK_THROWS_AS(prune_clusters(tree, 0, w, x), InvalidArgument);
  CHECK_THROWS_AS(prune_clusters(tree, 7, w, x), InvalidArgument);
}

TEST_CASE("prune cuts the heaviest edge of a path") {
  SpanningTree path;
  path.vertices = {0, 1, 2, 3};
  path.edges = {{0, 1, 0.9}, {1, 2, 0.1}, {2, 3, 0.5}};
  path.parent = {-1, 0, 1, 2};
  Matrix x(4, 2);
  x << 1, 0, 0, 1, 0, 1, 0.6, 0.8;
  const ClusterSet set = prune_clusters(path, 2, std::vector<Weight>{1, 2, 3, 4}, project_rows(x));
  REQUIRE(set.clusters.size() == 2);
  CHECK(set.clusters[0] == std::vector<VertexId>{0});
  CHECK(set.clusters[1] == std::vector<VertexId>{1, 2, 3});
  CHECK(set.weights == std::vector<Weight>{1, 9});
  CHECK(set.centroids(1, 0) == doctest::Approx(0.2));
  CHECK(set.centroids(1, 1) == doctest::Approx(2.8 / 3.0));
}

TEST_CASE("prune equals the union-find ground truth") {
  hgtest::Rng rng(137);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 5 + rng() % 30;
    const FeatureMatrix x = random_features(rng, n, 3);
    std::vector<VertexId> all(n);
    std::iota(all.begin(), all.end(), VertexId{0});
    const SpanningTree tree = prim_mst(x, all, 0.2);
    const std::size_t p = 1 + rng() % n;
    std::vector<Weight> w(n);
    for (auto& v : w) v = 1 + static_cast<Weight>(rng() % 5);
    const ClusterSet set = prune_clusters(tree, p, w, x);
    REQUIRE(set.clusters.size() == p);

    auto edges = tree.edges;
    std::sort(edges.begin(), edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
      return a.weight > b.weight;
    });
    OracleSets sets(n);
    for (std::size_t i = p - 1; i < edges.size(); ++i) sets.unite(edges[i].u, edges[i].v);

    std::vector<bool> seen(n, false);
    for (std::size_t c = 0; c < p; ++c) {
      Weight total = 0;
      Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(3);
      for (VertexId v : set.clusters[c]) {
        CHECK_FALSE(seen[v]);
        seen[v] = true;
        total += w[v];
        mean += x.row(v);
        CHECK(sets.find(v) == sets.find(set.clusters[c][0]));
      }
      CHECK(total == set.weights[c]);
      mean /= static_cast<double>(set.clusters[c].size());
      CHECK((mean - set.centroids.row(static_cast<Eigen::Index>(c))).norm() < 1e-12);
      for (std::size_t d = c + 1; d < p; ++d) {
        CHECK(sets.find(set.clusters[c][0]) != sets.find(set.clusters[d][0]));
      }
    }
    CHECK(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }));
  }
}

TEST_CASE("merge sends a fitting cluster to its nearest block") {
  Matrix c(3, 2);
  c << 1, 0, 0, 1, 0.9, 0.1;
  const ClusterSet set = hand_clusters({5, 4, 1}, c);
  const ClusterMerge merge = merge_clusters(set, 2, 6.0, MergeRule::kNearestThenLightest);
  CHECK(merge.cluster_block == std::vector<BlockId>{0, 1, 0});
  CHECK(merge.block_weights == std::vector<Weight>{6, 4});

  const ClusterMerge full = merge_clusters(set, 2, 5.5, MergeRule::kNearestThenLightest);
  CHECK(full.cluster_block == std::vector<BlockId>{0, 1, 1});
  CHECK(full.block_weights == std::vector<Weight>{5, 5});
}

TEST_CASE("merge seeds with the heaviest clusters, ties by index") {
  Matrix c(4, 2);
  c << 1, 0, 0, 1, 0.7, 0.7, 0.9, 0.1;
  const ClusterSet set = hand_clusters({1, 3, 3, 1}, c);
  const ClusterMerge merge = merge_clusters(set, 2, 100.0, MergeRule::kNearestThenLightest);
  CHECK(merge.cluster_block[1] == 0);
  CHECK(merge.cluster_block[2] == 1);
  CHECK_THROWS_AS(merge_clusters(set, 5, 100.0, MergeRule::kNearestFeasible), InvalidArgument);
}

TEST_CASE("nearest-feasible merge skips full blocks") {
  Matrix c(3, 2);
  c << 1, 0, 0, 1, 0.9, 0.1;
  // Block 0 cannot take the cluster, block 1 can.
  const ClusterSet set = hand_clusters({5, 2, 2}, c);
  const ClusterMerge feasible = merge_clusters(set, 2, 6.0, MergeRule::kNearestFeasible);
  CHECK(feasible.cluster_block == std::vector<BlockId>{0, 1, 1});
}

TEST_CASE("p equal to k keeps the clusters as blocks") {
  Matrix x(4, 2);
  x << 1, 0, 0.99, 0.141067, 0, 1, 0.141067, 0.99;
  const Hypergraph h = Hypergraph::unweighted(4, {{0, 1}, {2, 3}});
  const FeatureMatrix f = project_rows(x);
  const Partition p = mst_partition_small(f, h, BalanceSpec::make(h, 2, 0.04), 2);
  CHECK(p.block(0) == p.block(1));
  CHECK(p.block(2) == p.block(3));
  CHECK(p.block(0) != p.block(2));
  CHECK(p.cutsize() == 0);
}

TEST_CASE("small-route partitions are total and consistent") {
  hgtest::Rng rng(139);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 10 + rng() % 60;
    const Hypergraph h = hgtest::random_hypergraph(rng, n, n, 4, 3, 2);
    const BlockId k = static_cast<BlockId>(2 + rng() % 3);
    const BalanceSpec spec = BalanceSpec::make(h, k, 0.05);
    const FeatureMatrix x = random_features(rng, n, static_cast<std::size_t>(k));
    const std::size_t p = static_cast<std::size_t>(k) + rng() % (n - static_cast<std::size_t>(k));
    const Partition part = mst_partition_small(x, h, spec, p);
    const std::vector<BlockId> a(part.assignment().begin(), part.assignment().end());
    for (BlockId b : a) CHECK((b >= 0 && b < k));
    const auto weights = hgtest::oracle_block_weights(h, a, k);
    CHECK(std::vector<Weight>(part.block_weights().begin(), part.block_weights().end()) == weights);
    CHECK(part.cutsize() == hgtest::oracle_cutsize(h, a));
  }
}

TEST_CASE("small route rejects p outside [k, n]") {
  const Hypergraph h = Hypergraph::unweighted(4, {{0, 1}, {2, 3}});
  const FeatureMatrix x = initial_embedding(4, 2, 0);
  const BalanceSpec spec = BalanceSpec::make(h, 3, 0.04);
  CHECK_THROWS_AS(mst_partition_small(x, h, spec, 2), InvalidArgument);
  CHECK_THROWS_AS(mst_partition_small(x, h, spec, 5), InvalidArgument);
  CHECK_THROWS_AS(mst_partition_small(initial_embedding(3, 2, 0), h, spec, 3), InvalidArgument);
}

TEST_CASE("representatives prefer heavy vertices and lower indices") {
  const Hypergraph equal = Hypergraph::unweighted(23, {{0, 1}});
  const auto reps = representative_vertices(equal, 2);
  REQUIRE(reps.size() == 5);
  CHECK(reps == std::vector<VertexId>{0, 1, 2, 3, 4});

  const Hypergraph weighted({1, 1, 5, 1, 5, 1, 1, 1, 1, 2}, {1}, {{0, 1}});
  CHECK(representative_vertices(weighted, 2) == std::vector<VertexId>{2, 4});
  CHECK(representative_vertices(weighted, 3) == std::vector<VertexId>{2, 4, 9});
}

TEST_CASE("remaining vertex falls back to the lightest block when its nearest is full") {
  // Ten vertices of weight 1: representatives are 0 and 1, one per block.
  // Block 0 is the feature-nearest for every other vertex but fills at cap.
  const std::size_t n = 10;
  Matrix x(static_cast<Eigen::Index>(n), 2);
  x.row(0) << 1, 0;
  x.row(1) << 0, 1;
  for (Eigen::Index i = 2; i < static_cast<Eigen::Index>(n); ++i) x.row(i) << 1, 0.01 * static_cast<double>(i);
  const Hypergraph h = Hypergraph::unweighted(n, {{0, 1}});
  const BalanceSpec spec = BalanceSpec::make(h, 2, 0.0);
  const Partition p = representative_partition_large(project_rows(x), h, spec, 2);
  CHECK(p.block_weight(0) == 5);
  CHECK(p.block_weight(1) == 5);
  CHECK(p.block(2) == p.block(0));
  CHECK(p.block(9) == p.block(1));
}

TEST_CASE("large route recovers two feature clusters") {
  const std::size_t n = 50000;
  hgtest::Rng rng(149);
  std::uniform_real_distribution<double> jitter(-0.2, 0.2);
  Matrix x(static_cast<Eigen::Index>(n), 2);
  std::vector<int> label(n);
  for (std::size_t i = 0; i < n; ++i) {
    label[i] = static_cast<int>(i % 2);
    const double angle = (label[i] == 0 ? 0.0 : std::acos(-1.0) / 2) + jitter(rng);
    x.row(static_cast<Eigen::Index>(i)) << std::cos(angle), std::sin(angle);
  }
  std::vector<std::vector<VertexId>> pins;
  for (VertexId v = 0; v + 2 < n; v += 2) pins.push_back({v, v + 2});
  const Hypergraph h = Hypergraph::unweighted(n, pins);
  const Partition p =
      representative_partition_large(project_rows(x), h, BalanceSpec::make(h, 2, 0.04), 2);
  std::size_t agree = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (p.block(static_cast<VertexId>(i)) == label[i]) ++agree;
  }
  const double agreement = static_cast<double>(std::max(agree, n - agree)) / static_cast<double>(n);
  CHECK(agreement >= 0.95);
}

TEST_CASE("p rules and lambda grid order") {
  CHECK(p_from_rule(PRule::kSqrtHalfN, 5000, 2) == 50);
  CHECK(p_from_rule(PRule::kNOverFiveK, 5000, 2) == 500);
  CHECK(p_from_rule(PRule::kSqrtHalfN, 51, 2) == 6);
  CHECK(p_from_rule(PRule::kNOverFiveK, 51, 2) == 6);

  const InitialOptions options;
  CHECK(lambda_pair(options, 0) == std::pair<double, double>{0.9, 1.0});
  CHECK(lambda_pair(options, 1) == std::pair<double, double>{0.9, 0.9});
  CHECK(lambda_pair(options, 3) == std::pair<double, double>{0.5, 1.0});
  CHECK(lambda_pair(options, 11) == std::pair<double, double>{0.015, 0.8});
  CHECK(lambda_pair(options, 12) == lambda_pair(options, 0));
}

TEST_CASE("single candidate uses the first grid point") {
  hgtest::Rng rng(151);
  const Hypergraph h = hgtest::local_hypergraph(rng, 200, 1.5);
  InitialOptions options;
  options.num_init = 1;
  const auto candidates = generate_candidates(h, BalanceSpec::make(h, 2, 0.04), options);
  REQUIRE(candidates.size() == 1);
  CHECK(candidates[0].lambda1 == 0.9);
  CHECK(candidates[0].lambda2 == 1.0);
  CHECK((candidates[0].p == 10 || candidates[0].p == 20));
}

TEST_CASE("full candidate run on a thousand vertices") {
  hgtest::Rng rng(157);
  const Hypergraph h = hgtest::local_hypergraph(rng, 1000, 1.5);
  const BalanceSpec spec = BalanceSpec::make(h, 2, 0.04);
  const InitialOptions options;
  const auto candidates = generate_candidates(h, spec, options);
  REQUIRE(candidates.size() == 10);
  std::set<std::pair<double, double>> pairs;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const Candidate& c = candidates[i];
    pairs.insert({c.lambda1, c.lambda2});
    CHECK(std::make_pair(c.lambda1, c.lambda2) == lambda_pair(options, i));
    const std::vector<BlockId> a(c.partition.assignment().begin(), c.partition.assignment().end());
    CHECK(c.partition.cutsize() == hgtest::oracle_cutsize(h, a));
    CHECK((c.p == 23 || c.p == 100));
  }
  CHECK(pairs.size() == 10);

  // Same inputs, same candidates.
  const auto again = generate_candidates(h, spec, options);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    CHECK(std::equal(candidates[i].partition.assignment().begin(),
                     candidates[i].partition.assignment().end(),
                     again[i].partition.assignment().begin()));
  }
}

TEST_CASE("fewer vertices than blocks gives the identity candidate") {
  const Hypergraph h = Hypergraph::unweighted(3, {{0, 1, 2}});
  const auto candidates = generate_candidates(h, BalanceSpec::make(h, 4, 0.08), InitialOptions{});
  REQUIRE(candidates.size() == 1);
  CHECK(candidates[0].p_label == "identity");
  CHECK(candidates[0].partition.block(2) == 2);
}

}  // TEST_SUITE
