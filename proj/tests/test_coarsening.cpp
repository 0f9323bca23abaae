#include <doctest.h>

#include <limits>
#include <set>

#include "hgpart/coarsening.hpp"
#include "support.hpp"

using namespace hgpart;

namespace {

constexpr Weight kNoCap = std::numeric_limits<Weight>::max() / 4;

/// Gamma from the definition: loop over all edges, test membership of both.
double oracle_score(const Hypergraph& h, VertexId a, VertexId b) {
  double total = 0.0;
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    bool has_a = false, has_b = false;
    for (VertexId v : h.pins(e)) {
      has_a = has_a || v == a;
      has_b = has_b || v == b;
    }
    if (has_a && has_b) {
      total += static_cast<double>(h.edge_weight(e)) /
               std::max<double>(1.0, static_cast<double>(h.edge_size(e)) - 1.0);
    }
  }
  return total;
}

}  // namespace

TEST_SUITE("coarsening") {

TEST_CASE("matching score examples") {
  // e1 = {0, 1, 2} with weight 2 and e2 = {0, 1} with weight 1.
  const Hypergraph h({1, 1, 1}, {2, 1}, {{0, 1, 2}, {0, 1}});
  CHECK(matching_score(h, 0, 1) == doctest::Approx(2.0));
  CHECK(matching_score(h, 0, 2) == doctest::Approx(1.0));
  const Hypergraph apart = Hypergraph::unweighted(4, {{0, 1}, {2, 3}});
  CHECK(matching_score(apart, 0, 3) == 0.0);
  // A shared single-pin edge cannot exist between distinct vertices; the
  // guard still divides a size-1 edge by 1.
  const Hypergraph single({1}, {5}, {{0}});
  CHECK(matching_score(single, 0, 0) == doctest::Approx(5.0));
}

TEST_CASE("matching score equals the definition on random instances") {
  hgtest::Rng rng(29);
  for (int trial = 0; trial < 30; ++trial) {
    const Hypergraph h = hgtest::random_hypergraph(rng, 10, 12, 4, 1, 5);
    for (VertexId a = 0; a < 10; ++a) {
      for (VertexId b = a + 1; b < 10; ++b) {
        CHECK(matching_score(h, a, b) == doctest::Approx(oracle_score(h, a, b)));
      }
    }
  }
}

TEST_CASE("path picks the lowest-index pair") {
  const Hypergraph h = Hypergraph::unweighted(3, {{0, 1}, {1, 2}});
  const Matching m = build_matching(h, kNoCap);
  REQUIRE(m.pairs.size() == 1);
  CHECK(std::min(m.pairs[0].first, m.pairs[0].second) == 0);
  CHECK(std::max(m.pairs[0].first, m.pairs[0].second) == 1);
}

TEST_CASE("cap blocks every pair") {
  const Hypergraph h({3, 3, 3}, {1, 1}, {{0, 1}, {1, 2}});
  CHECK(build_matching(h, 5).pairs.empty());
}

TEST_CASE("star center matches one leaf") {
  // Center 0 is heaviest so it is visited first; every leaf scores 1.
  const Hypergraph h({2, 1, 1, 1}, {1, 1, 1}, {{0, 1}, {0, 2}, {0, 3}});
  const Matching m = build_matching(h, kNoCap);
  REQUIRE(m.pairs.size() == 1);
  CHECK(std::min(m.pairs[0].first, m.pairs[0].second) == 0);
  CHECK(std::max(m.pairs[0].first, m.pairs[0].second) == 1);
}

TEST_CASE("matching is disjoint, within cap, and maximal") {
  hgtest::Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const Hypergraph h = hgtest::random_hypergraph(rng, 20, 25, 4, 4, 3);
    const Weight cap = 5;
    const Matching m = build_matching(h, cap);
    std::vector<bool> used(20, false);
    for (const auto& [a, b] : m.pairs) {
      CHECK(a != b);
      CHECK_FALSE(used[a]);
      CHECK_FALSE(used[b]);
      used[a] = used[b] = true;
      CHECK(h.vertex_weight(a) + h.vertex_weight(b) <= cap);
    }
    for (VertexId a = 0; a < 20; ++a) {
      for (VertexId b = a + 1; b < 20; ++b) {
        if (used[a] || used[b]) continue;
        const bool eligible = matching_score(h, a, b) > 0.0 &&
                              h.vertex_weight(a) + h.vertex_weight(b) <= cap;
        CHECK_FALSE(eligible);
      }
    }
  }
}

TEST_CASE("contraction examples") {
  const Hypergraph one = Hypergraph::unweighted(2, {{0, 1}});
  const CoarseLevel a = contract(one, Matching{{{0, 1}}});
  CHECK(a.hypergraph.num_vertices() == 1);
  CHECK(a.hypergraph.num_edges() == 0);

  const Hypergraph two = Hypergraph::unweighted(3, {{0, 2}, {1, 2}});
  const CoarseLevel b = contract(two, Matching{{{0, 1}}});
  REQUIRE(b.hypergraph.num_edges() == 1);
  CHECK(b.hypergraph.edge_weight(0) == 2);
  CHECK(b.hypergraph.edge_size(0) == 2);

  const Hypergraph weighted({3, 4}, {1}, {{0, 1}});
  const CoarseLevel c = contract(weighted, Matching{{{0, 1}}});
  CHECK(c.hypergraph.vertex_weight(0) == 7);
  CHECK(c.map_to_coarse == std::vector<VertexId>{0, 0});
}

TEST_CASE("contraction preserves weight and never adds edges") {
  hgtest::Rng rng(37);
  for (int trial = 0; trial < 50; ++trial) {
    const Hypergraph h = hgtest::random_hypergraph(rng, 30, 40, 5, 3, 4);
    const CoarseLevel level = contract(h, build_matching(h, kNoCap));
    CHECK(level.hypergraph.total_vertex_weight() == h.total_vertex_weight());
    CHECK(level.hypergraph.num_edges() <= h.num_edges());
    CHECK(level.hypergraph.total_edge_weight() <= h.total_edge_weight());
    REQUIRE(level.map_to_coarse.size() == h.num_vertices());
    for (VertexId c : level.map_to_coarse) CHECK(c < level.hypergraph.num_vertices());
    std::set<std::vector<VertexId>> seen;
    for (EdgeId e = 0; e < level.hypergraph.num_edges(); ++e) {
      CHECK(level.hypergraph.edge_size(e) >= 2);
      const auto pins = level.hypergraph.pins(e);
      CHECK(seen.insert(std::vector<VertexId>(pins.begin(), pins.end())).second);
    }
  }
}

TEST_CASE("small instances are not coarsened") {
  const Hypergraph h = Hypergraph::unweighted(100, {{0, 1}});
  const Hierarchy hierarchy = coarsen(h, BalanceSpec::make(h, 2, 0.04));
  CHECK(hierarchy.levels.empty());
  CHECK(hierarchy.stop_reason == CoarseningStop::kSmallEnough);
  CHECK(&hierarchy.coarsest(h) == &h);
}

TEST_CASE("no shareable edges stops on an empty matching") {
  std::vector<std::vector<VertexId>> pins;
  for (VertexId v = 0; v < 2000; ++v) pins.push_back({v});
  const Hypergraph h = Hypergraph::unweighted(2000, pins);
  const Hierarchy hierarchy = coarsen(h, BalanceSpec::make(h, 2, 0.04));
  CHECK(hierarchy.levels.empty());
  CHECK(hierarchy.stop_reason == CoarseningStop::kEmptyMatching);
}

TEST_CASE("chain coarsening replays the stop predicate") {
  const std::size_t n = 10000;
  std::vector<std::vector<VertexId>> pins;
  for (VertexId v = 0; v + 1 < n; ++v) pins.push_back({v, v + 1});
  const Hypergraph h = Hypergraph::unweighted(n, pins);
  const BalanceSpec spec = BalanceSpec::make(h, 2, 0.04);
  const Hierarchy hierarchy = coarsen(h, spec);

  std::vector<std::size_t> sizes{n};
  for (const auto& level : hierarchy.levels) sizes.push_back(level.hypergraph.num_vertices());
  REQUIRE(sizes.size() >= 2);
  CHECK(sizes.size() - 1 <= 20);
  // Every level that was coarsened further must have failed all stop tests.
  for (std::size_t i = 1; i + 1 < sizes.size(); ++i) {
    CHECK(sizes[i] > 1250);
    CHECK(static_cast<double>(sizes[i]) <= 0.8 * static_cast<double>(sizes[i - 1]));
  }
  const std::size_t last = sizes.size() - 1;
  const bool stopped = sizes[last] <= 1250 ||
                       static_cast<double>(sizes[last]) > 0.8 * static_cast<double>(sizes[last - 1]) ||
                       last == 20;
  CHECK(stopped);
  CHECK(hierarchy.coarsest(h).total_vertex_weight() == static_cast<Weight>(n));
}

TEST_CASE("round limit caps the hierarchy") {
  const std::size_t n = 4000;
  std::vector<std::vector<VertexId>> pins;
  for (VertexId v = 0; v + 1 < n; ++v) pins.push_back({v, v + 1});
  const Hypergraph h = Hypergraph::unweighted(n, pins);
  CoarseningOptions options;
  options.max_rounds = 1;
  const Hierarchy hierarchy = coarsen(h, BalanceSpec::make(h, 2, 0.04), options);
  CHECK(hierarchy.levels.size() == 1);
  CHECK(hierarchy.stop_reason == CoarseningStop::kRoundLimit);
}

TEST_CASE("projection keeps contracted pairs together") {
  const Hypergraph h = Hypergraph::unweighted(3, {{0, 1}, {1, 2}});
  const CoarseLevel level = contract(h, Matching{{{0, 1}}});
  const VertexId c0 = level.map_to_coarse[0];
  std::vector<BlockId> coarse(level.hypergraph.num_vertices(), 0);
  coarse[c0] = 1;
  const Partition fine = project_partition(h, level, Partition(level.hypergraph, 2, coarse));
  CHECK(fine.block(0) == 1);
  CHECK(fine.block(1) == 1);

  const CoarseLevel identity = contract(h, Matching{});
  const Partition same =
      project_partition(h, identity, Partition(identity.hypergraph, 2, {0, 1, 1}));
  CHECK(std::vector<BlockId>(same.assignment().begin(), same.assignment().end()) ==
        std::vector<BlockId>{0, 1, 1});
}

TEST_CASE("projection preserves cutsize through three levels") {
  hgtest::Rng rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const Hypergraph h = hgtest::random_hypergraph(rng, 60, 80, 4, 2, 3);
    std::vector<CoarseLevel> levels;
    const Hypergraph* current = &h;
    for (int l = 0; l < 3; ++l) {
      levels.push_back(contract(*current, build_matching(*current, kNoCap)));
      current = &levels.back().hypergraph;
    }
    const BlockId k = 3;
    Partition p(*current, k, hgtest::random_assignment(rng, current->num_vertices(), k));
    for (std::size_t l = levels.size(); l-- > 0;) {
      const Hypergraph& finer = l == 0 ? h : levels[l - 1].hypergraph;
      const Weight coarse_cut = p.cutsize();
      p = project_partition(finer, levels[l], p);
      const std::vector<BlockId> a(p.assignment().begin(), p.assignment().end());
      CHECK(hgtest::oracle_cutsize(finer, a) == coarse_cut);
    }
  }
}

}  // TEST_SUITE
