#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hgpart/hypergraph.hpp"

namespace hgtest {

using hgpart::BlockId;
using hgpart::Hypergraph;
using hgpart::VertexId;
using hgpart::Weight;

using Rng = std::mt19937_64;

struct RawHypergraph {
  std::size_t n = 0;
  std::vector<Weight> vertex_weights;
  std::vector<Weight> edge_weights;
  std::vector<std::vector<VertexId>> pins;

  Hypergraph build() const { return Hypergraph(vertex_weights, edge_weights, pins); }
};

inline RawHypergraph random_raw(Rng& rng, std::size_t n, std::size_t m, std::size_t max_size,
                                Weight max_vertex_weight = 1, Weight max_edge_weight = 1) {
  RawHypergraph raw;
  raw.n = n;
  std::uniform_int_distribution<Weight> vw(1, max_vertex_weight), ew(1, max_edge_weight);
  std::uniform_int_distribution<std::size_t> size(2, std::max<std::size_t>(2, max_size));
  std::uniform_int_distribution<VertexId> vertex(0, static_cast<VertexId>(n - 1));
  for (std::size_t v = 0; v < n; ++v) raw.vertex_weights.push_back(vw(rng));
  for (std::size_t e = 0; e < m; ++e) {
    std::set<VertexId> pins;
    const std::size_t s = std::min(n, size(rng));
    while (pins.size() < s) pins.insert(vertex(rng));
    raw.pins.emplace_back(pins.begin(), pins.end());
    raw.edge_weights.push_back(ew(rng));
  }
  return raw;
}

inline Hypergraph random_hypergraph(Rng& rng, std::size_t n, std::size_t m, std::size_t max_size,
                                    Weight max_vertex_weight = 1, Weight max_edge_weight = 1) {
  return random_raw(rng, n, m, max_size, max_vertex_weight, max_edge_weight).build();
}

/// Hyperedges drawn from a sliding window so the instance has locality.
inline Hypergraph local_hypergraph(Rng& rng, std::size_t n, double edges_per_vertex,
                                   std::size_t window = 20) {
  std::vector<std::vector<VertexId>> pins;
  std::uniform_int_distribution<std::size_t> size(2, 5);
  const auto m = static_cast<std::size_t>(edges_per_vertex * static_cast<double>(n));
  for (std::size_t e = 0; e < m; ++e) {
    const VertexId base = static_cast<VertexId>(rng() % n);
    std::set<VertexId> p;
    const std::size_t s = std::min(n, size(rng));
    while (p.size() < s) p.insert(static_cast<VertexId>((base + rng() % window) % n));
    pins.emplace_back(p.begin(), p.end());
  }
  return Hypergraph::unweighted(n, pins);
}

inline std::vector<BlockId> random_assignment(Rng& rng, std::size_t n, BlockId k) {
  std::uniform_int_distribution<BlockId> block(0, k - 1);
  std::vector<BlockId> out(n);
  for (auto& b : out) b = block(rng);
  return out;
}

/// Connectivity-1 cutsize by counting distinct block ids per edge with a set.
inline Weight oracle_cutsize(const Hypergraph& h, const std::vector<BlockId>& assignment) {
  Weight total = 0;
  for (hgpart::EdgeId e = 0; e < h.num_edges(); ++e) {
    std::set<BlockId> blocks;
    for (VertexId v : h.pins(e)) blocks.insert(assignment[v]);
    total += h.edge_weight(e) * (static_cast<Weight>(blocks.size()) - 1);
  }
  return total;
}

inline std::vector<Weight> oracle_block_weights(const Hypergraph& h,
                                                const std::vector<BlockId>& assignment, BlockId k) {
  std::vector<Weight> w(static_cast<std::size_t>(k), 0);
  for (VertexId v = 0; v < h.num_vertices(); ++v) w[assignment[v]] += h.vertex_weight(v);
  return w;
}

/// Constraint b computed directly: every block <= (1 + eps) * ceil(total / k).
inline bool oracle_feasible(const Hypergraph& h, const std::vector<BlockId>& assignment, BlockId k,
                            double epsilon) {
  const Weight total = h.total_vertex_weight();
  const Weight avg = (total + k - 1) / k;
  const double cap = (1.0 + epsilon) * static_cast<double>(avg);
  for (Weight w : oracle_block_weights(h, assignment, k)) {
    if (static_cast<double>(w) > cap * (1.0 + 1e-12)) return false;
  }
  return true;
}

/// Smallest cutsize over every feasible k-way assignment (k^n enumeration).
inline Weight brute_force_optimum(const Hypergraph& h, BlockId k, double epsilon) {
  const std::size_t n = h.num_vertices();
  std::vector<BlockId> a(n, 0);
  Weight best = std::numeric_limits<Weight>::max();
  while (true) {
    if (oracle_feasible(h, a, k, epsilon)) best = std::min(best, oracle_cutsize(h, a));
    std::size_t i = 0;
    while (i < n && ++a[i] == k) a[i++] = 0;
    if (i == n) break;
  }
  return best;
}

/// Dense clique-expansion adjacency built pair by pair.
inline Eigen::MatrixXd dense_clique(const Hypergraph& h) {
  const auto n = static_cast<Eigen::Index>(h.num_vertices());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (hgpart::EdgeId e = 0; e < h.num_edges(); ++e) {
    const auto pins = h.pins(e);
    if (pins.size() < 2) continue;
    const double w = static_cast<double>(h.edge_weight(e)) / static_cast<double>(pins.size() - 1);
    for (std::size_t i = 0; i < pins.size(); ++i) {
      for (std::size_t j = 0; j < pins.size(); ++j) {
        if (i != j) a(pins[i], pins[j]) += w;
      }
    }
  }
  return a;
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("hgpart_test_" + name + "_" +
                                                       std::to_string(std::random_device{}()));
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace hgtest
