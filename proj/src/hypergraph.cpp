#include "hgpart/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hgpart/error.hpp"

namespace hgpart {

Hypergraph::Hypergraph(std::vector<Weight> vertex_weights,
                       std::vector<Weight> edge_weights,
                       const std::vector<std::vector<VertexId>>& pins)
    : vertex_weights_(std::move(vertex_weights)), edge_weights_(std::move(edge_weights)) {
  const std::size_t n = vertex_weights_.size();
  const std::size_t m = edge_weights_.size();
  if (pins.size() != m) {
    throw InvalidArgument("pin list count " + std::to_string(pins.size()) +
                          " does not match edge count " + std::to_string(m));
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (vertex_weights_[v] < 1) {
      throw InvalidArgument("vertex " + std::to_string(v) + " has nonpositive weight");
    }
    total_vertex_weight_ += vertex_weights_[v];
  }

  std::vector<std::size_t> degree(n, 0);
  pin_offsets_.reserve(m + 1);
  std::vector<VertexId> scratch;
  for (std::size_t e = 0; e < m; ++e) {
    if (edge_weights_[e] < 1) {
      throw InvalidArgument("edge " + std::to_string(e) + " has nonpositive weight");
    }
    total_edge_weight_ += edge_weights_[e];
    scratch.assign(pins[e].begin(), pins[e].end());
    std::sort(scratch.begin(), scratch.end());
    scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
    if (scratch.empty()) {
      throw InvalidArgument("edge " + std::to_string(e) + " has no pins");
    }
    if (scratch.back() >= n) {
      throw InvalidArgument("edge " + std::to_string(e) + " has pin " +
                            std::to_string(scratch.back()) + " out of range");
    }
    for (VertexId v : scratch) ++degree[v];
    pin_list_.insert(pin_list_.end(), scratch.begin(), scratch.end());
    pin_offsets_.push_back(pin_list_.size());
  }

  incidence_offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) incidence_offsets_[v + 1] = incidence_offsets_[v] + degree[v];
  incidence_list_.resize(pin_list_.size());
  std::vector<std::size_t> cursor(incidence_offsets_.begin(), incidence_offsets_.end() - 1);
  for (std::size_t e = 0; e < m; ++e) {
    for (VertexId v : this->pins(static_cast<EdgeId>(e))) {
      incidence_list_[cursor[v]++] = static_cast<EdgeId>(e);
    }
  }
}

Hypergraph Hypergraph::unweighted(std::size_t n,
                                  const std::vector<std::vector<VertexId>>& pins) {
  return Hypergraph(std::vector<Weight>(n, 1), std::vector<Weight>(pins.size(), 1), pins);
}

BalanceSpec BalanceSpec::make(Weight total_weight, BlockId k, double epsilon) {
  if (k < 1) throw InvalidArgument("k must be at least 1");
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw InvalidArgument("epsilon must be a finite nonnegative number");
  }
  BalanceSpec spec;
  spec.k = k;
  spec.epsilon = epsilon;
  const Weight average = (total_weight + k - 1) / k;
  spec.upper_bound = (1.0 + epsilon) * static_cast<double>(average);
  return spec;
}

Weight BalanceSpec::max_block_weight() const {
  return static_cast<Weight>(std::floor(upper_bound * (1.0 + 1e-12)));
}

double epsilon_from_ubfactor(double ubfactor, BlockId k) {
  if (!(ubfactor > 0.0 && ubfactor < 50.0)) {
    throw InvalidArgument("ubfactor must lie in (0, 50)");
  }
  if (k < 2) throw InvalidArgument("ubfactor conversion needs k >= 2");
  const double base = (50.0 + ubfactor) / 100.0;
  return std::pow(base, std::log2(static_cast<double>(k))) * k - 1.0;
}

double default_epsilon(BlockId k) {
  switch (k) {
    case 1:
    case 2:
      return 0.04;
    case 3:
      return 0.06;
    case 4:
      return 0.08;
    default:
      return 0.02;
  }
}

}  // namespace hgpart
