#include "hgpart/graph_ops.hpp"

#include <string>

#include "hgpart/error.hpp"

namespace hgpart {

CliqueGraph clique_expand(const Hypergraph& h) {
  const auto n = static_cast<Eigen::Index>(h.num_vertices());
  std::vector<Eigen::Triplet<double>> triplets;
  std::size_t pairs = 0;
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    const std::size_t s = h.edge_size(e);
    pairs += s * (s - 1);
  }
  triplets.reserve(pairs);
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    const auto pins = h.pins(e);
    if (pins.size() < 2) continue;
    const double w = static_cast<double>(h.edge_weight(e)) / static_cast<double>(pins.size() - 1);
    for (std::size_t i = 0; i < pins.size(); ++i) {
      for (std::size_t j = i + 1; j < pins.size(); ++j) {
        triplets.emplace_back(pins[i], pins[j], w);
        triplets.emplace_back(pins[j], pins[i], w);
      }
    }
  }
  CliqueGraph g;
  g.adjacency.resize(n, n);
  g.adjacency.setFromTriplets(triplets.begin(), triplets.end());
  g.adjacency.makeCompressed();
  g.degree = g.adjacency * Vector::Ones(n);
  return g;
}

CliqueGraph induced_subgraph(const CliqueGraph& g, std::span<const VertexId> vertices) {
  const auto n = static_cast<Eigen::Index>(vertices.size());
  std::vector<Eigen::Index> local(g.size(), -1);
  for (Eigen::Index i = 0; i < n; ++i) local[vertices[i]] = i;
  std::vector<Eigen::Triplet<double>> triplets;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (SparseMatrix::InnerIterator it(g.adjacency, vertices[i]); it; ++it) {
      const Eigen::Index j = local[it.col()];
      if (j >= 0) triplets.emplace_back(i, j, it.value());
    }
  }
  CliqueGraph sub;
  sub.adjacency.resize(n, n);
  sub.adjacency.setFromTriplets(triplets.begin(), triplets.end());
  sub.adjacency.makeCompressed();
  sub.degree = sub.adjacency * Vector::Ones(n);
  return sub;
}

SparseMatrix laplacian(const CliqueGraph& g) {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(g.adjacency.nonZeros() + g.adjacency.rows()));
  for (Eigen::Index i = 0; i < g.adjacency.rows(); ++i) {
    triplets.emplace_back(i, i, g.degree[i]);
    for (SparseMatrix::InnerIterator it(g.adjacency, i); it; ++it) {
      triplets.emplace_back(i, it.col(), -it.value());
    }
  }
  SparseMatrix l(g.adjacency.rows(), g.adjacency.cols());
  l.setFromTriplets(triplets.begin(), triplets.end());
  return l;
}

namespace {

void check_coefficient(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw InvalidArgument(std::string(name) + " must lie in [0, 1]");
  }
}

SparseMatrix abar_of(const CliqueGraph& g) {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(g.adjacency.nonZeros() + g.adjacency.rows()));
  for (Eigen::Index i = 0; i < g.adjacency.rows(); ++i) {
    triplets.emplace_back(i, i, g.degree[i]);
    for (SparseMatrix::InnerIterator it(g.adjacency, i); it; ++it) {
      triplets.emplace_back(i, it.col(), it.value());
    }
  }
  SparseMatrix abar(g.adjacency.rows(), g.adjacency.cols());
  abar.setFromTriplets(triplets.begin(), triplets.end());
  return abar;
}

Vector weights_of(std::span<const Weight> vertex_weights, std::size_t n) {
  if (vertex_weights.size() != n) {
    throw InvalidArgument("vertex weight count does not match the clique graph");
  }
  Vector w(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) w[static_cast<Eigen::Index>(i)] = static_cast<double>(vertex_weights[i]);
  return w;
}

}  // namespace

ObjectiveOperator ObjectiveOperator::c1(const CliqueGraph& g,
                                        std::span<const Weight> vertex_weights, double lambda1,
                                        double lambda2) {
  check_coefficient(lambda1, "lambda1");
  check_coefficient(lambda2, "lambda2");
  ObjectiveOperator op;
  op.n_ = g.size();
  op.abar_ = abar_of(g);
  op.weights_ = weights_of(vertex_weights, op.n_);
  op.total_weight_ = op.weights_.sum();
  op.c_abar_ = lambda1;
  op.c_unit_ = (1.0 - lambda1) * lambda2;
  op.c_weighted_ = (1.0 - lambda1) * (1.0 - lambda2);
  return op;
}

ObjectiveOperator ObjectiveOperator::c2(const CliqueGraph& g,
                                        std::span<const Weight> vertex_weights, double xi1,
                                        double xi2, std::span<const int> parts, int num_parts) {
  check_coefficient(xi1, "xi1");
  check_coefficient(xi2, "xi2");
  ObjectiveOperator op;
  op.n_ = g.size();
  if (parts.size() != op.n_) throw InvalidArgument("part labels do not match the clique graph");
  if (num_parts < 1) throw InvalidArgument("num_parts must be positive");
  op.abar_ = abar_of(g);
  op.weights_ = weights_of(vertex_weights, op.n_);
  op.total_weight_ = op.weights_.sum();
  op.parts_.assign(parts.begin(), parts.end());
  op.num_parts_ = num_parts;
  op.part_totals_ = Vector::Zero(num_parts);
  for (std::size_t i = 0; i < op.n_; ++i) {
    if (parts[i] < 0 || parts[i] >= num_parts) throw InvalidArgument("part label out of range");
    op.part_totals_[parts[i]] += op.weights_[static_cast<Eigen::Index>(i)];
  }
  op.c_abar_ = xi1;
  op.c_weighted_ = (1.0 - xi1) * xi2;
  op.c_partite_ = (1.0 - xi1) * (1.0 - xi2);
  return op;
}

ObjectiveOperator ObjectiveOperator::identity(std::size_t n) {
  ObjectiveOperator op;
  op.n_ = n;
  op.identity_ = true;
  return op;
}

Matrix ObjectiveOperator::apply(const Matrix& x) const {
  if (static_cast<std::size_t>(x.rows()) != n_) {
    throw InvalidArgument("operator of size " + std::to_string(n_) + " applied to " +
                          std::to_string(x.rows()) + " rows");
  }
  if (identity_) return x;

  const auto n = static_cast<Eigen::Index>(n_);
  Matrix result = Matrix::Zero(n, x.cols());
  if (c_abar_ != 0.0) result.noalias() += c_abar_ * (abar_ * x);
  if (c_unit_ != 0.0) {
    const Eigen::RowVectorXd column_sums = x.colwise().sum();
    result += c_unit_ * (static_cast<double>(n) * x - Vector::Ones(n) * column_sums);
  }
  if (c_weighted_ != 0.0) {
    const Eigen::RowVectorXd weighted_sums = weights_.transpose() * x;
    result += c_weighted_ * (total_weight_ * (weights_.asDiagonal() * x) - weights_ * weighted_sums);
  }
  if (c_partite_ != 0.0) {
    // Row i: B_i * sum over j outside part(i) of B_j (X_i - X_j).
    Matrix part_sums = Matrix::Zero(num_parts_, x.cols());
    for (Eigen::Index i = 0; i < n; ++i) part_sums.row(parts_[i]) += weights_[i] * x.row(i);
    const Eigen::RowVectorXd all_sums = part_sums.colwise().sum();
    for (Eigen::Index i = 0; i < n; ++i) {
      const int part = parts_[i];
      const double outside_weight = total_weight_ - part_totals_[part];
      result.row(i) += c_partite_ * weights_[i] *
                       (outside_weight * x.row(i) - (all_sums - part_sums.row(part)));
    }
  }
  return result;
}

double ObjectiveOperator::value(const Matrix& x) const {
  return -(x.array() * apply(x).array()).sum();
}

Matrix ObjectiveOperator::gradient(const Matrix& x) const { return -2.0 * apply(x); }

double ObjectiveOperator::value_and_gradient(const Matrix& x, Matrix& gradient) const {
  gradient = apply(x);
  const double v = -(x.array() * gradient.array()).sum();
  gradient *= -2.0;
  return v;
}

Weight balanced_product(std::span<const Weight> parts) {
  Weight sum = 0;
  Weight psi = 0;
  for (Weight a : parts) {
    psi += a * sum;
    sum += a;
  }
  return psi;
}

CompositionMaximum max_balanced_product(Weight total, int k) {
  if (total < 0 || k < 1) throw InvalidArgument("need total >= 0 and k >= 1");
  CompositionMaximum best;
  best.psi = -1;
  std::vector<Weight> parts(static_cast<std::size_t>(k), 0);
  // Odometer over the first k-1 parts; the last part takes the remainder.
  auto visit = [&]() {
    Weight used = 0;
    for (int i = 0; i + 1 < k; ++i) used += parts[i];
    if (used > total) return;
    parts[k - 1] = total - used;
    const Weight psi = balanced_product(parts);
    if (psi > best.psi) {
      best.psi = psi;
      best.maximizers.clear();
    }
    if (psi == best.psi) best.maximizers.push_back(parts);
  };
  while (true) {
    visit();
    int i = k - 2;
    while (i >= 0) {
      Weight used = 0;
      for (int j = 0; j < i; ++j) used += parts[j];
      if (used + parts[i] < total) {
        ++parts[i];
        break;
      }
      parts[i] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return best;
}

}  // namespace hgpart
