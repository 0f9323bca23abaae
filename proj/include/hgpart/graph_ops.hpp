#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "hgpart/hypergraph.hpp"

namespace hgpart {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Weighted graph obtained by replacing each hyperedge e with a clique whose
/// pair weight is w_e / (|e| - 1). Symmetric, zero diagonal.
struct CliqueGraph {
  SparseMatrix adjacency;
  Vector degree;

  std::size_t size() const { return static_cast<std::size_t>(adjacency.rows()); }
};

CliqueGraph clique_expand(const Hypergraph& h);

/// Restriction of g to `vertices` (row i of the result is vertices[i]).
CliqueGraph induced_subgraph(const CliqueGraph& g, std::span<const VertexId> vertices);

/// Degree matrix minus adjacency.
SparseMatrix laplacian(const CliqueGraph& g);

/// Combination of the clique matrix A_bar = Diag(degree) + A with the
/// Laplacians of three complete graphs, applied without forming them:
///   G_u  unit complete graph            G_u X = n X - 1 (1^T X)
///   G_w  complete graph, weight B_i B_j  G_w X = S Diag(B) X - B (B^T X)
///   K_w  complete multipartite graph with weight B_i B_j between vertices of
///        different parts.
/// The objective is F(X) = -<C, X X^T> with gradient -2 C X.
class ObjectiveOperator {
 public:
  /// C1 = l1 A_bar + (1 - l1) (l2 G_u + (1 - l2) G_w).
  static ObjectiveOperator c1(const CliqueGraph& g, std::span<const Weight> vertex_weights,
                              double lambda1, double lambda2);

  /// C2 = x1 A_bar + (1 - x1) (x2 G_w + (1 - x2) K_w), with the parts of K_w
  /// given per vertex as ids in [0, num_parts).
  static ObjectiveOperator c2(const CliqueGraph& g, std::span<const Weight> vertex_weights,
                              double xi1, double xi2, std::span<const int> parts,
                              int num_parts);

  /// C = I. Used to check the solver against closed forms.
  static ObjectiveOperator identity(std::size_t n);

  std::size_t size() const noexcept { return n_; }

  /// C X.
  Matrix apply(const Matrix& x) const;
  double value(const Matrix& x) const;
  Matrix gradient(const Matrix& x) const;
  /// Value and gradient from a single product.
  double value_and_gradient(const Matrix& x, Matrix& gradient) const;

  double coefficient_abar() const noexcept { return c_abar_; }
  double coefficient_unit() const noexcept { return c_unit_; }
  double coefficient_weighted() const noexcept { return c_weighted_; }
  double coefficient_partite() const noexcept { return c_partite_; }

 private:
  ObjectiveOperator() = default;

  std::size_t n_ = 0;
  bool identity_ = false;
  SparseMatrix abar_;
  Vector weights_;
  double total_weight_ = 0.0;
  std::vector<int> parts_;
  int num_parts_ = 0;
  Vector part_totals_;
  double c_abar_ = 0.0;
  double c_unit_ = 0.0;
  double c_weighted_ = 0.0;
  double c_partite_ = 0.0;
};

/// Psi(a) = sum_{i<j} a_i a_j.
Weight balanced_product(std::span<const Weight> parts);

struct CompositionMaximum {
  Weight psi = 0;
  std::vector<std::vector<Weight>> maximizers;
};

/// Enumerates every composition of `total` into k nonnegative ordered parts
/// and returns the maximum of Psi with all of its maximizers.
CompositionMaximum max_balanced_product(Weight total, int k);

}  // namespace hgpart
