#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hgpart/graph_ops.hpp"

namespace hgpart {

/// Solver parameters. Ranges are checked by validate():
/// 0 < mu1 < mu0 < 1, 0 < delta1 < delta2, eta in (0, 1), p_tilde > 0.
/// delta2 defaults to min(2 delta1, 0.49 (1 - mu0) / alpha1) once the first
/// stepsize alpha1 is known.
struct ApgParams {
  double mu0 = 0.99;
  double mu1 = 0.95;
  double delta1 = 1e-4;
  std::optional<double> delta2;
  double eta = 0.8;
  double p_tilde = 0.1;
  double sigma = 1.0;
  double r = 2.0;
  double tolerance = 1e-3;
  int max_iters = 3000;

  void validate() const;
};

/// n x k matrix whose rows all have unit Euclidean norm.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;

  const Matrix& matrix() const noexcept { return x_; }
  Eigen::Index rows() const noexcept { return x_.rows(); }
  Eigen::Index cols() const noexcept { return x_.cols(); }
  auto row(Eigen::Index i) const { return x_.row(i); }

  friend FeatureMatrix project_rows(Matrix x);

 private:
  explicit FeatureMatrix(Matrix x) : x_(std::move(x)) {}
  Matrix x_;
};

/// Scales every row to unit length; a zero row becomes (1, 0, ..., 0).
FeatureMatrix project_rows(Matrix x);

/// Deterministic quasi-random starting point; distinct streams give
/// distinct matrices.
FeatureMatrix initial_embedding(std::size_t n, std::size_t k, std::uint64_t stream);

/// alpha0 = |X0 - X1| / |grad F(X0) - grad F(X1)| with X1 = Proj(grad F(X0)).
/// Falls back to 1.0 when the denominator vanishes.
double initial_stepsize(const ObjectiveOperator& op, const FeatureMatrix& x0);

struct ApgIteration {
  double objective = 0.0;            // F(X_{k+1})
  double alpha = 0.0;                // alpha_{k+1}
  bool extrapolated = false;         // z accepted
  double candidate_objective = 0.0;  // F(z_{k+1})
  double reference = 0.0;            // c_k
  double error = 0.0;
};

struct ApgResult {
  FeatureMatrix x;
  std::vector<ApgIteration> trace;
  double alpha0 = 0.0;
  double initial_error = 0.0;
  double initial_objective = 0.0;
  bool converged = false;

  std::size_t iterations() const noexcept { return trace.size(); }
};

/// Accelerated proximal gradient with nonmonotone adaptive stepsizes for
/// min F(X) subject to unit-norm rows. Stops when the scaled step plus
/// gradient change drops below the tolerance (max norm) or after max_iters.
/// Throws NumericalError on a non-finite objective or gradient.
ApgResult modapg_solve(const ObjectiveOperator& op, const FeatureMatrix& x0,
                       const ApgParams& params = {});

/// "iter,objective,alpha,branch,error" lines, branch is z or fallback.
std::string trace_csv(const ApgResult& result);

}  // namespace hgpart
