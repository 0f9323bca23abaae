#include "hgpart/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hgpart/error.hpp"

namespace hgpart {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

void require_finite(double value, const char* what) {
  if (!std::isfinite(value)) throw NumericalError(std::string("non-finite ") + what);
}

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) throw NumericalError(std::string("non-finite ") + what);
}

}  // namespace

void ApgParams::validate() const {
  if (!(0.0 < mu1 && mu1 < mu0 && mu0 < 1.0)) throw InvalidArgument("need 0 < mu1 < mu0 < 1");
  if (!(delta1 > 0.0)) throw InvalidArgument("delta1 must be positive");
  if (delta2 && !(*delta2 > delta1)) throw InvalidArgument("need delta1 < delta2");
  if (!(eta > 0.0 && eta < 1.0)) throw InvalidArgument("eta must lie in (0, 1)");
  if (!(p_tilde > 0.0)) throw InvalidArgument("p_tilde must be positive");
  if (!(sigma >= 0.0) || !(r >= 0.0)) throw InvalidArgument("sigma and r must be nonnegative");
  if (!(tolerance > 0.0)) throw InvalidArgument("tolerance must be positive");
  if (max_iters < 0) throw InvalidArgument("max_iters must be nonnegative");
}

FeatureMatrix project_rows(Matrix x) {
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double norm = x.row(i).norm();
    if (norm == 0.0 || !std::isfinite(norm)) {
      x.row(i).setZero();
      if (x.cols() > 0) x(i, 0) = 1.0;
    } else {
      x.row(i) /= norm;
    }
  }
  return FeatureMatrix(std::move(x));
}

FeatureMatrix initial_embedding(std::size_t n, std::size_t k, std::uint64_t stream) {
  Matrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
  const std::uint64_t base = splitmix64(stream ^ 0x5851f42d4c957f2dULL);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t row_seed = splitmix64(base + i);
    for (std::size_t j = 0; j < k; ++j) {
      const std::uint64_t bits = splitmix64(row_seed + j);
      const double unit = static_cast<double>(bits >> 11) * 0x1.0p-53;
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 2.0 * unit - 1.0;
    }
  }
  return project_rows(std::move(x));
}

double initial_stepsize(const ObjectiveOperator& op, const FeatureMatrix& x0) {
  const Matrix g0 = op.gradient(x0.matrix());
  const FeatureMatrix x1 = project_rows(g0);
  const Matrix g1 = op.gradient(x1.matrix());
  const double numerator = (x0.matrix() - x1.matrix()).norm();
  const double denominator = (g0 - g1).norm();
  if (!(denominator > 0.0) || !std::isfinite(denominator) || !(numerator > 0.0)) return 1.0;
  const double alpha = numerator / denominator;
  return std::isfinite(alpha) ? alpha : 1.0;
}

ApgResult modapg_solve(const ObjectiveOperator& op, const FeatureMatrix& x0,
                       const ApgParams& params) {
  params.validate();
  if (static_cast<std::size_t>(x0.rows()) != op.size()) {
    throw InvalidArgument("starting point does not match the operator size");
  }

  ApgResult result;
  Matrix x = x0.matrix();
  Matrix grad_x;
  double f_x = op.value_and_gradient(x, grad_x);
  require_finite(f_x, "objective");
  require_finite(grad_x, "gradient");
  result.initial_objective = f_x;

  double alpha = initial_stepsize(op, x0);
  result.alpha0 = alpha;

  // Termination test at k = 0 uses the plain projected step with alpha0.
  {
    const Matrix probe = project_rows(x - alpha * grad_x).matrix();
    const Matrix grad_probe = op.gradient(probe);
    result.initial_error = max_abs((probe - x) / alpha + (grad_probe - grad_x));
  }
  if (result.initial_error <= params.tolerance || params.max_iters == 0) {
    result.x = x0;
    result.converged = result.initial_error <= params.tolerance;
    return result;
  }

  Matrix x_prev = x;
  Matrix grad_prev = grad_x;
  double f_prev = f_x;
  double c = f_x;
  double q = 1.0;
  double delta1 = params.delta1;
  double delta2 = params.delta2.value_or(0.0);
  bool delta2_frozen = params.delta2.has_value();

  Matrix grad_y, grad_z, grad_next;
  for (int k = 0; k < params.max_iters; ++k) {
    const double kk = static_cast<double>(k + 1);
    const Matrix step = x - x_prev;
    const double step_sq = step.squaredNorm();
    const double curvature = 2.0 * (f_x - f_prev - (grad_prev.array() * step.array()).sum());
    double alpha_next;
    if (curvature > params.mu0 / alpha * step_sq) {
      alpha_next = params.mu1 * step_sq / curvature;
    } else {
      alpha_next = alpha + std::min(1.0, alpha) / std::pow(kk, 1.0 + params.p_tilde);
    }
    if (!delta2_frozen) {
      delta2 = std::min(2.0 * delta1, 0.49 * (1.0 - params.mu0) / alpha_next);
      if (!(delta1 < delta2)) delta1 = 0.5 * delta2;
      delta2_frozen = true;
    }

    const double beta = static_cast<double>(k) / static_cast<double>(k + 3);
    const Matrix y = x + beta * step;
    // The gradient is linear in X, so grad F(y) follows from the last two.
    grad_y = grad_x + beta * (grad_x - grad_prev);
    require_finite(grad_y, "gradient");
    const Matrix z = project_rows(y - alpha_next * grad_y).matrix();
    const double f_z = op.value_and_gradient(z, grad_z);
    require_finite(f_z, "objective");

    const double zy = (z - y).squaredNorm();
    const double zx = (z - x).squaredNorm();
    const double yx = (y - x).squaredNorm();
    const double phi1 = zy + zx - (1.0 + params.sigma / std::pow(kk, params.r)) * yx;
    const double phi2 = delta1 * zx - delta2 * (zy + zx - yx);

    ApgIteration it;
    it.alpha = alpha_next;
    it.reference = c;
    it.candidate_objective = f_z;

    Matrix x_next;
    double f_next;
    if (phi1 >= 0.0 && f_z <= std::min(f_x + phi2, c)) {
      x_next = z;
      f_next = f_z;
      grad_next = grad_z;
      it.extrapolated = true;
    } else {
      x_next = project_rows(x - alpha_next * grad_x).matrix();
      f_next = op.value_and_gradient(x_next, grad_next);
      require_finite(f_next, "objective");
    }
    require_finite(grad_next, "gradient");

    const double q_next = 1.0 + params.eta * q;
    c = (params.eta * q * c + f_next) / q_next;
    q = q_next;

    it.objective = f_next;
    it.error = max_abs((x_next - x) / alpha_next + (grad_next - grad_x));
    result.trace.push_back(it);

    x_prev = std::move(x);
    grad_prev = std::move(grad_x);
    f_prev = f_x;
    x = std::move(x_next);
    grad_x = grad_next;
    f_x = f_next;
    alpha = alpha_next;

    if (it.error <= params.tolerance) {
      result.converged = true;
      break;
    }
  }
  result.x = project_rows(std::move(x));
  return result;
}

std::string trace_csv(const ApgResult& result) {
  std::ostringstream out;
  out.precision(17);
  out << "iter,objective,alpha,branch,error\n";
  for (std::size_t i = 0; i < result.trace.size(); ++i) {
    const auto& it = result.trace[i];
    out << i + 1 << ',' << it.objective << ',' << it.alpha << ','
        << (it.extrapolated ? "z" : "fallback") << ',' << it.error << '\n';
  }
  return out.str();
}

}  // namespace hgpart
