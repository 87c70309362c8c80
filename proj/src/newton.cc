#include "unit_fibers/newton.h"

namespace unit_fibers {

NewtonResult SolveNewton(const std::function<Vector(const Vector&)>& residual,
                         const std::function<Matrix(const Vector&)>& jacobian,
                         Vector x0, const NewtonOptions& options) {
  NewtonResult result;
  result.x = std::move(x0);
  Vector f = residual(result.x);
  result.residual = f.norm();

  while (result.iterations < options.max_iterations &&
         result.residual >= options.convergence_tolerance) {
    ++result.iterations;
    const Matrix j = jacobian(result.x);
    Eigen::JacobiSVD<Matrix> svd(j, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(GetLinalgConfig().rank_threshold);
    const Vector step = svd.solve(-f);

    double lambda = 1.0;
    bool improved = false;
    for (int h = 0; h <= options.max_halvings; ++h, lambda *= 0.5) {
      const Vector trial = result.x + lambda * step;
      const Vector ft = residual(trial);
      const double rt = ft.norm();
      if (rt < result.residual) {
        result.x = trial;
        f = ft;
        result.residual = rt;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  result.converged = result.residual < options.acceptance_tolerance;
  return result;
}

}  // namespace unit_fibers
