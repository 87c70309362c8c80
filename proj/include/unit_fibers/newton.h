#ifndef UNIT_FIBERS_NEWTON_H_
#define UNIT_FIBERS_NEWTON_H_

#include <functional>

#include "unit_fibers/linalg.h"

namespace unit_fibers {

struct NewtonOptions {
  int max_iterations = 50;
  // Stop iterating once the residual norm drops below this.
  double convergence_tolerance = 1e-12;
  // A run that ends below this counts as converged.
  double acceptance_tolerance = 1e-10;
  // Step halvings tried before giving up on an iteration.
  int max_halvings = 40;
};

struct NewtonResult {
  Vector x;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Damped Newton iteration for a square (or least-squares) system F(x) = 0.
// The step solves J dx = -F in the least-squares sense, so a singular
// Jacobian does not abort the run; the step length is halved until the
// residual norm decreases.
NewtonResult SolveNewton(const std::function<Vector(const Vector&)>& residual,
                         const std::function<Matrix(const Vector&)>& jacobian,
                         Vector x0, const NewtonOptions& options = {});

}  // namespace unit_fibers

#endif  // UNIT_FIBERS_NEWTON_H_
