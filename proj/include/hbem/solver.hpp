#pragma once

// Restarted GMRES for the dense primal and adjoint systems. Modified
// Gram-Schmidt with one reorthogonalization pass; deterministic for fixed
// inputs. CHIEF (rectangular) operators are solved through the normal
// equations.

#include <optional>

#include <Eigen/Dense>

#include "hbem/assembly.hpp"
#include "hbem/types.hpp"

namespace hbem {

struct SolveConfig {
  double tol = 1e-8;   // relative residual target
  int restart = 80;
  int max_iters = 2000;
  std::optional<Eigen::VectorXcd> warm_start;
  bool diag_precondition = false;  // left Jacobi, square systems only

  void validate() const {
    if (!(tol > 0.0 && tol < 1.0))
      throw InputError("SolveConfig: tol must be in (0, 1)");
    if (restart < 1) throw InputError("SolveConfig: restart must be >= 1");
    if (max_iters < 1) throw InputError("SolveConfig: max_iters must be >= 1");
  }
};

struct BoundarySolution {
  Eigen::VectorXcd x;
  double residual_norm = 0.0;  // relative, of the system actually solved
  int iterations = 0;
};

/// Non-convergence carries the best iterate; callers decide whether a
/// degraded solution is usable (it never is inside optimization runs).
class SolveFailure : public NumericalError {
 public:
  SolveFailure(std::string what, Eigen::VectorXcd best, double residual,
               int iterations)
      : NumericalError(std::move(what)),
        best_iterate(std::move(best)),
        residual(residual),
        iterations(iterations) {}

  Eigen::VectorXcd best_iterate;
  double residual;
  int iterations;
};

BoundarySolution gmres_solve(const Eigen::MatrixXcd& A,
                             const Eigen::VectorXcd& b,
                             const SolveConfig& cfg = {});

/// Dispatches on shape: square -> plain GMRES, rectangular (CHIEF) -> normal
/// equations A^H A x = A^H b.
BoundarySolution gmres_solve(const OperatorMatrix& op,
                             const SolveConfig& cfg = {});

/// Solves A^H lambda = g without materializing the conjugate transpose.
BoundarySolution adjoint_solve(const Eigen::MatrixXcd& A,
                               const Eigen::VectorXcd& g,
                               const SolveConfig& cfg = {});

}  // namespace hbem
