#include "hbem/solver.hpp"

#include <cmath>

namespace hbem {

namespace {

// GMRES(m) on a generic operator application. Complex Givens rotations with
// real cosines: [c, s; -conj(s), c] applied to [f; g] zeroes g.
template <class Apply>
BoundarySolution gmres_impl(int n, const Apply& apply,
                            const Eigen::VectorXcd& b, const SolveConfig& cfg) {
  cfg.validate();
  const double bnorm = b.norm();
  if (bnorm == 0.0) return {Eigen::VectorXcd::Zero(n), 0.0, 0};

  Eigen::VectorXcd x = cfg.warm_start && cfg.warm_start->size() == n
                           ? *cfg.warm_start
                           : Eigen::VectorXcd::Zero(n);
  Eigen::VectorXcd r = b - apply(x);
  double rnorm = r.norm();
  int total_iters = 0;

  const int m = cfg.restart;
  Eigen::MatrixXcd V(n, m + 1);
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(m + 1, m);
  Eigen::VectorXd cs = Eigen::VectorXd::Zero(m);
  Eigen::VectorXcd sn = Eigen::VectorXcd::Zero(m);
  Eigen::VectorXcd g(m + 1);

  while (rnorm / bnorm > cfg.tol && total_iters < cfg.max_iters) {
    V.col(0) = r / rnorm;
    g.setZero();
    g[0] = rnorm;
    int k = 0;
    bool breakdown = false;
    while (k < m && total_iters < cfg.max_iters) {
      Eigen::VectorXcd w = apply(V.col(k));
      // MGS with one reorthogonalization pass
      for (int pass = 0; pass < 2; ++pass) {
        for (int i = 0; i <= k; ++i) {
          const Complex h = V.col(i).dot(w);
          w -= h * V.col(i);
          H(i, k) += h;
        }
      }
      const double wnorm = w.norm();
      H(k + 1, k) = wnorm;
      breakdown = wnorm < 1e-300;
      if (!breakdown) V.col(k + 1) = w / wnorm;

      for (int i = 0; i < k; ++i) {
        const Complex t = cs[i] * H(i, k) + sn[i] * H(i + 1, k);
        H(i + 1, k) = -std::conj(sn[i]) * H(i, k) + cs[i] * H(i + 1, k);
        H(i, k) = t;
      }
      const Complex f = H(k, k);
      const double gg = wnorm == 0.0 ? 0.0 : std::abs(H(k + 1, k));
      if (gg == 0.0) {
        cs[k] = 1.0;
        sn[k] = Complex(0.0, 0.0);
      } else if (f == Complex(0.0, 0.0)) {
        cs[k] = 0.0;
        sn[k] = std::conj(H(k + 1, k)) / gg;
        H(k, k) = gg;
      } else {
        const double af = std::abs(f);
        const double t = std::sqrt(af * af + gg * gg);
        const Complex fu = f / af;
        cs[k] = af / t;
        sn[k] = fu * std::conj(H(k + 1, k)) / t;
        H(k, k) = fu * t;
      }
      H(k + 1, k) = Complex(0.0, 0.0);
      g[k + 1] = -std::conj(sn[k]) * g[k];
      g[k] = cs[k] * g[k];

      ++k;
      ++total_iters;
      if (std::abs(g[k]) / bnorm <= cfg.tol || breakdown) break;
    }
    Eigen::VectorXcd y = H.topLeftCorner(k, k)
                             .triangularView<Eigen::Upper>()
                             .solve(g.head(k));
    x += V.leftCols(k) * y;
    r = b - apply(x);
    rnorm = r.norm();
    H.setZero();
    if (breakdown && rnorm / bnorm > cfg.tol)
      throw SolveFailure("gmres: breakdown before convergence (rel " +
                             std::to_string(rnorm / bnorm) + ")",
                         x, rnorm / bnorm, total_iters);
  }

  if (rnorm / bnorm > cfg.tol)
    throw SolveFailure("gmres: no convergence after " +
                           std::to_string(total_iters) + " iterations (rel " +
                           std::to_string(rnorm / bnorm) + ")",
                       x, rnorm / bnorm, total_iters);
  return {std::move(x), rnorm / bnorm, total_iters};
}

}  // namespace

BoundarySolution gmres_solve(const Eigen::MatrixXcd& A,
                             const Eigen::VectorXcd& b,
                             const SolveConfig& cfg) {
  if (A.rows() != A.cols() || A.rows() != b.size())
    throw InputError("gmres_solve: dimension mismatch");
  const int n = static_cast<int>(A.cols());
  if (cfg.diag_precondition) {
    const Eigen::VectorXcd d = A.diagonal();
    for (int i = 0; i < n; ++i)
      if (std::abs(d[i]) < 1e-300)
        throw NumericalError("gmres_solve: zero diagonal, cannot precondition");
    const Eigen::VectorXcd dinv = d.cwiseInverse();
    SolveConfig inner = cfg;
    inner.diag_precondition = false;
    auto apply = [&](const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
      return dinv.asDiagonal() * (A * v);
    };
    return gmres_impl(n, apply, dinv.asDiagonal() * b, inner);
  }
  auto apply = [&](const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
    return A * v;
  };
  return gmres_impl(n, apply, b, cfg);
}

BoundarySolution gmres_solve(const OperatorMatrix& op, const SolveConfig& cfg) {
  if (op.rows() == op.cols()) return gmres_solve(op.A, op.b, cfg);
  // CHIEF least squares via the normal equations
  auto apply = [&](const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
    return op.A.adjoint() * (op.A * v);
  };
  const Eigen::VectorXcd rhs = op.A.adjoint() * op.b;
  SolveConfig inner = cfg;
  inner.diag_precondition = false;
  return gmres_impl(static_cast<int>(op.cols()), apply, rhs, inner);
}

BoundarySolution adjoint_solve(const Eigen::MatrixXcd& A,
                               const Eigen::VectorXcd& g,
                               const SolveConfig& cfg) {
  if (A.rows() != A.cols() || A.rows() != g.size())
    throw InputError("adjoint_solve: dimension mismatch");
  auto apply = [&](const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
    return A.adjoint() * v;  // expression, never materialized
  };
  return gmres_impl(static_cast<int>(A.cols()), apply, g, cfg);
}

}  // namespace hbem
