#pragma once

// Dense collocation assembly of the boundary operator and right-hand side.
// Collocation points are element centroids; the density is piecewise
// constant. Quadrature per source element is selected from the pair
// classification (see mesh.hpp); self terms use the Duffy rule plus the
// closed-form static hypersingular limit (kernels.hpp).

#include <vector>

#include <Eigen/Dense>

#include "hbem/mesh.hpp"
#include "hbem/quadrature.hpp"
#include "hbem/types.hpp"
#include "hbem/wave.hpp"

namespace hbem {

struct OperatorMatrix {
  Eigen::MatrixXcd A;  // (N + chief rows) x N
  Eigen::VectorXcd b;
  double k = 0.0;
  Formulation formulation = Formulation::Conventional;

  int rows() const { return static_cast<int>(A.rows()); }
  int cols() const { return static_cast<int>(A.cols()); }
};

struct AssemblyOptions {
  int threads = 0;          // 0 = hardware concurrency
  int polar_order = 4;      // Duffy order per direction for self terms
  double near_factor = 2.5; // image-term rule selection, matches classify_pairs
  // Overrides for convergence studies; null = defaults per class.
  const QuadratureRule* far_rule = nullptr;
  const QuadratureRule* near_rule = nullptr;
  const QuadratureRule* edge_rule = nullptr;
};

OperatorMatrix assemble(const Mesh& mesh, const WaveConfig& cfg,
                        const AdjacencyTable& classes,
                        const AssemblyOptions& opt = {});

/// Operator and right-hand side tangents along `lanes` shape directions,
/// evaluated by forward-mode re-assembly on dual-valued vertex positions.
/// `vertices` carries the seeds (lane l = direction l); the value parts must
/// equal the deformed geometry the primal operator was assembled on.
struct DirectionalAssembly {
  Eigen::MatrixXcd A;                   // value part (matches assemble())
  Eigen::VectorXcd b;
  std::vector<Eigen::MatrixXcd> A_dot;  // one per lane
  std::vector<Eigen::VectorXcd> b_dot;
};

DirectionalAssembly assemble_directional(const Matrix3X<Dual>& vertices,
                                         const Eigen::Matrix3Xi& elements,
                                         const WaveConfig& cfg,
                                         const AdjacencyTable& classes,
                                         const AssemblyOptions& opt = {});
DirectionalAssembly assemble_directional(const Matrix3X<DualT<8>>& vertices,
                                         const Eigen::Matrix3Xi& elements,
                                         const WaveConfig& cfg,
                                         const AdjacencyTable& classes,
                                         const AssemblyOptions& opt = {},
                                         int lanes = 8);

/// Quadrature class for a collocation point at distance `dist` from a source
/// element; mirrors the REGULAR_NEAR threshold of classify_pairs.
RuleKind rule_for_distance(double dist, double diam_i, double diam_j,
                           double near_factor);

}  // namespace hbem
