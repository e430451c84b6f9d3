#pragma once

// Quadrature rules on the reference triangle, in barycentric coordinates.
// Weights are normalized to sum to 1: integral over a physical triangle is
// area * sum(w_q * f(point_q)).

#include <Eigen/Dense>

#include "hbem/types.hpp"

namespace hbem {

enum class RuleKind : int {
  GaussLow,        // 3-point, degree 2; well-separated pairs
  GaussHigh,       // 12-point, degree 6; near and vertex-adjacent pairs
  SubdividedNear,  // 4-way midpoint split x GaussHigh; edge-adjacent pairs
  PolarSingular,   // Duffy split at the centroid; 1/r singular self terms
};

struct QuadratureRule {
  RuleKind kind;
  Eigen::MatrixX3d bary;  // rows: barycentric points
  Eigen::VectorXd weights;

  int size() const { return static_cast<int>(weights.size()); }
};

const QuadratureRule& gauss_low();
const QuadratureRule& gauss_high();
const QuadratureRule& subdivided_near();

/// Duffy-transformed rule with the singular point at the centroid;
/// `order` is the 1D Gauss order per direction (3 subtriangles, order^2 each).
QuadratureRule polar_singular(int order);
const QuadratureRule& polar_singular_default();  // order 4

/// Gauss-Legendre nodes/weights on [0,1].
void gauss_legendre_01(int n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights);

/// Rule lookup used by the assembler.
const QuadratureRule& rule_for(RuleKind kind);

}  // namespace hbem
