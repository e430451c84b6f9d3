#pragma once

// Spline-based radial deformation of a base mesh. Each vertex is displaced
// away from the profile axis by a clamped cubic spline of its axial
// coordinate; with several azimuthal sectors the per-sector profiles are
// blended by a smooth periodic partition of unity. Axial coordinate, radial
// direction and sector weights come from the *base* mesh, so the displaced
// position is linear in the control values and the whole map is C^1 in them.
// Topology never changes.

#include <vector>

#include <Eigen/Dense>

#include "hbem/mesh.hpp"
#include "hbem/spline.hpp"
#include "hbem/types.hpp"

namespace hbem {

struct ShapeParams {
  Eigen::VectorXd values;  // control offsets, sector-major, P = axial_knots*sectors

  int axial_knots = 4;  // free interior knots; profile ends are pinned to zero
  int sectors = 1;
  Vec3d axis_origin = Vec3d::Zero();
  Vec3d axis_dir = Vec3d::UnitZ();
  double axis_begin = 0.0;
  double axis_end = 1.0;
  double bound_lo = -1.0;  // clamp bounds on control values (m)
  double bound_hi = 1.0;
  double sector_concentration = 0.0;  // von Mises kappa; 0 = auto (2*sectors)

  int param_count() const { return axial_knots * sectors; }

  /// Full knot vector including the pinned zero-offset endpoints.
  Eigen::VectorXd full_knots() const;

  /// Throws InputError on size mismatch, non-finite or out-of-bound values.
  void validate() const;
};

/// Displaced vertex positions; `values` seeds may carry tangents.
template <class T>
Matrix3X<T> deform_vertices(const Mesh& base, const ShapeParams& shape,
                            const Eigen::Matrix<T, Eigen::Dynamic, 1>& values);

/// Deforms and revalidates geometry. Degenerate elements are reported with
/// their index via NumericalError.
Mesh deform_mesh(const Mesh& base, const ShapeParams& shape);

/// Smooth periodic sector weights at azimuth phi (radians); length = sectors.
Eigen::VectorXd sector_weights(const ShapeParams& shape, double phi);

}  // namespace hbem
