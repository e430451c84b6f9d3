#pragma once

// Boundary-to-domain evaluation of the representation
//   p(r) = K[p_surface](r) - S[q](r),   q = i rho omega v (radiation) or 0.

#include <vector>

#include <Eigen/Dense>

#include "hbem/mesh.hpp"
#include "hbem/types.hpp"
#include "hbem/wave.hpp"

namespace hbem {

struct PotentialOptions {
  int threads = 0;
  double near_factor = 2.5;
  // Points closer than 0.5 * element diameter to some element (degraded
  // accuracy); filled when non-null, evaluation still proceeds.
  std::vector<int>* too_close = nullptr;
};

/// Scattered/radiated pressure at exterior points for boundary solution x.
Eigen::VectorXcd evaluate_potential(const Mesh& mesh, const WaveConfig& cfg,
                                    const Eigen::VectorXcd& x,
                                    const std::vector<Vec3d>& points,
                                    const PotentialOptions& opt = {});

/// Dense evaluation matrix P (points x elements) with p = P x + offset.
Eigen::MatrixXcd potential_matrix(const Mesh& mesh, const WaveConfig& cfg,
                                  const std::vector<Vec3d>& points,
                                  const PotentialOptions& opt = {});

/// The boundary-data-independent part: -S[q] at the points (zero vector for
/// scattering configurations).
Eigen::VectorXcd potential_offset(const Mesh& mesh, const WaveConfig& cfg,
                                  const std::vector<Vec3d>& points,
                                  const PotentialOptions& opt = {});

/// Tangents of (P x + offset) along the seeded lanes, holding x fixed: the
/// explicit shape dependence of the evaluation operator itself.
std::vector<Eigen::VectorXcd> potential_directional(
    const Matrix3X<DualT<8>>& vertices, const Eigen::Matrix3Xi& elements,
    const WaveConfig& cfg, const Eigen::VectorXcd& x,
    const std::vector<Vec3d>& points, int lanes,
    const PotentialOptions& opt = {});

/// q = i rho omega v per element (zero for scattering).
Eigen::VectorXcd boundary_flux(const WaveConfig& cfg, int num_elements);

}  // namespace hbem
