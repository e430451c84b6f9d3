#pragma once

#include <complex>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "hbem/conventions.hpp"
#include "hbem/kernels.hpp"
#include "hbem/types.hpp"

namespace hbem {

enum class Formulation : int {
  Conventional,  // I/2 - K collocation; breaks down at interior resonances
  BurtonMiller,  // CBIE + eta * NDBIE; resonance-free
  Chief,         // CBIE + interior collocation rows, least-squares solve
};

/// Mirror symmetry through rigid planes; sources get same-sign images.
enum class Symmetry : int {
  None,
  QuadrantXZ_YZ,  // planes x = 0 and y = 0 (4 images including identity)
};

/// Scattering of a given incident field by a rigid (sound-hard) body.
struct RigidScattering {
  PlaneWave incident;
};

/// Radiation from a vibrating surface: prescribed outward normal velocity
/// per element (m/s), q = dp/dn = i rho omega v.
struct NeumannRadiation {
  Eigen::VectorXcd velocity;
};

using BoundaryCondition = std::variant<RigidScattering, NeumannRadiation>;

struct WaveConfig {
  double k = 1.0;  // rad/m
  Formulation formulation = Formulation::BurtonMiller;
  Complex eta{0.0, 0.0};  // Burton-Miller coupling; 0 = default i/k
  std::vector<Vec3d> chief_points;
  BoundaryCondition bc = RigidScattering{};
  Medium medium;
  Symmetry symmetry = Symmetry::None;

  Complex coupling() const { return eta == Complex(0.0, 0.0) ? burton_miller_eta(k) : eta; }
  double omega() const { return k * medium.sound_speed; }

  void validate(int num_elements) const;
};

/// Reflection matrices (diagonal sign flips) for the active symmetry;
/// index 0 is the identity.
std::vector<Vec3d> symmetry_signs(Symmetry s);

}  // namespace hbem
