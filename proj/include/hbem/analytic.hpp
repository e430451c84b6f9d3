#pragma once

// Closed-form validation oracles, deliberately sharing no code with the BEM
// path: Mie partial-wave series for rigid-sphere scattering, and the
// pulsating-sphere monopole.
//
// Rigid sphere, plane wave of amplitude A incident along direction d
// (e^{-i omega t}, outgoing e^{+ikr}):
//   p_s(r, theta) = -A sum_{n>=0} (2n+1) i^n [j_n'(ka)/h_n'(ka)] h_n(kr)
//                   P_n(cos theta),   theta measured from d.
//
// Pulsating sphere of radius a with uniform radial surface velocity v0:
// p = C e^{ikr}/r with C fixed by dp/dr = i rho omega v0 at r = a
// (grad p = i rho omega u), giving
//   p(r) = i rho omega v0 a^2 e^{ik(r-a)} / (r (ika - 1)).

#include <vector>

#include <Eigen/Dense>

#include "hbem/conventions.hpp"
#include "hbem/types.hpp"

namespace hbem {

struct MieConfig {
  double radius = 1.0;  // a
  double k = 1.0;
  int n_terms = 0;  // series truncation; 0 = ceil(k a) + 10
  Vec3d direction = Vec3d::UnitZ();
  Complex amplitude{1.0, 0.0};

  int effective_terms() const;
  void validate() const;  // n_terms >= ceil(k a) + 10 when explicit
};

/// Scattered pressure at exterior points (|p| > a). Throws NumericalError if
/// the truncated series has not converged to 1e-12 at some point, reporting
/// the truncation required.
Eigen::VectorXcd mie_scattered(const MieConfig& cfg,
                               const std::vector<Vec3d>& points);

/// Radial derivative of the scattered series (for the boundary-condition
/// self-check of the oracle).
Eigen::VectorXcd mie_scattered_dr(const MieConfig& cfg,
                                  const std::vector<Vec3d>& points);

Eigen::VectorXcd pulsating_sphere(double radius, double k, Complex v0,
                                  const std::vector<Vec3d>& points,
                                  const Medium& medium = {});

/// Spherical Bessel j_n (downward recurrence) and y_n (upward) for
/// n = 0..nmax; exposed for the oracle's own stability tests.
void spherical_bessel(int nmax, double x, Eigen::VectorXd& j,
                      Eigen::VectorXd& y);

}  // namespace hbem
