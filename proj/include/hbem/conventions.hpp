#pragma once

// Sign and phase conventions. Everything that depends on a convention choice
// reads it from here; the Mie validation suite is what pins the set as a
// whole.
//
//   Time dependence      e^{-i omega t}
//   Green's function     G(x,y) = e^{+ik|x-y|} / (4 pi |x-y|)   (outgoing)
//   Surface normal n     outward from the body, into the acoustic domain
//   Momentum relation    grad p = i rho omega u, so dp/dn = i rho omega v_n
//
// Layer operators at a surface or domain point x, density over y in S:
//   S[q](x) = int G(x,y) q(y) dS
//   K[p](x) = int dG(x,y)/dn_y p(y) dS          (double layer)
//   K'[q](x) = int dG(x,y)/dn_x q(y) dS         (adjoint double layer)
//   H[p](x) = d/dn_x int dG(x,y)/dn_y p(y) dS   (hypersingular)
//
// Exterior representation (Green's identity over the exterior domain plus the
// radiation condition, with the incident-field interior identity folded in):
//   p_s(r) = K[p_t](r) - S[dp_t/dn](r),  r exterior.
//
// Taking r to a smooth boundary point (jump +1/2 from the exterior side):
//   (I/2 - K) p_t + S[q] = p_i               -- surface equation (CBIE)
// and of its normal derivative (single-layer jump -q/2 from outside):
//   (I/2 + K') q - H[p_t] = dp_i/dn          -- gradient equation (NDBIE)
// where q = dp_t/dn (zero for rigid scattering, i rho omega v for radiation).
//
// Burton-Miller combines CBIE + eta * NDBIE applied to the unknown p_t:
//   [ (I/2 - K) + eta * (-H) ] p_t = p_i + eta * (dp_i/dn - q/2 - K'[q]) - S[q]
// with coupling eta = i/k (imaginary part nonzero restores uniqueness at the
// interior Dirichlet wavenumbers that break the CBIE alone).

#include <complex>

namespace hbem {

/// Burton-Miller coupling parameter for wavenumber k.
inline std::complex<double> burton_miller_eta(double k) {
  return std::complex<double>(0.0, 1.0 / k);
}

/// Air at 20 C unless the run config overrides.
struct Medium {
  double sound_speed = 343.0;  // m/s
  double density = 1.204;      // kg/m^3
};

}  // namespace hbem
