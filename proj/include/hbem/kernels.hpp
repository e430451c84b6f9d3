#pragma once

// Helmholtz kernels (see conventions.hpp for the sign conventions), generic
// over the real scalar so assembly can carry shape tangents.

#include <cmath>

#include "hbem/cplx.hpp"
#include "hbem/dual.hpp"
#include "hbem/types.hpp"

namespace hbem {

/// e^{ikd}/(4 pi d) with d = |r - rp|. Throws on coincident points.
Complex greens(const Vec3d& r, const Vec3d& rp, double k);

/// Analytic normal derivative of greens with respect to the source point:
/// dG/dn' = (ik - 1/d) G (dhat . n'), dhat = (rp - r)/d.
Complex greens_dn(const Vec3d& r, const Vec3d& rp, const Vec3d& np, double k);

/// All kernels of one (collocation x, source y) interaction, sharing the
/// distance and phase computation.
template <class T>
struct KernelSet {
  Cplx<T> single;     // G
  Cplx<T> double_;    // dG/dn_y
  Cplx<T> adjoint;    // dG/dn_x
  Cplx<T> hyper;      // d^2 G / dn_x dn_y
};

template <class T>
inline KernelSet<T> helmholtz_kernels(const Vec3<T>& x, const Vec3<T>& nx,
                                      const Vec3<T>& y, const Vec3<T>& ny,
                                      double k) {
  using std::sqrt;
  const Vec3<T> diff = y - x;
  const T d2 = diff.dot(diff);
  const T d = sqrt(d2);
  const T inv_d = 1.0 / d;

  const Cplx<T> phase = unit_phase(T(k * d));
  const Cplx<T> g = (inv_d * (1.0 / kFourPi)) * phase;

  // G'(d) = (ik - 1/d) G;  G''(d) = (ik - 1/d)^2 G + G / d^2
  const Cplx<T> ik_m = Cplx<T>(-inv_d, T(k));
  const Cplx<T> gp = ik_m * g;
  const Cplx<T> gpp = ik_m * gp + (inv_d * inv_d) * g;

  const T cos_y = diff.dot(ny) * inv_d;   // dhat . n_y
  const T cos_x = diff.dot(nx) * inv_d;   // dhat . n_x
  const T nn = nx.dot(ny);

  KernelSet<T> ks;
  ks.single = g;
  ks.double_ = cos_y * gp;
  ks.adjoint = (-cos_x) * gp;
  // d/dn_x [G'(d) (dhat.n_y)] with grad_x d = -dhat:
  ks.hyper = (-cos_x * cos_y) * gpp - ((nn - cos_x * cos_y) * inv_d) * gp;
  return ks;
}

/// Regularized hypersingular self-interaction integrand: the static part is
/// integrated in closed form (flat_hyper_static below); this is the smooth
/// remainder [(1 - ikd) e^{ikd} - 1] / (4 pi d^3) restricted to the element
/// plane, with a series branch for small kd to avoid cancellation.
template <class T>
inline Cplx<T> hyper_difference_kernel(const Vec3<T>& x, const Vec3<T>& y,
                                       double k) {
  using std::sqrt;
  const Vec3<T> diff = y - x;
  const T d = sqrt(diff.dot(diff));
  const T kd = k * d;
  Cplx<T> num;  // (1 - ikd) e^{ikd} - 1
  if (value(kd) < 0.5) {
    // -(sum_{m>=2} u^m (m-1)/m!), u = ikd
    const Cplx<T> u(T(0.0), kd);
    Cplx<T> upow = u * u;
    Cplx<T> acc;
    double fact = 2.0;  // m!
    for (int m = 2; m <= 14; ++m) {
      acc += ((m - 1.0) / fact) * upow;
      upow *= u;
      fact *= m + 1;
    }
    num = -acc;
  } else {
    const Cplx<T> e = unit_phase(kd);
    num = Cplx<T>(T(1.0), -kd) * e - Cplx<T>(T(1.0), T(0.0));
  }
  const T inv_d = 1.0 / d;
  return (inv_d * inv_d * inv_d * (1.0 / kFourPi)) * num;
}

/// Exact exterior-limit normal derivative of the static double-layer
/// potential of a flat triangle with unit density, at interior point x:
/// -(1/4pi) * integral over directions of 1/R(theta), per-edge closed form.
template <class T>
inline T flat_hyper_static(const Vec3<T>& x, const Vec3<T>& a, const Vec3<T>& b,
                           const Vec3<T>& c, const Vec3<T>& normal) {
  using std::sqrt;
  T total(0.0);
  const Vec3<T>* v[4] = {&a, &b, &c, &a};
  for (int e = 0; e < 3; ++e) {
    const Vec3<T> p = *v[e] - x;
    const Vec3<T> q = *v[e + 1] - x;
    // in-plane wedge from x subtending edge (p, q):
    // integral of dtheta / R(theta) = (sin(beta) - sin(alpha)) / h
    const Vec3<T> edge = q - p;
    const T edge_len = sqrt(edge.dot(edge));
    const Vec3<T> tdir = edge / edge_len;
    const T s0 = p.dot(tdir);                  // signed foot offsets
    const T s1 = q.dot(tdir);
    const Vec3<T> foot = p - s0 * tdir;       // perpendicular from x to edge line
    const T h = sqrt(foot.dot(foot));
    // sin of angle between perpendicular and the rays to p, q
    const T sin0 = s0 / sqrt(s0 * s0 + h * h);
    const T sin1 = s1 / sqrt(s1 * s1 + h * h);
    total += (sin1 - sin0) / h;
  }
  (void)normal;
  return T(-1.0 / kFourPi) * total;
}

/// Plane wave p(r) = amplitude * e^{ik d.r} with its normal derivative.
struct PlaneWave {
  Vec3d direction = Vec3d::UnitZ();  // unit propagation direction
  Complex amplitude = Complex(1.0, 0.0);

  template <class T>
  Cplx<T> value_at(const Vec3<T>& r, double k) const {
    const T phase = k * direction.cast<T>().dot(r);
    return Cplx<T>(amplitude) * unit_phase(phase);
  }

  template <class T>
  Cplx<T> normal_derivative(const Vec3<T>& r, const Vec3<T>& n, double k) const {
    const T dn = direction.cast<T>().dot(n);
    const Cplx<T> ikdn(T(0.0), k * dn);
    return ikdn * value_at(r, k);
  }
};

}  // namespace hbem
