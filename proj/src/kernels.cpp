#include "hbem/kernels.hpp"

namespace hbem {

namespace {
constexpr double kMinSeparation = 1e-300;
}

Complex greens(const Vec3d& r, const Vec3d& rp, double k) {
  const double d = (r - rp).norm();
  if (d < kMinSeparation) throw InputError("greens: coincident points");
  return std::exp(Complex(0.0, k * d)) / (kFourPi * d);
}

Complex greens_dn(const Vec3d& r, const Vec3d& rp, const Vec3d& np, double k) {
  const double d = (r - rp).norm();
  if (d < kMinSeparation) throw InputError("greens_dn: coincident points");
  const double cos_n = (rp - r).dot(np) / d;
  const Complex g = std::exp(Complex(0.0, k * d)) / (kFourPi * d);
  return Complex(-1.0 / d, k) * g * cos_n;
}

}  // namespace hbem
