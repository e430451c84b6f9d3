#include "hbem/deform.hpp"

#include <cmath>

namespace hbem {

Eigen::VectorXd ShapeParams::full_knots() const {
  const int n = axial_knots + 2;
  Eigen::VectorXd knots(n);
  for (int i = 0; i < n; ++i)
    knots[i] = axis_begin + (axis_end - axis_begin) * i / (n - 1);
  return knots;
}

void ShapeParams::validate() const {
  if (axial_knots < 1) throw InputError("ShapeParams: axial_knots must be >= 1");
  if (sectors < 1) throw InputError("ShapeParams: sectors must be >= 1");
  if (!(axis_end > axis_begin))
    throw InputError("ShapeParams: axis_end must exceed axis_begin");
  if (std::abs(axis_dir.norm() - 1.0) > 1e-12)
    throw InputError("ShapeParams: axis_dir must be unit length");
  if (values.size() != param_count())
    throw InputError("ShapeParams: expected " + std::to_string(param_count()) +
                     " values, got " + std::to_string(values.size()));
  for (int i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]))
      throw InputError("ShapeParams: non-finite value at index " +
                       std::to_string(i));
    if (values[i] < bound_lo || values[i] > bound_hi)
      throw InputError("ShapeParams: value " + std::to_string(values[i]) +
                       " at index " + std::to_string(i) +
                       " outside clamp bounds");
  }
}

Eigen::VectorXd sector_weights(const ShapeParams& shape, double phi) {
  const int n = shape.sectors;
  Eigen::VectorXd w(n);
  if (n == 1) {
    w[0] = 1.0;
    return w;
  }
  const double kappa = shape.sector_concentration > 0.0
                           ? shape.sector_concentration
                           : 2.0 * n;
  for (int m = 0; m < n; ++m) {
    const double delta = phi - 2.0 * kPi * m / n;
    w[m] = std::exp(kappa * (std::cos(delta) - 1.0));
  }
  w /= w.sum();
  return w;
}

template <class T>
Matrix3X<T> deform_vertices(const Mesh& base, const ShapeParams& shape,
                            const Eigen::Matrix<T, Eigen::Dynamic, 1>& values) {
  if (values.size() != shape.param_count())
    throw InputError("deform_vertices: parameter count mismatch");

  const Eigen::VectorXd knots = shape.full_knots();
  std::vector<CubicSpline<T>> profile;
  profile.reserve(shape.sectors);
  for (int m = 0; m < shape.sectors; ++m) {
    std::vector<T> vals(shape.axial_knots + 2, T(0.0));
    for (int i = 0; i < shape.axial_knots; ++i)
      vals[i + 1] = values[m * shape.axial_knots + i];
    profile.emplace_back(knots, std::move(vals));
  }

  // in-plane basis for azimuth
  const Vec3d axis = shape.axis_dir;
  Vec3d ref = std::abs(axis.z()) < 0.9 ? Vec3d::UnitZ() : Vec3d::UnitX();
  const Vec3d e1 = (ref - ref.dot(axis) * axis).normalized();
  const Vec3d e2 = axis.cross(e1);

  const int nv = base.num_vertices();
  Matrix3X<T> out(3, nv);
  for (int i = 0; i < nv; ++i) {
    const Vec3d p = base.vertices.col(i);
    const Vec3d rel = p - shape.axis_origin;
    const double z = rel.dot(axis);
    const Vec3d radial = rel - z * axis;
    const double rho = radial.norm();
    out.col(i) = p.cast<T>();
    if (rho < 1e-14) continue;  // on-axis vertices have no radial direction
    const Vec3d dir = radial / rho;

    T offset(0.0);
    if (shape.sectors == 1) {
      offset = profile[0](z);
    } else {
      const double phi = std::atan2(radial.dot(e2), radial.dot(e1));
      const Eigen::VectorXd w = sector_weights(shape, phi);
      for (int m = 0; m < shape.sectors; ++m)
        offset += w[m] * profile[m](z);
    }
    out.col(i) += dir.cast<T>() * offset;
  }
  return out;
}

Mesh deform_mesh(const Mesh& base, const ShapeParams& shape) {
  shape.validate();
  Mesh out = base;
  out.vertices = deform_vertices<double>(base, shape, shape.values);
  out.recompute_geometry();  // throws with element index on degeneracy
  return out;
}

template Matrix3X<double> deform_vertices<double>(
    const Mesh&, const ShapeParams&,
    const Eigen::Matrix<double, Eigen::Dynamic, 1>&);
template Matrix3X<Dual> deform_vertices<Dual>(
    const Mesh&, const ShapeParams&,
    const Eigen::Matrix<Dual, Eigen::Dynamic, 1>&);
template Matrix3X<DualT<8>> deform_vertices<DualT<8>>(
    const Mesh&, const ShapeParams&,
    const Eigen::Matrix<DualT<8>, Eigen::Dynamic, 1>&);

}  // namespace hbem
