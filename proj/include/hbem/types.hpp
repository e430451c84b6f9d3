#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace hbem {

using Real = double;
using Complex = std::complex<double>;

template <class T>
using Vec3 = Eigen::Matrix<T, 3, 1>;
using Vec3d = Eigen::Vector3d;
using Vec3i = Eigen::Vector3i;

template <class T>
using Matrix3X = Eigen::Matrix<T, 3, Eigen::Dynamic>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kFourPi = 4.0 * kPi;

/// Numerical failure (solver breakdown, degenerate geometry, non-finite data).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input: files, configs, out-of-contract arguments.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

}  // namespace hbem
