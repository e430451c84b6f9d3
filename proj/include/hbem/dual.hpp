#pragma once

// Forward-mode scalar with W tangent lanes. Geometry and operator assembly are
// templated on the scalar type; instantiating them with DualT<W> yields exact
// directional derivatives along up to W shape directions in a single pass.

#include <array>
#include <cmath>

#include <Eigen/Core>

namespace hbem {

template <int W>
struct DualT {
  double val = 0.0;
  std::array<double, W> dot{};

  DualT() = default;
  DualT(double v) : val(v) {}  // NOLINT: implicit, constants promote silently
  DualT(double v, const std::array<double, W>& d) : val(v), dot(d) {}

  static DualT seeded(double v, int lane, double tangent = 1.0) {
    DualT x(v);
    x.dot[lane] = tangent;
    return x;
  }

  DualT& operator+=(const DualT& o) {
    val += o.val;
    for (int i = 0; i < W; ++i) dot[i] += o.dot[i];
    return *this;
  }
  DualT& operator-=(const DualT& o) {
    val -= o.val;
    for (int i = 0; i < W; ++i) dot[i] -= o.dot[i];
    return *this;
  }
  DualT& operator*=(const DualT& o) {
    for (int i = 0; i < W; ++i) dot[i] = dot[i] * o.val + val * o.dot[i];
    val *= o.val;
    return *this;
  }
  DualT& operator/=(const DualT& o) {
    const double inv = 1.0 / o.val;
    for (int i = 0; i < W; ++i) dot[i] = (dot[i] - val * inv * o.dot[i]) * inv;
    val *= inv;
    return *this;
  }
};

template <int W>
inline DualT<W> operator+(DualT<W> a, const DualT<W>& b) { return a += b; }
template <int W>
inline DualT<W> operator-(DualT<W> a, const DualT<W>& b) { return a -= b; }
template <int W>
inline DualT<W> operator*(DualT<W> a, const DualT<W>& b) { return a *= b; }
template <int W>
inline DualT<W> operator/(DualT<W> a, const DualT<W>& b) { return a /= b; }

template <int W>
inline DualT<W> operator-(const DualT<W>& a) {
  DualT<W> r(-a.val);
  for (int i = 0; i < W; ++i) r.dot[i] = -a.dot[i];
  return r;
}
template <int W>
inline DualT<W> operator+(const DualT<W>& a) { return a; }

// double interop
template <int W>
inline DualT<W> operator+(double a, const DualT<W>& b) { return DualT<W>(a) + b; }
template <int W>
inline DualT<W> operator+(const DualT<W>& a, double b) { return a + DualT<W>(b); }
template <int W>
inline DualT<W> operator-(double a, const DualT<W>& b) { return DualT<W>(a) - b; }
template <int W>
inline DualT<W> operator-(const DualT<W>& a, double b) { return a - DualT<W>(b); }
template <int W>
inline DualT<W> operator*(double a, DualT<W> b) {
  b.val *= a;
  for (int i = 0; i < W; ++i) b.dot[i] *= a;
  return b;
}
template <int W>
inline DualT<W> operator*(const DualT<W>& a, double b) { return b * a; }
template <int W>
inline DualT<W> operator/(const DualT<W>& a, double b) { return a * (1.0 / b); }
template <int W>
inline DualT<W> operator/(double a, const DualT<W>& b) { return DualT<W>(a) / b; }

template <int W>
inline bool operator<(const DualT<W>& a, const DualT<W>& b) { return a.val < b.val; }
template <int W>
inline bool operator>(const DualT<W>& a, const DualT<W>& b) { return a.val > b.val; }
template <int W>
inline bool operator<=(const DualT<W>& a, const DualT<W>& b) { return a.val <= b.val; }
template <int W>
inline bool operator>=(const DualT<W>& a, const DualT<W>& b) { return a.val >= b.val; }
template <int W>
inline bool operator==(const DualT<W>& a, const DualT<W>& b) { return a.val == b.val; }
template <int W>
inline bool operator!=(const DualT<W>& a, const DualT<W>& b) { return a.val != b.val; }

template <int W>
inline DualT<W> sqrt(const DualT<W>& a) {
  const double s = std::sqrt(a.val);
  DualT<W> r(s);
  const double g = 0.5 / s;
  for (int i = 0; i < W; ++i) r.dot[i] = a.dot[i] * g;
  return r;
}
template <int W>
inline DualT<W> sin(const DualT<W>& a) {
  DualT<W> r(std::sin(a.val));
  const double g = std::cos(a.val);
  for (int i = 0; i < W; ++i) r.dot[i] = a.dot[i] * g;
  return r;
}
template <int W>
inline DualT<W> cos(const DualT<W>& a) {
  DualT<W> r(std::cos(a.val));
  const double g = -std::sin(a.val);
  for (int i = 0; i < W; ++i) r.dot[i] = a.dot[i] * g;
  return r;
}
template <int W>
inline DualT<W> exp(const DualT<W>& a) {
  const double e = std::exp(a.val);
  DualT<W> r(e);
  for (int i = 0; i < W; ++i) r.dot[i] = a.dot[i] * e;
  return r;
}
template <int W>
inline DualT<W> abs(const DualT<W>& a) { return a.val < 0.0 ? -a : a; }

template <int W>
inline bool isfinite(const DualT<W>& a) {
  if (!std::isfinite(a.val)) return false;
  for (int i = 0; i < W; ++i)
    if (!std::isfinite(a.dot[i])) return false;
  return true;
}

// scalar value/tangent accessors, usable in code generic over double and DualT
inline double value(double x) { return x; }
template <int W>
inline double value(const DualT<W>& x) { return x.val; }
template <int W>
inline double tangent(const DualT<W>& x, int lane) { return x.dot[lane]; }
inline double tangent(double, int) { return 0.0; }

template <class T>
struct ScalarTraits {
  static constexpr bool is_dual = false;
  static constexpr int width = 0;
};
template <int W>
struct ScalarTraits<DualT<W>> {
  static constexpr bool is_dual = true;
  static constexpr int width = W;
};

using Dual = DualT<1>;

}  // namespace hbem

namespace Eigen {

template <int W>
struct NumTraits<hbem::DualT<W>> {
  using Self = hbem::DualT<W>;
  using Real = Self;
  using NonInteger = Self;
  using Nested = Self;
  using Literal = double;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1 + W,
    AddCost = 1 + W,
    MulCost = 2 + 2 * W
  };
  static Self epsilon() { return Self(NumTraits<double>::epsilon()); }
  static Self dummy_precision() { return Self(NumTraits<double>::dummy_precision()); }
  static Self highest() { return Self(NumTraits<double>::highest()); }
  static Self lowest() { return Self(NumTraits<double>::lowest()); }
  static int digits10() { return NumTraits<double>::digits10(); }
};

template <int W, typename BinaryOp>
struct ScalarBinaryOpTraits<hbem::DualT<W>, double, BinaryOp> {
  using ReturnType = hbem::DualT<W>;
};
template <int W, typename BinaryOp>
struct ScalarBinaryOpTraits<double, hbem::DualT<W>, BinaryOp> {
  using ReturnType = hbem::DualT<W>;
};

}  // namespace Eigen
