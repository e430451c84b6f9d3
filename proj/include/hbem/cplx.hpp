#pragma once

// Complex arithmetic over a generic real scalar (double or DualT<W>).
// std::complex is only specified for the builtin floating types, so kernel
// code uses this minimal type instead and converts at the matrix sink.

#include <complex>

#include "hbem/dual.hpp"

namespace hbem {

template <class T>
struct Cplx {
  T re{};
  T im{};

  Cplx() = default;
  Cplx(const T& r) : re(r) {}  // NOLINT: implicit real promotion
  Cplx(const T& r, const T& i) : re(r), im(i) {}
  Cplx(const std::complex<double>& z) : re(z.real()), im(z.imag()) {}  // NOLINT

  Cplx& operator+=(const Cplx& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Cplx& operator-=(const Cplx& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Cplx& operator*=(const Cplx& o) {
    const T r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = r;
    return *this;
  }
};

template <class T>
inline Cplx<T> operator+(Cplx<T> a, const Cplx<T>& b) { return a += b; }
template <class T>
inline Cplx<T> operator-(Cplx<T> a, const Cplx<T>& b) { return a -= b; }
template <class T>
inline Cplx<T> operator*(Cplx<T> a, const Cplx<T>& b) { return a *= b; }
template <class T>
inline Cplx<T> operator-(const Cplx<T>& a) { return {-a.re, -a.im}; }

template <class T>
inline Cplx<T> operator*(const T& s, Cplx<T> z) {
  z.re = s * z.re;
  z.im = s * z.im;
  return z;
}
template <class T>
inline Cplx<T> operator*(Cplx<T> z, const T& s) { return s * z; }
// mixed double scaling for dual-valued complexes
template <int W>
inline Cplx<DualT<W>> operator*(double s, Cplx<DualT<W>> z) {
  z.re = s * z.re;
  z.im = s * z.im;
  return z;
}
template <int W>
inline Cplx<DualT<W>> operator*(Cplx<DualT<W>> z, double s) { return s * z; }

// constant std::complex coefficients (eta, flux) against generic values
template <class T>
inline Cplx<T> operator*(const std::complex<double>& c, const Cplx<T>& z) {
  return Cplx<T>(c) * z;
}
template <class T>
inline Cplx<T> operator*(const Cplx<T>& z, const std::complex<double>& c) {
  return Cplx<T>(c) * z;
}

template <class T>
inline Cplx<T> conj(const Cplx<T>& z) { return {z.re, -z.im}; }

/// exp(i*phase)
template <class T>
inline Cplx<T> unit_phase(const T& phase) {
  using hbem::cos;
  using hbem::sin;
  using std::cos;
  using std::sin;
  return {cos(phase), sin(phase)};
}

inline std::complex<double> value(const Cplx<double>& z) { return {z.re, z.im}; }
template <int W>
inline std::complex<double> value(const Cplx<DualT<W>>& z) {
  return {z.re.val, z.im.val};
}
template <int W>
inline std::complex<double> tangent(const Cplx<DualT<W>>& z, int lane) {
  return {z.re.dot[lane], z.im.dot[lane]};
}
inline std::complex<double> tangent(const Cplx<double>&, int) { return {0.0, 0.0}; }

}  // namespace hbem
