#pragma once

// Clamped cubic spline (zero end slopes) with generic value scalar, so the
// same evaluation path runs on plain doubles and on shape tangents.

#include <vector>

#include <Eigen/Dense>

#include "hbem/dual.hpp"
#include "hbem/types.hpp"

namespace hbem {

template <class T>
class CubicSpline {
 public:
  /// knots strictly increasing; one value per knot; f'(ends) = 0.
  CubicSpline(Eigen::VectorXd knots, std::vector<T> values)
      : x_(std::move(knots)), y_(std::move(values)) {
    const int n = static_cast<int>(x_.size());
    if (n < 2 || static_cast<int>(y_.size()) != n)
      throw InputError("CubicSpline: need >= 2 knots and matching values");
    for (int i = 0; i + 1 < n; ++i)
      if (!(x_[i + 1] > x_[i]))
        throw InputError("CubicSpline: knots must be strictly increasing");
    solve_second_derivatives();
  }

  /// Evaluates at z; outside the knot range the end value is extended as a
  /// constant (C^1 because the end slopes are clamped to zero).
  T operator()(double z) const {
    const int n = static_cast<int>(x_.size());
    if (z <= x_[0]) return y_.front();
    if (z >= x_[n - 1]) return y_.back();
    int lo = 0, hi = n - 1;
    while (hi - lo > 1) {
      const int mid = (lo + hi) / 2;
      (x_[mid] <= z ? lo : hi) = mid;
    }
    const double h = x_[lo + 1] - x_[lo];
    const double u = (x_[lo + 1] - z) / h;  // toward left knot
    const double v = (z - x_[lo]) / h;
    return u * y_[lo] + v * y_[lo + 1] +
           ((u * u * u - u) * m_[lo] + (v * v * v - v) * m_[lo + 1]) *
               (h * h / 6.0);
  }

  const Eigen::VectorXd& knots() const { return x_; }

 private:
  // Thomas algorithm for the clamped-end tridiagonal system in the second
  // derivatives. The matrix depends on knots only; the RHS is linear in the
  // values, so tangents propagate exactly.
  void solve_second_derivatives() {
    const int n = static_cast<int>(x_.size());
    std::vector<double> diag(n), upper(n - 1), lower(n - 1);
    std::vector<T> rhs(n);
    const double h0 = x_[1] - x_[0];
    diag[0] = 2.0 * h0;
    upper[0] = h0;
    rhs[0] = 6.0 * ((y_[1] - y_[0]) / h0 - T(0.0));
    for (int i = 1; i + 1 < n; ++i) {
      const double hl = x_[i] - x_[i - 1], hr = x_[i + 1] - x_[i];
      lower[i - 1] = hl;
      diag[i] = 2.0 * (hl + hr);
      upper[i] = hr;
      rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / hr - (y_[i] - y_[i - 1]) / hl);
    }
    const double hn = x_[n - 1] - x_[n - 2];
    lower[n - 2] = hn;
    diag[n - 1] = 2.0 * hn;
    rhs[n - 1] = 6.0 * (T(0.0) - (y_[n - 1] - y_[n - 2]) / hn);

    m_.resize(n);
    std::vector<double> c(n - 1);
    std::vector<T> d(n);
    c[0] = upper[0] / diag[0];
    d[0] = rhs[0] / diag[0];
    for (int i = 1; i < n; ++i) {
      const double denom = diag[i] - lower[i - 1] * c[i - 1];
      if (i < n - 1) c[i] = upper[i] / denom;
      d[i] = (rhs[i] - lower[i - 1] * d[i - 1]) / denom;
    }
    m_[n - 1] = d[n - 1];
    for (int i = n - 2; i >= 0; --i) m_[i] = d[i] - c[i] * m_[i + 1];
  }

  Eigen::VectorXd x_;
  std::vector<T> y_;
  std::vector<T> m_;  // second derivatives at knots
};

}  // namespace hbem
