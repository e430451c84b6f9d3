#include "hbem/quadrature.hpp"

#include <cmath>

namespace hbem {

void gauss_legendre_01(int n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights) {
  if (n < 1) throw InputError("gauss_legendre_01: order must be >= 1");
  nodes.resize(n);
  weights.resize(n);
  // Newton iteration on P_n over [-1,1], then map to [0,1].
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = 0.5 * (1.0 - x);  // descending roots -> ascending nodes
    weights[i] = 1.0 / ((1.0 - x * x) * pp * pp);
  }
}

namespace {

QuadratureRule make_gauss_low() {
  QuadratureRule r;
  r.kind = RuleKind::GaussLow;
  r.bary.resize(3, 3);
  r.bary << 2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0,
      1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0,
      1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0;
  r.weights = Eigen::VectorXd::Constant(3, 1.0 / 3.0);
  return r;
}

// Dunavant degree-6 rule, renormalized so the weights sum to exactly 1.
QuadratureRule make_gauss_high() {
  QuadratureRule r;
  r.kind = RuleKind::GaussHigh;
  r.bary.resize(12, 3);
  r.weights.resize(12);
  const double a1 = 0.873821971016996, b1 = 0.063089014491502,
               w1 = 0.050844906370207;
  const double a2 = 0.501426509658179, b2 = 0.249286745170910,
               w2 = 0.116786275726379;
  const double c1 = 0.636502499121399, c2 = 0.310352451033785,
               c3 = 0.053145049844816, w3 = 0.082851075618374;
  int k = 0;
  auto put = [&](double x, double y, double z, double w) {
    r.bary.row(k) << x, y, z;
    r.weights[k] = w;
    ++k;
  };
  put(a1, b1, b1, w1);
  put(b1, a1, b1, w1);
  put(b1, b1, a1, w1);
  put(a2, b2, b2, w2);
  put(b2, a2, b2, w2);
  put(b2, b2, a2, w2);
  put(c1, c2, c3, w3);
  put(c1, c3, c2, w3);
  put(c2, c1, c3, w3);
  put(c2, c3, c1, w3);
  put(c3, c1, c2, w3);
  put(c3, c2, c1, w3);
  r.weights /= r.weights.sum();
  return r;
}

QuadratureRule make_subdivided_near() {
  const QuadratureRule& base = gauss_high();
  QuadratureRule r;
  r.kind = RuleKind::SubdividedNear;
  const int n = base.size();
  r.bary.resize(4 * n, 3);
  r.weights.resize(4 * n);
  // Midpoint subdivision: vertices of the 4 children in parent barycentrics.
  const Eigen::Vector3d v0(1, 0, 0), v1(0, 1, 0), v2(0, 0, 1);
  const Eigen::Vector3d m01 = 0.5 * (v0 + v1), m12 = 0.5 * (v1 + v2),
                        m20 = 0.5 * (v2 + v0);
  const Eigen::Vector3d sub[4][3] = {{v0, m01, m20},
                                     {m01, v1, m12},
                                     {m20, m12, v2},
                                     {m01, m12, m20}};
  int k = 0;
  for (const auto& s : sub) {
    for (int q = 0; q < n; ++q) {
      r.bary.row(k) = (base.bary(q, 0) * s[0] + base.bary(q, 1) * s[1] +
                       base.bary(q, 2) * s[2])
                          .transpose();
      r.weights[k] = 0.25 * base.weights[q];
      ++k;
    }
  }
  return r;
}

}  // namespace

QuadratureRule polar_singular(int order) {
  if (order < 1 || order > 48)
    throw InputError("polar_singular: order out of range");
  Eigen::VectorXd gx, gw;
  gauss_legendre_01(order, gx, gw);

  QuadratureRule r;
  r.kind = RuleKind::PolarSingular;
  const int n = 3 * order * order;
  r.bary.resize(n, 3);
  r.weights.resize(n);

  const Eigen::Vector3d c(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0);
  const Eigen::Vector3d v[3] = {Eigen::Vector3d(1, 0, 0),
                                Eigen::Vector3d(0, 1, 0),
                                Eigen::Vector3d(0, 0, 1)};
  int k = 0;
  for (int s = 0; s < 3; ++s) {
    const Eigen::Vector3d e1 = v[s] - c;
    const Eigen::Vector3d e2 = v[(s + 1) % 3] - c;
    // Duffy map of [0,1]^2 onto the subtriangle with the singularity at c:
    // P(u,v) = c + u((1-v) e1 + v e2), area element 2u * (subarea).
    // Each centroid subtriangle has exactly 1/3 of the parent area.
    for (int i = 0; i < order; ++i) {
      for (int j = 0; j < order; ++j) {
        const double u = gx[i], vv = gx[j];
        r.bary.row(k) = (c + u * ((1.0 - vv) * e1 + vv * e2)).transpose();
        r.weights[k] = (1.0 / 3.0) * 2.0 * u * gw[i] * gw[j];
        ++k;
      }
    }
  }
  return r;
}

const QuadratureRule& gauss_low() {
  static const QuadratureRule r = make_gauss_low();
  return r;
}
const QuadratureRule& gauss_high() {
  static const QuadratureRule r = make_gauss_high();
  return r;
}
const QuadratureRule& subdivided_near() {
  static const QuadratureRule r = make_subdivided_near();
  return r;
}
const QuadratureRule& polar_singular_default() {
  static const QuadratureRule r = polar_singular(4);
  return r;
}

const QuadratureRule& rule_for(RuleKind kind) {
  switch (kind) {
    case RuleKind::GaussLow:
      return gauss_low();
    case RuleKind::GaussHigh:
      return gauss_high();
    case RuleKind::SubdividedNear:
      return subdivided_near();
    case RuleKind::PolarSingular:
      return polar_singular_default();
  }
  throw InputError("rule_for: unknown kind");
}

}  // namespace hbem
