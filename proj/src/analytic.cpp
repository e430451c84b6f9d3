#include "hbem/analytic.hpp"

#include <cmath>

namespace hbem {

void spherical_bessel(int nmax, double x, Eigen::VectorXd& j,
                      Eigen::VectorXd& y) {
  if (x <= 0.0) throw InputError("spherical_bessel: x must be positive");
  j.resize(nmax + 1);
  y.resize(nmax + 1);

  // y_n: stable upward
  y[0] = -std::cos(x) / x;
  if (nmax >= 1) y[1] = -std::cos(x) / (x * x) - std::sin(x) / x;
  for (int n = 1; n < nmax; ++n)
    y[n + 1] = (2.0 * n + 1.0) / x * y[n] - y[n - 1];

  // j_n: downward from a buffer above nmax, normalized by j_0 = sin(x)/x
  const int start = nmax + 16 + static_cast<int>(std::ceil(std::sqrt(40.0 * nmax)));
  double fp = 0.0;          // f_{n+1}
  double fc = 1e-300;       // f_n at n = start
  std::vector<double> f(nmax + 1);
  for (int n = start; n >= 1; --n) {
    const double fm = (2.0 * n + 1.0) / x * fc - fp;
    fp = fc;
    fc = fm;
    if (n - 1 <= nmax) f[n - 1] = fc;
    // rescale to avoid overflow during deep recurrences
    if (std::abs(fc) > 1e250) {
      fc *= 1e-250;
      fp *= 1e-250;
      for (int i = n - 1; i <= nmax; ++i)
        if (i >= 0) f[i] *= 1e-250;
    }
  }
  const double j0 = std::sin(x) / x;
  const double scale = j0 / f[0];
  for (int n = 0; n <= nmax; ++n) j[n] = f[n] * scale;
}

namespace {

// f_n'(x) = f_{n-1}(x) - (n+1)/x * f_n(x); for n = 0, f_0' = -f_1.
double sph_deriv(const Eigen::VectorXd& f, int n, double x) {
  if (n == 0) return -f[1];
  return f[n - 1] - (n + 1) / x * f[n];
}

struct MieCoefficients {
  std::vector<Complex> c;  // -A (2n+1) i^n j_n'(ka)/h_n'(ka)
};

MieCoefficients mie_coefficients(const MieConfig& cfg, int terms) {
  const double ka = cfg.k * cfg.radius;
  Eigen::VectorXd j, y;
  spherical_bessel(terms + 1, ka, j, y);
  MieCoefficients out;
  out.c.resize(terms + 1);
  Complex ipow(1.0, 0.0);
  for (int n = 0; n <= terms; ++n) {
    const double jp = sph_deriv(j, n, ka);
    const Complex hp(jp, sph_deriv(y, n, ka));
    out.c[n] = -cfg.amplitude * (2.0 * n + 1.0) * ipow * (jp / hp);
    ipow *= Complex(0.0, 1.0);
  }
  return out;
}

}  // namespace

int MieConfig::effective_terms() const {
  const int floor_terms = static_cast<int>(std::ceil(k * radius)) + 10;
  return n_terms > 0 ? n_terms : floor_terms;
}

void MieConfig::validate() const {
  if (!(radius > 0.0)) throw InputError("MieConfig: radius must be positive");
  if (!(k > 0.0)) throw InputError("MieConfig: k must be positive");
  const int floor_terms = static_cast<int>(std::ceil(k * radius)) + 10;
  if (n_terms > 0 && n_terms < floor_terms)
    throw InputError("MieConfig: n_terms must be >= ceil(k a) + 10 = " +
                     std::to_string(floor_terms));
  if (std::abs(direction.norm() - 1.0) > 1e-12)
    throw InputError("MieConfig: direction must be unit length");
}

namespace {

// shared driver: radial factor h_n(kr) or its derivative k h_n'(kr)
Eigen::VectorXcd mie_eval(const MieConfig& cfg, const std::vector<Vec3d>& points,
                          bool radial_derivative) {
  cfg.validate();
  const int terms = cfg.effective_terms();
  if (cfg.amplitude == Complex(0.0, 0.0))
    return Eigen::VectorXcd::Zero(points.size());
  const MieCoefficients coef = mie_coefficients(cfg, terms);

  Eigen::VectorXcd out(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    const double r = points[p].norm();
    if (r <= cfg.radius)
      throw InputError("mie_scattered: point " + std::to_string(p) +
                       " not exterior");
    const double mu = points[p].dot(cfg.direction) / r;
    const double kr = cfg.k * r;
    Eigen::VectorXd j, y;
    spherical_bessel(terms + 1, kr, j, y);

    Complex sum(0.0, 0.0);
    double pn_prev = 1.0, pn = mu;  // P_0, P_1
    double max_partial = 0.0;
    Complex last(0.0, 0.0);
    for (int n = 0; n <= terms; ++n) {
      const double pn_here = n == 0 ? 1.0 : pn;
      Complex radial;
      if (radial_derivative)
        radial = cfg.k * Complex(sph_deriv(j, n, kr), sph_deriv(y, n, kr));
      else
        radial = Complex(j[n], y[n]);
      last = coef.c[n] * radial * pn_here;
      sum += last;
      max_partial = std::max(max_partial, std::abs(sum));
      if (n >= 1) {
        const double pn_next =
            ((2.0 * n + 1.0) * mu * pn - n * pn_prev) / (n + 1.0);
        pn_prev = pn;
        pn = pn_next;
      }
    }
    const double floor_scale =
        std::max(max_partial, std::abs(cfg.amplitude) * 1e-6);
    if (std::abs(last) > 1e-12 * floor_scale)
      throw NumericalError(
          "mie_scattered: series not converged at point " + std::to_string(p) +
          "; increase n_terms (last-term ratio " +
          std::to_string(std::abs(last) / floor_scale) + ", need <= 1e-12; try " +
          std::to_string(terms + 20) + " terms)");
    out[p] = sum;
  }
  return out;
}

}  // namespace

Eigen::VectorXcd mie_scattered(const MieConfig& cfg,
                               const std::vector<Vec3d>& points) {
  return mie_eval(cfg, points, false);
}

Eigen::VectorXcd mie_scattered_dr(const MieConfig& cfg,
                                  const std::vector<Vec3d>& points) {
  return mie_eval(cfg, points, true);
}

Eigen::VectorXcd pulsating_sphere(double radius, double k, Complex v0,
                                  const std::vector<Vec3d>& points,
                                  const Medium& medium) {
  if (!(radius > 0.0 && k > 0.0))
    throw InputError("pulsating_sphere: radius and k must be positive");
  const double omega = k * medium.sound_speed;
  const Complex num = Complex(0.0, 1.0) * medium.density * omega * v0 *
                      radius * radius;
  Eigen::VectorXcd out(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    const double r = points[p].norm();
    if (r <= radius)
      throw InputError("pulsating_sphere: point " + std::to_string(p) +
                       " not exterior");
    const Complex phase = std::exp(Complex(0.0, k * (r - radius)));
    out[p] = num * phase / (r * Complex(-1.0, k * radius));
  }
  return out;
}

}  // namespace hbem
