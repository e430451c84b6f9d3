#include "hbem/potential.hpp"

#include <cmath>
#include <mutex>

#include "hbem/assembly.hpp"
#include "hbem/cplx.hpp"
#include "hbem/kernels.hpp"
#include "hbem/parallel.hpp"
#include "hbem/quadrature.hpp"

namespace hbem {

Eigen::VectorXcd boundary_flux(const WaveConfig& cfg, int num_elements) {
  if (const auto* rad = std::get_if<NeumannRadiation>(&cfg.bc)) {
    if (rad->velocity.size() != num_elements)
      throw InputError("boundary_flux: velocity length mismatch");
    return Complex(0.0, cfg.medium.density * cfg.omega()) * rad->velocity;
  }
  return Eigen::VectorXcd::Zero(num_elements);
}

namespace {

template <class T>
Vec3d value3(const Vec3<T>& v) {
  return Vec3d(value(v[0]), value(v[1]), value(v[2]));
}

// Accumulates one point row: out_k = sum_j K_mj x_j - S_mj q_j over images m.
// When RowSink is non-null the double-layer entries are stored as a matrix
// row instead.
template <class T>
class PotentialEvaluator {
 public:
  PotentialEvaluator(const std::vector<ElementFrame<T>>& frames,
                     const WaveConfig& cfg, const PotentialOptions& opt,
                     int lanes)
      : frames_(frames), cfg_(cfg), opt_(opt), lanes_(lanes),
        signs_(symmetry_signs(cfg.symmetry)) {
    n_ = static_cast<int>(frames.size());
    diam_.resize(n_);
    for (int e = 0; e < n_; ++e) {
      const Vec3d a = value3(frames[e].a), b = value3(frames[e].b),
                  c = value3(frames[e].c);
      diam_[e] = std::max({(b - a).norm(), (c - b).norm(), (a - c).norm()});
    }
    flux_ = boundary_flux(cfg, n_);
    has_flux_ = std::holds_alternative<NeumannRadiation>(cfg.bc);
  }

  // row of the double-layer matrix and the -S q offset at one point
  void point_row(const Vec3d& pt, Eigen::RowVectorXcd* k_row,
                 const Eigen::VectorXcd* x, Cplx<T>* field,
                 std::vector<Complex>* field_dot, bool* close) const {
    const Vec3<T> xp = pt.cast<T>();
    Vec3<T> nx;
    nx[0] = T(0.0);
    nx[1] = T(0.0);
    nx[2] = T(1.0);
    Cplx<T> acc;
    for (int j = 0; j < n_; ++j) {
      Cplx<T> k_sum, s_sum;
      for (std::size_t m = 0; m < signs_.size(); ++m) {
        SourcePatchView patch(frames_[j], signs_[m]);
        const double dist = (pt - patch.centroid_value()).norm();
        if (close && m == 0 && dist < 0.5 * diam_[j]) *close = true;
        const QuadratureRule& rule = rule_for(
            rule_for_distance(dist, 0.0, diam_[j], opt_.near_factor));
        for (int q = 0; q < rule.size(); ++q) {
          const Vec3<T> y = rule.bary(q, 0) * patch.a + rule.bary(q, 1) * patch.b +
                            rule.bary(q, 2) * patch.c;
          const KernelSet<T> ks =
              helmholtz_kernels(xp, nx, y, patch.normal, cfg_.k);
          const T w = rule.weights[q] * frames_[j].area;
          k_sum += w * ks.double_;
          s_sum += w * ks.single;
        }
      }
      if (k_row) (*k_row)[j] = value(k_sum);
      if (x) acc += k_sum * Complex((*x)[j]);
      if (has_flux_) acc -= s_sum * Complex(flux_[j]);
    }
    if (field) *field = acc;
    if (field_dot)
      for (int l = 0; l < lanes_; ++l) (*field_dot)[l] = tangent(acc, l);
  }

 private:
  struct SourcePatchView {
    Vec3<T> a, b, c, normal;
    SourcePatchView(const ElementFrame<T>& f, const Vec3d& sign) {
      for (int d = 0; d < 3; ++d) {
        a[d] = sign[d] * f.a[d];
        b[d] = sign[d] * f.b[d];
        c[d] = sign[d] * f.c[d];
        normal[d] = sign[d] * f.normal[d];
      }
    }
    Vec3d centroid_value() const {
      return (value3(a) + value3(b) + value3(c)) / 3.0;
    }
  };

  const std::vector<ElementFrame<T>>& frames_;
  const WaveConfig& cfg_;
  const PotentialOptions& opt_;
  int lanes_;
  std::vector<Vec3d> signs_;
  int n_ = 0;
  std::vector<double> diam_;
  Eigen::VectorXcd flux_;
  bool has_flux_ = false;
};

}  // namespace

Eigen::VectorXcd evaluate_potential(const Mesh& mesh, const WaveConfig& cfg,
                                    const Eigen::VectorXcd& x,
                                    const std::vector<Vec3d>& points,
                                    const PotentialOptions& opt) {
  if (x.size() != mesh.num_elements())
    throw InputError("evaluate_potential: solution length mismatch");
  const auto frames = element_frames(mesh);
  PotentialEvaluator<double> eval(frames, cfg, opt, 0);
  const int m = static_cast<int>(points.size());
  Eigen::VectorXcd out(m);
  std::vector<std::uint8_t> close(m, 0);
  parallel_chunks(m, opt.threads, [&](int lo, int hi) {
    for (int p = lo; p < hi; ++p) {
      Cplx<double> field;
      bool near = false;
      eval.point_row(points[p], nullptr, &x, &field, nullptr, &near);
      out[p] = value(field);
      close[p] = near;
    }
  });
  if (opt.too_close)
    for (int p = 0; p < m; ++p)
      if (close[p]) opt.too_close->push_back(p);
  return out;
}

Eigen::MatrixXcd potential_matrix(const Mesh& mesh, const WaveConfig& cfg,
                                  const std::vector<Vec3d>& points,
                                  const PotentialOptions& opt) {
  const auto frames = element_frames(mesh);
  PotentialEvaluator<double> eval(frames, cfg, opt, 0);
  const int m = static_cast<int>(points.size());
  Eigen::MatrixXcd P(m, mesh.num_elements());
  parallel_chunks(m, opt.threads, [&](int lo, int hi) {
    for (int p = lo; p < hi; ++p) {
      Eigen::RowVectorXcd row(mesh.num_elements());
      eval.point_row(points[p], &row, nullptr, nullptr, nullptr, nullptr);
      P.row(p) = row;
    }
  });
  return P;
}

Eigen::VectorXcd potential_offset(const Mesh& mesh, const WaveConfig& cfg,
                                  const std::vector<Vec3d>& points,
                                  const PotentialOptions& opt) {
  if (!std::holds_alternative<NeumannRadiation>(cfg.bc))
    return Eigen::VectorXcd::Zero(points.size());
  const Eigen::VectorXcd zero =
      Eigen::VectorXcd::Zero(mesh.num_elements());
  return evaluate_potential(mesh, cfg, zero, points, opt);
}

std::vector<Eigen::VectorXcd> potential_directional(
    const Matrix3X<DualT<8>>& vertices, const Eigen::Matrix3Xi& elements,
    const WaveConfig& cfg, const Eigen::VectorXcd& x,
    const std::vector<Vec3d>& points, int lanes,
    const PotentialOptions& opt) {
  if (lanes < 1 || lanes > 8)
    throw InputError("potential_directional: lanes must be in [1, 8]");
  const auto frames = element_frames<DualT<8>>(vertices, elements);
  PotentialEvaluator<DualT<8>> eval(frames, cfg, opt, lanes);
  const int m = static_cast<int>(points.size());
  std::vector<Eigen::VectorXcd> out(lanes, Eigen::VectorXcd(m));
  parallel_chunks(m, opt.threads, [&](int lo, int hi) {
    for (int p = lo; p < hi; ++p) {
      std::vector<Complex> dots(lanes);
      eval.point_row(points[p], nullptr, &x, nullptr, &dots, nullptr);
      for (int l = 0; l < lanes; ++l) out[l][p] = dots[l];
    }
  });
  return out;
}

}  // namespace hbem
