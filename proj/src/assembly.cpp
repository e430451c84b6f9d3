#include "hbem/assembly.hpp"

#include <cmath>

#include "hbem/cplx.hpp"
#include "hbem/kernels.hpp"
#include "hbem/parallel.hpp"

namespace hbem {

void WaveConfig::validate(int num_elements) const {
  if (!(k > 0.0)) throw InputError("WaveConfig: k must be positive");
  if (const auto* rad = std::get_if<NeumannRadiation>(&bc)) {
    if (rad->velocity.size() != num_elements)
      throw InputError("WaveConfig: velocity length " +
                       std::to_string(rad->velocity.size()) +
                       " != element count " + std::to_string(num_elements));
  }
  if (formulation == Formulation::Chief && chief_points.empty())
    throw InputError("WaveConfig: CHIEF formulation needs interior points");
}

std::vector<Vec3d> symmetry_signs(Symmetry s) {
  switch (s) {
    case Symmetry::None:
      return {Vec3d(1, 1, 1)};
    case Symmetry::QuadrantXZ_YZ:
      return {Vec3d(1, 1, 1), Vec3d(-1, 1, 1), Vec3d(1, -1, 1),
              Vec3d(-1, -1, 1)};
  }
  throw InputError("symmetry_signs: unknown symmetry");
}

RuleKind rule_for_distance(double dist, double diam_i, double diam_j,
                           double near_factor) {
  const double scale = std::max(diam_i, diam_j);
  if (dist < scale) return RuleKind::SubdividedNear;
  if (dist < near_factor * scale) return RuleKind::GaussHigh;
  return RuleKind::GaussLow;
}

namespace {

template <class T>
struct KernelSums {
  Cplx<T> single, double_, adjoint, hyper;
};

// Source element under a mirror image: vertices flip componentwise, and the
// outward normal is the mirrored normal (not the cross product of the
// mirrored vertex order, which would flip orientation).
template <class T>
struct SourcePatch {
  Vec3<T> a, b, c, normal;
  T area;
};

template <class T>
SourcePatch<T> make_patch(const ElementFrame<T>& f, const Vec3d& sign) {
  SourcePatch<T> p;
  for (int d = 0; d < 3; ++d) {
    p.a[d] = sign[d] * f.a[d];
    p.b[d] = sign[d] * f.b[d];
    p.c[d] = sign[d] * f.c[d];
    p.normal[d] = sign[d] * f.normal[d];
  }
  p.area = f.area;
  return p;
}

template <class T>
void integrate_regular(const Vec3<T>& x, const Vec3<T>& nx,
                       const SourcePatch<T>& p, double k,
                       const QuadratureRule& rule, KernelSums<T>& out) {
  for (int q = 0; q < rule.size(); ++q) {
    const Vec3<T> y = rule.bary(q, 0) * p.a + rule.bary(q, 1) * p.b +
                      rule.bary(q, 2) * p.c;
    const KernelSet<T> ks = helmholtz_kernels(x, nx, y, p.normal, k);
    const T w = rule.weights[q] * p.area;
    out.single += w * ks.single;
    out.double_ += w * ks.double_;
    out.adjoint += w * ks.adjoint;
    out.hyper += w * ks.hyper;
  }
}

// Self interaction: K and K' vanish exactly on a flat element collocated at
// its centroid; S uses the Duffy rule; H is the closed-form static limit
// plus the Duffy-integrated smooth remainder.
template <class T>
void integrate_self(const ElementFrame<T>& f, double k,
                    const QuadratureRule& polar, KernelSums<T>& out) {
  const Vec3<T>& x = f.centroid;
  Cplx<T> s_sum, h_sum;
  for (int q = 0; q < polar.size(); ++q) {
    const Vec3<T> y =
        polar.bary(q, 0) * f.a + polar.bary(q, 1) * f.b + polar.bary(q, 2) * f.c;
    using std::sqrt;
    const Vec3<T> diff = y - x;
    const T d = sqrt(diff.dot(diff));
    const T w = polar.weights[q] * f.area;
    s_sum += (w / (kFourPi * d)) * unit_phase(T(k * d));
    h_sum += w * hyper_difference_kernel<T>(x, y, k);
  }
  out.single += s_sum;
  out.hyper += h_sum + Cplx<T>(flat_hyper_static(x, f.a, f.b, f.c, f.normal));
}

template <class T>
class Assembler {
 public:
  Assembler(const std::vector<ElementFrame<T>>& frames,
            const WaveConfig& cfg, const AdjacencyTable& classes,
            const AssemblyOptions& opt, int lanes)
      : frames_(frames),
        cfg_(cfg),
        classes_(classes),
        opt_(opt),
        lanes_(lanes),
        signs_(symmetry_signs(cfg.symmetry)),
        polar_(polar_singular(opt.polar_order)) {
    n_ = static_cast<int>(frames.size());
    diam_.resize(n_);
    for (int e = 0; e < n_; ++e) {
      const Vec3d a = value3(frames[e].a), b = value3(frames[e].b),
                  c = value3(frames[e].c);
      diam_[e] = std::max({(b - a).norm(), (c - b).norm(), (a - c).norm()});
    }
    if (const auto* rad = std::get_if<NeumannRadiation>(&cfg.bc)) {
      const Complex i_rho_omega(0.0, cfg.medium.density * cfg.omega());
      flux_ = i_rho_omega * rad->velocity;
    }
  }

  void run(Eigen::MatrixXcd& A, Eigen::VectorXcd& b,
           std::vector<Eigen::MatrixXcd>* A_dot,
           std::vector<Eigen::VectorXcd>* b_dot) {
    const int chief =
        cfg_.formulation == Formulation::Chief
            ? static_cast<int>(cfg_.chief_points.size())
            : 0;
    const int rows = n_ + chief;
    A.resize(rows, n_);
    b.resize(rows);
    if (A_dot) {
      A_dot->assign(lanes_, Eigen::MatrixXcd(rows, n_));
      b_dot->assign(lanes_, Eigen::VectorXcd(rows));
    }
    parallel_chunks(rows, opt_.threads, [&](int lo, int hi) {
      for (int i = lo; i < hi; ++i) {
        if (i < n_)
          surface_row(i, A, b, A_dot, b_dot);
        else
          chief_row(i, cfg_.chief_points[i - n_], A, b, A_dot, b_dot);
      }
    });
  }

 private:
  static Vec3d value3(const Vec3<T>& v) {
    return Vec3d(value(v[0]), value(v[1]), value(v[2]));
  }

  const QuadratureRule& rule_for_pair(int i, int j) const {
    switch (classes_(i, j)) {
      case PairClass::SharedEdge:
        return opt_.edge_rule ? *opt_.edge_rule : subdivided_near();
      case PairClass::SharedVertex:
      case PairClass::RegularNear:
        return opt_.near_rule ? *opt_.near_rule : gauss_high();
      case PairClass::RegularFar:
        return opt_.far_rule ? *opt_.far_rule : gauss_low();
      default:
        throw NumericalError("assembler: unexpected self pair");
    }
  }

  const QuadratureRule& rule_for_image(const Vec3d& x, const Vec3d& yc,
                                       double diam_i, double diam_j) const {
    switch (rule_for_distance((x - yc).norm(), diam_i, diam_j,
                              opt_.near_factor)) {
      case RuleKind::SubdividedNear:
        return opt_.edge_rule ? *opt_.edge_rule : subdivided_near();
      case RuleKind::GaussHigh:
        return opt_.near_rule ? *opt_.near_rule : gauss_high();
      default:
        return opt_.far_rule ? *opt_.far_rule : gauss_low();
    }
  }

  // Sums all image contributions of source j seen from (x, nx).
  KernelSums<T> pair_sums(const Vec3<T>& x, const Vec3<T>& nx, int i, int j,
                          bool with_self) const {
    KernelSums<T> sums;
    const Vec3d xv = value3(x);
    for (std::size_t m = 0; m < signs_.size(); ++m) {
      if (m == 0 && with_self && i == j) {
        integrate_self(frames_[j], cfg_.k, polar_, sums);
        continue;
      }
      const SourcePatch<T> patch = make_patch(frames_[j], signs_[m]);
      const QuadratureRule& rule =
          (m == 0 && with_self)
              ? rule_for_pair(i, j)
              : rule_for_image(xv, value3((patch.a + patch.b + patch.c) / 3.0),
                               i >= 0 && i < n_ ? diam_[i] : 0.0, diam_[j]);
      integrate_regular(x, nx, patch, cfg_.k, rule, sums);
    }
    return sums;
  }

  template <class Entry>
  void store(Eigen::MatrixXcd& A, std::vector<Eigen::MatrixXcd>* A_dot, int i,
             int j, const Entry& e) const {
    A(i, j) = value(e);
    if (A_dot)
      for (int l = 0; l < lanes_; ++l) (*A_dot)[l](i, j) = tangent(e, l);
  }

  void surface_row(int i, Eigen::MatrixXcd& A, Eigen::VectorXcd& b,
                   std::vector<Eigen::MatrixXcd>* A_dot,
                   std::vector<Eigen::VectorXcd>* b_dot) const {
    const Vec3<T>& x = frames_[i].centroid;
    const Vec3<T>& nx = frames_[i].normal;
    const bool bm = cfg_.formulation == Formulation::BurtonMiller;
    const Complex eta = cfg_.coupling();
    const bool radiation = flux_.size() > 0;

    Cplx<T> b_acc;
    for (int j = 0; j < n_; ++j) {
      const KernelSums<T> sums = pair_sums(x, nx, i, j, /*with_self=*/true);
      Cplx<T> entry = -sums.double_;
      if (bm) entry -= eta * sums.hyper;
      if (i == j) entry += Cplx<T>(T(0.5));
      store(A, A_dot, i, j, entry);
      if (radiation) {
        const Complex q = flux_[j];
        b_acc -= sums.single * q;
        if (bm) b_acc -= eta * (sums.adjoint * q);
      }
    }
    if (radiation) {
      if (bm) b_acc -= Cplx<T>(0.5 * eta * flux_[i]);
    } else {
      const auto& inc = std::get<RigidScattering>(cfg_.bc).incident;
      b_acc = inc.value_at(x, cfg_.k);
      if (bm) b_acc += eta * inc.normal_derivative(x, nx, cfg_.k);
    }
    b[i] = value(b_acc);
    if (b_dot)
      for (int l = 0; l < lanes_; ++l) (*b_dot)[l][i] = tangent(b_acc, l);
  }

  // Interior collocation: K[p](z) - S[q](z) = -p_i(z), no jump term.
  void chief_row(int row, const Vec3d& z, Eigen::MatrixXcd& A,
                 Eigen::VectorXcd& b, std::vector<Eigen::MatrixXcd>* A_dot,
                 std::vector<Eigen::VectorXcd>* b_dot) const {
    const Vec3<T> x = z.cast<T>();
    Vec3<T> nx;  // unused by K and S
    nx[0] = T(0.0);
    nx[1] = T(0.0);
    nx[2] = T(1.0);
    Cplx<T> b_acc;
    const bool radiation = flux_.size() > 0;
    for (int j = 0; j < n_; ++j) {
      const KernelSums<T> sums = pair_sums(x, nx, -1, j, /*with_self=*/false);
      store(A, A_dot, row, j, sums.double_);
      if (radiation) b_acc += sums.single * flux_[j];
    }
    if (!radiation) {
      const auto& inc = std::get<RigidScattering>(cfg_.bc).incident;
      b_acc = -inc.value_at(x, cfg_.k);
    }
    b[row] = value(b_acc);
    if (b_dot)
      for (int l = 0; l < lanes_; ++l) (*b_dot)[l][row] = tangent(b_acc, l);
  }

  const std::vector<ElementFrame<T>>& frames_;
  const WaveConfig& cfg_;
  const AdjacencyTable& classes_;
  const AssemblyOptions& opt_;
  int lanes_;
  std::vector<Vec3d> signs_;
  QuadratureRule polar_;
  int n_ = 0;
  std::vector<double> diam_;
  Eigen::VectorXcd flux_;  // i rho omega v, empty for scattering
};

}  // namespace

OperatorMatrix assemble(const Mesh& mesh, const WaveConfig& cfg,
                        const AdjacencyTable& classes,
                        const AssemblyOptions& opt) {
  cfg.validate(mesh.num_elements());
  if (classes.size() != mesh.num_elements())
    throw InputError("assemble: classification size mismatch");
  const auto frames = element_frames(mesh);
  OperatorMatrix op;
  op.k = cfg.k;
  op.formulation = cfg.formulation;
  Assembler<double> worker(frames, cfg, classes, opt, 0);
  worker.run(op.A, op.b, nullptr, nullptr);
  if (!op.A.allFinite() || !op.b.allFinite())
    throw NumericalError("assemble: non-finite operator entries");
  return op;
}

namespace {

template <class T>
DirectionalAssembly assemble_directional_impl(const Matrix3X<T>& vertices,
                                              const Eigen::Matrix3Xi& elements,
                                              const WaveConfig& cfg,
                                              const AdjacencyTable& classes,
                                              const AssemblyOptions& opt,
                                              int lanes) {
  cfg.validate(static_cast<int>(elements.cols()));
  const auto frames = element_frames<T>(vertices, elements);
  DirectionalAssembly out;
  Assembler<T> worker(frames, cfg, classes, opt, lanes);
  worker.run(out.A, out.b, &out.A_dot, &out.b_dot);
  return out;
}

}  // namespace

DirectionalAssembly assemble_directional(const Matrix3X<Dual>& vertices,
                                         const Eigen::Matrix3Xi& elements,
                                         const WaveConfig& cfg,
                                         const AdjacencyTable& classes,
                                         const AssemblyOptions& opt) {
  return assemble_directional_impl<Dual>(vertices, elements, cfg, classes, opt,
                                         1);
}

DirectionalAssembly assemble_directional(const Matrix3X<DualT<8>>& vertices,
                                         const Eigen::Matrix3Xi& elements,
                                         const WaveConfig& cfg,
                                         const AdjacencyTable& classes,
                                         const AssemblyOptions& opt,
                                         int lanes) {
  if (lanes < 1 || lanes > 8)
    throw InputError("assemble_directional: lanes must be in [1, 8]");
  return assemble_directional_impl<DualT<8>>(vertices, elements, cfg, classes,
                                             opt, lanes);
}

}  // namespace hbem
