#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hbem/dual.hpp"
#include "hbem/types.hpp"

namespace hbem {

/// Flat-triangle surface mesh with per-element derived data.
/// Element vertex order is counter-clockwise seen from outside, so the
/// cross-product normal points outward for closed meshes.
struct Mesh {
  Eigen::Matrix3Xd vertices;   // columns: points (m)
  Eigen::Matrix3Xi elements;   // columns: vertex index triples
  Eigen::Matrix3Xd normals;    // unit, per element
  Eigen::Matrix3Xd centroids;  // per element
  Eigen::VectorXd areas;       // m^2
  Eigen::VectorXd diameters;   // longest edge, per element

  int num_vertices() const { return static_cast<int>(vertices.cols()); }
  int num_elements() const { return static_cast<int>(elements.cols()); }

  /// Rebuild normals/areas/centroids/diameters from vertices + elements.
  /// Throws NumericalError if any element area falls below 1e-12 m^2.
  void recompute_geometry();
};

/// Builds a mesh from raw arrays, validating index ranges, duplicate indices
/// within an element, and element degeneracy.
Mesh make_mesh(Eigen::Matrix3Xd vertices, Eigen::Matrix3Xi elements);

/// OBJ (ASCII v/f, 1-based, triangles only) and Gmsh MSH 2.2 ASCII readers;
/// format chosen by file extension (.obj / .msh).
Mesh load_mesh(const std::string& path);
Mesh load_obj(const std::string& path);
Mesh load_msh2(const std::string& path);
void save_obj(const Mesh& mesh, const std::string& path);

/// Divergence-theorem volume; positive for outward-oriented closed meshes.
double signed_volume(const Mesh& mesh);

/// True when every edge is shared by exactly two elements.
bool is_watertight(const Mesh& mesh);

/// Icosahedron refined `subdivisions` times and projected to `radius`,
/// 20 * 4^subdivisions elements. subdivisions must be <= 7.
Mesh make_icosphere(int subdivisions, double radius);

/// Octahedron-based sphere, 8 * 4^subdivisions elements. Hits element counts
/// (128, 512, ...) the icosphere ladder misses.
Mesh make_octasphere(int subdivisions, double radius);

/// Closed frustum radiator: back disc at z=0, conical wall, front disc at
/// z=length. The front disc is the driven piston patch.
struct RadiatorSpec {
  double radius_back = 0.05;
  double radius_front = 0.12;
  double length = 0.25;
  int segments = 16;    // azimuthal, full circle
  int wall_rings = 8;   // axial subdivisions of the wall
  int disc_rings = 2;   // radial subdivisions of each disc
  bool quadrant = false;  // keep x >= 0, y >= 0 part only (symmetry planes)
};
struct Radiator {
  Mesh mesh;
  std::vector<int> piston_elements;  // indices of the driven front-disc patch
};
Radiator make_radiator(const RadiatorSpec& spec);

enum class PairClass : std::uint8_t {
  Self,
  SharedEdge,
  SharedVertex,
  RegularNear,
  RegularFar,
};

/// Dense N x N element-pair classification. Pure topology + plain-double
/// centroid distances; never part of a differentiable path.
class AdjacencyTable {
 public:
  AdjacencyTable() = default;
  AdjacencyTable(int n, std::vector<PairClass> classes)
      : n_(n), classes_(std::move(classes)) {}

  PairClass operator()(int i, int j) const {
    return classes_[static_cast<std::size_t>(i) * n_ + j];
  }
  int size() const { return n_; }

 private:
  int n_ = 0;
  std::vector<PairClass> classes_;
};

/// RegularNear when centroid distance < near_factor * max(diameters).
AdjacencyTable classify_pairs(const Mesh& mesh, double near_factor = 2.5);

/// Per-element geometric data with generic scalar, for assembly paths that
/// carry shape tangents.
template <class T>
struct ElementFrame {
  Vec3<T> a, b, c;
  Vec3<T> normal;
  Vec3<T> centroid;
  T area;
};

template <class T>
std::vector<ElementFrame<T>> element_frames(const Matrix3X<T>& vertices,
                                            const Eigen::Matrix3Xi& elements);

std::vector<ElementFrame<double>> element_frames(const Mesh& mesh);

}  // namespace hbem
