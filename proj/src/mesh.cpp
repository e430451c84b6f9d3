#include "hbem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

namespace hbem {

namespace {

constexpr double kMinArea = 1e-12;

void check_indices(const Eigen::Matrix3Xd& vertices,
                   const Eigen::Matrix3Xi& elements) {
  const int nv = static_cast<int>(vertices.cols());
  for (int e = 0; e < elements.cols(); ++e) {
    const int i = elements(0, e), j = elements(1, e), k = elements(2, e);
    if (i < 0 || j < 0 || k < 0 || i >= nv || j >= nv || k >= nv)
      throw InputError("mesh: element " + std::to_string(e) +
                       " references out-of-range vertex");
    if (i == j || j == k || i == k)
      throw InputError("mesh: element " + std::to_string(e) +
                       " has duplicate vertex indices");
  }
}

}  // namespace

void Mesh::recompute_geometry() {
  const int ne = num_elements();
  normals.resize(3, ne);
  centroids.resize(3, ne);
  areas.resize(ne);
  diameters.resize(ne);
  for (int e = 0; e < ne; ++e) {
    const Vec3d a = vertices.col(elements(0, e));
    const Vec3d b = vertices.col(elements(1, e));
    const Vec3d c = vertices.col(elements(2, e));
    const Vec3d cr = (b - a).cross(c - a);
    const double two_area = cr.norm();
    if (two_area < 2.0 * kMinArea)
      throw NumericalError("mesh: degenerate element " + std::to_string(e) +
                           " (area " + std::to_string(two_area / 2.0) + " m^2)");
    areas[e] = 0.5 * two_area;
    normals.col(e) = cr / two_area;
    centroids.col(e) = (a + b + c) / 3.0;
    diameters[e] =
        std::max({(b - a).norm(), (c - b).norm(), (a - c).norm()});
  }
}

Mesh make_mesh(Eigen::Matrix3Xd vertices, Eigen::Matrix3Xi elements) {
  check_indices(vertices, elements);
  Mesh m;
  m.vertices = std::move(vertices);
  m.elements = std::move(elements);
  m.recompute_geometry();
  return m;
}

double signed_volume(const Mesh& mesh) {
  double vol = 0.0;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const Vec3d a = mesh.vertices.col(mesh.elements(0, e));
    const Vec3d b = mesh.vertices.col(mesh.elements(1, e));
    const Vec3d c = mesh.vertices.col(mesh.elements(2, e));
    vol += a.dot(b.cross(c)) / 6.0;
  }
  return vol;
}

bool is_watertight(const Mesh& mesh) {
  std::map<std::pair<int, int>, int> edge_count;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    for (int s = 0; s < 3; ++s) {
      int i = mesh.elements(s, e), j = mesh.elements((s + 1) % 3, e);
      if (i > j) std::swap(i, j);
      ++edge_count[{i, j}];
    }
  }
  for (const auto& [edge, count] : edge_count)
    if (count != 2) return false;
  return true;
}

// ---------------------------------------------------------------------------
// File IO

Mesh load_mesh(const std::string& path) {
  const auto dot = path.find_last_of('.');
  const std::string ext = dot == std::string::npos ? "" : path.substr(dot);
  if (ext == ".obj") return load_obj(path);
  if (ext == ".msh") return load_msh2(path);
  throw InputError("load_mesh: unsupported extension '" + ext + "' (" + path +
                   ")");
}

Mesh load_obj(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("load_obj: cannot open " + path);
  std::vector<Vec3d> verts;
  std::vector<Vec3i> tris;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "v") {
      Vec3d v;
      if (!(ls >> v[0] >> v[1] >> v[2]))
        throw InputError("load_obj: bad vertex at line " +
                         std::to_string(lineno));
      verts.push_back(v);
    } else if (tag == "f") {
      std::vector<long> idx;
      std::string tok;
      while (ls >> tok) {
        // accept "i", "i/t", "i/t/n", "i//n"
        try {
          idx.push_back(std::stol(tok.substr(0, tok.find('/'))));
        } catch (const std::exception&) {
          throw InputError("load_obj: bad face token '" + tok + "' at line " +
                           std::to_string(lineno));
        }
      }
      if (idx.size() != 3)
        throw InputError("load_obj: non-triangle face (" +
                         std::to_string(idx.size()) + " vertices) at line " +
                         std::to_string(lineno));
      Vec3i t;
      for (int s = 0; s < 3; ++s) {
        long v = idx[s];
        if (v < 0) v = static_cast<long>(verts.size()) + 1 + v;  // OBJ relative
        t[s] = static_cast<int>(v - 1);
      }
      tris.push_back(t);
    }
    // vn/vt/o/g/s/#/usemtl/mtllib ignored
  }
  if (tris.empty()) throw InputError("load_obj: no faces in " + path);
  Eigen::Matrix3Xd V(3, verts.size());
  for (std::size_t i = 0; i < verts.size(); ++i) V.col(i) = verts[i];
  Eigen::Matrix3Xi E(3, tris.size());
  for (std::size_t i = 0; i < tris.size(); ++i) E.col(i) = tris[i];
  return make_mesh(std::move(V), std::move(E));
}

Mesh load_msh2(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("load_msh2: cannot open " + path);
  std::string line;
  std::unordered_map<long, int> node_index;
  std::vector<Vec3d> verts;
  std::vector<Vec3i> tris;
  while (std::getline(in, line)) {
    if (line.rfind("$MeshFormat", 0) == 0) {
      std::getline(in, line);
      std::istringstream ls(line);
      double version = 0;
      ls >> version;
      if (version < 2.0 || version >= 3.0)
        throw InputError("load_msh2: unsupported MSH version in " + path);
    } else if (line.rfind("$Nodes", 0) == 0) {
      std::getline(in, line);
      const long n = std::stol(line);
      for (long i = 0; i < n; ++i) {
        std::getline(in, line);
        std::istringstream ls(line);
        long id;
        Vec3d v;
        if (!(ls >> id >> v[0] >> v[1] >> v[2]))
          throw InputError("load_msh2: bad node record in " + path);
        node_index[id] = static_cast<int>(verts.size());
        verts.push_back(v);
      }
    } else if (line.rfind("$Elements", 0) == 0) {
      std::getline(in, line);
      const long n = std::stol(line);
      for (long i = 0; i < n; ++i) {
        std::getline(in, line);
        std::istringstream ls(line);
        long id, type, ntags;
        if (!(ls >> id >> type >> ntags))
          throw InputError("load_msh2: bad element record in " + path);
        long tag;
        for (long t = 0; t < ntags; ++t) ls >> tag;
        if (type == 15 || type == 1) continue;  // points, lines
        if (type != 2)
          throw InputError("load_msh2: non-triangle element type " +
                           std::to_string(type) + " in " + path);
        long a, b, c;
        if (!(ls >> a >> b >> c))
          throw InputError("load_msh2: truncated triangle in " + path);
        tris.push_back(
            Vec3i(node_index.at(a), node_index.at(b), node_index.at(c)));
      }
    }
  }
  if (tris.empty()) throw InputError("load_msh2: no triangles in " + path);
  Eigen::Matrix3Xd V(3, verts.size());
  for (std::size_t i = 0; i < verts.size(); ++i) V.col(i) = verts[i];
  Eigen::Matrix3Xi E(3, tris.size());
  for (std::size_t i = 0; i < tris.size(); ++i) E.col(i) = tris[i];
  return make_mesh(std::move(V), std::move(E));
}

void save_obj(const Mesh& mesh, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw InputError("save_obj: cannot write " + path);
  for (int i = 0; i < mesh.num_vertices(); ++i)
    std::fprintf(f, "v %.17g %.17g %.17g\n", mesh.vertices(0, i),
                 mesh.vertices(1, i), mesh.vertices(2, i));
  for (int e = 0; e < mesh.num_elements(); ++e)
    std::fprintf(f, "f %d %d %d\n", mesh.elements(0, e) + 1,
                 mesh.elements(1, e) + 1, mesh.elements(2, e) + 1);
  std::fclose(f);
}

// ---------------------------------------------------------------------------
// Generators

namespace {

Mesh subdivide_project(std::vector<Vec3d> verts, std::vector<Vec3i> tris,
                       int subdivisions, double radius) {
  if (subdivisions < 0 || subdivisions > 7)
    throw InputError("sphere generator: subdivisions must be in [0, 7]");
  for (auto& v : verts) v.normalize();
  for (int s = 0; s < subdivisions; ++s) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int i, int j) {
      auto key = std::minmax(i, j);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      Vec3d m = (verts[i] + verts[j]).normalized();
      verts.push_back(m);
      const int idx = static_cast<int>(verts.size()) - 1;
      midpoint[key] = idx;
      return idx;
    };
    std::vector<Vec3i> next;
    next.reserve(4 * tris.size());
    for (const auto& t : tris) {
      const int ab = mid(t[0], t[1]), bc = mid(t[1], t[2]), ca = mid(t[2], t[0]);
      next.push_back({t[0], ab, ca});
      next.push_back({t[1], bc, ab});
      next.push_back({t[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    tris = std::move(next);
  }
  Eigen::Matrix3Xd V(3, verts.size());
  for (std::size_t i = 0; i < verts.size(); ++i) V.col(i) = radius * verts[i];
  Eigen::Matrix3Xi E(3, tris.size());
  for (std::size_t i = 0; i < tris.size(); ++i) E.col(i) = tris[i];
  return make_mesh(std::move(V), std::move(E));
}

}  // namespace

Mesh make_icosphere(int subdivisions, double radius) {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3d> v = {
      {-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0},
      {0, -1, t}, {0, 1, t}, {0, -1, -t}, {0, 1, -t},
      {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1},
  };
  std::vector<Vec3i> f = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1},
  };
  return subdivide_project(std::move(v), std::move(f), subdivisions, radius);
}

Mesh make_octasphere(int subdivisions, double radius) {
  std::vector<Vec3d> v = {{1, 0, 0},  {-1, 0, 0}, {0, 1, 0},
                          {0, -1, 0}, {0, 0, 1},  {0, 0, -1}};
  std::vector<Vec3i> f = {{0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4},
                          {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5}};
  return subdivide_project(std::move(v), std::move(f), subdivisions, radius);
}

Radiator make_radiator(const RadiatorSpec& spec) {
  if (spec.segments < 4 || spec.wall_rings < 1 || spec.disc_rings < 1)
    throw InputError("make_radiator: too few segments/rings");
  const int full_segments = spec.segments;
  const int nseg = spec.quadrant ? full_segments / 4 : full_segments;
  if (spec.quadrant && full_segments % 4 != 0)
    throw InputError("make_radiator: quadrant needs segments divisible by 4");
  const double arc = spec.quadrant ? kPi / 2.0 : 2.0 * kPi;
  const bool closed = !spec.quadrant;

  std::vector<Vec3d> verts;
  std::vector<Vec3i> tris;
  std::vector<int> piston;

  // Ring of vertices at axial position z, radius r. Closed meshes share the
  // wrap-around vertex; quadrant meshes keep both boundary columns.
  auto add_ring = [&](double r, double z) {
    std::vector<int> ring;
    const int count = closed ? nseg : nseg + 1;
    for (int s = 0; s < count; ++s) {
      const double phi = arc * s / nseg;
      verts.push_back({r * std::cos(phi), r * std::sin(phi), z});
      ring.push_back(static_cast<int>(verts.size()) - 1);
    }
    return ring;
  };
  auto ring_vertex = [&](const std::vector<int>& ring, int s) {
    return closed ? ring[s % nseg] : ring[s];
  };
  // Quad strip between two rings; `outward_low_to_high` controls orientation.
  auto stitch = [&](const std::vector<int>& lo, const std::vector<int>& hi,
                    bool flip, std::vector<int>* mark = nullptr) {
    for (int s = 0; s < nseg; ++s) {
      const int a = ring_vertex(lo, s), b = ring_vertex(lo, s + 1);
      const int c = ring_vertex(hi, s), d = ring_vertex(hi, s + 1);
      Vec3i t1(a, b, d), t2(a, d, c);
      if (flip) {
        std::swap(t1[1], t1[2]);
        std::swap(t2[1], t2[2]);
      }
      tris.push_back(t1);
      if (mark) mark->push_back(static_cast<int>(tris.size()) - 1);
      tris.push_back(t2);
      if (mark) mark->push_back(static_cast<int>(tris.size()) - 1);
    }
  };
  // Disc at height z: center fan plus annular rings. flip = normal toward -z.
  auto add_disc = [&](double radius, double z, bool flip,
                      const std::vector<int>& rim,
                      std::vector<int>* mark = nullptr) {
    verts.push_back({0.0, 0.0, z});
    const int center = static_cast<int>(verts.size()) - 1;
    std::vector<std::vector<int>> rings;
    for (int r = 1; r < spec.disc_rings; ++r)
      rings.push_back(add_ring(radius * r / spec.disc_rings, z));
    rings.push_back(rim);
    // center fan
    for (int s = 0; s < nseg; ++s) {
      Vec3i t(center, ring_vertex(rings[0], s), ring_vertex(rings[0], s + 1));
      if (flip) std::swap(t[1], t[2]);
      tris.push_back(t);
      if (mark) mark->push_back(static_cast<int>(tris.size()) - 1);
    }
    for (std::size_t r = 0; r + 1 < rings.size(); ++r)
      stitch(rings[r], rings[r + 1], flip, mark);
  };

  // wall rings from back (z=0) to front (z=length)
  std::vector<std::vector<int>> wall;
  for (int r = 0; r <= spec.wall_rings; ++r) {
    const double f = static_cast<double>(r) / spec.wall_rings;
    wall.push_back(add_ring(spec.radius_back +
                                f * (spec.radius_front - spec.radius_back),
                            f * spec.length));
  }
  for (int r = 0; r < spec.wall_rings; ++r)
    stitch(wall[r], wall[r + 1], false);
  add_disc(spec.radius_back, 0.0, true, wall.front());
  add_disc(spec.radius_front, spec.length, false, wall.back(), &piston);

  Eigen::Matrix3Xd V(3, verts.size());
  for (std::size_t i = 0; i < verts.size(); ++i) V.col(i) = verts[i];
  Eigen::Matrix3Xi E(3, tris.size());
  for (std::size_t i = 0; i < tris.size(); ++i) E.col(i) = tris[i];

  Radiator out;
  out.mesh = make_mesh(std::move(V), std::move(E));
  out.piston_elements = std::move(piston);
  return out;
}

// ---------------------------------------------------------------------------
// Pair classification

AdjacencyTable classify_pairs(const Mesh& mesh, double near_factor) {
  const int n = mesh.num_elements();
  std::vector<PairClass> classes(static_cast<std::size_t>(n) * n);

  // vertex -> incident elements, for shared-vertex lookups
  std::vector<std::vector<int>> star(mesh.num_vertices());
  for (int e = 0; e < n; ++e)
    for (int s = 0; s < 3; ++s) star[mesh.elements(s, e)].push_back(e);

  std::vector<std::uint8_t> shared(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    std::vector<int> touched;
    for (int s = 0; s < 3; ++s)
      for (int e : star[mesh.elements(s, i)]) {
        if (shared[e] == 0) touched.push_back(e);
        ++shared[e];
      }
    for (int j = 0; j < n; ++j) {
      PairClass c;
      if (i == j) {
        c = PairClass::Self;
      } else if (shared[j] == 2) {
        c = PairClass::SharedEdge;
      } else if (shared[j] == 1) {
        c = PairClass::SharedVertex;
      } else if (shared[j] >= 3) {
        throw InputError("classify_pairs: duplicate element pair (" +
                         std::to_string(i) + ", " + std::to_string(j) + ")");
      } else {
        const double dist = (mesh.centroids.col(i) - mesh.centroids.col(j)).norm();
        const double scale = std::max(mesh.diameters[i], mesh.diameters[j]);
        c = dist < near_factor * scale ? PairClass::RegularNear
                                       : PairClass::RegularFar;
      }
      classes[static_cast<std::size_t>(i) * n + j] = c;
    }
    for (int e : touched) shared[e] = 0;
  }
  return AdjacencyTable(n, std::move(classes));
}

// ---------------------------------------------------------------------------
// Frames

template <class T>
std::vector<ElementFrame<T>> element_frames(const Matrix3X<T>& vertices,
                                            const Eigen::Matrix3Xi& elements) {
  std::vector<ElementFrame<T>> frames(elements.cols());
  for (int e = 0; e < elements.cols(); ++e) {
    ElementFrame<T>& f = frames[e];
    f.a = vertices.col(elements(0, e));
    f.b = vertices.col(elements(1, e));
    f.c = vertices.col(elements(2, e));
    const Vec3<T> cr = (f.b - f.a).cross(f.c - f.a);
    using std::sqrt;
    const T two_area = sqrt(cr.dot(cr));
    f.area = 0.5 * two_area;
    f.normal = cr / two_area;
    f.centroid = (f.a + f.b + f.c) / 3.0;
  }
  return frames;
}

std::vector<ElementFrame<double>> element_frames(const Mesh& mesh) {
  return element_frames<double>(mesh.vertices, mesh.elements);
}

template std::vector<ElementFrame<double>> element_frames<double>(
    const Matrix3X<double>&, const Eigen::Matrix3Xi&);
template std::vector<ElementFrame<Dual>> element_frames<Dual>(
    const Matrix3X<Dual>&, const Eigen::Matrix3Xi&);
template std::vector<ElementFrame<DualT<8>>> element_frames<DualT<8>>(
    const Matrix3X<DualT<8>>&, const Eigen::Matrix3Xi&);

}  // namespace hbem
