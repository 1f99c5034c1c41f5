#include "excursion/geom3d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace excursion {

namespace {

constexpr double kPi = 3.14159265358979323846;

Vec3 newell_normal(const std::vector<Vec3>& verts, const std::vector<int>& face) {
  Vec3 n{0, 0, 0};
  for (std::size_t i = 0; i < face.size(); ++i) {
    const Vec3& a = verts[static_cast<std::size_t>(face[i])];
    const Vec3& b = verts[static_cast<std::size_t>(face[(i + 1) % face.size()])];
    n.x += (a.y - b.y) * (a.z + b.z);
    n.y += (a.z - b.z) * (a.x + b.x);
    n.z += (a.x - b.x) * (a.y + b.y);
  }
  return n;
}

double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

}  // namespace

double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

Vec3 normalized(Vec3 a) {
  const double n = norm(a);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::invalid_argument("cannot normalize a zero 3-vector");
  }
  return (1.0 / n) * a;
}

Polyhedron3D::Polyhedron3D(std::vector<Vec3> vertices, std::vector<std::vector<int>> faces)
    : vertices_(std::move(vertices)), faces_(std::move(faces)) {
  const int nv = static_cast<int>(vertices_.size());
  if (nv < 4) throw std::invalid_argument("polyhedron needs at least 4 vertices");
  if (faces_.size() < 4) throw std::invalid_argument("polyhedron needs at least 4 faces");
  for (const Vec3& v : vertices_) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.z)) {
      throw std::invalid_argument("polyhedron vertices must be finite");
    }
  }

  Vec3 lo = vertices_[0], hi = vertices_[0];
  for (const Vec3& v : vertices_) {
    lo = {std::min(lo.x, v.x), std::min(lo.y, v.y), std::min(lo.z, v.z)};
    hi = {std::max(hi.x, v.x), std::max(hi.y, v.y), std::max(hi.z, v.z)};
  }
  diameter_ = norm(hi - lo);
  if (!(diameter_ > 0.0)) throw std::invalid_argument("polyhedron is a single point");
  const double tol = 1e-9 * diameter_;

  Vec3 centroid{0, 0, 0};
  for (const Vec3& v : vertices_) centroid = centroid + v;
  centroid = (1.0 / nv) * centroid;

  normals_.resize(faces_.size());
  areas_.resize(faces_.size());
  std::map<std::pair<int, int>, std::pair<int, int>> edge_faces;  // (v0<v1) -> (f, count)
  std::map<std::pair<int, int>, int> directed_seen;

  for (std::size_t f = 0; f < faces_.size(); ++f) {
    const auto& face = faces_[f];
    if (face.size() < 3) {
      throw std::invalid_argument("face " + std::to_string(f) + " has fewer than 3 vertices");
    }
    for (int idx : face) {
      if (idx < 0 || idx >= nv) {
        throw std::invalid_argument("face " + std::to_string(f) + " has an out-of-range vertex index");
      }
    }
    const Vec3 raw = newell_normal(vertices_, face);
    const double raw_norm = norm(raw);
    if (!(raw_norm > 0.0)) {
      throw std::invalid_argument("face " + std::to_string(f) + " is degenerate");
    }
    normals_[f] = (1.0 / raw_norm) * raw;
    areas_[f] = 0.5 * raw_norm;

    const Vec3& p0 = vertices_[static_cast<std::size_t>(face[0])];
    for (int idx : face) {
      if (std::abs(dot(vertices_[static_cast<std::size_t>(idx)] - p0, normals_[f])) > tol) {
        throw std::invalid_argument("face " + std::to_string(f) + " is not planar");
      }
    }
    if (dot(centroid - p0, normals_[f]) > tol) {
      throw std::invalid_argument("face " + std::to_string(f) +
                                  " is not outward-oriented (centroid on its outer side)");
    }
    // convexity: every vertex on or inside this face plane
    for (int idx = 0; idx < nv; ++idx) {
      if (dot(vertices_[static_cast<std::size_t>(idx)] - p0, normals_[f]) > tol) {
        throw std::invalid_argument("polyhedron is not convex: vertex " + std::to_string(idx) +
                                    " lies outside face " + std::to_string(f));
      }
    }

    for (std::size_t i = 0; i < face.size(); ++i) {
      const int a = face[i];
      const int b = face[(i + 1) % face.size()];
      if (a == b) throw std::invalid_argument("face " + std::to_string(f) + " repeats a vertex");
      if (directed_seen.count({a, b})) {
        throw std::invalid_argument("directed edge (" + std::to_string(a) + "," + std::to_string(b) +
                                    ") appears twice: mesh is not orientable");
      }
      directed_seen[{a, b}] = static_cast<int>(f);
      auto key = std::minmax(a, b);
      auto it = edge_faces.find(key);
      if (it == edge_faces.end()) {
        edge_faces[key] = {static_cast<int>(f), 1};
      } else {
        it->second.second += 1;
        if (it->second.second > 2) {
          throw std::invalid_argument("edge (" + std::to_string(key.first) + "," +
                                      std::to_string(key.second) + ") is shared by more than 2 faces");
        }
      }
    }
  }

  for (const auto& [key, fc] : edge_faces) {
    if (fc.second != 2) {
      throw std::invalid_argument("open mesh: edge (" + std::to_string(key.first) + "," +
                                  std::to_string(key.second) + ") has " +
                                  std::to_string(fc.second) + " face(s)");
    }
    const auto fwd = directed_seen.find({key.first, key.second});
    const auto rev = directed_seen.find({key.second, key.first});
    if (fwd == directed_seen.end() || rev == directed_seen.end()) {
      throw std::invalid_argument("edge (" + std::to_string(key.first) + "," +
                                  std::to_string(key.second) + ") is traversed twice in the same direction");
    }
    Edge e;
    e.v0 = key.first;
    e.v1 = key.second;
    e.f0 = fwd->second;
    e.f1 = rev->second;
    e.length = norm(vertices_[static_cast<std::size_t>(e.v1)] - vertices_[static_cast<std::size_t>(e.v0)]);
    // interior dihedral from outward normals; stable for convex meshes
    e.dihedral = kPi - std::acos(clamp_unit(dot(normals_[static_cast<std::size_t>(e.f0)],
                                                normals_[static_cast<std::size_t>(e.f1)])));
    edges_.push_back(e);
  }
}

GeometrySummary3D polyhedron_summary(const Polyhedron3D& p) {
  GeometrySummary3D g;
  const auto& verts = p.vertices();
  Vec3 centroid{0, 0, 0};
  for (const Vec3& v : verts) centroid = centroid + v;
  centroid = (1.0 / static_cast<double>(verts.size())) * centroid;

  for (std::size_t f = 0; f < p.faces().size(); ++f) {
    const auto& face = p.faces()[f];
    g.surface_area += p.face_area(f);
    const Vec3 a = verts[static_cast<std::size_t>(face[0])] - centroid;
    for (std::size_t i = 1; i + 1 < face.size(); ++i) {
      const Vec3 b = verts[static_cast<std::size_t>(face[i])] - centroid;
      const Vec3 c = verts[static_cast<std::size_t>(face[i + 1])] - centroid;
      g.volume += dot(a, cross(b, c)) / 6.0;
    }
  }
  double angle_sum = 0.0;
  for (const auto& e : p.edges()) {
    g.edges.emplace_back(e.length, e.dihedral);
    angle_sum += e.length * (kPi - e.dihedral);
  }
  g.caliper = angle_sum / (4.0 * kPi);
  if (!(g.volume > 0.0)) throw std::invalid_argument("polyhedron volume is not positive");
  return g;
}

double face_projection_defect(const Polyhedron3D& p, Vec3 axis) {
  const Vec3 ax = normalized(axis);
  double s = 0.0;
  for (std::size_t f = 0; f < p.faces().size(); ++f) {
    s += p.face_area(f) * dot(p.face_normal(f), ax);
  }
  return s;
}

std::vector<EdgeTrihedral> edge_trihedral_angles(const Polyhedron3D& p, Vec3 up) {
  const Vec3 u = normalized(up);
  const auto& verts = p.vertices();
  std::vector<EdgeTrihedral> out;
  out.reserve(p.edges().size());

  // in-face horizontal direction pointing into face f from edge (a -> b as
  // traversed by f)
  auto face_angle = [&](int f, Vec3 eta, Vec3 a, Vec3 b) {
    const Vec3 n = p.face_normal(static_cast<std::size_t>(f));
    Vec3 h = cross(n, u);
    const double hn = norm(h);
    if (hn < 1e-12) {
      throw std::domain_error("edge_trihedral_angles: face " + std::to_string(f) +
                              " is horizontal for this direction");
    }
    h = (1.0 / hn) * h;
    const Vec3 inward = cross(n, normalized(b - a));  // into the face
    const Vec3 alpha = dot(h, inward) >= 0.0 ? h : -1.0 * h;
    return std::acos(clamp_unit(dot(alpha, eta)));
  };

  for (const auto& e : p.edges()) {
    const Vec3 a = verts[static_cast<std::size_t>(e.v0)];
    const Vec3 b = verts[static_cast<std::size_t>(e.v1)];
    Vec3 eta = normalized(b - a);
    const double rise = dot(eta, u);
    if (std::abs(rise) < 1e-12) {
      throw std::domain_error("edge_trihedral_angles: edge (" + std::to_string(e.v0) + "," +
                              std::to_string(e.v1) + ") is horizontal for this direction");
    }
    if (rise < 0.0) eta = -1.0 * eta;

    // f0 traverses v0 -> v1, f1 traverses v1 -> v0
    const double t1 = face_angle(e.f0, eta, a, b);
    const double t2 = face_angle(e.f1, eta, b, a);
    out.push_back({e.length, t1, t2, e.dihedral});
  }
  return out;
}

Polyhedron3D make_box(double a, double b, double c) {
  if (!(a > 0 && b > 0 && c > 0)) throw std::invalid_argument("box sides must be positive");
  std::vector<Vec3> v = {{0, 0, 0}, {a, 0, 0}, {a, b, 0}, {0, b, 0},
                         {0, 0, c}, {a, 0, c}, {a, b, c}, {0, b, c}};
  std::vector<std::vector<int>> f = {
      {0, 3, 2, 1},  // bottom
      {4, 5, 6, 7},  // top
      {0, 1, 5, 4},  // y = 0
      {1, 2, 6, 5},  // x = a
      {2, 3, 7, 6},  // y = b
      {3, 0, 4, 7},  // x = 0
  };
  return Polyhedron3D(std::move(v), std::move(f));
}

Polyhedron3D make_cube() { return make_box(1.0, 1.0, 1.0); }

Polyhedron3D make_regular_tetrahedron(double edge) {
  if (!(edge > 0)) throw std::invalid_argument("tetrahedron edge must be positive");
  const double s = edge / (2.0 * std::sqrt(2.0));
  std::vector<Vec3> v = {{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
  std::vector<std::vector<int>> f = {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}};
  return Polyhedron3D(std::move(v), std::move(f));
}

namespace {

struct HullFace {
  int a, b, c;
  Vec3 n;       // not normalized
  double d;     // plane offset: dot(n, x) = d
  bool alive = true;
};

}  // namespace

Polyhedron3D convex_hull(const std::vector<Vec3>& points) {
  const int np = static_cast<int>(points.size());
  if (np < 4) throw std::invalid_argument("convex_hull needs at least 4 points");

  Vec3 lo = points[0], hi = points[0];
  for (const Vec3& v : points) {
    lo = {std::min(lo.x, v.x), std::min(lo.y, v.y), std::min(lo.z, v.z)};
    hi = {std::max(hi.x, v.x), std::max(hi.y, v.y), std::max(hi.z, v.z)};
  }
  const double scale = std::max(norm(hi - lo), 1e-300);
  const double eps = 1e-12 * scale;

  // initial non-degenerate tetrahedron
  int i0 = 0, i1 = -1, i2 = -1, i3 = -1;
  for (int i = 1; i < np; ++i) {
    if (norm(points[i] - points[i0]) > eps) {
      i1 = i;
      break;
    }
  }
  if (i1 < 0) throw std::invalid_argument("convex_hull: all points coincide");
  for (int i = 0; i < np; ++i) {
    if (i == i0 || i == i1) continue;
    if (norm(cross(points[i1] - points[i0], points[i] - points[i0])) > eps * scale) {
      i2 = i;
      break;
    }
  }
  if (i2 < 0) throw std::invalid_argument("convex_hull: points are collinear");
  const Vec3 n012 = cross(points[i1] - points[i0], points[i2] - points[i0]);
  for (int i = 0; i < np; ++i) {
    if (i == i0 || i == i1 || i == i2) continue;
    if (std::abs(dot(points[i] - points[i0], n012)) > eps * scale * scale) {
      i3 = i;
      break;
    }
  }
  if (i3 < 0) throw std::invalid_argument("convex_hull: points are coplanar");
  if (dot(points[i3] - points[i0], n012) > 0.0) std::swap(i1, i2);

  std::vector<HullFace> faces;
  auto add_face = [&](int a, int b, int c) {
    HullFace f;
    f.a = a;
    f.b = b;
    f.c = c;
    f.n = cross(points[static_cast<std::size_t>(b)] - points[static_cast<std::size_t>(a)],
                points[static_cast<std::size_t>(c)] - points[static_cast<std::size_t>(a)]);
    f.d = dot(f.n, points[static_cast<std::size_t>(a)]);
    faces.push_back(f);
  };
  add_face(i0, i1, i2);
  add_face(i0, i2, i3);
  add_face(i0, i3, i1);
  add_face(i1, i3, i2);

  for (int i = 0; i < np; ++i) {
    if (i == i0 || i == i1 || i == i2 || i == i3) continue;
    const Vec3& q = points[static_cast<std::size_t>(i)];

    std::vector<int> visible;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      if (!faces[f].alive) continue;
      if (dot(faces[f].n, q) - faces[f].d > eps * norm(faces[f].n)) {
        visible.push_back(static_cast<int>(f));
      }
    }
    if (visible.empty()) continue;  // point inside current hull

    // horizon = directed edges of visible faces whose twin is hidden
    std::map<std::pair<int, int>, int> edge_count;
    for (int f : visible) {
      const HullFace& hf = faces[static_cast<std::size_t>(f)];
      const int vs[3] = {hf.a, hf.b, hf.c};
      for (int k = 0; k < 3; ++k) {
        const int u0 = vs[k], u1 = vs[(k + 1) % 3];
        edge_count[{std::min(u0, u1), std::max(u0, u1)}]++;
      }
      faces[static_cast<std::size_t>(f)].alive = false;
    }
    for (int f : visible) {
      const HullFace hf = faces[static_cast<std::size_t>(f)];
      const int vs[3] = {hf.a, hf.b, hf.c};
      for (int k = 0; k < 3; ++k) {
        const int u0 = vs[k], u1 = vs[(k + 1) % 3];
        if (edge_count[{std::min(u0, u1), std::max(u0, u1)}] == 1) {
          add_face(u0, u1, i);  // keeps the outward winding of the dead face
        }
      }
    }
  }

  // compact vertices used by surviving faces
  std::vector<int> remap(points.size(), -1);
  std::vector<Vec3> verts;
  std::vector<std::vector<int>> out_faces;
  for (const HullFace& f : faces) {
    if (!f.alive) continue;
    std::vector<int> tri;
    for (int idx : {f.a, f.b, f.c}) {
      if (remap[static_cast<std::size_t>(idx)] < 0) {
        remap[static_cast<std::size_t>(idx)] = static_cast<int>(verts.size());
        verts.push_back(points[static_cast<std::size_t>(idx)]);
      }
      tri.push_back(remap[static_cast<std::size_t>(idx)]);
    }
    out_faces.push_back(std::move(tri));
  }
  return Polyhedron3D(std::move(verts), std::move(out_faces));
}

}  // namespace excursion
