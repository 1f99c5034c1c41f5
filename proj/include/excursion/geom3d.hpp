#pragma once

#include <cstddef>
#include <vector>

namespace excursion {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
double norm(Vec3 a);
Vec3 normalized(Vec3 a);

/// Closed, outward-oriented, convex polyhedron.  Faces are vertex-index
/// cycles; every edge must be shared by exactly two faces with opposite
/// directions, and every vertex must lie on or inside every face plane
/// (tolerance 1e-9 * diameter).
class Polyhedron3D {
 public:
  Polyhedron3D(std::vector<Vec3> vertices, std::vector<std::vector<int>> faces);

  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<std::vector<int>>& faces() const { return faces_; }
  Vec3 face_normal(std::size_t f) const { return normals_[f]; }
  double face_area(std::size_t f) const { return areas_[f]; }
  double diameter() const { return diameter_; }

  struct Edge {
    int v0, v1;      // vertex indices, v0 < v1
    int f0, f1;      // adjacent faces
    double length;
    double dihedral;  // interior dihedral angle, in (0, pi) for convex bodies
  };
  const std::vector<Edge>& edges() const { return edges_; }

 private:
  std::vector<Vec3> vertices_;
  std::vector<std::vector<int>> faces_;
  std::vector<Vec3> normals_;
  std::vector<double> areas_;
  std::vector<Edge> edges_;
  double diameter_ = 0.0;
};

struct GeometrySummary3D {
  double volume = 0.0;        // sigma_3(S)
  double surface_area = 0.0;  // sigma_2(S)
  double caliper = 0.0;       // lambda(S) = sum l_i (pi - theta_i) / (4 pi)
  std::vector<std::pair<double, double>> edges;  // (length, dihedral)
};

GeometrySummary3D polyhedron_summary(const Polyhedron3D& p);

/// Signed projection of the closed surface onto the plane normal to `axis`:
/// sum over faces of area * (outward normal . axis).  Zero in exact
/// arithmetic; the result is the floating-point defect.
double face_projection_defect(const Polyhedron3D& p, Vec3 axis);

/// Angles of the trihedral configuration at one edge against an upward
/// direction: theta1, theta2 between the in-face horizontal directions and
/// the ascending edge direction, theta3 the interior dihedral.
struct EdgeTrihedral {
  double length;
  double theta1;
  double theta2;
  double theta3;
};

/// Throws std::domain_error when an edge or a face is horizontal w.r.t.
/// `up` (non-generic direction).
std::vector<EdgeTrihedral> edge_trihedral_angles(const Polyhedron3D& p, Vec3 up);

/// Convex hull of a 3D point set (incremental), returned with triangular
/// faces.  Needs at least 4 points in general position.
Polyhedron3D convex_hull(const std::vector<Vec3>& points);

Polyhedron3D make_box(double a, double b, double c);
Polyhedron3D make_cube();
Polyhedron3D make_regular_tetrahedron(double edge);

}  // namespace excursion
