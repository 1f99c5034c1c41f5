#pragma once

#include <cstddef>
#include <vector>

namespace excursion {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double norm(Vec2 a);

/// Simple polygon, counterclockwise, >= 3 pairwise-distinct consecutive
/// vertices, no self-intersection.  Validated on construction.
class Polygon2D {
 public:
  explicit Polygon2D(std::vector<Vec2> vertices);
  const std::vector<Vec2>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }

 private:
  std::vector<Vec2> vertices_;
};

struct Disk {
  Vec2 center;
  double radius = 0.0;
};

/// Polygon with disjoint open disks removed from its interior.
class CompositeRegion2D {
 public:
  CompositeRegion2D(Polygon2D outer, std::vector<Disk> holes);
  const Polygon2D& outer() const { return outer_; }
  const std::vector<Disk>& holes() const { return holes_; }

 private:
  Polygon2D outer_;
  std::vector<Disk> holes_;
};

/// area = sigma_2(S); boundary_length = sigma_1(boundary) for polygons or
/// the outer Minkowski content for punctured regions; components >= 1.
struct GeometrySummary2D {
  double area = 0.0;
  double boundary_length = 0.0;
  int components = 1;
};

double polygon_area(const Polygon2D& p);
double polygon_perimeter(const Polygon2D& p);

/// Sum over edges of length * cos(angle between edge ascent direction and
/// `axis`), signs taken exactly as in the closed-boundary projection
/// argument.  Identically zero in exact arithmetic; the returned value is
/// the accumulated floating-point defect (|result| <= 1e-12 * perimeter).
double projection_identity_defect(const Polygon2D& p, Vec2 axis);

struct EmptyableResult {
  bool emptyable = false;
  bool perturbed = false;  // ordinate ties broken by the fixed 1e-12 rotation
  operator bool() const { return emptyable; }
};

/// Decides whether the polygon, with `up` as the vertical direction, can be
/// drained through its lowest vertex along non-decreasing-ordinate paths.
/// For a generic simple polygon this holds iff no strict local minimum of
/// the boundary ordinate other than the global one is a convex vertex
/// (a convex local minimum is a cup that traps water).
EmptyableResult is_emptyable(const Polygon2D& p, Vec2 up);

/// Disks of the Sierpinski-carpet construction on the unit square, in
/// level-major order: 8^{k-1} disks of radius 3^{-k}/2 at level k.
std::vector<Disk> sierpinski_disks(int levels, std::size_t max_disks = 1000000);

/// Closed-form partial sums over the first `levels` levels.
double sierpinski_radius_sum(int levels);
double sierpinski_radius_sq_sum(int levels);
/// Smallest level count whose radius partial sum exceeds `target`.
int sierpinski_level_exceeding_radius_sum(double target);

GeometrySummary2D polygon_summary(const Polygon2D& p);
/// area(outer) - pi sum r_i^2;  boundary = perimeter(outer) + 2 pi sum r_i
/// (outer Minkowski content of the punctured region); one component.
GeometrySummary2D composite_summary(const CompositeRegion2D& c);

bool point_in_polygon(const Polygon2D& p, Vec2 q);

}  // namespace excursion
