#include "excursion/geom2d.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <string>
#include <utility>

namespace excursion {

namespace {

double signed_area2(const std::vector<Vec2>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2& a = v[i];
    const Vec2& b = v[(i + 1) % v.size()];
    s += a.x * b.y - b.x * a.y;
  }
  return s;
}

int orient(Vec2 a, Vec2 b, Vec2 c) {
  const double d = cross(b - a, c - a);
  if (d > 0.0) return 1;
  if (d < 0.0) return -1;
  return 0;
}

bool on_segment(Vec2 a, Vec2 b, Vec2 q) {
  return std::min(a.x, b.x) <= q.x && q.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= q.y && q.y <= std::max(a.y, b.y);
}

// Any contact between the two closed segments counts as an intersection.
bool segments_intersect(Vec2 p1, Vec2 p2, Vec2 p3, Vec2 p4) {
  const int d1 = orient(p3, p4, p1);
  const int d2 = orient(p3, p4, p2);
  const int d3 = orient(p1, p2, p3);
  const int d4 = orient(p1, p2, p4);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  if (d1 == 0 && on_segment(p3, p4, p1)) return true;
  if (d2 == 0 && on_segment(p3, p4, p2)) return true;
  if (d3 == 0 && on_segment(p1, p2, p3)) return true;
  if (d4 == 0 && on_segment(p1, p2, p4)) return true;
  return false;
}

Vec2 rotate(Vec2 v, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

Vec2 unit_or_throw(Vec2 v, const char* what) {
  const double n = norm(v);
  if (!std::isfinite(n) || n < 1e-12) {
    throw std::invalid_argument(std::string(what) + ": zero direction");
  }
  return {v.x / n, v.y / n};
}

}  // namespace

double norm(Vec2 a) { return std::hypot(a.x, a.y); }

Polygon2D::Polygon2D(std::vector<Vec2> vertices) : vertices_(std::move(vertices)) {
  const std::size_t n = vertices_.size();
  if (n < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
  for (const Vec2& v : vertices_) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) {
      throw std::invalid_argument("polygon vertices must be finite");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 d = vertices_[(i + 1) % n] - vertices_[i];
    if (d.x == 0.0 && d.y == 0.0) {
      throw std::invalid_argument("polygon has repeated consecutive vertices");
    }
  }
  // spikes (edge folding straight back) make the boundary non-simple
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 d0 = vertices_[(i + 1) % n] - vertices_[i];
    const Vec2 d1 = vertices_[(i + 2) % n] - vertices_[(i + 1) % n];
    if (cross(d0, d1) == 0.0 && dot(d0, d1) < 0.0) {
      throw std::invalid_argument("degenerate polygon: spike at vertex " +
                                  std::to_string((i + 1) % n));
    }
  }
  if (!(signed_area2(vertices_) > 0.0)) {
    throw std::invalid_argument("polygon must be counterclockwise with positive area");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (segments_intersect(vertices_[i], vertices_[(i + 1) % n],
                             vertices_[j], vertices_[(j + 1) % n])) {
        throw std::invalid_argument("polygon is self-intersecting (edges " +
                                    std::to_string(i) + ", " + std::to_string(j) + ")");
      }
    }
  }
}

double polygon_area(const Polygon2D& p) { return 0.5 * signed_area2(p.vertices()); }

double polygon_perimeter(const Polygon2D& p) {
  const auto& v = p.vertices();
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    s += norm(v[(i + 1) % v.size()] - v[i]);
  }
  return s;
}

double projection_identity_defect(const Polygon2D& p, Vec2 axis) {
  const Vec2 ax = unit_or_throw(axis, "projection axis");
  const Vec2 ay{-ax.y, ax.x};
  const auto& v = p.vertices();
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2 e = v[(i + 1) % v.size()] - v[i];
    const double len = norm(e);
    const double b = dot(e, ay);  // rise along the ordinate
    const double a = dot(e, ax);
    if (b == 0.0) {
      // horizontal edge: its oriented projection is the full signed length
      sum += -a;
      continue;
    }
    const double ascent_sign = b > 0.0 ? 1.0 : -1.0;
    const Vec2 alpha = (ascent_sign / len) * e;          // upward unit direction
    const double beta_sign = b > 0.0 ? -1.0 : 1.0;       // inward horizontal
    sum += len * beta_sign * dot(alpha, ax);
  }
  return sum;
}

EmptyableResult is_emptyable(const Polygon2D& p, Vec2 up) {
  Vec2 u = unit_or_throw(up, "up direction");
  const auto& v = p.vertices();
  const std::size_t n = v.size();

  auto ordinates = [&](Vec2 dir) {
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = dot(v[i], dir);
    return y;
  };
  auto has_tie = [&](const std::vector<double>& y) {
    std::vector<double> s = y;
    std::sort(s.begin(), s.end());
    return std::adjacent_find(s.begin(), s.end()) != s.end();
  };

  bool perturbed = false;
  std::vector<double> y = ordinates(u);
  if (has_tie(y)) {
    perturbed = true;
    u = rotate(u, 1e-12);
    y = ordinates(u);
    if (has_tie(y)) {
      throw std::runtime_error(
          "is_emptyable: vertex ordinate tie persists after 1e-12 rotation; "
          "polygon is not in generic position for this direction");
    }
  }

  const std::size_t gm = static_cast<std::size_t>(
      std::min_element(y.begin(), y.end()) - y.begin());
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t ip = (i + n - 1) % n;
    const std::size_t in = (i + 1) % n;
    const bool local_min = y[i] < y[ip] && y[i] < y[in];
    if (!local_min || i == gm) continue;
    // convex local minimum = upward-opening cup; traps water above it
    if (cross(v[i] - v[ip], v[in] - v[i]) > 0.0) {
      return {false, perturbed};
    }
  }
  return {true, perturbed};
}

std::vector<Disk> sierpinski_disks(int levels, std::size_t max_disks) {
  if (levels < 1) throw std::invalid_argument("sierpinski_disks needs levels >= 1");
  std::size_t total = 0, level_count = 1;
  for (int k = 1; k <= levels; ++k) {
    if (level_count > max_disks || total + level_count > max_disks) {
      throw std::invalid_argument("sierpinski_disks: disk count exceeds cap of " +
                                  std::to_string(max_disks));
    }
    total += level_count;
    level_count *= 8;
  }

  std::vector<Disk> disks;
  disks.reserve(total);
  struct Square {
    Vec2 center;
    double side;
    int level;
  };
  std::deque<Square> queue{{Vec2{0.5, 0.5}, 1.0, 1}};
  while (!queue.empty()) {
    const Square s = queue.front();
    queue.pop_front();
    disks.push_back({s.center, s.side / 6.0});
    if (s.level == levels) continue;
    const double sub = s.side / 3.0;
    for (int dx = -1; dx <= 1; ++dx) {
      for (int dy = -1; dy <= 1; ++dy) {
        if (dx == 0 && dy == 0) continue;
        queue.push_back({{s.center.x + dx * sub, s.center.y + dy * sub}, sub, s.level + 1});
      }
    }
  }
  return disks;
}

double sierpinski_radius_sum(int levels) {
  if (levels < 0) throw std::invalid_argument("levels must be >= 0");
  // sum_{k<=n} 8^{k-1} * 3^{-k}/2  =  ((8/3)^n - 1) / 10
  return (std::pow(8.0 / 3.0, levels) - 1.0) / 10.0;
}

double sierpinski_radius_sq_sum(int levels) {
  if (levels < 0) throw std::invalid_argument("levels must be >= 0");
  // sum_{k<=n} 8^{k-1} * 9^{-k}/4  =  (1 - (8/9)^n) / 4
  return 0.25 * (1.0 - std::pow(8.0 / 9.0, levels));
}

int sierpinski_level_exceeding_radius_sum(double target) {
  if (!(target > 0.0)) throw std::invalid_argument("target must be positive");
  int level = 1;
  while (sierpinski_radius_sum(level) <= target) {
    ++level;
    if (level > 4000) throw std::runtime_error("radius-sum target unreachable");
  }
  return level;
}

CompositeRegion2D::CompositeRegion2D(Polygon2D outer, std::vector<Disk> holes)
    : outer_(std::move(outer)), holes_(std::move(holes)) {
  const auto& verts = outer_.vertices();
  double hole_area = 0.0;
  for (std::size_t i = 0; i < holes_.size(); ++i) {
    const Disk& d = holes_[i];
    if (!(d.radius > 0.0) || !std::isfinite(d.radius)) {
      throw std::invalid_argument("composite hole radius must be positive");
    }
    if (!point_in_polygon(outer_, d.center)) {
      throw std::invalid_argument("composite hole " + std::to_string(i) +
                                  " center outside the outer polygon");
    }
    for (std::size_t e = 0; e < verts.size(); ++e) {
      const Vec2 a = verts[e];
      const Vec2 b = verts[(e + 1) % verts.size()];
      const Vec2 ab = b - a;
      const double t = std::clamp(dot(d.center - a, ab) / dot(ab, ab), 0.0, 1.0);
      if (norm(d.center - (a + t * ab)) <= d.radius) {
        throw std::invalid_argument("composite hole " + std::to_string(i) +
                                    " touches the outer boundary");
      }
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (norm(d.center - holes_[j].center) <= d.radius + holes_[j].radius) {
        throw std::invalid_argument("composite holes " + std::to_string(j) + " and " +
                                    std::to_string(i) + " overlap");
      }
    }
    hole_area += 3.14159265358979323846 * d.radius * d.radius;
  }
  if (!(hole_area < polygon_area(outer_))) {
    throw std::invalid_argument("composite hole area exceeds the outer area");
  }
}

GeometrySummary2D polygon_summary(const Polygon2D& p) {
  return {polygon_area(p), polygon_perimeter(p), 1};
}

GeometrySummary2D composite_summary(const CompositeRegion2D& c) {
  constexpr double pi = 3.14159265358979323846;
  double r_sum = 0.0, r2_sum = 0.0;
  for (const Disk& d : c.holes()) {
    r_sum += d.radius;
    r2_sum += d.radius * d.radius;
  }
  return {polygon_area(c.outer()) - pi * r2_sum,
          polygon_perimeter(c.outer()) + 2.0 * pi * r_sum, 1};
}

bool point_in_polygon(const Polygon2D& p, Vec2 q) {
  const auto& v = p.vertices();
  bool inside = false;
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    if ((v[i].y > q.y) != (v[j].y > q.y)) {
      const double xi = v[j].x + (v[i].x - v[j].x) * (q.y - v[j].y) / (v[i].y - v[j].y);
      if (q.x < xi) inside = !inside;
    }
  }
  return inside;
}

}  // namespace excursion
