#pragma once

#include <cstddef>
#include <vector>

namespace excursion {

/// Strictly increasing grid of levels u. May be empty.
class UGrid {
 public:
  UGrid() = default;
  explicit UGrid(std::vector<double> values);
  static UGrid linspace(double min, double max, int count);

  const std::vector<double>& values() const { return values_; }
  bool empty() const { return values_.empty(); }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

 private:
  std::vector<double> values_;
};

/// Standard normal density.
double phi(double x);

/// Standard normal distribution function, evaluated through erfc so the
/// far tail keeps full relative accuracy instead of rounding to 0/1.
double Phi(double x);

/// 1 - Phi(x), non-vanishing down to ~1e-300 (x up to ~37).
double bar_phi(double x);

/// E(Z^-) for Z ~ N(m, s^2):  s phi(m/s) - m Phi(-m/s).
/// For m = -u, s = c this is the bracket c phi(u/c) + u Phi(u/c).
double neg_part_mean(double m, double s);

/// int_0^inf phi(x) Phi(m x) dx  =  1/4 + atan(m)/(2 pi).
double half_plane_integral(double m);

/// E( X+ 1{cos(theta) X + sin(theta) Y <= 0} ) for X, Y iid N(0,1):
/// (1 - cos(theta)) / (2 sqrt(2 pi)), theta in (0, pi].
double wedge_expectation(double theta);

/// Per-unit-length, per-phi(u) coefficient of the bound contribution of a
/// polyhedron edge with trihedral angles (theta1, theta2) against the upward
/// edge direction and interior dihedral theta3:
///
///   (pi - t3) / (2 pi)^{3/2}
///   - cos(t2)/sqrt(2 pi) * (1/4 + atan((-sin t2 cot t1 + cos t3 cos t2)/sin t3) / (2 pi))
///   - cos(t1)/sqrt(2 pi) * (1/4 + atan((-sin t1 cot t2 + cos t3 cos t1)/sin t3) / (2 pi))
///
/// Equals E( X'+_eta 1{X'_alpha <= 0} 1{X'_beta <= 0} ) and is always >= 0;
/// results above -1e-15 from cancellation are clamped to 0.
double edge3d_term(double theta1, double theta2, double theta3);

}  // namespace excursion
