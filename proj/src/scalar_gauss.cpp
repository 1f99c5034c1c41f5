#include "excursion/scalar_gauss.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace excursion {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779;
constexpr double kInvSqrt2 = 0.7071067811865475244;
constexpr double kTwoPi = 6.2831853071795864769;
constexpr double kTwoPiPow32 = 15.749609945722419663;  // (2 pi)^{3/2}

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument(std::string(what) + " must be finite");
  }
}

}  // namespace

UGrid::UGrid(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw std::invalid_argument("UGrid entries must be finite");
    }
    if (i > 0 && !(values_[i] > values_[i - 1])) {
      throw std::invalid_argument("UGrid must be strictly increasing");
    }
  }
}

UGrid UGrid::linspace(double min, double max, int count) {
  if (count < 1) throw std::invalid_argument("UGrid::linspace needs count >= 1");
  if (count == 1) {
    if (min != max) throw std::invalid_argument("UGrid::linspace with count 1 needs min == max");
    return UGrid({min});
  }
  if (!(max > min)) throw std::invalid_argument("UGrid::linspace needs max > min");
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    v[static_cast<std::size_t>(i)] = min + (max - min) * i / (count - 1);
  }
  v.back() = max;
  return UGrid(std::move(v));
}

double phi(double x) {
  require_finite(x, "phi argument");
  return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double Phi(double x) {
  require_finite(x, "Phi argument");
  return 0.5 * std::erfc(-x * kInvSqrt2);
}

double bar_phi(double x) {
  require_finite(x, "bar_phi argument");
  return 0.5 * std::erfc(x * kInvSqrt2);
}

double neg_part_mean(double m, double s) {
  require_finite(m, "neg_part_mean mean");
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw std::invalid_argument("neg_part_mean needs s > 0");
  }
  const double r = m / s;
  return s * phi(r) - m * bar_phi(r);
}

double half_plane_integral(double m) {
  require_finite(m, "half_plane_integral argument");
  return 0.25 + std::atan(m) / kTwoPi;
}

double wedge_expectation(double theta) {
  require_finite(theta, "wedge_expectation angle");
  constexpr double pi = 3.14159265358979323846;
  if (!(theta > 0.0) || !(theta <= pi)) {
    throw std::invalid_argument("wedge_expectation needs theta in (0, pi]");
  }
  return (1.0 - std::cos(theta)) * (0.5 * kInvSqrt2Pi);
}

double edge3d_term(double theta1, double theta2, double theta3) {
  constexpr double pi = 3.14159265358979323846;
  require_finite(theta1, "edge3d_term theta1");
  require_finite(theta2, "edge3d_term theta2");
  require_finite(theta3, "edge3d_term theta3");
  if (!(theta1 > 0.0 && theta1 < pi) || !(theta2 > 0.0 && theta2 < pi)) {
    throw std::invalid_argument("edge3d_term needs theta1, theta2 in (0, pi)");
  }
  const double s3 = std::sin(theta3);
  if (!(theta3 > 0.0 && theta3 < pi) || s3 == 0.0) {
    throw std::invalid_argument("edge3d_term: degenerate dihedral (sin theta3 = 0)");
  }
  const double c1 = std::cos(theta1), s1 = std::sin(theta1);
  const double c2 = std::cos(theta2), s2 = std::sin(theta2);
  const double c3 = std::cos(theta3);

  const double arg_a = (-s2 * (c1 / s1) + c3 * c2) / s3;
  const double arg_b = (-s1 * (c2 / s2) + c3 * c1) / s3;
  double v = (pi - theta3) / kTwoPiPow32
             - c2 * kInvSqrt2Pi * half_plane_integral(arg_a)
             - c1 * kInvSqrt2Pi * half_plane_integral(arg_b);
  if (v < 0.0) {
    if (v < -1e-15) {
      throw std::domain_error("edge3d_term: negative value outside cancellation tolerance");
    }
    v = 0.0;
  }
  return v;
}

}  // namespace excursion
