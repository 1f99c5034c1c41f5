#pragma once

#include <cmath>
#include <stdexcept>

namespace excursion {

/// Normalized stationary field model, carried by rho2 = rho''(0) with
/// Var(X) = 1, Var(X') = I.  Then Var(X''_11) = 12 rho2 and
/// c = sqrt(12 rho2 - 1) must be positive.
class FieldModel {
 public:
  static FieldModel from_rho2(double rho2) {
    if (!std::isfinite(rho2) || !(12.0 * rho2 > 1.0)) {
      throw std::invalid_argument(
          "Assumption 1 violated: Var(X''_11) <= 1 (need 12*rho2 > 1)");
    }
    return FieldModel(rho2, std::sqrt(12.0 * rho2 - 1.0));
  }

  static FieldModel from_c(double c) {
    if (!std::isfinite(c) || !(c > 0.0)) {
      throw std::invalid_argument(
          "Assumption 1 violated: Var(X''_11) <= 1 (need c > 0)");
    }
    return FieldModel((c * c + 1.0) / 12.0, c);
  }

  double rho2() const { return rho2_; }
  double c() const { return c_; }

 private:
  FieldModel(double rho2, double c) : rho2_(rho2), c_(c) {}
  double rho2_;
  double c_;
};

}  // namespace excursion
