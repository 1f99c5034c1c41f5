#include "excursion/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "excursion/quadform.hpp"
#include "excursion/quadrature.hpp"

namespace excursion {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt2Pi = 2.5066282746310005024;

void check_summary(const GeometrySummary2D& g) {
  if (g.area < 0.0 || g.boundary_length < 0.0 || g.components < 1) {
    throw std::invalid_argument("geometry summary must have area, boundary >= 0 and components >= 1");
  }
}

// upper integration limit: envelope (x^2 + const) phi(x) below 1e-18 of its
// value near the lower limit
double tail_cutoff(double u) {
  double x = std::max(u, 1.0) + 2.0;
  const double ref = (std::max(u, 1.0) * std::max(u, 1.0) + 3.0) * phi(std::max(u, 0.0));
  while ((x * x + 3.0) * phi(x) > 1e-18 * ref && x < u + 60.0) x += 1.0;
  return x;
}

}  // namespace

double p_ec_2d(double u, const GeometrySummary2D& g) {
  check_summary(g);
  return g.components * bar_phi(u) + g.boundary_length / (2.0 * kSqrt2Pi) * phi(u) +
         g.area / (2.0 * kPi) * u * phi(u);
}

double p_record_2d(double u, const GeometrySummary2D& g, const FieldModel& m) {
  check_summary(g);
  return g.components * bar_phi(u) + g.boundary_length / (2.0 * kSqrt2Pi) * phi(u) +
         g.area / (2.0 * kPi) * neg_part_mean(-u, m.c()) * phi(u);
}

double direct_volume_integrand_exp_form(double x, const FieldModel& m) {
  const double d = 24.0 * m.rho2() - 2.0;
  return (x * x - 1.0 +
          std::pow(8.0 * m.rho2(), 1.5) * std::exp(-x * x / d) / std::sqrt(d)) *
         phi(x);
}

double direct_volume_integrand_phi_form(double x, const FieldModel& m) {
  const double c = m.c();
  const double k = std::pow(2.0 * (c * c + 1.0) / 3.0, 1.5) * std::sqrt(kPi) / c;
  return (x * x - 1.0 + k * phi(x / c)) * phi(x);
}

double p_direct_2d(double u, const GeometrySummary2D& g, const FieldModel& m, double tol) {
  check_summary(g);
  if (!(tol > 1e-12 && tol < 1e-4)) {
    throw std::invalid_argument("p_direct_2d: tol must lie in (1e-12, 1e-4)");
  }
  const double c = m.c();
  const double hi = tail_cutoff(u);
  const auto boundary_integrand = [c](double x) { return neg_part_mean(-x, c) * phi(x); };
  const auto volume_integrand = [&m](double x) { return direct_volume_integrand_exp_form(x, m); };

  const std::vector<double> breaks = geometric_breaks(u, hi, 0.25);
  const QuadResult i1 =
      integrate_adaptive(boundary_integrand, u, hi, 0.25 * tol, 1e-12, 400000, breaks);
  const QuadResult i2 =
      integrate_adaptive(volume_integrand, u, hi, 0.25 * tol, 1e-12, 400000, breaks);
  if (!i1.converged || !i2.converged) {
    const double partial = g.components * bar_phi(u) +
                           g.boundary_length / (2.0 * kSqrt2Pi) * i1.value +
                           g.area / (2.0 * kPi) * i2.value;
    throw QuadratureError("p_direct_2d: tail quadrature did not converge", partial,
                          i1.error + i2.error);
  }
  return g.components * bar_phi(u) + g.boundary_length / (2.0 * kSqrt2Pi) * i1.value +
         g.area / (2.0 * kPi) * i2.value;
}

double p_record_3d(double u, const GeometrySummary3D& g, const FieldModel& m) {
  if (g.volume < 0.0 || g.surface_area < 0.0 || g.caliper < 0.0) {
    throw std::invalid_argument("p_record_3d: geometry functionals must be non-negative");
  }
  return bar_phi(u) + 2.0 * g.caliper / kSqrt2Pi * phi(u) +
         g.surface_area * phi(u) / (4.0 * kPi) * neg_part_mean(-u, m.c()) +
         g.volume * phi(u) / std::pow(2.0 * kPi, 1.5) * hessian_negdef_bound(u, m);
}

SwissCheeseBound swiss_cheese_bound(double u, const std::vector<Disk>& disks,
                                    const FieldModel& m) {
  const double bracket = neg_part_mean(-u, m.c());
  const double pu = phi(u);
  double r_sum = 0.0, r2_sum = 0.0;
  double best = pu / (2.0 * kSqrt2Pi) * 4.0 + bracket * pu / (2.0 * kPi);
  int best_n = 0;
  for (std::size_t n = 0; n < disks.size(); ++n) {
    r_sum += disks[n].radius;
    r2_sum += disks[n].radius * disks[n].radius;
    const double v = pu / (2.0 * kSqrt2Pi) * (4.0 + 2.0 * kPi * r_sum) +
                     (1.0 - kPi * r2_sum) * bracket * pu / (2.0 * kPi);
    if (v < best) {
      best = v;
      best_n = static_cast<int>(n) + 1;
    }
  }
  return {bar_phi(u) + best, best_n};
}

DirectionChoice optimize_direction(const std::array<double, 5>& fourth_moments) {
  const auto V = [&fourth_moments](double a) {
    const double c = std::cos(a), s = std::sin(a);
    return fourth_moments[0] * c * c * c * c + 4.0 * fourth_moments[1] * c * c * c * s +
           6.0 * fourth_moments[2] * c * c * s * s + 4.0 * fourth_moments[3] * c * s * s * s +
           fourth_moments[4] * s * s * s * s;
  };

  constexpr int kScan = 1024;
  double best_a = 0.0, best_v = V(0.0);
  for (int i = 0; i < kScan; ++i) {
    const double a = kPi * i / kScan;
    const double v = V(a);
    if (!(v > 0.0)) {
      throw std::invalid_argument("optimize_direction: variance quartic is not positive on [0, pi)");
    }
    // improvements within rounding noise are ties; ties keep the smaller angle
    if (v < best_v - 1e-12 * (1.0 + std::abs(v))) {
      best_v = v;
      best_a = a;
    }
  }
  // local golden-section refinement around the scan minimum
  double lo = best_a - kPi / kScan, hi = best_a + kPi / kScan;
  constexpr double kGolden = 0.3819660112501051;
  double x1 = lo + kGolden * (hi - lo), x2 = hi - kGolden * (hi - lo);
  double f1 = V(x1), f2 = V(x2);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = lo + kGolden * (hi - lo);
      f1 = V(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = hi - kGolden * (hi - lo);
      f2 = V(x2);
    }
  }
  double a_min = 0.5 * (lo + hi);
  double v_min = V(a_min);
  // refinement must beat the scan by more than rounding noise, otherwise the
  // scan's tie rule (smallest angle) stands
  if (!(v_min < best_v - 1e-12 * (1.0 + std::abs(best_v)))) {
    a_min = best_a;
    v_min = best_v;
  }
  if (a_min < 0.0) a_min += kPi;
  if (a_min >= kPi) a_min -= kPi;

  DirectionChoice out;
  out.angle = a_min;
  out.variance = v_min;
  if (v_min > 1.0) out.c = std::sqrt(v_min - 1.0);
  return out;
}

double sharpness_exponent(double u, double delta) {
  if (!(u > 0.0)) throw std::invalid_argument("sharpness_exponent: u must be positive");
  if (!(delta > 0.0)) {
    throw std::invalid_argument("sharpness_exponent: bounds crossed within rounding (delta <= 0)");
  }
  if (!(delta < 1.0)) throw std::invalid_argument("sharpness_exponent: delta must lie in (0, 1)");
  return -2.0 * std::log(delta) / (u * u);
}

BoundTable make_bound_table(const UGrid& grid, const GeometrySummary2D& g,
                            const FieldModel& m, double tol) {
  BoundTable t;
  t.geometry = g;
  t.rho2 = m.rho2();
  t.u.assign(grid.begin(), grid.end());
  t.pe.reserve(grid.size());
  t.pr.reserve(grid.size());
  t.pm.reserve(grid.size());
  for (double u : grid) {
    const double pe = p_ec_2d(u, g);
    const double pr = p_record_2d(u, g, m);
    const double pm = p_direct_2d(u, g, m, tol);
    if (pe < 0.0 || pr < 0.0 || pm < 0.0 || pe > pr) {
      throw std::runtime_error("bound table invariant violated at u = " + std::to_string(u));
    }
    t.pe.push_back(pe);
    t.pr.push_back(pr);
    t.pm.push_back(pm);
  }
  return t;
}

int record_direct_crossover(const BoundTable& t) {
  int idx = -1;
  for (std::size_t i = 0; i < t.u.size(); ++i) {
    if (t.pr[i] <= t.pm[i]) {
      if (idx < 0) idx = static_cast<int>(i);
    } else {
      idx = -1;
    }
  }
  return idx;
}

}  // namespace excursion
