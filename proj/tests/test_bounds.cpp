#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "excursion/bounds.hpp"
#include "excursion/quadform.hpp"
#include "excursion/quadrature.hpp"
#include "reference_values.hpp"

using namespace excursion;

namespace {

constexpr double kPi = 3.14159265358979323846;
const GeometrySummary2D kSquare{1.0, 4.0, 1};
const GeometrySummary2D kPoint{0.0, 0.0, 1};

}  // namespace

TEST_CASE("p_ec_2d: values and degenerate geometry") {
  CHECK(p_ec_2d(0.0, kSquare) == doctest::Approx(refvals::kPec_u0_T1).epsilon(1e-14));
  CHECK(p_ec_2d(3.0, kSquare) == doctest::Approx(refvals::kPec_u3_T1).epsilon(1e-14));
  for (double u : {-1.0, 0.5, 2.0}) {
    CHECK(p_ec_2d(u, kPoint) == doctest::Approx(bar_phi(u)).epsilon(1e-15));
  }
  CHECK_THROWS_AS(p_ec_2d(0.0, GeometrySummary2D{-1.0, 0.0, 1}), std::invalid_argument);
}

TEST_CASE("p_record_2d: values, degenerate geometry, gap to p_ec") {
  const FieldModel m = FieldModel::from_rho2(0.25);
  CHECK(p_record_2d(0.0, kSquare, m) ==
        doctest::Approx(refvals::kPrec_u0_T1_c_sqrt2).epsilon(1e-14));
  CHECK(p_record_2d(2.0, kSquare, m) ==
        doctest::Approx(refvals::kPrec_u2_T1_c_sqrt2).epsilon(1e-14));
  CHECK(p_record_2d(1.5, kPoint, m) == doctest::Approx(bar_phi(1.5)).epsilon(1e-15));

  // P_R - P_E = sigma2/(2 pi) phi(u) [c phi(u/c) - u barPhi(u/c)] >= 0
  const double c = m.c();
  for (double u : {0.0, 1.0, 2.0, 4.0}) {
    const double gap = p_record_2d(u, kSquare, m) - p_ec_2d(u, kSquare);
    const double closed =
        1.0 / (2.0 * kPi) * phi(u) * (c * phi(u / c) - u * bar_phi(u / c));
    CHECK(gap >= 0.0);
    CHECK(gap == doctest::Approx(closed).epsilon(1e-10));
  }
}

TEST_CASE("p_direct_2d: values and degenerate geometry") {
  const FieldModel m = FieldModel::from_rho2(0.25);
  CHECK(p_direct_2d(0.0, kSquare, m, 1e-10) ==
        doctest::Approx(refvals::kPdir_u0_T1_rho025).epsilon(1e-9));
  CHECK(p_direct_2d(2.0, kSquare, m, 1e-10) ==
        doctest::Approx(refvals::kPdir_u2_T1_rho025).epsilon(1e-9));
  CHECK(p_direct_2d(1.0, kPoint, m, 1e-10) == doctest::Approx(bar_phi(1.0)).epsilon(1e-15));
  CHECK(p_direct_2d(2.0, kSquare, m, 1e-10) >= p_record_2d(2.0, kSquare, m));
  CHECK_THROWS_AS(p_direct_2d(0.0, kSquare, m, 1e-3), std::invalid_argument);
}

TEST_CASE("direct-method integrand: the two algebraic forms agree pointwise") {
  for (double rho2 : {0.25, 0.5, 1.0, 2.0}) {
    const FieldModel m = FieldModel::from_rho2(rho2);
    for (double x : {1.0, 2.5, 6.0}) {
      const double a = direct_volume_integrand_exp_form(x, m);
      const double b = direct_volume_integrand_phi_form(x, m);
      CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
    }
  }
}

TEST_CASE("dimension-1 term ordering: gap integral is non-negative on [0, 10]") {
  const double c = std::sqrt(2.0);
  for (double u = 0.0; u <= 10.0; u += 0.5) {
    const auto gap_integrand = [c](double x) {
      return (c * phi(x / c) - x * bar_phi(x / c)) * phi(x);
    };
    const QuadResult q = integrate_adaptive(gap_integrand, u, u + 40.0, 1e-14, 1e-10);
    REQUIRE(q.converged);
    CHECK(q.value >= 0.0);
    // pointwise as well: phi(x)/x >= barPhi(x) for x > 0
    CHECK(gap_integrand(u + 0.25) >= 0.0);
  }
}

TEST_CASE("p_record_3d: shared volume bracket and cube values") {
  const FieldModel m = FieldModel::from_rho2(0.25);
  // geometry with only volume: the bound reduces to
  // barPhi + phi/(2 pi)^{3/2} * hessian_negdef_bound exactly
  const GeometrySummary3D vol_only{1.0, 0.0, 0.0, {}};
  for (double u : {0.0, 1.0, 3.0}) {
    const double implied =
        (p_record_3d(u, vol_only, m) - bar_phi(u)) / (phi(u) / std::pow(2.0 * kPi, 1.5));
    CHECK(implied == doctest::Approx(hessian_negdef_bound(u, m)).epsilon(1e-13));
  }
  const GeometrySummary3D zero{0.0, 0.0, 0.0, {}};
  CHECK(p_record_3d(2.0, zero, m) == doctest::Approx(bar_phi(2.0)).epsilon(1e-15));

  const GeometrySummary3D cube{1.0, 6.0, 1.5, {}};
  CHECK(p_record_3d(0.0, cube, m) ==
        doctest::Approx(refvals::kPrec3d_u0_cube_rho025).epsilon(1e-14));
  CHECK(p_record_3d(2.0, cube, m) ==
        doctest::Approx(refvals::kPrec3d_u2_cube_rho025).epsilon(1e-14));

  // decreasing in u for u >= 1 on the cube
  double prev = p_record_3d(1.0, cube, m);
  for (double u = 1.05; u <= 6.0; u += 0.05) {
    const double v = p_record_3d(u, cube, m);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("bound table: orderings on the unit square grid") {
  const UGrid grid = UGrid::linspace(0.0, 6.0, 200);
  for (double rho2 : {0.25, 0.5, 1.0}) {  // c = sqrt(2), sqrt(5), sqrt(11)
    const FieldModel m = FieldModel::from_rho2(rho2);
    const BoundTable t = make_bound_table(grid, kSquare, m, 1e-9);
    for (std::size_t i = 0; i < t.u.size(); ++i) {
      CHECK(t.pe[i] <= t.pr[i]);
      if (t.u[i] >= 2.0) CHECK(t.pr[i] <= t.pm[i]);
    }
    CHECK(record_direct_crossover(t) >= 0);
  }
}

TEST_CASE("bound curves are continuous in u (no truncation jumps)") {
  const FieldModel m = FieldModel::from_rho2(0.25);
  const double h = 1e-6;
  for (double u : {0.3, 1.7, 3.1, 4.9}) {
    // empirical Lipschitz constant from a coarse difference
    const double coarse = 0.01;
    for (int which = 0; which < 3; ++which) {
      const auto f = [&](double x) {
        if (which == 0) return p_ec_2d(x, kSquare);
        if (which == 1) return p_record_2d(x, kSquare, m);
        return p_direct_2d(x, kSquare, m, 1e-10);
      };
      const double lip = std::abs(f(u + coarse) - f(u)) / coarse + 1.0;
      CHECK(std::abs(f(u + h) - f(u)) <= 10.0 * lip * h);
    }
  }
}

TEST_CASE("direct vs record sigma2 corrections: positive gap, ratio grows with u") {
  const FieldModel m = FieldModel::from_rho2(0.25);
  const double c = m.c();
  const double kc = std::pow(2.0 * (c * c + 1.0) / 3.0, 1.5) * std::sqrt(kPi) / c;
  double prev_ratio = 0.0;
  for (double u = 5.0; u <= 10.0; u += 1.0) {
    const auto integrand = [&](double x) { return kc * phi(x / c) * phi(x); };
    const QuadResult q = integrate_adaptive(integrand, u, u + 40.0, 1e-60, 1e-10, 400000,
                                            geometric_breaks(u, u + 40.0, 0.25));
    REQUIRE(q.converged);
    const double a_d_corr = q.value;
    const double a_r_corr = (c * phi(u / c) - u * bar_phi(u / c)) * phi(u);
    CHECK(a_d_corr > a_r_corr);
    const double ratio = a_d_corr / a_r_corr;
    CHECK(ratio > prev_ratio);
    prev_ratio = ratio;
  }
}

TEST_CASE("swiss_cheese_bound: truncation choice") {
  const FieldModel m = FieldModel::from_rho2(0.25);
  const std::vector<Disk> disks = sierpinski_disks(4);

  // boundary term dominates at low u: no disk is worth removing
  CHECK(swiss_cheese_bound(0.0, disks, m).n_disks == 0);

  // scan oracle: recompute the minimand directly for every truncation
  for (double u : {0.0, 2.0, 5.0, 16.0}) {
    const SwissCheeseBound got = swiss_cheese_bound(u, disks, m);
    const double bracket = neg_part_mean(-u, m.c());
    double r = 0.0, r2 = 0.0;
    double best = phi(u) / (2.0 * std::sqrt(2.0 * kPi)) * 4.0 +
                  bracket * phi(u) / (2.0 * kPi);
    int best_n = 0;
    for (std::size_t n = 1; n <= disks.size(); ++n) {
      r += disks[n - 1].radius;
      r2 += disks[n - 1].radius * disks[n - 1].radius;
      const double v = phi(u) / (2.0 * std::sqrt(2.0 * kPi)) * (4.0 + 2.0 * kPi * r) +
                       (1.0 - kPi * r2) * bracket * phi(u) / (2.0 * kPi);
      if (v < best) {
        best = v;
        best_n = static_cast<int>(n);
      }
    }
    CHECK(got.n_disks == best_n);
    CHECK(got.value == doctest::Approx(bar_phi(u) + best).epsilon(1e-14));
  }

  // minimizing n is non-decreasing in u; with c = sqrt(2) the first disk
  // starts paying off only near u ~ 15
  int prev = 0;
  for (double u = 0.0; u <= 6.0; u += 1.0) {
    const int n = swiss_cheese_bound(u, disks, m).n_disks;
    CHECK(n >= prev);
    prev = n;
  }
  CHECK(swiss_cheese_bound(16.0, disks, m).n_disks > 0);
}

TEST_CASE("optimize_direction") {
  // isotropic: constant quartic, tie resolves to angle 0
  const DirectionChoice iso = optimize_direction({3.0, 0.0, 1.0, 0.0, 3.0});
  CHECK(iso.angle == 0.0);
  CHECK(iso.variance == doctest::Approx(3.0).epsilon(1e-14));
  REQUIRE(iso.c.has_value());
  CHECK(*iso.c == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

  // minimum at pi/2 with variance 2
  const DirectionChoice aniso = optimize_direction({4.0, 0.0, 1.0, 0.0, 2.0});
  CHECK(aniso.angle == doctest::Approx(kPi / 2.0).epsilon(1e-6));
  CHECK(aniso.variance == doctest::Approx(2.0).epsilon(1e-10));
  REQUIRE(aniso.c.has_value());
  CHECK(*aniso.c == doctest::Approx(1.0).epsilon(1e-9));

  // constant quartic exactly at the assumption boundary: no c
  const DirectionChoice flat = optimize_direction({1.0, 0.0, 1.0 / 3.0, 0.0, 1.0});
  CHECK(flat.variance == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_FALSE(flat.c.has_value());

  CHECK_THROWS_AS(optimize_direction({-1.0, 0.0, 0.0, 0.0, -1.0}), std::invalid_argument);
}

TEST_CASE("sharpness_exponent: definition, errors, and square diagnostics") {
  const double c = std::sqrt(2.0);
  const double limit = 1.0 + 1.0 / (c * c);
  for (double u : {2.0, 5.0}) {
    CHECK(sharpness_exponent(u, std::exp(-u * u * limit / 2.0)) ==
          doctest::Approx(limit).epsilon(1e-13));
  }
  CHECK_THROWS_AS(sharpness_exponent(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(sharpness_exponent(1.0, -1e-10), std::invalid_argument);
  CHECK_THROWS_AS(sharpness_exponent(0.0, 0.5), std::invalid_argument);

  const FieldModel m = FieldModel::from_rho2(0.25);
  double r_prev = 0.0;
  for (double u : {6.0, 8.0, 10.0}) {
    const double delta = p_record_2d(u, kSquare, m) - p_ec_2d(u, kSquare);
    const double r = sharpness_exponent(u, delta);
    CHECK(r >= 1.4);
    CHECK(r > limit);  // approaches 1.5 from above
    if (r_prev > 0.0) CHECK(r < r_prev);
    r_prev = r;
  }
  const double r6 = sharpness_exponent(6.0, p_record_2d(6.0, kSquare, m) - p_ec_2d(6.0, kSquare));
  const double r8 = sharpness_exponent(8.0, p_record_2d(8.0, kSquare, m) - p_ec_2d(8.0, kSquare));
  const double r10 =
      sharpness_exponent(10.0, p_record_2d(10.0, kSquare, m) - p_ec_2d(10.0, kSquare));
  CHECK(r6 == doctest::Approx(refvals::kSharpness_u6).epsilon(1e-4));
  CHECK(r8 == doctest::Approx(refvals::kSharpness_u8).epsilon(1e-4));
  CHECK(r10 == doctest::Approx(refvals::kSharpness_u10).epsilon(1e-3));
  // u = 10 sits closer to the limit than u = 8
  CHECK(std::abs(r10 - limit) < std::abs(r8 - limit));
}
