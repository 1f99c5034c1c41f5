#pragma once

#include <array>
#include <optional>
#include <vector>

#include "excursion/field_model.hpp"
#include "excursion/geom2d.hpp"
#include "excursion/geom3d.hpp"
#include "excursion/scalar_gauss.hpp"

namespace excursion {

/// Euler-characteristic approximation (not an upper bound):
///   components * barPhi(u) + sigma1/(2 sqrt(2 pi)) phi(u) + sigma2/(2 pi) u phi(u)
double p_ec_2d(double u, const GeometrySummary2D& g);

/// Record-method bound:
///   components * barPhi(u) + sigma1/(2 sqrt(2 pi)) phi(u)
///   + sigma2/(2 pi) [c phi(u/c) + u Phi(u/c)] phi(u)
/// boundary_length carries sigma1(dS) or the outer Minkowski content,
/// depending on the region kind that produced the summary.
double p_record_2d(double u, const GeometrySummary2D& g, const FieldModel& m);

/// Direct (Rice) method bound; the two tail integrals are evaluated by
/// adaptive quadrature with the discarded tail below tol/4.
double p_direct_2d(double u, const GeometrySummary2D& g, const FieldModel& m, double tol);

/// The two algebraic forms of the direct method's volume-term integrand;
/// they agree pointwise to 1e-12 (8 rho2 = 2(c^2+1)/3, 24 rho2 - 2 = 2 c^2).
double direct_volume_integrand_exp_form(double x, const FieldModel& m);
double direct_volume_integrand_phi_form(double x, const FieldModel& m);

/// 3D record bound for a convex polyhedron:
///   barPhi(u) + 2 lambda/sqrt(2 pi) phi(u)
///   + sigma2 phi(u)/(4 pi) [c phi(u/c) + u Phi(u/c)]
///   + sigma3 phi(u)/(2 pi)^{3/2} * hessian_negdef_bound(u, m)
double p_record_3d(double u, const GeometrySummary3D& g, const FieldModel& m);

struct SwissCheeseBound {
  double value = 0.0;
  int n_disks = 0;  // minimizing truncation (number of removed disks)
};

/// barPhi(u) + min over n of
///   [ phi(u)/(2 sqrt(2 pi)) (4 + 2 pi sum_{i<=n} r_i)
///     + (1 - pi sum_{i<=n} r_i^2) [c phi(u/c)+u Phi(u/c)] phi(u)/(2 pi) ]
/// over truncations n = 0..disks.size(); ties resolve to the smallest n.
SwissCheeseBound swiss_cheese_bound(double u, const std::vector<Disk>& disks,
                                    const FieldModel& m);

struct DirectionChoice {
  double angle = 0.0;     // argmin of Var(X''_aa) over [0, pi)
  double variance = 0.0;  // the minimal variance
  std::optional<double> c;  // sqrt(variance - 1); absent when variance <= 1
};

/// Minimizes V(a) = sum_k binom(4,k) mu_{4-k,k} cos^{4-k}(a) sin^k(a) over
/// [0, pi) by dense scan plus local refinement.  Moments ordered
/// (mu40, mu31, mu22, mu13, mu04).  c is absent when the minimal variance
/// violates the model assumption (V_min <= 1).
DirectionChoice optimize_direction(const std::array<double, 5>& fourth_moments);

/// Sharpness diagnostic r(u) = -2 ln(delta) / u^2 for the gap
/// delta = P_R(u) - P_E(u); approaches 1 + 1/c^2 from above as u grows.
double sharpness_exponent(double u, double delta);

/// Evaluated bound curves over a grid; entries may exceed 1 (these are
/// bounds, clamping is presentation-only).
struct BoundTable {
  std::vector<double> u;
  std::vector<double> pe;
  std::vector<double> pr;
  std::vector<double> pm;
  GeometrySummary2D geometry;
  double rho2 = 0.0;
};

BoundTable make_bound_table(const UGrid& grid, const GeometrySummary2D& g,
                            const FieldModel& m, double tol);

/// First grid index from which P_R <= P_M holds through the end of the
/// grid, or -1 when it never does.  The empirical crossover is reported
/// per configuration instead of hard-coding one.
int record_direct_crossover(const BoundTable& t);

}  // namespace excursion
