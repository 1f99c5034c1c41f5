#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "excursion/field_model.hpp"

namespace excursion {

/// Data for E|<Y,AY> + <b,Y> + c0| with Y ~ N(0, sigma).
/// sigma must be symmetric positive-definite, A symmetric (to 1e-12
/// relative), dimensions consistent.  Validated on construction.
class QuadFormProblem {
 public:
  QuadFormProblem(Eigen::MatrixXd sigma, Eigen::MatrixXd A, Eigen::VectorXd b, double c0);

  const Eigen::MatrixXd& sigma() const { return sigma_; }
  const Eigen::MatrixXd& A() const { return A_; }
  const Eigen::VectorXd& b() const { return b_; }
  double c0() const { return c0_; }
  Eigen::Index dim() const { return sigma_.rows(); }

 private:
  Eigen::MatrixXd sigma_;
  Eigen::MatrixXd A_;
  Eigen::VectorXd b_;
  double c0_;
};

/// The conditioned-Hessian problem of a standard stationary isotropic 2D
/// field at level u: Y is the centered triple (X''_11, X''_12, X''_22)
/// shifted by (-u, 0, -u), and the quadratic form is its determinant.
QuadFormProblem hessian_problem(double u, const FieldModel& m);

/// E|<Y,AY> + <b,Y> + c0| via the Fourier-integral identity
///   E|W| = (2/pi) int_0^inf t^{-2} (1 - Re psi_W(t)) dt,
/// evaluated with a branch-continuous per-eigenvalue factorization of
/// det(I - 2 i t sigma A)^{1/2}.  Absolute accuracy `tol`
/// (tol in (1e-12, 1e-3)).  Throws QuadratureError carrying the partial
/// estimate when the evaluation budget is exhausted.
double liwei_expectation(const QuadFormProblem& p, double tol);

/// Closed form of E(|det X''| | X = u, X' = 0) for the standard isotropic
/// model:  u^2 - 1 + 2 (8 rho2)^{3/2} exp(-u^2/(24 rho2 - 2)) / sqrt(24 rho2 - 2).
double hessian_abs_det(double u, const FieldModel& m);

/// Bound on E(|det X''| 1{X'' negdef} | X = u, X' = 0):
/// exactly (hessian_abs_det(u, m) + u^2 - 1) / 2.
double hessian_negdef_bound(double u, const FieldModel& m);

struct HessianSampleMoments {
  long long n = 0;
  double mean_abs_det = 0.0, se_abs_det = 0.0;
  double mean_det = 0.0, se_det = 0.0;
  double mean_negdef_abs_det = 0.0, se_negdef_abs_det = 0.0;
  double negdef_freq = 0.0;
};

/// Monte Carlo moments of the conditioned Hessian triple
/// (Y1, Y2, Y3) + (-u, 0, -u).  Results are bit-identical for a given
/// (u, m, count, seed) regardless of worker count: samples are drawn in
/// fixed-size chunks, each from its own seed-derived substream, and
/// reduced in chunk order.
HessianSampleMoments conditioned_hessian_sampler(double u, const FieldModel& m,
                                                 long long count, std::uint64_t seed);

}  // namespace excursion
