#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "excursion/field_model.hpp"
#include "excursion/geom2d.hpp"
#include "excursion/geom3d.hpp"
#include "excursion/scalar_gauss.hpp"

namespace excursion {

/// Squared-exponential covariance rho(s) = exp(-s/2) of the squared
/// distance s, the one normalization with Var(X) = 1, Var(X') = I; it has
/// rho''(0) = 1/4.  Other decay rates would need re-standardization and
/// are rejected.
class KernelSpec {
 public:
  static KernelSpec squared_exponential(double decay = 0.5);
  double rho2() const { return 0.25; }
  FieldModel model() const { return FieldModel::from_rho2(rho2()); }

 private:
  KernelSpec() = default;
};

/// Empirical tail of the grid maximum.  p_hat is non-increasing in u;
/// half_width = 1.96 sqrt(p(1-p)/n).  `bound` holds the record-method bound
/// of the same configuration; `valid` is false when some
/// p_hat > bound + 3 * half_width (the grid maximum is a lower bound for
/// the continuous maximum, so that event fails the run).
struct TailEstimate {
  std::vector<double> u;
  std::vector<double> p_hat;
  std::vector<double> half_width;
  std::vector<double> bound;
  long long n_samples = 0;
  double grid_step = 0.0;
  std::uint64_t seed = 0;
  double jitter_used = 0.0;
  std::size_t grid_points = 0;
  bool valid = true;
};

TailEstimate simulate_tail_2d(const Polygon2D& region, const KernelSpec& k, double step,
                              const UGrid& u, long long n, std::uint64_t seed);
TailEstimate simulate_tail_2d(const CompositeRegion2D& region, const KernelSpec& k,
                              double step, const UGrid& u, long long n, std::uint64_t seed);
TailEstimate simulate_tail_3d(const Polyhedron3D& region, const KernelSpec& k, double step,
                              const UGrid& u, long long n, std::uint64_t seed);

struct McCheckCase {
  std::string label;
  double closed_form = 0.0;
  double estimate = 0.0;
  double std_error = 0.0;
  bool pass = false;  // |estimate - closed_form| <= 3 * std_error
};

struct McCheckReport {
  std::vector<McCheckCase> cases;
  bool all_pass = true;
};

/// Monte Carlo confirmation of the wedge expectation and the trihedral
/// edge coefficient against their closed forms (n >= 1e6 per case).
McCheckReport mc_wedge_and_edge_checks(std::uint64_t seed, long long n);

}  // namespace excursion
