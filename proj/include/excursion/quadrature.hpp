#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <stdexcept>
#include <vector>

namespace excursion {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  long evals = 0;
  bool converged = false;
};

/// Numerical-integration failure that still carries the best estimate
/// reached and its error bound.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& msg, double estimate, double error_bound)
      : std::runtime_error(msg), estimate_(estimate), error_bound_(error_bound) {}
  double estimate() const { return estimate_; }
  double error_bound() const { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

namespace detail {

// Gauss-Kronrod (G7, K15) nodes on [0,1] side, weights for [-1,1].
inline constexpr double kGK15Nodes[8] = {
    0.0,
    0.2077849550078985, 0.4058451513773972, 0.5860872354676911,
    0.7415311855993944, 0.8648644233597691, 0.9491079123427585,
    0.9914553711208126};
inline constexpr double kK15Weights[8] = {
    0.2094821410847278,
    0.2044329400752989, 0.1903505780647854, 0.1690047266392679,
    0.1406532597155259, 0.1047900103222502, 0.0630920926299786,
    0.0229353220105292};
inline constexpr double kG7Weights[4] = {
    0.4179591836734694, 0.3818300505051189, 0.2797053914892767,
    0.1294849661688697};

template <class F>
inline void gk15(const F& f, double a, double b, double& value, double& err) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double f0 = f(c);
  double k15 = kK15Weights[0] * f0;
  double g7 = kG7Weights[0] * f0;
  for (int i = 1; i < 8; ++i) {
    const double dx = h * kGK15Nodes[i];
    const double fs = f(c + dx) + f(c - dx);
    k15 += kK15Weights[i] * fs;
    if (i % 2 == 0) g7 += kG7Weights[i / 2] * fs;
  }
  value = k15 * h;
  // The raw G7-K15 difference is a conservative error estimate for smooth
  // panels and, unlike the QUADPACK rescaling, stays homogeneous in the
  // magnitude of f (the tail integrands here sit near 1e-22).
  err = std::abs(k15 - g7) * std::abs(h);
}

}  // namespace detail

/// Break points growing geometrically away from `a`; resolves integrands
/// concentrated near the lower limit (a single wide Gauss-Kronrod panel can
/// step right over a boundary layer and report a tiny error estimate).
inline std::vector<double> geometric_breaks(double a, double b, double first_width) {
  std::vector<double> breaks;
  for (double w = first_width, t = a + first_width; t < b; w *= 2.0, t += w) {
    breaks.push_back(t);
  }
  return breaks;
}

/// Adaptive Gauss-Kronrod integration of f over [a, b].
///
/// Stops when the summed error estimate is below max(abs_tol, rel_tol*|I|).
/// `initial_breaks`, when non-empty, pre-splits [a, b] (used for integrands
/// with known oscillation scales); entries must lie strictly inside (a, b)
/// and be increasing.
template <class F>
QuadResult integrate_adaptive(const F& f, double a, double b, double abs_tol,
                              double rel_tol = 0.0, long max_evals = 400000,
                              const std::vector<double>& initial_breaks = {}) {
  if (!(b > a)) throw std::invalid_argument("integrate_adaptive needs b > a");

  struct Panel {
    double err, a, b, value;
    bool operator<(const Panel& o) const { return err < o.err; }
  };
  std::priority_queue<Panel> panels;
  QuadResult total;

  double left = a;
  std::vector<double> edges = initial_breaks;
  edges.push_back(b);
  for (double right : edges) {
    if (!(right > left) || right > b) continue;
    double v, e;
    detail::gk15(f, left, right, v, e);
    total.evals += 15;
    panels.push({e, left, right, v});
    left = right;
  }

  double sum = 0.0, err_sum = 0.0;
  {
    std::priority_queue<Panel> copy = panels;
    while (!copy.empty()) {
      sum += copy.top().value;
      err_sum += copy.top().err;
      copy.pop();
    }
  }

  auto tolerance = [&](double current) {
    return std::max(abs_tol, rel_tol * std::abs(current));
  };

  while (err_sum > tolerance(sum) && total.evals + 30 <= max_evals) {
    Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {  // panel at floating resolution
      panels.push({0.0, worst.a, worst.b, worst.value});
      continue;
    }
    double v1, e1, v2, e2;
    detail::gk15(f, worst.a, mid, v1, e1);
    detail::gk15(f, mid, worst.b, v2, e2);
    total.evals += 30;
    sum += (v1 + v2) - worst.value;
    err_sum += (e1 + e2) - worst.err;
    panels.push({e1, worst.a, mid, v1});
    panels.push({e2, mid, worst.b, v2});
  }

  total.value = sum;
  total.error = err_sum;
  total.converged = err_sum <= tolerance(sum);
  return total;
}

}  // namespace excursion
