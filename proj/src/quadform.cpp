#include "excursion/quadform.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "excursion/parallel.hpp"
#include "excursion/quadrature.hpp"

namespace excursion {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Factorized {
  std::vector<double> mu;  // eigenvalues of L^T A L (== spectrum of sigma A)
  std::vector<double> w;   // Q^T L^T b
  double c0 = 0.0;
  double mu_max = 0.0;
  double m1 = 0.0;  // E W
  double m2 = 0.0;  // E W^2
  double m4 = 0.0;  // E W^4
};

Factorized factorize(const QuadFormProblem& p) {
  Eigen::LLT<Eigen::MatrixXd> llt(p.sigma());
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("quadform: sigma is not positive-definite");
  }
  const Eigen::MatrixXd L = llt.matrixL();
  Eigen::MatrixXd M = L.transpose() * p.A() * L;
  M = 0.5 * (M + M.transpose().eval());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("quadform: eigendecomposition failed");
  }

  Factorized f;
  f.c0 = p.c0();
  const Eigen::VectorXd mu = es.eigenvalues();
  const Eigen::VectorXd w = es.eigenvectors().transpose() * (L.transpose() * p.b());
  const double mu_scale = mu.cwiseAbs().maxCoeff();
  for (Eigen::Index j = 0; j < mu.size(); ++j) {
    // snap noise eigenvalues of a structurally singular sigma*A to zero
    const double m = std::abs(mu[j]) > 1e-14 * std::max(1.0, mu_scale) ? mu[j] : 0.0;
    f.mu.push_back(m);
    f.w.push_back(w[j]);
    f.mu_max = std::max(f.mu_max, std::abs(m));
  }

  // W = c0 + sum_j (w_j Z_j + mu_j Z_j^2) with Z iid standard normal;
  // cumulants add across the independent coordinates.
  double k1 = f.c0, k2 = 0.0, k3 = 0.0, k4 = 0.0;
  for (std::size_t j = 0; j < f.mu.size(); ++j) {
    const double m = f.mu[j], ww = f.w[j] * f.w[j];
    k1 += m;
    k2 += ww + 2.0 * m * m;
    k3 += 6.0 * ww * m + 8.0 * m * m * m;
    k4 += 48.0 * ww * m * m + 48.0 * m * m * m * m;
  }
  f.m1 = k1;
  f.m2 = k2 + k1 * k1;
  f.m4 = k4 + 4.0 * k3 * k1 + 3.0 * k2 * k2 + 6.0 * k2 * k1 * k1 + k1 * k1 * k1 * k1;
  return f;
}

// 1 - Re psi(t), evaluated through expm1/log1p pieces so small t loses no
// precision to cancellation.  psi = exp(z) with
//   Re z = -(t^2/2) sum w^2/(1+4t^2 mu^2) - (1/4) sum log1p(4 t^2 mu^2)
//   Im z = c0 t - t^3 sum w^2 mu/(1+4t^2 mu^2) + (1/2) sum atan(2 t mu)
double one_minus_re_psi(const Factorized& f, double t) {
  double re = 0.0;
  double im = f.c0 * t;
  for (std::size_t j = 0; j < f.mu.size(); ++j) {
    const double m = f.mu[j], ww = f.w[j] * f.w[j];
    const double q = 2.0 * t * m;
    const double den = 1.0 + q * q;
    re += -(0.5 * t * t) * ww / den - 0.25 * std::log1p(q * q);
    im += -(t * t * t) * ww * m / den + 0.5 * std::atan(q);
  }
  const double half = std::sin(0.5 * im);
  return -std::expm1(re) * std::cos(im) + 2.0 * half * half;
}

// |psi(t)| = exp(Re z), decreasing in t
double psi_envelope(const Factorized& f, double t) {
  double log_env = 0.0;
  for (std::size_t j = 0; j < f.mu.size(); ++j) {
    const double m = f.mu[j], ww = f.w[j] * f.w[j];
    const double q = 2.0 * t * m;
    log_env += -(0.5 * t * t) * ww / (1.0 + q * q) - 0.25 * std::log1p(q * q);
  }
  return std::exp(log_env);
}

// d/dt Im z: c0 + sum mu/(1+q^2) - sum w^2 mu t^2 (3+q^2)/(1+q^2)^2
double phase_rate(const Factorized& f, double t) {
  double r = f.c0;
  for (std::size_t j = 0; j < f.mu.size(); ++j) {
    const double m = f.mu[j], ww = f.w[j] * f.w[j];
    const double q = 2.0 * t * m;
    const double den = 1.0 + q * q;
    r += m / den - ww * m * t * t * (3.0 + q * q) / (den * den);
  }
  return r;
}

// t -> infinity limit of phase_rate
double phase_rate_limit(const Factorized& f) {
  double r = f.c0;
  for (std::size_t j = 0; j < f.mu.size(); ++j) {
    if (f.mu[j] != 0.0) r -= f.w[j] * f.w[j] / (4.0 * f.mu[j]);
  }
  return r;
}

// how far phase_rate(t) still is from its limit (upper bound, decaying)
double phase_rate_residual(const Factorized& f, double t) {
  double r = 0.0;
  for (std::size_t j = 0; j < f.mu.size(); ++j) {
    const double m = f.mu[j], ww = f.w[j] * f.w[j];
    if (m == 0.0) continue;
    const double q = 2.0 * t * m;
    const double den = 1.0 + q * q;
    r += std::abs(m) / den +
         std::abs(ww * m * t * t * (3.0 + q * q) / (den * den) - ww / (4.0 * m));
  }
  return r;
}

}  // namespace

QuadFormProblem::QuadFormProblem(Eigen::MatrixXd sigma, Eigen::MatrixXd A,
                                 Eigen::VectorXd b, double c0)
    : sigma_(std::move(sigma)), A_(std::move(A)), b_(std::move(b)), c0_(c0) {
  const Eigen::Index n = sigma_.rows();
  if (n < 1 || sigma_.cols() != n) throw std::invalid_argument("quadform: sigma must be square");
  if (A_.rows() != n || A_.cols() != n) throw std::invalid_argument("quadform: A must match sigma's size");
  if (b_.size() != n) throw std::invalid_argument("quadform: b must match sigma's size");
  if (!sigma_.allFinite() || !A_.allFinite() || !b_.allFinite() || !std::isfinite(c0_)) {
    throw std::invalid_argument("quadform: entries must be finite");
  }
  const double a_scale = std::max(1.0, A_.cwiseAbs().maxCoeff());
  if ((A_ - A_.transpose().eval()).cwiseAbs().maxCoeff() > 1e-12 * a_scale) {
    throw std::invalid_argument("quadform: A is not symmetric");
  }
  const double s_scale = std::max(1.0, sigma_.cwiseAbs().maxCoeff());
  if ((sigma_ - sigma_.transpose().eval()).cwiseAbs().maxCoeff() > 1e-12 * s_scale) {
    throw std::invalid_argument("quadform: sigma is not symmetric");
  }
  if (Eigen::LLT<Eigen::MatrixXd>(sigma_).info() != Eigen::Success) {
    throw std::invalid_argument("quadform: sigma is not positive-definite");
  }
}

QuadFormProblem hessian_problem(double u, const FieldModel& m) {
  if (!std::isfinite(u)) throw std::invalid_argument("hessian_problem: u must be finite");
  const double r = m.rho2();
  Eigen::MatrixXd sigma(3, 3);
  sigma << 12 * r - 1, 0, 4 * r - 1,
           0, 4 * r, 0,
           4 * r - 1, 0, 12 * r - 1;
  Eigen::MatrixXd A(3, 3);
  A << 0, 0, 0.5,
       0, -1, 0,
       0.5, 0, 0;
  Eigen::VectorXd b(3);
  b << -u, 0, -u;
  return QuadFormProblem(std::move(sigma), std::move(A), std::move(b), u * u);
}

double liwei_expectation(const QuadFormProblem& p, double tol) {
  if (!(tol > 1e-12 && tol < 1e-3)) {
    throw std::invalid_argument("liwei_expectation: tol must lie in (1e-12, 1e-3)");
  }
  const Factorized f = factorize(p);

  const double var = f.m2 - f.m1 * f.m1;
  if (var <= 0.0) return std::abs(f.m1);  // deterministic W

  // series piece on [0, eps]: integrand in [m2/2 - m4 t^2/24, m2/2], so the
  // midpoint value m2 eps/2 - m4 eps^3/144 is exact to within m4 eps^3/144
  double eps = std::cbrt(18.0 * kPi * tol / std::max(f.m4, 1e-300));
  eps = std::min({eps, 0.1, f.mu_max > 0.0 ? 0.01 / f.mu_max : 0.1});
  const double head = (2.0 / kPi) * (0.5 * f.m2 * eps - f.m4 * eps * eps * eps / 144.0);

  // Truncation point T.  Discarding Re psi / t^2 beyond T must cost at most
  // tol/8.  Two valid criteria, take the earlier one:
  //  - plain envelope:          (2/pi) |psi(T)| / T            <= tol/8
  //  - oscillatory cancellation (Dirichlet test, once the phase rate has
  //    settled near its limit rho): (2/pi) 8 |psi(T)| / (T^2 rho) <= tol/8
  const double t0 = std::max(1.0, 2.0 * eps);
  double t_env = t0;
  while ((2.0 / kPi) * psi_envelope(f, t_env) / t_env > 0.125 * tol) {
    t_env *= 2.0;
    if (t_env > 1e12) {
      throw QuadratureError("liwei_expectation: characteristic function decays too slowly",
                            head, 1.0);
    }
  }
  double T = t_env;
  const double rho = std::abs(phase_rate_limit(f));
  if (rho > 1e-8) {
    double hump = 0.0;  // every phase term is past its hump beyond this point
    for (double m : f.mu) {
      if (m != 0.0) hump = std::max(hump, 10.0 / (2.0 * std::abs(m)));
    }
    double t_vdc = std::max(t0, hump);
    while (t_vdc < t_env &&
           (phase_rate_residual(f, t_vdc) > 0.25 * rho ||
            (2.0 / kPi) * 8.0 * psi_envelope(f, t_vdc) / (t_vdc * t_vdc * rho) > 0.125 * tol)) {
      t_vdc *= 2.0;
    }
    T = std::min(t_env, t_vdc);
  }

  // initial panels: geometric growth, width capped to half an oscillation of
  // the local phase rate
  std::vector<double> breaks;
  for (double a = eps; a < T;) {
    const double local_rate =
        std::max({std::abs(phase_rate(f, a)), std::abs(phase_rate(f, 1.25 * a)),
                  std::abs(phase_rate(f, 1.6 * a))}) +
        0.05 * (rho + phase_rate_residual(f, a)) + 1e-9;
    const double width = std::min(std::max(0.5 * a, eps), kPi / (2.0 * local_rate));
    const double b = std::min(T, a + width);
    if (b < T) breaks.push_back(b);
    a = b;
    if (breaks.size() > 100000) {
      throw QuadratureError("liwei_expectation: oscillation scale too fine for the budget",
                            head, 1.0);
    }
  }

  const auto integrand = [&f](double t) { return one_minus_re_psi(f, t) / (t * t); };
  const QuadResult quad =
      integrate_adaptive(integrand, eps, T, 0.25 * tol * kPi / 2.0, 0.0, 6000000, breaks);

  const double value = head + (2.0 / kPi) * (quad.value + 1.0 / T);
  if (!quad.converged) {
    throw QuadratureError("liwei_expectation: quadrature failed to reach tol", value,
                          (2.0 / kPi) * quad.error + 0.75 * tol);
  }
  return value;
}

double hessian_abs_det(double u, const FieldModel& m) {
  if (!std::isfinite(u)) throw std::invalid_argument("hessian_abs_det: u must be finite");
  const double r = m.rho2();
  const double d = 24.0 * r - 2.0;
  const double v =
      u * u - 1.0 + 2.0 * std::pow(8.0 * r, 1.5) * std::exp(-u * u / d) / std::sqrt(d);
  if (!(v > 0.0)) {
    throw std::domain_error("hessian_abs_det: non-positive value (model out of range)");
  }
  return v;
}

double hessian_negdef_bound(double u, const FieldModel& m) {
  return 0.5 * (hessian_abs_det(u, m) + (u * u - 1.0));
}

HessianSampleMoments conditioned_hessian_sampler(double u, const FieldModel& m,
                                                 long long count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("conditioned_hessian_sampler: count >= 1 required");
  const double r = m.rho2();
  // covariance of (Y1, Y2, Y3): eigenvalues 16r-2, 8r on the (1,3) block, 4r in the middle
  if (!(16.0 * r - 2.0 > 0.0) || !(4.0 * r > 0.0)) {
    throw std::invalid_argument(
        "conditioned_hessian_sampler: covariance not positive-definite for this rho''(0) "
        "(needs rho''(0) > 1/8)");
  }
  Eigen::Matrix3d sigma;
  sigma << 12 * r - 1, 0, 4 * r - 1,
           0, 4 * r, 0,
           4 * r - 1, 0, 12 * r - 1;
  const Eigen::Matrix3d L = Eigen::LLT<Eigen::Matrix3d>(sigma).matrixL();

  constexpr long long kChunk = 1 << 16;
  const std::size_t n_chunks = static_cast<std::size_t>((count + kChunk - 1) / kChunk);

  struct Sums {
    double abs = 0, abs2 = 0, det = 0, det2 = 0, neg = 0, neg2 = 0;
    long long negdef = 0;
  };
  std::vector<Sums> chunk_sums(n_chunks);

  parallel_for_chunks(n_chunks, [&](std::size_t ci) {
    const long long lo = static_cast<long long>(ci) * kChunk;
    const long long hi = std::min(count, lo + kChunk);
    std::mt19937_64 rng(mix_seed(seed, ci));
    std::normal_distribution<double> normal(0.0, 1.0);
    Sums s;
    for (long long i = lo; i < hi; ++i) {
      const double z0 = normal(rng), z1 = normal(rng), z2 = normal(rng);
      const double y1 = L(0, 0) * z0;
      const double y2 = L(1, 1) * z1;
      const double y3 = L(2, 0) * z0 + L(2, 2) * z2;
      const double h11 = y1 - u, h12 = y2, h22 = y3 - u;
      const double det = h11 * h22 - h12 * h12;
      const double ad = std::abs(det);
      const bool negdef = h11 <= 0.0 && h22 <= 0.0 && det >= 0.0;
      s.abs += ad;
      s.abs2 += ad * ad;
      s.det += det;
      s.det2 += det * det;
      if (negdef) {
        s.neg += ad;
        s.neg2 += ad * ad;
        s.negdef += 1;
      }
    }
    chunk_sums[ci] = s;
  });

  Sums total;
  for (const Sums& s : chunk_sums) {  // fixed order: worker-count independent
    total.abs += s.abs;
    total.abs2 += s.abs2;
    total.det += s.det;
    total.det2 += s.det2;
    total.neg += s.neg;
    total.neg2 += s.neg2;
    total.negdef += s.negdef;
  }

  const double n = static_cast<double>(count);
  auto moments = [n](double sum, double sum2, double& mean, double& se) {
    mean = sum / n;
    const double var = std::max(0.0, sum2 / n - mean * mean);
    se = std::sqrt(var / n);
  };
  HessianSampleMoments out;
  out.n = count;
  moments(total.abs, total.abs2, out.mean_abs_det, out.se_abs_det);
  moments(total.det, total.det2, out.mean_det, out.se_det);
  moments(total.neg, total.neg2, out.mean_negdef_abs_det, out.se_negdef_abs_det);
  out.negdef_freq = static_cast<double>(total.negdef) / n;
  return out;
}

}  // namespace excursion
