#include "gqi/probe_opt.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace gqi {

namespace {
constexpr double kConstraintTol = 1e-10;
}

double PureProbeFamily::constraint_value() const {
  return r * r + std::cosh(2 * z) * std::cosh(2 * z_s);
}

double family_metric(const PureProbeFamily& params, double n_s, double n_background,
                     const MonotoneFunction& f) {
  if (std::abs(params.constraint_value() - (1 + 2 * n_s)) > kConstraintTol)
    throw DomainError("family_metric: signal-photon constraint violated");

  const double nu1 = 1 + 2 * n_background;
  const double nu2 = std::cosh(2 * params.z);
  const double sh2z_sq = std::pow(std::sinh(2 * params.z), 2);
  const double ch_zs_sq = std::pow(std::cosh(params.z_s), 2);
  const double sh_zs_sq = std::pow(std::sinh(params.z_s), 2);
  const double g1m = nu1 - 1, g1p = nu1 + 1, g2m = nu2 - 1, g2p = nu2 + 1;

  double g = 0.0;
  if (double num = 2.0 * sh2z_sq * ch_zs_sq; num != 0.0)
    g += num / (g1m * g2m * f.eval((g1p / g1m) * (g2p / g2m)));
  if (double num = 2.0 * sh2z_sq * sh_zs_sq; num != 0.0)
    g += num / (g1p * g2m * f.eval((g1m / g1p) * (g2p / g2m)));
  if (double num = 2.0 * params.r * params.r; num != 0.0)
    g += num / (g1m * f.eval(g1p / g1m));
  return g;
}

namespace {

/// z fixed by the constraint; returns nullopt-like -1 objective when infeasible.
double objective_at(double z_s, double r, double n_s, double n_background,
                    const MonotoneFunction& f) {
  const double budget = 1 + 2 * n_s - r * r;
  const double ch2z = budget / std::cosh(2 * z_s);
  if (ch2z < 1.0) return -1.0;
  PureProbeFamily p;
  p.z = 0.5 * std::acosh(ch2z);
  p.z_s = z_s;
  p.r = r;
  return family_metric(p, n_s, n_background, f);
}

}  // namespace

ProbeSearchResult search_pure_probe(double n_s, double n_background,
                                    const MonotoneFunction& f) {
  if (!(n_s > 0)) throw DomainError("search_pure_probe: need n_s > 0");

  const double r_max = std::sqrt(2 * n_s);
  const double zs_max = 0.5 * std::acosh(1 + 2 * n_s);

  double c_zs = 0.0, c_r = 0.5 * r_max;  // grid centers
  double span_zs = zs_max, span_r = 0.5 * r_max;
  double best_zs = 0.0, best_r = 0.0, best_val = -1.0;

  const int grid = 41;
  for (int round = 0; round < 7; ++round) {
    for (int i = 0; i < grid; ++i) {
      const double zs =
          std::clamp(c_zs + span_zs * (2.0 * i / (grid - 1) - 1.0), -zs_max, zs_max);
      for (int j = 0; j < grid; ++j) {
        const double r =
            std::clamp(c_r + span_r * (2.0 * j / (grid - 1) - 1.0), 0.0, r_max);
        const double val = objective_at(zs, r, n_s, n_background, f);
        if (val > best_val) {
          best_val = val;
          best_zs = zs;
          best_r = r;
        }
      }
    }
    c_zs = best_zs;
    c_r = best_r;
    span_zs *= 0.15;
    span_r *= 0.15;
  }

  ProbeSearchResult out;
  out.argmax.z_s = best_zs;
  out.argmax.r = best_r;
  out.argmax.z =
      0.5 * std::acosh((1 + 2 * n_s - best_r * best_r) / std::cosh(2 * best_zs));
  out.objective = best_val;
  return out;
}

double FockCoefficients::mean_photon() const {
  double n = 0.0;
  for (int i = 0; i < c.size(); ++i) n += i * c(i) * c(i);
  return n;
}

double annihilation_expectation(const FockCoefficients& coeffs) {
  if (std::abs(coeffs.norm_sq() - 1.0) > 1e-10)
    throw DomainError("annihilation_expectation: coefficients not normalized");
  double g = 0.0;
  for (int n = 0; n + 1 < coeffs.c.size(); ++n)
    g += coeffs.c(n + 1) * coeffs.c(n) * std::sqrt(n + 1.0);
  return g;
}

double stationarity_residual(const FockCoefficients& coeffs, double mu1, double mu2) {
  const auto& c = coeffs.c;
  double worst = 0.0;
  for (int n = 0; n + 1 < c.size(); ++n) {
    double r = c(n + 1) * std::sqrt(n + 1.0) + 2.0 * c(n) * (mu1 + n * mu2);
    if (n > 0) r += c(n - 1) * std::sqrt(static_cast<double>(n));
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

namespace {

struct TopEigen {
  Eigen::VectorXd c;
  double lambda = 0.0;
  double photon = 0.0;
};

/// Top eigenpair of the ladder matrix shifted by 2*mu2*diag(n). Off-diagonals
/// are positive, so the top eigenvector is nodeless; sign fixed by c0 > 0.
TopEigen top_eigenpair(int dim, double mu2) {
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = 0; n + 1 < dim; ++n) h(n, n + 1) = h(n + 1, n) = std::sqrt(n + 1.0);
  for (int n = 0; n < dim; ++n) h(n, n) = 2.0 * mu2 * n;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  TopEigen out;
  out.lambda = es.eigenvalues()(dim - 1);
  out.c = es.eigenvectors().col(dim - 1);
  if (out.c(0) < 0) out.c = -out.c;
  for (int n = 0; n < dim; ++n) out.photon += n * out.c(n) * out.c(n);
  return out;
}

}  // namespace

SingleModeOptimum optimize_single_mode_probe(double n_s, int cutoff) {
  if (!(n_s > 0)) throw DomainError("optimize_single_mode_probe: need n_s > 0");
  if (cutoff < 10 * std::max(1.0, n_s))
    throw DomainError("optimize_single_mode_probe: cutoff below 10*max(1, n_s)");
  const int dim = cutoff + 1;

  // The stationarity condition makes the optimum the top eigenvector of
  // H(mu2); its mean photon number grows monotonically with mu2 (convexity of
  // the top eigenvalue), so the photon constraint is a bisection in mu2.
  double lo = -8.0 * (1.0 + 0.5 / std::sqrt(n_s));
  double hi = -1e-8;
  if (top_eigenpair(dim, hi).photon < n_s)
    throw DomainError(
        "optimize_single_mode_probe: photon constraint unreachable at this cutoff");
  if (top_eigenpair(dim, lo).photon > n_s)
    lo *= 8.0;  // extremely small n_s; widen once

  TopEigen best;
  double best_mu2 = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    best_mu2 = 0.5 * (lo + hi);
    best = top_eigenpair(dim, best_mu2);
    if (std::abs(best.photon - n_s) < 1e-12 || hi - lo < 1e-15) break;
    (best.photon < n_s ? lo : hi) = best_mu2;
  }

  SingleModeOptimum out;
  out.mu2 = best_mu2;
  out.mu1 = -0.5 * best.lambda;
  out.coefficients = FockCoefficients{best.c};
  out.gamma = annihilation_expectation(out.coefficients);
  return out;
}

FockCoefficients displaced_number_state(int n, double alpha, int cutoff) {
  if (n < 0 || cutoff < n) throw DomainError("displaced_number_state: bad number index");
  const int dim = cutoff + 1;
  Eigen::VectorXd col = Eigen::VectorXd::Zero(dim);
  col(0) = std::exp(-0.5 * alpha * alpha);
  for (int m = 0; m + 1 < dim; ++m) col(m + 1) = col(m) * alpha / std::sqrt(m + 1.0);
  // raise the number index: <m|D|k+1> = (sqrt(m) <m-1|D|k> - alpha <m|D|k>)/sqrt(k+1)
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXd next = Eigen::VectorXd::Zero(dim);
    for (int m = 0; m < dim; ++m) {
      double v = -alpha * col(m);
      if (m > 0) v += std::sqrt(static_cast<double>(m)) * col(m - 1);
      next(m) = v / std::sqrt(k + 1.0);
    }
    col = next;
  }
  return FockCoefficients{col};
}

}  // namespace gqi
