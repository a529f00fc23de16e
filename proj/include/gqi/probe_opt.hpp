#pragma once

#include <Eigen/Dense>

#include "gqi/metric.hpp"

namespace gqi {

/// Pure two-mode probe family at fixed signal mean photon number n_s:
/// two-mode squeezing z, extra signal squeezing z_s, signal displacement r,
/// under the constraint r^2 + cosh(2z)*cosh(2z_s) = 1 + 2*n_s.
struct PureProbeFamily {
  double z = 0.0;    // two-mode squeezing, >= 0
  double z_s = 0.0;  // signal single-mode squeezing
  double r = 0.0;    // displacement magnitude, >= 0

  double constraint_value() const;  // r^2 + cosh(2z)*cosh(2z_s)
};

/// kappa-normalized decay value of a family member against background
/// n_background. Throws DomainError when the constraint for n_s is violated
/// beyond 1e-10.
double family_metric(const PureProbeFamily& params, double n_s, double n_background,
                     const MonotoneFunction& f);

struct ProbeSearchResult {
  PureProbeFamily argmax;
  double objective = 0.0;
};

/// Maximizes family_metric over the feasible (z_s, r) set (z fixed by the
/// constraint) with a coarse grid plus shrinking local refinement.
ProbeSearchResult search_pure_probe(double n_s, double n_background,
                                    const MonotoneFunction& f);

// --- Single-mode probe (Fock coefficients) ----------------------------------

/// Real Fock-coefficient vector of a single-mode pure probe.
struct FockCoefficients {
  Eigen::VectorXd c;  // length cutoff + 1

  int cutoff() const { return static_cast<int>(c.size()) - 1; }
  double norm_sq() const { return c.squaredNorm(); }
  double mean_photon() const;
};

/// The figure of merit sum_n c_{n+1} c_n sqrt(n+1) = <a> for real coefficients.
/// Throws DomainError when the input is not normalized to 1e-10.
double annihilation_expectation(const FockCoefficients& c);

struct SingleModeOptimum {
  FockCoefficients coefficients;
  double gamma = 0.0;
  double mu1 = 0.0;  // Lagrange multipliers of the stationarity condition
  double mu2 = 0.0;
};

/// Maximizes annihilation_expectation under unit norm and mean photon n_s.
/// The stationarity condition makes the optimum an eigenvector of the
/// tridiagonal ladder operator shifted by the photon-number operator, so the
/// search is a bisection on the number multiplier; the returned coefficients
/// satisfy the stationarity equation to machine precision. Sign fixed by c0 > 0.
/// Throws DomainError when cutoff < 10*max(1, n_s) or the photon constraint
/// cannot be met within the cutoff.
SingleModeOptimum optimize_single_mode_probe(double n_s, int cutoff);

/// Max-norm residual of c_{n+1} sqrt(n+1) + c_{n-1} sqrt(n) + 2 c_n (mu1 + n mu2)
/// over n = 0 .. len-2.
double stationarity_residual(const FockCoefficients& c, double mu1, double mu2);

/// Fock coefficients of the displaced number state D(alpha)|n>, alpha real,
/// computed by forward recursion (stable at large cutoffs).
FockCoefficients displaced_number_state(int n, double alpha, int cutoff);

}  // namespace gqi
