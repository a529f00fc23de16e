#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "gqi/gaussian.hpp"

namespace gqi {

/// Operator monotone function f with the symmetry f(t) = t*f(1/t), f(1) > 0.
/// Only the symmetry is verified (sampled on a log grid); operator
/// monotonicity itself cannot be decided from samples and is the caller's
/// responsibility for custom functions.
struct MonotoneFunction {
  std::function<double(double)> eval;
  std::string label;

  double operator()(double t) const { return eval(t); }
};

/// f for the collective decay constant (quantum Chernoff bound): 2(sqrt(t)+1)^2.
MonotoneFunction f_collective();

/// f for the local decay constant (optimized single-copy SNR): 4(t+1).
MonotoneFunction f_local();

/// Checks f(t) = t*f(1/t) to 1e-10 relative on t in 10^-4..10^4 and f(1) > 0.
/// Throws DomainError on violation.
void check_monotone_symmetry(const MonotoneFunction& f);

/// Infinitesimal Gaussian perturbation: (d_mean, d_cov).
struct TangentVector {
  Eigen::VectorXd d_mean;
  Eigen::MatrixXd d_cov;
};

/// Trace-orthogonal basis for symmetric matrices adapted to the mode structure:
/// per mode, number/squeeze directions (n_i, s_i, t_i); per mode pair,
/// two-mode-squeeze (s_ij, t_ij) and beam-split (a_ij, b_ij) directions.
/// All entries are exactly -1, 0, or 1.
struct BasisMatrices {
  int n_modes = 0;
  std::vector<Eigen::MatrixXd> n_i, s_i, t_i;              // n each
  std::vector<Eigen::MatrixXd> s_ij, t_ij, a_ij, b_ij;     // n(n-1)/2 each, i<j ordered

  int count() const { return 3 * n_modes + 4 * static_cast<int>(s_ij.size()); }
};

BasisMatrices basis_matrices(int n_modes);

/// Monotone metric g((d_mean,d_cov),(d_mean,d_cov)) evaluated at a thermal
/// state with the given symplectic spectrum. Terms whose tangent coefficient
/// vanishes are skipped before the nu -> 1 singularity check; a singular term
/// with a nonzero coefficient raises SingularMetricError naming the term.
double metric_thermal(const Eigen::VectorXd& nus, const MonotoneFunction& f,
                      const TangentVector& tangent);

/// Monotone metric at an arbitrary valid Gaussian state: the state is brought
/// to Williamson normal form and the tangent transformed with it. The value
/// does not depend on the (non-unique) choice of symplectic.
double metric_general(const GaussianState& state, const MonotoneFunction& f,
                      const TangentVector& tangent);

}  // namespace gqi
