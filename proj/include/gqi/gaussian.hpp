#pragma once

#include <Eigen/Dense>
#include <variant>
#include <vector>

#include "gqi/errors.hpp"

namespace gqi {

namespace tol {
/// Tolerance for positive-semidefiniteness checks (uncertainty relation, spectra).
inline constexpr double kPsd = 1e-9;
/// Tolerance for symmetry of covariance / tangent matrices.
inline constexpr double kSymmetry = 1e-12;
}  // namespace tol

/// An n-mode Gaussian state: first-order moments and covariance matrix in
/// interleaved quadrature ordering (x1,p1,...,xn,pn). Vacuum covariance is
/// the identity; a thermal state with mean photon N has covariance (1+2N)·I.
struct GaussianState {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;

  int n_modes() const { return static_cast<int>(mean.size()) / 2; }
};

/// Symplectic form for n modes, block diagonal [[0,1],[-1,0]].
Eigen::MatrixXd omega(int n_modes);

GaussianState vacuum(int n_modes);

/// Thermal state with mean photon number per mode.
GaussianState thermal(int n_modes, double mean_photon);

/// Two-mode squeezed vacuum with signal mean photon number n_s.
/// Signal is mode 0, idler mode 1; correlations carry the sigma_z sign pattern.
GaussianState tmsv(double n_s);

/// Single-mode coherent state with mean quadratures (x, p); mean photon (x^2+p^2)/2.
GaussianState coherent(double x, double p);

struct StateDiagnostics {
  bool valid = false;
  double min_uncertainty_eigenvalue = 0.0;  // smallest eigenvalue of cov + i*Omega
  double max_asymmetry = 0.0;               // largest |cov - cov^T| entry
  Eigen::VectorXd symplectic_spectrum;      // descending
};

/// Checks symmetry, the uncertainty relation cov + i*Omega >= 0, and the
/// symplectic spectrum. Diagnostics are returned even when the state is invalid.
/// Throws DimensionError for a non-square or odd-dimension covariance.
StateDiagnostics validate(const GaussianState& state);

// --- Channels -------------------------------------------------------------

/// Thermal-loss channel on one mode: mean -> sqrt(eta)*mean,
/// 2x2 block V_k -> eta*V_k + (1-eta)*(1+2*n_thermal)*I.
struct Loss {
  int mode = 0;
  double eta = 1.0;
  double n_thermal = 0.0;
};

struct Displacement {
  Eigen::VectorXd d;  // length 2n
};

/// Arbitrary symplectic transformation; S*Omega*S^T = Omega is checked on apply.
struct Symplectic {
  Eigen::MatrixXd s;
};

/// diag(e^z, e^-z) rotated by `phase` on one mode.
struct SingleModeSqueeze {
  int mode = 0;
  double z = 0.0;
  double phase = 0.0;
};

struct TwoModeSqueeze {
  int mode_a = 0;
  int mode_b = 1;
  double z = 0.0;
};

/// x_a -> cos(theta) x_a + sin(theta) x_b on both quadratures.
struct BeamSplit {
  int mode_a = 0;
  int mode_b = 1;
  double theta = 0.0;
};

struct PhaseShift {
  int mode = 0;
  double phi = 0.0;
};

using ChannelSpec = std::variant<Loss, Displacement, Symplectic, SingleModeSqueeze,
                                 TwoModeSqueeze, BeamSplit, PhaseShift>;

/// Symplectic matrix of a unitary channel kind on an n-mode space.
/// Throws DomainError for Loss and Displacement (not symplectic maps).
Eigen::MatrixXd channel_symplectic(const ChannelSpec& channel, int n_modes);

GaussianState apply(const GaussianState& state, const ChannelSpec& channel);

GaussianState apply_all(const GaussianState& state, const std::vector<ChannelSpec>& channels);

/// Restriction of mean/cov to the kept modes, in the order given.
GaussianState partial_trace(const GaussianState& state, const std::vector<int>& keep);

}  // namespace gqi
