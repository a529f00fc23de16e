#pragma once

#include <Eigen/Dense>
#include <complex>
#include <variant>
#include <vector>

#include "gqi/gaussian.hpp"

namespace gqi::fock {

using Complex = std::complex<double>;
using MatrixXcd = Eigen::MatrixXcd;

/// Dense multi-mode Fock-space operator with per-mode cutoffs. For density
/// matrices the stored data is renormalized to unit trace; the trace lost to
/// truncation is kept as a diagnostic.
struct FockOperator {
  std::vector<int> dims;  // per-mode dimensions (cutoff + 1)
  MatrixXcd data;
  double truncation_deficit = 0.0;

  int total_dim() const;
};

// Circuit operations. Thermal seeds must precede any other use of their mode.
struct ThermalSeed {
  int mode = 0;
  double n = 0.0;
};
struct TwoModeSqueezeOp {
  int mode_a = 0;
  int mode_b = 1;
  double z = 0.0;
};
struct DisplaceOp {
  int mode = 0;
  Complex alpha;
};
struct SingleModeSqueezeOp {
  int mode = 0;
  double z = 0.0;
};
struct BeamSplitOp {
  int mode_a = 0;
  int mode_b = 1;
  double theta = 0.0;  // kept mode_a gets cos(theta) of itself
};
/// Pure loss: mix with a vacuum ancilla at transmittivity eta, trace ancilla.
struct LossOp {
  int mode = 0;
  double eta = 1.0;
};
/// Mix with an explicit thermal ancilla (mean photon n, its own cutoff)
/// through a beamsplitter keeping `transmit` of the mode, then trace ancilla.
struct ThermalMixOp {
  int mode = 0;
  double n = 0.0;
  double transmit = 1.0;  // transmittivity of the kept mode
  int ancilla_cutoff = 0;
};

using CircuitOp = std::variant<ThermalSeed, TwoModeSqueezeOp, DisplaceOp,
                               SingleModeSqueezeOp, BeamSplitOp, LossOp, ThermalMixOp>;

struct CircuitSpec {
  std::vector<CircuitOp> ops;
};

/// Annihilation operator on a single cutoff-dimensional mode.
MatrixXcd annihilation(int dim);

/// e^K for anti-Hermitian K, via Hermitian eigendecomposition of iK.
MatrixXcd exp_antihermitian(const MatrixXcd& k);

/// Runs the circuit on modes starting in vacuum (dims gives mode count and
/// cutoffs) and returns the renormalized density matrix. Throws CutoffError
/// when the accumulated truncation deficit exceeds `deficit_threshold`.
FockOperator build_state(const CircuitSpec& circuit, const std::vector<int>& dims,
                         double deficit_threshold = 1e-6);

/// Quadrature mean vector and covariance matrix extracted from a Fock density
/// matrix, in the same convention as the Gaussian layer (vacuum cov = I).
struct ExtractedMoments {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
};
ExtractedMoments gaussian_moments(const FockOperator& rho);

GaussianState to_gaussian(const FockOperator& rho);

struct ChernoffResult {
  double exponent = 0.0;  // +infinity for orthogonal supports
  double s_star = 0.5;
};

/// Quantum Chernoff exponent -min_{0<=s<=1} log Tr rho0^s rho1^(1-s) by
/// Hermitian eigendecomposition and golden-section search in s (the overlap
/// is log-convex in s, hence unimodal). Eigenvalues below 1e-15 contribute 0.
ChernoffResult chernoff_exponent(const FockOperator& rho0, const FockOperator& rho1);

/// Target-present / target-absent output pair for a two-mode probe circuit:
/// the signal is mixed with an explicit thermal ancilla of mean photon
/// n_background/(1-kappa) at reflectivity kappa and the ancilla traced out;
/// the kappa = 0 branch replaces the signal with thermal n_background exactly.
/// dims = {signal cutoff+1, idler cutoff+1, ancilla cutoff+1}.
struct OutputPair {
  FockOperator rho0;  // target absent
  FockOperator rho1;  // target present
};
OutputPair qi_output_pair(const CircuitSpec& probe, double kappa, double n_background,
                          const std::vector<int>& dims, double deficit_threshold = 1e-6);

// --- Quadratic-observable SNR oracle ----------------------------------------

/// Observable O = (1/2) r^T G r + g^T r + c on a two-mode space (G symmetric 4x4).
struct QuadraticObservable {
  Eigen::Matrix4d g_quad = Eigen::Matrix4d::Zero();
  Eigen::Vector4d g_lin = Eigen::Vector4d::Zero();
  double constant = 0.0;
};

/// Mean and variance of a quadratic observable under a Gaussian state.
double observable_mean(const QuadraticObservable& obs, const GaussianState& state);
double observable_variance(const QuadraticObservable& obs, const GaussianState& state);

/// kappa-normalized single-copy SNR (m0-m1)^2 / (2 (s0+s1)^2 kappa) of the
/// observable between the exact target-present and target-absent returned
/// Gaussian states. The mean difference is evaluated from difference matrices
/// directly, so arbitrarily small kappa stays numerically exact.
/// Throws DomainError for a non-symmetric quadratic part.
double quadratic_snr(const GaussianState& probe, double kappa, double n_background,
                     const QuadraticObservable& obs);

struct SnrMaximum {
  QuadraticObservable observable;
  double snr = 0.0;  // kappa-normalized
};

/// Maximizes the kappa-normalized SNR over quadratic-plus-linear observables.
/// The infinitesimal problem is a generalized Rayleigh quotient solved in
/// closed form; the result is compared against a fixed list of canonical
/// observables and the best is returned. Deterministic.
SnrMaximum snr_maximize(const GaussianState& probe, double kappa, double n_background);

}  // namespace gqi::fock
