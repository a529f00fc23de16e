#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "gqi/gaussian.hpp"
#include "gqi/metric.hpp"

namespace gqi {

/// Idler storage channel: beamsplitter of transmittivity eta mixing with a
/// thermal state of mean photon n_thermal.
struct IdlerChannel {
  double eta = 1.0;
  double n_thermal = 0.0;
};

/// A target-detection scenario: a two-mode probe whose signal mode interrogates
/// a reflectivity-kappa target embedded in thermal background n_background.
/// Optional operations act on the signal mode before transmission; the idler
/// channel models the memory holding the idler until measurement.
struct QIScenario {
  GaussianState probe;     // two modes: signal = 0, idler = 1
  double kappa = 0.01;     // target reflectivity, valid regime kappa << 1
  double n_background = 0.0;
  std::optional<IdlerChannel> idler_channel;
  std::vector<ChannelSpec> signal_ops;
};

/// Per-copy error-probability decay exponents. gamma_col is attained by
/// optimal collective measurements, gamma_loc by optimized local ones;
/// gamma_loc <= gamma_col for the built-in metric functions.
struct DecayConstants {
  double gamma_col = 0.0;
  double gamma_loc = 0.0;
};

/// Reference state at zero reflectivity (signal replaced by the thermal
/// background) and the leading-order tangent between target absent/present,
/// without the sqrt(kappa) scale (kappa multiplies the metric downstream).
struct ReturnedTangent {
  GaussianState rho0;
  TangentVector tangent;
};

ReturnedTangent returned_tangent(const QIScenario& scenario);

/// Mean photon number of one mode: (V_xx + V_pp - 2)/4 + (x^2 + p^2)/2.
double mean_photon(const GaussianState& state, int mode);

/// Closed-form decay constants for probes whose idler block is already
/// thermal (a33 = a44, a34 = 0, enforced to 1e-10). Throws DomainError
/// otherwise; use decay_constants for arbitrary probes.
DecayConstants decay_idler_thermal(const GaussianState& probe, double n_background,
                                   double kappa);

/// Decay constants of an arbitrary valid two-mode probe: the idler block is
/// brought to thermal form by an idler-local symplectic (which cannot change
/// the constants) and the closed forms applied.
DecayConstants decay_constants(const GaussianState& probe, double n_background,
                               double kappa);

/// Large-background approximation: no symplectic diagonalization needed,
/// only the idler block inverse and nu = sqrt(det V_idler).
DecayConstants decay_large_background(const GaussianState& probe, double n_background,
                                      double kappa);

/// Applies signal_ops and the idler channel to the probe, then decay_constants.
DecayConstants scenario_decay(const QIScenario& scenario);

/// The transformed probe as it enters the target region (signal_ops and idler
/// channel applied).
GaussianState effective_probe(const QIScenario& scenario);

/// Decay constants of the coherent-state benchmark with signal mean photon n_s.
DecayConstants coherent_benchmark(double n_s, double n_background, double kappa);

struct QuantumAdvantage {
  double qa_col = 0.0;
  double qa_loc = 0.0;
};

/// Ratio of the scenario's decay constants to the coherent benchmark with the
/// same signal mean photon number (kappa cancels). Throws DomainError when the
/// signal carries no power.
QuantumAdvantage quantum_advantage(const QIScenario& scenario);

/// Idler transmittivity at which local-measurement advantage vanishes for a
/// TMSV source: (1+N_B+N_L+2*N_B*N_L)/((1+2N_B)(1+N_L)), always in (1/2, 1].
/// n_background may be +infinity (returns the limiting value).
double eta_threshold_local(double n_background, double n_loss);

/// Outcome of the collective-threshold search.
struct EtaThreshold {
  enum class Kind { found, no_advantage_at_any_eta };
  Kind kind = Kind::found;
  double eta = 0.0;  // meaningful only when kind == found
};

/// Idler transmittivity at which collective-measurement advantage vanishes for
/// a TMSV(n_s) source, found by bisection on QA_col(eta) = 1 to 1e-8.
/// Monotonicity of QA_col in eta is checked numerically first; a dense scan is
/// the fallback. QA_col(1) < 1 yields the no-advantage outcome, not an error.
EtaThreshold eta_threshold_collective(double n_s, double n_background, double n_loss);

/// Closed form of the collective threshold in the infinite-background limit.
double eta_threshold_collective_limit(double n_s, double n_loss);

/// Decay constants reached at infinite idler squeezing (probe must have
/// a34 = 0). Independent of the idler channel and always below the coherent
/// benchmark at equal signal mean photon number.
DecayConstants infinite_idler_squeeze_limit(const GaussianState& probe,
                                            double n_background, double kappa);

// --- Correlation-region classification -------------------------------------

enum class CorrelationLabel {
  unphysical,
  separable,
  entangled_no_advantage,
  collective_only,
  local_and_collective,
};

std::string to_string(CorrelationLabel label);

struct CorrelationPoint {
  double a13 = 0.0;
  double a24 = 0.0;
  CorrelationLabel label = CorrelationLabel::unphysical;
  double qa_col = 0.0;  // 0 when unphysical
  double qa_loc = 0.0;
};

struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  int count = 0;

  double at(int i) const { return count < 2 ? lo : lo + (hi - lo) * i / (count - 1); }
};

struct RegionClassification {
  GridSpec a13_grid, a24_grid;
  std::vector<CorrelationPoint> points;  // row-major over (a13, a24)
};

/// Labels every grid point of the x-x / p-p correlation family with signal and
/// idler thermal blocks fixed by n_s, n_i. Physicality via the uncertainty
/// relation; separability via partial transpose (exact for one-vs-one mode);
/// advantage via the closed-form decay constants against the coherent benchmark.
RegionClassification classify_correlations(double n_s, double n_i, double n_background,
                                           const GridSpec& a13_grid,
                                           const GridSpec& a24_grid);

// --- Sweeps -----------------------------------------------------------------

struct SignalOpRow {
  double delta_n = 0.0;   // photons added on the signal mode
  DecayConstants displaced;
  DecayConstants squeezed;
  DecayConstants tmsv_equal_power;  // TMSV(n_s + delta_n) reference
};

/// Decay constants of a TMSV(n_s) probe with extra signal photons added either
/// by displacement or by squeezing aligned with the two-mode squeezing phase.
std::vector<SignalOpRow> signal_op_sweep(double n_s, double n_background, double kappa,
                                         const std::vector<double>& delta_n_grid);

struct IdlerSqueezeRow {
  double zeta_i = 0.0;
  DecayConstants value;
};

struct IdlerSqueezeSweep {
  std::vector<IdlerSqueezeRow> rows;
  DecayConstants limit;      // infinite-squeezing values
  DecayConstants coherent;   // benchmark at equal signal photon
};

/// Decay constants of TMSV(n_s) with idler squeezing applied before a lossy,
/// noisy idler memory.
IdlerSqueezeSweep idler_squeeze_sweep(double n_s, double n_background, double kappa,
                                      double eta, double n_loss,
                                      const std::vector<double>& zeta_grid);

}  // namespace gqi
