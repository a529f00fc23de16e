#pragma once

#include "gqi/table.hpp"

namespace gqi {

/// Parameters behind the published sweep tables; defaults reproduce them.
struct FigureParams {
  double n_s = 0.01;
  double n_b = 625.0;
  double kappa = 0.01;
  std::vector<double> n_loss_values = {0.0, 0.43, 7.84};
};

/// Signal-mode displacement vs squeezing on a TMSV source, normalized to the
/// bare TMSV values. Columns: delta_n, then per-family col/loc pairs.
SweepTable figure_signal_ops(const FigureParams& p = {});

/// Collective decay under idler squeezing before a lossy, noisy memory, for
/// eta in {0.9, 0.1} and the configured noise values, normalized to bare TMSV;
/// includes the coherent benchmark line.
SweepTable figure_idler_squeeze(const FigureParams& p = {});

/// Quantum advantage of displaced TMSV probes over (displacement r, memory
/// transmittivity eta, memory noise). Long format.
SweepTable figure_displaced_advantage(const FigureParams& p = {});

/// Minimum idler transmittivity for advantage in the infinite-background
/// limit, as a function of memory noise.
SweepTable figure_eta_thresholds(const FigureParams& p = {});

/// Correlation-region classification grid (long format with labels).
SweepTable figure_correlation_regions(const FigureParams& p = {});

/// Builds one of fig2..fig6 by name. Throws DomainError for unknown names.
SweepTable build_figure(const std::string& name, const FigureParams& p = {});

}  // namespace gqi
