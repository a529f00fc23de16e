#include "gqi/qi.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "gqi/parallel.hpp"
#include "gqi/williamson.hpp"

namespace gqi {

namespace {

constexpr double kIdlerThermalTol = 1e-10;  // admits decay_constants' own output

void require_two_modes(const GaussianState& probe, const char* who) {
  if (probe.n_modes() != 2)
    throw DimensionError(std::string(who) + ": probe must have exactly two modes");
}

}  // namespace

GaussianState effective_probe(const QIScenario& scenario) {
  require_two_modes(scenario.probe, "effective_probe");
  GaussianState p = apply_all(scenario.probe, scenario.signal_ops);
  if (scenario.idler_channel) {
    const auto& ch = *scenario.idler_channel;
    p = apply(p, Loss{1, ch.eta, ch.n_thermal});
  }
  return p;
}

ReturnedTangent returned_tangent(const QIScenario& scenario) {
  GaussianState p = effective_probe(scenario);
  StateDiagnostics d = validate(p);
  if (!d.valid) throw DomainError("returned_tangent: probe is not a valid state");

  ReturnedTangent out;
  out.rho0.mean = Eigen::VectorXd::Zero(4);
  out.rho0.mean.segment<2>(2) = p.mean.segment<2>(2);
  out.rho0.cov = Eigen::MatrixXd::Zero(4, 4);
  out.rho0.cov.block<2, 2>(0, 0) =
      (1.0 + 2.0 * scenario.n_background) * Eigen::Matrix2d::Identity();
  out.rho0.cov.block<2, 2>(2, 2) = p.cov.block<2, 2>(2, 2);

  out.tangent.d_mean = Eigen::VectorXd::Zero(4);
  out.tangent.d_mean.head<2>() = p.mean.head<2>();
  out.tangent.d_cov = Eigen::MatrixXd::Zero(4, 4);
  out.tangent.d_cov.block<2, 2>(0, 2) = p.cov.block<2, 2>(0, 2);
  out.tangent.d_cov.block<2, 2>(2, 0) = p.cov.block<2, 2>(2, 0);
  return out;
}

double mean_photon(const GaussianState& state, int mode) {
  if (mode < 0 || mode >= state.n_modes())
    throw DimensionError("mean_photon: mode index out of range");
  const int x = 2 * mode, p = 2 * mode + 1;
  return 0.25 * (state.cov(x, x) + state.cov(p, p) - 2.0) +
         0.5 * (state.mean(x) * state.mean(x) + state.mean(p) * state.mean(p));
}

DecayConstants decay_idler_thermal(const GaussianState& probe, double n_background,
                                   double kappa) {
  require_two_modes(probe, "decay_idler_thermal");
  const auto& v = probe.cov;
  if (std::abs(v(2, 2) - v(3, 3)) > kIdlerThermalTol ||
      std::abs(v(2, 3)) > kIdlerThermalTol)
    throw DomainError(
        "decay_idler_thermal: idler block is not thermal; use decay_constants");

  const double nb = n_background;
  const double ni = 0.25 * (v(2, 2) + v(3, 3)) - 0.5;
  const double a13 = v(0, 2), a14 = v(0, 3), a23 = v(1, 2), a24 = v(1, 3);
  const double r2 = probe.mean(0) * probe.mean(0) + probe.mean(1) * probe.mean(1);

  const double sum_sq = (a14 + a23) * (a14 + a23) + (a13 - a24) * (a13 - a24);
  const double dif_sq = (a14 - a23) * (a14 - a23) + (a13 + a24) * (a13 + a24);

  auto ratio = [](double num, double den) { return num == 0.0 ? 0.0 : num / den; };

  const double den1_col = std::pow(std::sqrt(nb * ni) + std::sqrt((1 + nb) * (1 + ni)), 2);
  const double den2_col =
      std::pow(std::sqrt(nb * (1 + ni)) + std::sqrt((1 + nb) * ni), 2);
  const double den3_col = std::pow(std::sqrt(nb) + std::sqrt(1 + nb), 2);

  DecayConstants out;
  out.gamma_col = (ratio(sum_sq, den1_col) + ratio(dif_sq, den2_col) +
                   ratio(8.0 * r2, den3_col)) *
                  kappa / 16.0;
  out.gamma_loc = (ratio(sum_sq, 1 + nb + ni + 2 * nb * ni) +
                   ratio(dif_sq, nb + ni + 2 * nb * ni) + ratio(8.0 * r2, 1 + 2 * nb)) *
                  kappa / 32.0;
  return out;
}

DecayConstants decay_constants(const GaussianState& probe, double n_background,
                               double kappa) {
  require_two_modes(probe, "decay_constants");
  const auto& v = probe.cov;
  if (std::abs(v(2, 2) - v(3, 3)) <= kIdlerThermalTol &&
      std::abs(v(2, 3)) <= kIdlerThermalTol)
    return decay_idler_thermal(probe, n_background, kappa);

  // An idler-local symplectic cannot change the constants; use the one that
  // brings the idler block to thermal form.
  WilliamsonDecomposition wd = williamson(v.block<2, 2>(2, 2));
  Eigen::MatrixXd l = Eigen::MatrixXd::Identity(4, 4);
  l.block<2, 2>(2, 2) = wd.s_inverse();

  GaussianState rotated;
  rotated.mean = l * probe.mean;
  rotated.cov = l * v * l.transpose();
  rotated.cov = 0.5 * (rotated.cov + rotated.cov.transpose()).eval();
  rotated.cov(2, 3) = rotated.cov(3, 2) = 0.0;
  const double nu = 0.5 * (rotated.cov(2, 2) + rotated.cov(3, 3));
  rotated.cov(2, 2) = rotated.cov(3, 3) = nu;
  return decay_idler_thermal(rotated, n_background, kappa);
}

DecayConstants decay_large_background(const GaussianState& probe, double n_background,
                                      double kappa) {
  require_two_modes(probe, "decay_large_background");
  const Eigen::Matrix2d vi = probe.cov.block<2, 2>(2, 2);
  const double det = vi.determinant();
  if (det <= 0.0)
    throw DecompositionError("decay_large_background: singular idler block", det);
  const double nu2 = std::sqrt(det);
  const Eigen::Matrix2d c = probe.cov.block<2, 2>(0, 2);
  const double corr = (c * vi.inverse() * c.transpose()).trace();
  const double r2 = probe.mean(0) * probe.mean(0) + probe.mean(1) * probe.mean(1);
  const double scale = kappa / (4.0 * n_background);

  DecayConstants out;
  const double den = std::pow(std::sqrt(nu2 + 1) + std::sqrt(nu2 - 1), 2);
  out.gamma_col = scale * (0.5 * r2 + nu2 * corr / den);
  out.gamma_loc = scale * (0.5 * r2 + 0.25 * corr);
  return out;
}

DecayConstants scenario_decay(const QIScenario& scenario) {
  return decay_constants(effective_probe(scenario), scenario.n_background,
                         scenario.kappa);
}

DecayConstants coherent_benchmark(double n_s, double n_background, double kappa) {
  DecayConstants out;
  out.gamma_col =
      n_s * kappa / std::pow(std::sqrt(n_background) + std::sqrt(1 + n_background), 2);
  out.gamma_loc = n_s * kappa / (2.0 + 4.0 * n_background);
  return out;
}

QuantumAdvantage quantum_advantage(const QIScenario& scenario) {
  GaussianState p = effective_probe(scenario);
  const double n_sig = mean_photon(p, 0);
  if (!(n_sig > 0.0))
    throw DomainError("quantum_advantage: signal mode carries no power");
  DecayConstants d = decay_constants(p, scenario.n_background, scenario.kappa);
  DecayConstants ci = coherent_benchmark(n_sig, scenario.n_background, scenario.kappa);
  return {d.gamma_col / ci.gamma_col, d.gamma_loc / ci.gamma_loc};
}

double eta_threshold_local(double n_background, double n_loss) {
  if (n_background < 0 || n_loss < 0)
    throw DomainError("eta_threshold_local: photon numbers must be >= 0");
  if (std::isinf(n_background)) return (1 + 2 * n_loss) / (2 * (1 + n_loss));
  return (1 + n_background + n_loss + 2 * n_background * n_loss) /
         ((1 + 2 * n_background) * (1 + n_loss));
}

namespace {

double qa_col_tmsv_memory(double n_s, double n_background, double n_loss, double eta) {
  GaussianState p = apply(tmsv(n_s), Loss{1, eta, n_loss});
  DecayConstants d = decay_constants(p, n_background, 1.0);
  return d.gamma_col / coherent_benchmark(n_s, n_background, 1.0).gamma_col;
}

}  // namespace

EtaThreshold eta_threshold_collective(double n_s, double n_background, double n_loss) {
  if (!(n_s > 0)) throw DomainError("eta_threshold_collective: need n_s > 0");
  auto qa = [&](double eta) { return qa_col_tmsv_memory(n_s, n_background, n_loss, eta); };

  if (qa(1.0) < 1.0) return {EtaThreshold::Kind::no_advantage_at_any_eta, 0.0};

  // QA_col should grow with transmittivity; verify before trusting bisection.
  bool monotone = true;
  double prev = qa(0.0);
  for (int i = 1; i <= 40 && monotone; ++i) {
    double cur = qa(i / 40.0);
    if (cur < prev - 1e-12) monotone = false;
    prev = cur;
  }

  double lo = 0.0, hi = 1.0;
  if (!monotone) {
    // find the first upward crossing on a dense grid, then bisect inside it
    const int steps = 20000;
    for (int i = 1; i <= steps; ++i) {
      if (qa(static_cast<double>(i) / steps) >= 1.0) {
        lo = static_cast<double>(i - 1) / steps;
        hi = static_cast<double>(i) / steps;
        break;
      }
    }
  }
  while (hi - lo > 1e-9) {
    double mid = 0.5 * (lo + hi);
    (qa(mid) < 1.0 ? lo : hi) = mid;
  }
  return {EtaThreshold::Kind::found, 0.5 * (lo + hi)};
}

double eta_threshold_collective_limit(double n_s, double n_loss) {
  if (n_s < 0 || n_loss < 0)
    throw DomainError("eta_threshold_collective_limit: photon numbers must be >= 0");
  const double radicand =
      std::max(0.0, 1.0 - (1 + n_loss) / (std::pow(1 + 2 * n_loss, 2) * (1 + n_s)));
  return 0.25 * (1 + 2 * n_loss) / (1 + n_loss) * (1.0 + std::sqrt(radicand));
}

DecayConstants infinite_idler_squeeze_limit(const GaussianState& probe,
                                            double n_background, double kappa) {
  require_two_modes(probe, "infinite_idler_squeeze_limit");
  if (std::abs(probe.cov(2, 3)) > kIdlerThermalTol)
    throw DomainError("infinite_idler_squeeze_limit: requires a34 = 0");
  const double a13 = probe.cov(0, 2), a23 = probe.cov(1, 2), a33 = probe.cov(2, 2);
  const double r2 = probe.mean(0) * probe.mean(0) + probe.mean(1) * probe.mean(1);
  const double q = (a13 * a13 + a23 * a23) / a33 + 2.0 * r2;

  DecayConstants out;
  out.gamma_col =
      kappa * q /
      (4.0 * std::pow(std::sqrt(n_background) + std::sqrt(1 + n_background), 2));
  out.gamma_loc = kappa * q / (8.0 + 16.0 * n_background);
  return out;
}

std::string to_string(CorrelationLabel label) {
  switch (label) {
    case CorrelationLabel::unphysical: return "unphysical";
    case CorrelationLabel::separable: return "separable";
    case CorrelationLabel::entangled_no_advantage: return "entangled_no_advantage";
    case CorrelationLabel::collective_only: return "collective_only";
    case CorrelationLabel::local_and_collective: return "local_and_collective";
  }
  return "unknown";
}

namespace {

double min_uncertainty_eigenvalue(const Eigen::Matrix4d& v) {
  Eigen::Matrix4cd u = v.cast<std::complex<double>>() +
                       std::complex<double>(0, 1) * omega(2).cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(u, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace

RegionClassification classify_correlations(double n_s, double n_i, double n_background,
                                           const GridSpec& a13_grid,
                                           const GridSpec& a24_grid) {
  if (n_s < 0 || n_i < 0)
    throw DomainError("classify_correlations: photon numbers must be >= 0");
  RegionClassification rc;
  rc.a13_grid = a13_grid;
  rc.a24_grid = a24_grid;
  rc.points.resize(static_cast<size_t>(a13_grid.count) * a24_grid.count);

  const DecayConstants ci = coherent_benchmark(n_s, n_background, 1.0);
  const Eigen::Vector4d pt_flip(1, 1, 1, -1);  // partial transpose on the idler

  parallel_for(static_cast<int>(rc.points.size()), [&](int idx) {
    const int i = idx / a24_grid.count;
    const int j = idx % a24_grid.count;
    CorrelationPoint& p = rc.points[idx];
    p.a13 = a13_grid.at(i);
    p.a24 = a24_grid.at(j);

    Eigen::Matrix4d v = Eigen::Matrix4d::Zero();
    v(0, 0) = v(1, 1) = 1 + 2 * n_s;
    v(2, 2) = v(3, 3) = 1 + 2 * n_i;
    v(0, 2) = v(2, 0) = p.a13;
    v(1, 3) = v(3, 1) = p.a24;

    if (min_uncertainty_eigenvalue(v) < -tol::kPsd) {
      p.label = CorrelationLabel::unphysical;
      return;
    }

    GaussianState state{Eigen::VectorXd::Zero(4), v};
    DecayConstants d = decay_idler_thermal(state, n_background, 1.0);
    p.qa_col = d.gamma_col / ci.gamma_col;
    p.qa_loc = d.gamma_loc / ci.gamma_loc;

    const Eigen::Matrix4d v_pt = pt_flip.asDiagonal() * v * pt_flip.asDiagonal();
    if (min_uncertainty_eigenvalue(v_pt) >= -tol::kPsd)
      p.label = CorrelationLabel::separable;
    else if (p.qa_col < 1.0)
      p.label = CorrelationLabel::entangled_no_advantage;
    else if (p.qa_loc < 1.0)
      p.label = CorrelationLabel::collective_only;
    else
      p.label = CorrelationLabel::local_and_collective;
  });
  return rc;
}

std::vector<SignalOpRow> signal_op_sweep(double n_s, double n_background, double kappa,
                                         const std::vector<double>& delta_n_grid) {
  std::vector<SignalOpRow> rows(delta_n_grid.size());
  parallel_for(static_cast<int>(rows.size()), [&](int i) {
    const double dn = delta_n_grid[i];
    if (dn < 0) throw DomainError("signal_op_sweep: delta_n must be >= 0");
    SignalOpRow& row = rows[i];
    row.delta_n = dn;

    GaussianState displaced = tmsv(n_s);
    displaced.mean(0) = std::sqrt(2.0 * dn);
    row.displaced = decay_constants(displaced, n_background, kappa);

    // squeezing aligned with the two-mode squeezing phase; z chosen so the
    // signal gains exactly dn photons
    const double zs = 0.5 * std::acosh((1 + 2 * (n_s + dn)) / (1 + 2 * n_s));
    GaussianState squeezed = apply(tmsv(n_s), SingleModeSqueeze{0, zs, 0.0});
    row.squeezed = decay_constants(squeezed, n_background, kappa);

    row.tmsv_equal_power = decay_constants(tmsv(n_s + dn), n_background, kappa);
  });
  return rows;
}

IdlerSqueezeSweep idler_squeeze_sweep(double n_s, double n_background, double kappa,
                                      double eta, double n_loss,
                                      const std::vector<double>& zeta_grid) {
  IdlerSqueezeSweep sweep;
  sweep.rows.resize(zeta_grid.size());
  parallel_for(static_cast<int>(zeta_grid.size()), [&](int i) {
    GaussianState p = apply(tmsv(n_s), SingleModeSqueeze{1, zeta_grid[i], 0.0});
    p = apply(p, Loss{1, eta, n_loss});
    sweep.rows[i] = {zeta_grid[i], decay_constants(p, n_background, kappa)};
  });
  sweep.limit = infinite_idler_squeeze_limit(tmsv(n_s), n_background, kappa);
  sweep.coherent = coherent_benchmark(n_s, n_background, kappa);
  return sweep;
}

}  // namespace gqi
