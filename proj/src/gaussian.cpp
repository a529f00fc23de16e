#include "gqi/gaussian.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "gqi/williamson.hpp"

namespace gqi {

Eigen::MatrixXd omega(int n_modes) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    w(2 * k, 2 * k + 1) = 1.0;
    w(2 * k + 1, 2 * k) = -1.0;
  }
  return w;
}

GaussianState vacuum(int n_modes) {
  return {Eigen::VectorXd::Zero(2 * n_modes),
          Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes)};
}

GaussianState thermal(int n_modes, double mean_photon) {
  if (mean_photon < 0) throw DomainError("thermal: mean photon must be >= 0");
  GaussianState s = vacuum(n_modes);
  s.cov *= 1.0 + 2.0 * mean_photon;
  return s;
}

GaussianState tmsv(double n_s) {
  if (n_s < 0) throw DomainError("tmsv: signal mean photon must be >= 0");
  GaussianState s = vacuum(2);
  const double a = 1.0 + 2.0 * n_s;
  const double c = 2.0 * std::sqrt(n_s + n_s * n_s);
  s.cov.diagonal().setConstant(a);
  s.cov(0, 2) = s.cov(2, 0) = c;
  s.cov(1, 3) = s.cov(3, 1) = -c;
  return s;
}

GaussianState coherent(double x, double p) {
  GaussianState s = vacuum(1);
  s.mean << x, p;
  return s;
}

namespace {

Eigen::VectorXd symplectic_spectrum(const Eigen::MatrixXd& cov) {
  // |eigenvalues of i*Omega*V| come in pairs (nu, nu); V need not be PD here.
  const int n = static_cast<int>(cov.rows()) / 2;
  Eigen::MatrixXcd m = std::complex<double>(0, 1) * omega(n) * cov;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, /*computeEigenvectors=*/false);
  std::vector<double> mags(2 * n);
  for (int i = 0; i < 2 * n; ++i) mags[i] = std::abs(es.eigenvalues()(i));
  std::sort(mags.begin(), mags.end(), std::greater<double>());
  Eigen::VectorXd nus(n);
  for (int i = 0; i < n; ++i) nus(i) = mags[2 * i];  // keep one of each pair
  return nus;
}

}  // namespace

StateDiagnostics validate(const GaussianState& state) {
  const auto& v = state.cov;
  if (v.rows() != v.cols() || v.rows() % 2 != 0 || v.rows() == 0)
    throw DimensionError("validate: covariance must be square with even dimension");
  if (state.mean.size() != v.rows())
    throw DimensionError("validate: mean length does not match covariance dimension");

  StateDiagnostics d;
  d.max_asymmetry = (v - v.transpose()).cwiseAbs().maxCoeff();

  const int n = state.n_modes();
  Eigen::MatrixXcd u = v.cast<std::complex<double>>() +
                       std::complex<double>(0, 1) * omega(n).cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(u, Eigen::EigenvaluesOnly);
  d.min_uncertainty_eigenvalue = es.eigenvalues().minCoeff();

  d.symplectic_spectrum = symplectic_spectrum(v);

  d.valid = d.max_asymmetry <= tol::kSymmetry &&
            d.min_uncertainty_eigenvalue >= -tol::kPsd &&
            d.symplectic_spectrum.minCoeff() >= 1.0 - tol::kPsd;
  return d;
}

namespace {

Eigen::Matrix2d rotation2(double phi) {
  Eigen::Matrix2d r;
  r << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
  return r;
}

void check_mode(int mode, int n_modes, const char* who) {
  if (mode < 0 || mode >= n_modes) throw DimensionError(std::string(who) + ": mode index out of range");
}

Eigen::MatrixXd embed_single(const Eigen::Matrix2d& block, int mode, int n_modes) {
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
  s.block<2, 2>(2 * mode, 2 * mode) = block;
  return s;
}

Eigen::MatrixXd embed_pair(const Eigen::Matrix2d& aa, const Eigen::Matrix2d& ab,
                           const Eigen::Matrix2d& ba, const Eigen::Matrix2d& bb, int ma,
                           int mb, int n_modes) {
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
  s.block<2, 2>(2 * ma, 2 * ma) = aa;
  s.block<2, 2>(2 * ma, 2 * mb) = ab;
  s.block<2, 2>(2 * mb, 2 * ma) = ba;
  s.block<2, 2>(2 * mb, 2 * mb) = bb;
  return s;
}

}  // namespace

Eigen::MatrixXd channel_symplectic(const ChannelSpec& channel, int n_modes) {
  const Eigen::Matrix2d i2 = Eigen::Matrix2d::Identity();
  const Eigen::Matrix2d sz = Eigen::Vector2d(1, -1).asDiagonal();
  return std::visit(
      [&](const auto& ch) -> Eigen::MatrixXd {
        using T = std::decay_t<decltype(ch)>;
        if constexpr (std::is_same_v<T, Symplectic>) {
          if (ch.s.rows() != 2 * n_modes || ch.s.cols() != 2 * n_modes)
            throw DimensionError("symplectic: wrong matrix dimension");
          Eigen::MatrixXd w = omega(n_modes);
          double dev = (ch.s * w * ch.s.transpose() - w).cwiseAbs().maxCoeff();
          if (dev > tol::kPsd)
            throw DomainError("symplectic: S*Omega*S^T != Omega (deviation " +
                              std::to_string(dev) + ")");
          return ch.s;
        } else if constexpr (std::is_same_v<T, SingleModeSqueeze>) {
          check_mode(ch.mode, n_modes, "single_mode_squeeze");
          Eigen::Matrix2d d = Eigen::Vector2d(std::exp(ch.z), std::exp(-ch.z)).asDiagonal();
          Eigen::Matrix2d r = rotation2(ch.phase);
          return embed_single(r * d * r.transpose(), ch.mode, n_modes);
        } else if constexpr (std::is_same_v<T, TwoModeSqueeze>) {
          check_mode(ch.mode_a, n_modes, "two_mode_squeeze");
          check_mode(ch.mode_b, n_modes, "two_mode_squeeze");
          if (ch.mode_a == ch.mode_b) throw DimensionError("two_mode_squeeze: modes must differ");
          double chz = std::cosh(ch.z), shz = std::sinh(ch.z);
          return embed_pair(chz * i2, shz * sz, shz * sz, chz * i2, ch.mode_a, ch.mode_b,
                            n_modes);
        } else if constexpr (std::is_same_v<T, BeamSplit>) {
          check_mode(ch.mode_a, n_modes, "beamsplit");
          check_mode(ch.mode_b, n_modes, "beamsplit");
          if (ch.mode_a == ch.mode_b) throw DimensionError("beamsplit: modes must differ");
          double c = std::cos(ch.theta), s = std::sin(ch.theta);
          return embed_pair(c * i2, s * i2, -s * i2, c * i2, ch.mode_a, ch.mode_b, n_modes);
        } else if constexpr (std::is_same_v<T, PhaseShift>) {
          check_mode(ch.mode, n_modes, "phase");
          return embed_single(rotation2(ch.phi), ch.mode, n_modes);
        } else {
          throw DomainError("channel_symplectic: channel kind is not a symplectic map");
        }
      },
      channel);
}

GaussianState apply(const GaussianState& state, const ChannelSpec& channel) {
  const int n = state.n_modes();
  if (const auto* loss = std::get_if<Loss>(&channel)) {
    check_mode(loss->mode, n, "loss");
    if (loss->eta < 0.0 || loss->eta > 1.0) throw DomainError("loss: eta must be in [0, 1]");
    if (loss->n_thermal < 0.0) throw DomainError("loss: thermal photon must be >= 0");
    Eigen::VectorXd x = Eigen::VectorXd::Ones(2 * n);
    x(2 * loss->mode) = x(2 * loss->mode + 1) = std::sqrt(loss->eta);
    GaussianState out;
    out.mean = x.asDiagonal() * state.mean;
    out.cov = x.asDiagonal() * state.cov * x.asDiagonal();
    const double y = (1.0 - loss->eta) * (1.0 + 2.0 * loss->n_thermal);
    out.cov(2 * loss->mode, 2 * loss->mode) += y;
    out.cov(2 * loss->mode + 1, 2 * loss->mode + 1) += y;
    return out;
  }
  if (const auto* disp = std::get_if<Displacement>(&channel)) {
    if (disp->d.size() != 2 * n) throw DimensionError("displacement: wrong vector length");
    return {state.mean + disp->d, state.cov};
  }
  Eigen::MatrixXd s = channel_symplectic(channel, n);
  return {s * state.mean, s * state.cov * s.transpose()};
}

GaussianState apply_all(const GaussianState& state, const std::vector<ChannelSpec>& channels) {
  GaussianState out = state;
  for (const auto& ch : channels) out = gqi::apply(out, ch);
  return out;
}

GaussianState partial_trace(const GaussianState& state, const std::vector<int>& keep) {
  if (keep.empty()) throw DimensionError("partial_trace: keep set must be nonempty");
  const int n = state.n_modes();
  for (int m : keep) check_mode(m, n, "partial_trace");
  const int k = static_cast<int>(keep.size());
  GaussianState out;
  out.mean.resize(2 * k);
  out.cov.resize(2 * k, 2 * k);
  for (int i = 0; i < k; ++i) {
    out.mean.segment<2>(2 * i) = state.mean.segment<2>(2 * keep[i]);
    for (int j = 0; j < k; ++j)
      out.cov.block<2, 2>(2 * i, 2 * j) = state.cov.block<2, 2>(2 * keep[i], 2 * keep[j]);
  }
  return out;
}

}  // namespace gqi
