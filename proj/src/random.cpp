#include "gqi/random.hpp"

#include <cmath>

namespace gqi {

uint64_t Rng::next_u64() {
  uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
  double u1 = uniform();
  while (u1 == 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

Eigen::MatrixXd random_symplectic(Rng& rng, int n_modes) {
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
  auto mix_in = [&](const ChannelSpec& ch) {
    s = channel_symplectic(ch, n_modes) * s;
  };
  for (int m = 0; m < n_modes; ++m) mix_in(PhaseShift{m, rng.uniform(0, 2 * M_PI)});
  for (int m = 0; m < n_modes; ++m)
    mix_in(SingleModeSqueeze{m, rng.uniform(-0.7, 0.7), rng.uniform(0, M_PI)});
  for (int a = 0; a < n_modes; ++a)
    for (int b = a + 1; b < n_modes; ++b) {
      mix_in(BeamSplit{a, b, rng.uniform(0, 2 * M_PI)});
      mix_in(TwoModeSqueeze{a, b, rng.uniform(-0.5, 0.5)});
    }
  for (int m = 0; m < n_modes; ++m) mix_in(PhaseShift{m, rng.uniform(0, 2 * M_PI)});
  return s;
}

GaussianState random_state(Rng& rng, int n_modes, double nu_margin, double nu_max) {
  Eigen::VectorXd d(2 * n_modes);
  for (int m = 0; m < n_modes; ++m)
    d(2 * m) = d(2 * m + 1) = rng.uniform(1.0 + nu_margin, nu_max);
  Eigen::MatrixXd s = random_symplectic(rng, n_modes);
  GaussianState out;
  out.cov = s * d.asDiagonal() * s.transpose();
  out.cov = 0.5 * (out.cov + out.cov.transpose()).eval();
  out.mean.resize(2 * n_modes);
  for (int i = 0; i < 2 * n_modes; ++i) out.mean(i) = rng.normal();
  return out;
}

TangentVector random_tangent(Rng& rng, int n_modes) {
  TangentVector t;
  t.d_mean.resize(2 * n_modes);
  for (int i = 0; i < 2 * n_modes; ++i) t.d_mean(i) = rng.normal();
  Eigen::MatrixXd m(2 * n_modes, 2 * n_modes);
  for (int i = 0; i < 2 * n_modes; ++i)
    for (int j = 0; j < 2 * n_modes; ++j) m(i, j) = rng.normal();
  t.d_cov = 0.5 * (m + m.transpose());
  return t;
}

}  // namespace gqi
