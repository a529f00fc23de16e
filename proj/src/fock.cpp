#include "gqi/fock.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numeric>

namespace gqi::fock {

namespace {

int product(const std::vector<int>& dims) {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<int>());
}

std::vector<int> strides_of(const std::vector<int>& dims) {
  std::vector<int> s(dims.size(), 1);
  for (int m = static_cast<int>(dims.size()) - 2; m >= 0; --m) s[m] = s[m + 1] * dims[m + 1];
  return s;
}

void check_mode(int mode, size_t n, const char* who) {
  if (mode < 0 || static_cast<size_t>(mode) >= n)
    throw DimensionError(std::string(who) + ": mode index out of range");
}

}  // namespace

int FockOperator::total_dim() const { return product(dims); }

MatrixXcd annihilation(int dim) {
  MatrixXcd a = MatrixXcd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

MatrixXcd exp_antihermitian(const MatrixXcd& k) {
  MatrixXcd h = Complex(0, 1) * k;
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h);
  Eigen::VectorXcd phases(es.eigenvalues().size());
  for (int i = 0; i < phases.size(); ++i)
    phases(i) = std::exp(Complex(0, -es.eigenvalues()(i)));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

namespace {

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

MatrixXcd lift_single(const MatrixXcd& op, int mode, const std::vector<int>& dims) {
  MatrixXcd out = MatrixXcd::Identity(1, 1);
  for (size_t m = 0; m < dims.size(); ++m) {
    if (static_cast<int>(m) == mode)
      out = kron(out, op);
    else
      out = kron(out, MatrixXcd::Identity(dims[m], dims[m]));
  }
  return out;
}

/// Embeds an operator on the (mode_a, mode_b) pair space (mode_a slower index).
MatrixXcd lift_pair(const MatrixXcd& op_pair, int mode_a, int mode_b,
                    const std::vector<int>& dims) {
  const int total = product(dims);
  const auto strides = strides_of(dims);
  const int da = dims[mode_a], db = dims[mode_b];
  MatrixXcd out = MatrixXcd::Zero(total, total);
  for (int row = 0; row < total; ++row) {
    const int na = (row / strides[mode_a]) % da;
    const int nb = (row / strides[mode_b]) % db;
    const int base = row - na * strides[mode_a] - nb * strides[mode_b];
    for (int na2 = 0; na2 < da; ++na2)
      for (int nb2 = 0; nb2 < db; ++nb2)
        out(row, base + na2 * strides[mode_a] + nb2 * strides[mode_b]) =
            op_pair(na * db + nb, na2 * db + nb2);
  }
  return out;
}

/// Beamsplitter on a (d, ancilla) pair keeping cos(theta) of the first mode.
MatrixXcd pair_beamsplitter(int d, int anc, double theta) {
  MatrixXcd a = kron(annihilation(d), MatrixXcd::Identity(anc, anc));
  MatrixXcd b = kron(MatrixXcd::Identity(d, d), annihilation(anc));
  MatrixXcd gen = a.adjoint() * b - a * b.adjoint();
  return exp_antihermitian(theta * gen);
}

Eigen::VectorXd thermal_weights(double n, int dim) {
  Eigen::VectorXd p(dim);
  const double ratio = n / (1.0 + n);
  double w = 1.0 / (1.0 + n);
  for (int k = 0; k < dim; ++k) {
    p(k) = w;
    w *= ratio;
  }
  return p;
}

/// Weight of the geometric tail beyond the cutoff, in closed form (the
/// floating-point trace cannot resolve tails near 1e-20).
double thermal_tail(double n, int dim) {
  return n <= 0.0 ? 0.0 : std::pow(n / (1.0 + n), dim);
}

/// Combine independent fractional losses: 1 - (1-a)(1-b), stable for tiny values.
double combine_deficit(double a, double b) { return a + b - a * b; }

/// Mixes `mode` with a thermal ancilla through a beamsplitter and traces the
/// ancilla out, as a sum over ancilla Fock transition operators (the full
/// pair-space density matrix is never materialized). Unnormalized trace loss
/// goes into the deficit.
void apply_thermal_mix(FockOperator& state, int mode, double n, double transmit,
                       int anc_cutoff) {
  if (transmit < 0.0 || transmit > 1.0)
    throw DomainError("thermal_mix: transmittivity must be in [0, 1]");
  if (anc_cutoff < 1) throw DomainError("thermal_mix: ancilla cutoff must be >= 1");
  const int d = state.dims[mode];
  const double theta = std::acos(std::sqrt(transmit));
  MatrixXcd u = pair_beamsplitter(d, anc_cutoff, theta);
  Eigen::VectorXd p = thermal_weights(n, anc_cutoff);

  const double trace_in = state.data.trace().real();
  MatrixXcd out = MatrixXcd::Zero(state.data.rows(), state.data.cols());
  MatrixXcd b(d, d);
  for (int nin = 0; nin < anc_cutoff; ++nin) {
    for (int m = 0; m < anc_cutoff; ++m) {
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) b(i, j) = u(i * anc_cutoff + m, j * anc_cutoff + nin);
      if (p(nin) * b.squaredNorm() < 1e-18) continue;
      MatrixXcd lifted = lift_single(b, mode, state.dims);
      out.noalias() += p(nin) * (lifted * state.data * lifted.adjoint());
    }
  }
  // measured relative loss (ancilla tail + skipped transition operators),
  // floored by the analytic ancilla tail which the trace cannot resolve
  const double lost = std::max((trace_in - out.trace().real()) / trace_in,
                               thermal_tail(n, anc_cutoff));
  state.truncation_deficit = combine_deficit(state.truncation_deficit, std::max(0.0, lost));
  state.data = std::move(out);
}

}  // namespace

FockOperator build_state(const CircuitSpec& circuit, const std::vector<int>& dims,
                         double deficit_threshold) {
  if (dims.empty()) throw DimensionError("build_state: need at least one mode");
  for (int d : dims)
    if (d < 1) throw DimensionError("build_state: cutoffs must be >= 1");

  FockOperator state;
  state.dims = dims;

  // Seeds are gathered first: a thermal seed must precede any other use of its mode.
  std::vector<double> seed_n(dims.size(), 0.0);
  std::vector<bool> touched(dims.size(), false);
  std::vector<CircuitOp> rest;
  for (const auto& op : circuit.ops) {
    if (const auto* seed = std::get_if<ThermalSeed>(&op)) {
      check_mode(seed->mode, dims.size(), "thermal_seed");
      if (touched[seed->mode])
        throw DomainError("thermal_seed: mode already used by an earlier operation");
      if (seed->n < 0) throw DomainError("thermal_seed: mean photon must be >= 0");
      seed_n[seed->mode] = seed->n;
      touched[seed->mode] = true;
    } else {
      std::visit(
          [&](const auto& o) {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, TwoModeSqueezeOp> ||
                          std::is_same_v<T, BeamSplitOp>) {
              touched[o.mode_a] = touched[o.mode_b] = true;
            } else {
              touched[o.mode] = true;
            }
          },
          op);
      rest.push_back(op);
    }
  }

  state.data = MatrixXcd::Identity(1, 1);
  for (size_t m = 0; m < dims.size(); ++m) {
    Eigen::VectorXd p = thermal_weights(seed_n[m], dims[m]);
    state.data = kron(state.data, p.cast<Complex>().asDiagonal());
    state.truncation_deficit =
        combine_deficit(state.truncation_deficit, thermal_tail(seed_n[m], dims[m]));
  }

  for (const auto& op : rest) {
    std::visit(
        [&](const auto& o) {
          using T = std::decay_t<decltype(o)>;
          if constexpr (std::is_same_v<T, TwoModeSqueezeOp>) {
            check_mode(o.mode_a, dims.size(), "two_mode_squeeze");
            check_mode(o.mode_b, dims.size(), "two_mode_squeeze");
            const int da = dims[o.mode_a], db = dims[o.mode_b];
            MatrixXcd a = kron(annihilation(da), MatrixXcd::Identity(db, db));
            MatrixXcd b = kron(MatrixXcd::Identity(da, da), annihilation(db));
            MatrixXcd u = exp_antihermitian(
                o.z * (a.adjoint() * b.adjoint() - a * b).eval());
            MatrixXcd full = lift_pair(u, o.mode_a, o.mode_b, dims);
            state.data = full * state.data * full.adjoint();
          } else if constexpr (std::is_same_v<T, BeamSplitOp>) {
            check_mode(o.mode_a, dims.size(), "beamsplit");
            check_mode(o.mode_b, dims.size(), "beamsplit");
            const int da = dims[o.mode_a], db = dims[o.mode_b];
            MatrixXcd a = kron(annihilation(da), MatrixXcd::Identity(db, db));
            MatrixXcd b = kron(MatrixXcd::Identity(da, da), annihilation(db));
            MatrixXcd u =
                exp_antihermitian(o.theta * (a.adjoint() * b - a * b.adjoint()).eval());
            MatrixXcd full = lift_pair(u, o.mode_a, o.mode_b, dims);
            state.data = full * state.data * full.adjoint();
          } else if constexpr (std::is_same_v<T, DisplaceOp>) {
            check_mode(o.mode, dims.size(), "displace");
            MatrixXcd a = annihilation(dims[o.mode]);
            MatrixXcd u =
                exp_antihermitian((o.alpha * a.adjoint() - std::conj(o.alpha) * a).eval());
            MatrixXcd full = lift_single(u, o.mode, dims);
            state.data = full * state.data * full.adjoint();
          } else if constexpr (std::is_same_v<T, SingleModeSqueezeOp>) {
            check_mode(o.mode, dims.size(), "single_mode_squeeze");
            MatrixXcd a = annihilation(dims[o.mode]);
            MatrixXcd u = exp_antihermitian(
                (0.5 * o.z * (a.adjoint() * a.adjoint() - a * a)).eval());
            MatrixXcd full = lift_single(u, o.mode, dims);
            state.data = full * state.data * full.adjoint();
          } else if constexpr (std::is_same_v<T, LossOp>) {
            check_mode(o.mode, dims.size(), "loss");
            apply_thermal_mix(state, o.mode, 0.0, o.eta, dims[o.mode]);
          } else if constexpr (std::is_same_v<T, ThermalMixOp>) {
            check_mode(o.mode, dims.size(), "thermal_mix");
            apply_thermal_mix(state, o.mode, o.n, o.transmit, o.ancilla_cutoff);
          }
        },
        op);
  }

  const double trace = state.data.trace().real();
  if (state.truncation_deficit > deficit_threshold)
    throw CutoffError("build_state: truncation deficit " +
                          std::to_string(state.truncation_deficit) +
                          " exceeds threshold " + std::to_string(deficit_threshold),
                      state.truncation_deficit);
  state.data /= trace;
  state.data = 0.5 * (state.data + state.data.adjoint()).eval();
  return state;
}

ExtractedMoments gaussian_moments(const FockOperator& rho) {
  const int n = static_cast<int>(rho.dims.size());
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<MatrixXcd> quads(2 * n);
  for (int m = 0; m < n; ++m) {
    MatrixXcd a = lift_single(annihilation(rho.dims[m]), m, rho.dims);
    quads[2 * m] = inv_sqrt2 * (a + a.adjoint());
    quads[2 * m + 1] = Complex(0, -1) * inv_sqrt2 * (a - a.adjoint());
  }

  ExtractedMoments out;
  out.mean.resize(2 * n);
  for (int i = 0; i < 2 * n; ++i) out.mean(i) = (rho.data * quads[i]).trace().real();
  out.cov.resize(2 * n, 2 * n);
  for (int i = 0; i < 2 * n; ++i) {
    for (int j = i; j < 2 * n; ++j) {
      const double second = (rho.data * quads[i] * quads[j]).trace().real();
      out.cov(i, j) = out.cov(j, i) = 2.0 * (second - out.mean(i) * out.mean(j));
    }
  }
  return out;
}

GaussianState to_gaussian(const FockOperator& rho) {
  ExtractedMoments m = gaussian_moments(rho);
  return {m.mean, m.cov};
}

ChernoffResult chernoff_exponent(const FockOperator& rho0, const FockOperator& rho1) {
  if (rho0.dims != rho1.dims)
    throw DimensionError("chernoff_exponent: operators live on different spaces");

  Eigen::SelfAdjointEigenSolver<MatrixXcd> e0(rho0.data), e1(rho1.data);
  constexpr double kClamp = 1e-15;
  std::vector<double> lam, mu;
  std::vector<int> i0, i1;
  for (int i = 0; i < e0.eigenvalues().size(); ++i)
    if (e0.eigenvalues()(i) > kClamp) {
      lam.push_back(e0.eigenvalues()(i));
      i0.push_back(i);
    }
  for (int i = 0; i < e1.eigenvalues().size(); ++i)
    if (e1.eigenvalues()(i) > kClamp) {
      mu.push_back(e1.eigenvalues()(i));
      i1.push_back(i);
    }

  Eigen::MatrixXd w(lam.size(), mu.size());
  for (size_t j = 0; j < lam.size(); ++j)
    for (size_t k = 0; k < mu.size(); ++k)
      w(j, k) = std::norm(e0.eigenvectors().col(i0[j]).dot(e1.eigenvectors().col(i1[k])));

  auto overlap = [&](double s) {
    double q = 0.0;
    for (size_t j = 0; j < lam.size(); ++j) {
      const double ls = std::pow(lam[j], s);
      double row = 0.0;
      for (size_t k = 0; k < mu.size(); ++k) row += std::pow(mu[k], 1.0 - s) * w(j, k);
      q += ls * row;
    }
    return q;
  };

  // golden-section minimization; Tr rho0^s rho1^(1-s) is log-convex in s
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = 0.0, b = 1.0;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = overlap(x1), f2 = overlap(x2);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = overlap(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = overlap(x2);
    }
  }
  double s_star = 0.5 * (a + b);
  double q_min = std::min({overlap(s_star), overlap(0.0), overlap(1.0)});
  if (overlap(0.0) <= q_min) s_star = 0.0;
  if (overlap(1.0) <= q_min) s_star = 1.0;

  ChernoffResult out;
  out.s_star = s_star;
  out.exponent = q_min < 1e-300 ? std::numeric_limits<double>::infinity()
                                : std::max(0.0, -std::log(q_min));
  return out;
}

OutputPair qi_output_pair(const CircuitSpec& probe, double kappa, double n_background,
                          const std::vector<int>& dims, double deficit_threshold) {
  if (dims.size() != 3)
    throw DimensionError("qi_output_pair: dims must be {signal, idler, ancilla}");
  if (kappa < 0.0 || kappa >= 1.0)
    throw DomainError("qi_output_pair: kappa must be in [0, 1)");
  const std::vector<int> probe_dims = {dims[0], dims[1]};

  auto mixed = [&](double k) {
    CircuitSpec circuit = probe;
    // background scaled so the detector-side noise is kappa-independent
    circuit.ops.push_back(ThermalMixOp{0, n_background / (1.0 - k), k, dims[2]});
    return build_state(circuit, probe_dims, deficit_threshold);
  };

  OutputPair out;
  out.rho0 = mixed(0.0);  // full swap: signal replaced by thermal background
  out.rho1 = mixed(kappa);
  return out;
}

// --- Quadratic observables ----------------------------------------------------

namespace {

void check_observable(const QuadraticObservable& obs) {
  if ((obs.g_quad - obs.g_quad.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw DomainError("quadratic observable: G must be symmetric");
}

}  // namespace

double observable_mean(const QuadraticObservable& obs, const GaussianState& state) {
  check_observable(obs);
  return 0.5 * state.mean.dot(obs.g_quad * state.mean) + obs.g_lin.dot(state.mean) +
         0.25 * (obs.g_quad * state.cov).trace() + obs.constant;
}

double observable_variance(const QuadraticObservable& obs, const GaussianState& state) {
  check_observable(obs);
  const Eigen::Matrix4d gv = obs.g_quad * state.cov;
  const Eigen::Matrix4d gw = obs.g_quad * omega(2);
  const Eigen::Vector4d u = obs.g_quad * state.mean + obs.g_lin;
  return 0.125 * ((gv * gv).trace() + (gw * gw).trace()) + 0.5 * u.dot(state.cov * u);
}

namespace {

struct ReturnedStates {
  GaussianState rho0, rho1;
  Eigen::Vector4d d_mean;   // exact mean difference rho1 - rho0
  Eigen::Matrix4d d_cov;    // exact covariance difference
};

ReturnedStates returned_states(const GaussianState& probe, double kappa,
                               double n_background) {
  if (probe.n_modes() != 2)
    throw DimensionError("quadratic_snr: probe must have two modes");
  const double sk = std::sqrt(kappa);
  ReturnedStates rs;

  rs.rho0.mean = probe.mean;
  rs.rho0.mean.head<2>().setZero();
  rs.rho0.cov = Eigen::Matrix4d::Zero();
  rs.rho0.cov.block<2, 2>(2, 2) = probe.cov.block<2, 2>(2, 2);
  rs.rho0.cov.block<2, 2>(0, 0) =
      (1.0 + 2.0 * n_background) * Eigen::Matrix2d::Identity();

  rs.d_mean.setZero();
  rs.d_mean.head<2>() = sk * probe.mean.head<2>();
  rs.d_cov.setZero();
  rs.d_cov.block<2, 2>(0, 0) =
      kappa * (probe.cov.block<2, 2>(0, 0) - Eigen::Matrix2d::Identity());
  rs.d_cov.block<2, 2>(0, 2) = sk * probe.cov.block<2, 2>(0, 2);
  rs.d_cov.block<2, 2>(2, 0) = sk * probe.cov.block<2, 2>(2, 0);

  rs.rho1.mean = rs.rho0.mean + rs.d_mean;
  rs.rho1.cov = rs.rho0.cov + rs.d_cov;
  return rs;
}

}  // namespace

double quadratic_snr(const GaussianState& probe, double kappa, double n_background,
                     const QuadraticObservable& obs) {
  check_observable(obs);
  if (!(kappa > 0.0)) throw DomainError("quadratic_snr: kappa must be positive");
  ReturnedStates rs = returned_states(probe, kappa, n_background);

  // mean difference assembled from difference matrices so tiny kappa does not
  // cancel catastrophically
  const double d_mean_part =
      0.5 * rs.d_mean.dot(obs.g_quad * (rs.rho1.mean + rs.rho0.mean)) +
      obs.g_lin.dot(rs.d_mean);
  const double d_cov_part = 0.25 * (obs.g_quad * rs.d_cov).trace();
  const double dm = d_mean_part + d_cov_part;
  if (dm == 0.0) return 0.0;

  const double s0 = std::sqrt(std::max(0.0, observable_variance(obs, rs.rho0)));
  const double s1 = std::sqrt(std::max(0.0, observable_variance(obs, rs.rho1)));
  const double denom = 2.0 * (s0 + s1) * (s0 + s1);
  if (denom == 0.0) return 0.0;
  return dm * dm / (denom * kappa);
}

SnrMaximum snr_maximize(const GaussianState& probe, double kappa, double n_background) {
  ReturnedStates rs = returned_states(probe, kappa, n_background);

  // Basis of the 14-parameter observable family (10 quadratic + 4 linear).
  std::vector<QuadraticObservable> basis;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      QuadraticObservable o;
      o.g_quad(i, j) = o.g_quad(j, i) = 1.0;
      basis.push_back(o);
    }
  for (int i = 0; i < 4; ++i) {
    QuadraticObservable o;
    o.g_lin(i) = 1.0;
    basis.push_back(o);
  }
  const int dim = static_cast<int>(basis.size());

  // Leading-order mean shift is linear in the observable and the reference
  // variance quadratic, so the optimum is a generalized Rayleigh quotient.
  Eigen::VectorXd v(dim);
  for (int a = 0; a < dim; ++a) {
    const double mean_part =
        0.5 * rs.d_mean.dot(basis[a].g_quad * (rs.rho1.mean + rs.rho0.mean)) +
        basis[a].g_lin.dot(rs.d_mean);
    v(a) = mean_part + 0.25 * (basis[a].g_quad * rs.d_cov).trace();
  }
  Eigen::MatrixXd q(dim, dim);
  for (int a = 0; a < dim; ++a) {
    const Eigen::Vector4d ua = basis[a].g_quad * rs.rho0.mean + basis[a].g_lin;
    const Eigen::Matrix4d gva = basis[a].g_quad * rs.rho0.cov;
    const Eigen::Matrix4d gwa = basis[a].g_quad * omega(2);
    for (int b = a; b < dim; ++b) {
      const Eigen::Vector4d ub = basis[b].g_quad * rs.rho0.mean + basis[b].g_lin;
      const double cov_ab = 0.125 * ((gva * (basis[b].g_quad * rs.rho0.cov)).trace() +
                                     (gwa * (basis[b].g_quad * omega(2))).trace()) +
                            0.5 * ua.dot(rs.rho0.cov * ub);
      q(a, b) = q(b, a) = cov_ab;
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> qe(q);
  const double clamp = 1e-12 * qe.eigenvalues().cwiseAbs().maxCoeff();
  Eigen::VectorXd w = Eigen::VectorXd::Zero(dim);
  for (int i = 0; i < dim; ++i) {
    if (qe.eigenvalues()(i) > clamp) {
      const Eigen::VectorXd col = qe.eigenvectors().col(i);
      w += col * (col.dot(v) / qe.eigenvalues()(i));
    }
  }

  auto assemble = [&](const Eigen::VectorXd& weights) {
    QuadraticObservable o;
    for (int a = 0; a < dim; ++a) {
      o.g_quad += weights(a) * basis[a].g_quad;
      o.g_lin += weights(a) * basis[a].g_lin;
    }
    return o;
  };

  std::vector<QuadraticObservable> candidates;
  if (w.cwiseAbs().maxCoeff() > 0) candidates.push_back(assemble(w));
  {
    QuadraticObservable o;  // x_s x_i - p_s p_i: the TMSV-matched correlation pattern
    o.g_quad(0, 2) = o.g_quad(2, 0) = 1.0;
    o.g_quad(1, 3) = o.g_quad(3, 1) = -1.0;
    candidates.push_back(o);
    o.g_quad(1, 3) = o.g_quad(3, 1) = 1.0;
    candidates.push_back(o);
  }
  for (int i = 0; i < 2; ++i) {
    QuadraticObservable o;
    o.g_lin(i) = 1.0;
    candidates.push_back(o);
  }
  if (rs.d_mean.head<2>().norm() > 0) {
    QuadraticObservable o;  // quadrature along the displaced direction
    o.g_lin.head<2>() = rs.d_mean.head<2>().normalized();
    candidates.push_back(o);
  }

  SnrMaximum best;
  for (const auto& cand : candidates) {
    const double snr = quadratic_snr(probe, kappa, n_background, cand);
    if (snr > best.snr) {
      best.snr = snr;
      best.observable = cand;
    }
  }
  return best;
}

}  // namespace gqi::fock
