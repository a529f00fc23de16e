#include "gqi/metric.hpp"

#include <cmath>

#include "gqi/williamson.hpp"

namespace gqi {

MonotoneFunction f_collective() {
  return {[](double t) {
            double s = std::sqrt(t) + 1.0;
            return 2.0 * s * s;
          },
          "collective"};
}

MonotoneFunction f_local() {
  return {[](double t) { return 4.0 * (t + 1.0); }, "local"};
}

void check_monotone_symmetry(const MonotoneFunction& f) {
  if (!(f.eval(1.0) > 0.0)) throw DomainError("monotone function: f(1) must be positive");
  for (int i = 0; i <= 80; ++i) {
    double t = std::pow(10.0, -4.0 + 8.0 * i / 80.0);
    double lhs = f.eval(t);
    double rhs = t * f.eval(1.0 / t);
    if (std::abs(lhs - rhs) > 1e-10 * std::max(std::abs(lhs), 1e-300))
      throw DomainError("monotone function '" + f.label + "': f(t) != t*f(1/t) at t=" +
                        std::to_string(t));
  }
}

BasisMatrices basis_matrices(int n_modes) {
  if (n_modes < 1) throw DimensionError("basis_matrices: need at least one mode");
  const int d = 2 * n_modes;
  auto zero = [d] { return Eigen::MatrixXd::Zero(d, d).eval(); };

  BasisMatrices b;
  b.n_modes = n_modes;
  for (int i = 0; i < n_modes; ++i) {
    const int x = 2 * i, p = 2 * i + 1;
    Eigen::MatrixXd ni = zero(), si = zero(), ti = zero();
    ni(x, x) = 1;
    ni(p, p) = 1;
    si(p, x) = 1;
    si(x, p) = 1;
    ti(x, x) = 1;
    ti(p, p) = -1;
    b.n_i.push_back(ni);
    b.s_i.push_back(si);
    b.t_i.push_back(ti);
  }
  for (int i = 0; i < n_modes; ++i) {
    for (int j = i + 1; j < n_modes; ++j) {
      const int xi = 2 * i, pi = 2 * i + 1, xj = 2 * j, pj = 2 * j + 1;
      Eigen::MatrixXd sij = zero(), tij = zero(), aij = zero(), bij = zero();
      sij(pj, xi) = sij(xj, pi) = sij(pi, xj) = sij(xi, pj) = 1;
      tij(xj, xi) = tij(xi, xj) = 1;
      tij(pj, pi) = tij(pi, pj) = -1;
      aij(pj, xi) = aij(xi, pj) = 1;
      aij(xj, pi) = aij(pi, xj) = -1;
      bij(xj, xi) = bij(pj, pi) = bij(xi, xj) = bij(pi, pj) = 1;
      b.s_ij.push_back(sij);
      b.t_ij.push_back(tij);
      b.a_ij.push_back(aij);
      b.b_ij.push_back(bij);
    }
  }
  return b;
}

namespace {

constexpr double kNuSingular = 1e-12;  // nu - 1 below this counts as a pure mode

double trace_product(const Eigen::MatrixXd& dv, const Eigen::MatrixXd& basis) {
  return (dv.cwiseProduct(basis)).sum();  // Tr(dV * B) for symmetric B
}

}  // namespace

double metric_thermal(const Eigen::VectorXd& nus, const MonotoneFunction& f,
                      const TangentVector& tangent) {
  const int n = static_cast<int>(nus.size());
  if (tangent.d_cov.rows() != 2 * n || tangent.d_cov.cols() != 2 * n ||
      tangent.d_mean.size() != 2 * n)
    throw DimensionError("metric_thermal: tangent dimension does not match spectrum");
  if ((tangent.d_cov - tangent.d_cov.transpose()).cwiseAbs().maxCoeff() > tol::kSymmetry)
    throw DomainError("metric_thermal: d_cov must be symmetric");

  const BasisMatrices b = basis_matrices(n);
  const double f1 = f.eval(1.0);
  double g = 0.0;

  // A vanishing coefficient is dropped before the singularity check, so pure
  // modes with no excitation in that direction do not poison the evaluation.
  auto term = [&](double numerator, double gap, double nu, const char* name,
                  auto denominator_rest) -> double {
    if (numerator == 0.0) return 0.0;
    if (gap <= kNuSingular)
      throw SingularMetricError("metric term '" + std::string(name) +
                                    "' is singular: nu = " + std::to_string(nu) +
                                    " with nonzero coefficient",
                                name);
    return numerator / (gap * denominator_rest());
  };

  for (int i = 0; i < n; ++i) {
    const double nu = nus(i);
    const double gm = nu - 1.0, gp = nu + 1.0;

    const double tn = trace_product(tangent.d_cov, b.n_i[i]);
    g += 0.25 * term(tn * tn, gm, nu, "photon_number", [&] { return f1 * gp; });

    const double ts = trace_product(tangent.d_cov, b.s_i[i]);
    const double tt = trace_product(tangent.d_cov, b.t_i[i]);
    g += 0.25 * term(ts * ts + tt * tt, gm * gm, nu, "single_mode_squeeze",
                     [&] { return f.eval((gp * gp) / (gm * gm)); });

    const double dm = tangent.d_mean(2 * i) * tangent.d_mean(2 * i) +
                      tangent.d_mean(2 * i + 1) * tangent.d_mean(2 * i + 1);
    g += term(2.0 * dm, gm, nu, "displacement", [&] { return f.eval(gp / gm); });
  }

  int pair = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++pair) {
      const double gmi = nus(i) - 1.0, gpi = nus(i) + 1.0;
      const double gmj = nus(j) - 1.0, gpj = nus(j) + 1.0;

      const double tsij = trace_product(tangent.d_cov, b.s_ij[pair]);
      const double ttij = trace_product(tangent.d_cov, b.t_ij[pair]);
      g += 0.125 * term(tsij * tsij + ttij * ttij, gmi * gmj, std::min(nus(i), nus(j)),
                        "two_mode_squeeze",
                        [&] { return f.eval((gpi / gmi) * (gpj / gmj)); });

      const double taij = trace_product(tangent.d_cov, b.a_ij[pair]);
      const double tbij = trace_product(tangent.d_cov, b.b_ij[pair]);
      g += 0.125 * term(taij * taij + tbij * tbij, gmj, nus(j), "beam_split",
                        [&] { return gpi * f.eval((gmi / gpi) * (gpj / gmj)); });
    }
  }
  return g;
}

double metric_general(const GaussianState& state, const MonotoneFunction& f,
                      const TangentVector& tangent) {
  check_monotone_symmetry(f);  // metric_thermal, the hot kernel, trusts its caller
  StateDiagnostics diag = validate(state);
  if (!diag.valid)
    throw DomainError("metric_general: state violates the uncertainty relation");

  WilliamsonDecomposition wd = williamson(state.cov);
  Eigen::MatrixXd s_inv = wd.s_inverse();
  TangentVector local;
  local.d_mean = s_inv * tangent.d_mean;
  local.d_cov = s_inv * tangent.d_cov * s_inv.transpose();
  // transformed d_cov is symmetric up to rounding; restore exactly
  local.d_cov = 0.5 * (local.d_cov + local.d_cov.transpose()).eval();
  return metric_thermal(wd.nus, f, local);
}

}  // namespace gqi
