#include "gqi/williamson.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "gqi/gaussian.hpp"

namespace gqi {

Eigen::MatrixXd WilliamsonDecomposition::diagonal() const {
  const int n = static_cast<int>(nus.size());
  Eigen::VectorXd d(2 * n);
  for (int i = 0; i < n; ++i) d(2 * i) = d(2 * i + 1) = nus(i);
  return d.asDiagonal();
}

Eigen::MatrixXd WilliamsonDecomposition::s_inverse() const {
  const int n = static_cast<int>(nus.size());
  Eigen::MatrixXd w = omega(n);
  return -w * s.transpose() * w;
}

WilliamsonDecomposition williamson(const Eigen::MatrixXd& cov) {
  if (cov.rows() != cov.cols() || cov.rows() % 2 != 0 || cov.rows() == 0)
    throw DimensionError("williamson: covariance must be square with even dimension");
  const int n = static_cast<int>(cov.rows()) / 2;
  const Eigen::MatrixXd v = 0.5 * (cov + cov.transpose());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> vs(v);
  const double min_eig = vs.eigenvalues().minCoeff();
  if (min_eig <= 0.0)
    throw DecompositionError("williamson: covariance not positive definite", min_eig);
  Eigen::MatrixXd sqrt_v = vs.operatorSqrt();

  // i * V^(1/2) * Omega * V^(1/2) is Hermitian with eigenvalues +-nu_i; the
  // real/imaginary parts of its positive-eigenvalue vectors assemble an
  // orthogonal O with O^T (V^(1/2) Omega V^(1/2)) O in antisymmetric normal form.
  Eigen::MatrixXd r = sqrt_v * omega(n) * sqrt_v;
  Eigen::MatrixXcd h = std::complex<double>(0, 1) * r.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> hs(h);

  WilliamsonDecomposition out;
  out.nus.resize(n);
  Eigen::MatrixXd o(2 * n, 2 * n);
  const double sqrt2 = std::sqrt(2.0);
  for (int k = 0; k < n; ++k) {
    // eigenvalues ascending; positive ones occupy the top half, descending order.
    const int idx = 2 * n - 1 - k;
    out.nus(k) = hs.eigenvalues()(idx);
    Eigen::VectorXcd u = hs.eigenvectors().col(idx);
    Eigen::VectorXd x = sqrt2 * u.real();
    Eigen::VectorXd y = sqrt2 * u.imag();

    // Column-phase convention: rotate (x, y) in their plane so that y aligns
    // with some mode's x-axis and x with its p-axis; pick the mode where the
    // alignment is strongest. Already-diagonal thermal inputs then yield S = I.
    double best_a = -1.0, best_c = 1.0, best_s = 0.0;
    for (int j = 0; j < n; ++j) {
      const double c_part = y(2 * j) + x(2 * j + 1);
      const double s_part = x(2 * j) - y(2 * j + 1);
      const double a = std::hypot(c_part, s_part);
      if (a > best_a) {
        best_a = a;
        best_c = c_part / (a > 0 ? a : 1.0);
        best_s = s_part / (a > 0 ? a : 1.0);
      }
    }
    Eigen::VectorXd xr = best_c * x - best_s * y;
    Eigen::VectorXd yr = best_s * x + best_c * y;
    o.col(2 * k) = yr;
    o.col(2 * k + 1) = xr;
  }

  Eigen::VectorXd inv_sqrt_d(2 * n);
  for (int k = 0; k < n; ++k)
    inv_sqrt_d(2 * k) = inv_sqrt_d(2 * k + 1) = 1.0 / std::sqrt(out.nus(k));
  out.s = sqrt_v * o * inv_sqrt_d.asDiagonal();
  return out;
}

}  // namespace gqi
