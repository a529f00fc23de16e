#pragma once

#include <Eigen/Dense>

namespace gqi {

/// Williamson normal form V = S * diag(nu_1,nu_1,...,nu_n,nu_n) * S^T with S symplectic.
struct WilliamsonDecomposition {
  Eigen::MatrixXd s;
  Eigen::VectorXd nus;  // descending

  Eigen::MatrixXd diagonal() const;

  /// Symplectic inverse Omega^-1 * S^T * Omega (exact, no numerical inversion).
  Eigen::MatrixXd s_inverse() const;
};

/// Decomposes a symmetric positive-definite covariance matrix.
/// Deterministic: eigenvalues sorted descending, column phases fixed so an
/// already-diagonal thermal covariance yields S = I.
/// Throws DecompositionError when the input is not positive definite.
WilliamsonDecomposition williamson(const Eigen::MatrixXd& cov);

}  // namespace gqi
