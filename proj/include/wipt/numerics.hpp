#pragma once

#include <Eigen/Dense>
#include <complex>

namespace wipt {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Complex = std::complex<double>;

/// Central tolerance settings for the linear-algebra kernels.
struct NumericSettings {
  double hermitian_tol = 1e-10;   // relative asymmetry allowed in hermitian_eig input
  double residual_tol = 1e-8;     // eigenpair / null-space residuals
  double rank_tol = 1e-10;        // singular values below rank_tol * sigma_max are zero
  double unit_tol = 1e-12;        // unit-norm checks
};

const NumericSettings& numeric_settings();

/// Eigenvalues ascending, eigenvectors as orthonormal columns of a square
/// unitary matrix. `rank` counts eigenvalues above rank_tol * lambda_max.
struct EllipsoidDecomposition {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;
  int rank = 0;

  double lambda_max() const { return eigenvalues(eigenvalues.size() - 1); }
  ComplexVector top_eigenvector() const {
    return eigenvectors.col(eigenvectors.cols() - 1);
  }
};

struct NullSpaceResult {
  ComplexMatrix basis;        // M x (M - rank), orthonormal columns
  bool rank_deficient = false;
};

// Rotates v so its largest-magnitude component is real nonnegative.
ComplexVector fix_phase(const ComplexVector& v);

EllipsoidDecomposition hermitian_eig(const ComplexMatrix& A);

// Orthonormal basis of the null space of the row span of H (r x M, r < M).
NullSpaceResult row_null_space(const ComplexMatrix& H);

ComplexMatrix pseudo_inverse(const ComplexMatrix& H);

}  // namespace wipt
