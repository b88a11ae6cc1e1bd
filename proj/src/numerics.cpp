#include "wipt/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <stdexcept>

namespace wipt {

const NumericSettings& numeric_settings() {
  static const NumericSettings settings{};
  return settings;
}

ComplexVector fix_phase(const ComplexVector& v) {
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  const Complex pivot = v(imax);
  const double mag = std::abs(pivot);
  if (mag < 1e-300) return v;
  return v * (std::conj(pivot) / mag);
}

EllipsoidDecomposition hermitian_eig(const ComplexMatrix& A) {
  if (A.rows() != A.cols() || A.rows() == 0)
    throw std::invalid_argument("hermitian_eig: matrix must be square and nonempty");
  if (!A.allFinite())
    throw std::invalid_argument("hermitian_eig: non-finite entries");
  const double scale = A.norm();
  if ((A - A.adjoint()).norm() > numeric_settings().hermitian_tol * std::max(scale, 1.0))
    throw std::invalid_argument("hermitian_eig: not Hermitian");

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(A);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eig: eigensolver failed");

  EllipsoidDecomposition dec;
  dec.eigenvalues = solver.eigenvalues();  // ascending
  dec.eigenvectors = solver.eigenvectors();
  for (Eigen::Index j = 0; j < dec.eigenvectors.cols(); ++j)
    dec.eigenvectors.col(j) = fix_phase(dec.eigenvectors.col(j));

  const double lmax = std::max(dec.eigenvalues(dec.eigenvalues.size() - 1), 0.0);
  dec.rank = 0;
  for (Eigen::Index i = 0; i < dec.eigenvalues.size(); ++i)
    if (dec.eigenvalues(i) > numeric_settings().rank_tol * std::max(lmax, 1e-300)) ++dec.rank;
  return dec;
}

NullSpaceResult row_null_space(const ComplexMatrix& H) {
  const Eigen::Index r = H.rows();
  const Eigen::Index m = H.cols();
  if (r >= m) throw std::invalid_argument("row_null_space: no null space");
  if (!H.allFinite())
    throw std::invalid_argument("row_null_space: non-finite entries");

  Eigen::JacobiSVD<ComplexMatrix> svd(H, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > numeric_settings().rank_tol * std::max(smax, 1e-300)) ++rank;

  NullSpaceResult out;
  out.rank_deficient = rank < r;
  out.basis = svd.matrixV().rightCols(m - rank);
  return out;
}

ComplexMatrix pseudo_inverse(const ComplexMatrix& H) {
  if (H.norm() == 0.0)
    throw std::invalid_argument("pseudo_inverse: zero matrix");
  Eigen::JacobiSVD<ComplexMatrix> svd(H, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  RealVector inv = RealVector::Zero(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > numeric_settings().rank_tol * smax) inv(i) = 1.0 / sv(i);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

}  // namespace wipt
