#include "wipt/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace wipt {

RealVector sinr_all(const ComplexMatrix& H_S, const ComplexMatrix& W, double rho) {
  if (H_S.cols() != W.rows())
    throw std::invalid_argument("sinr_all: dimension mismatch");
  const Eigen::Index users = H_S.rows();
  const Eigen::Index beams = W.cols();
  ComplexMatrix gains = H_S * W;  // gains(k, i) = h_k w_i
  RealVector out(users);
  for (Eigen::Index k = 0; k < users; ++k) {
    double interference = 0.0;
    for (Eigen::Index i = 0; i < beams; ++i)
      if (i != k) interference += rho * std::norm(gains(k, i));
    out(k) = rho * std::norm(gains(k, k)) / (1.0 + interference);
  }
  return out;
}

double harvested_energy(const ComplexMatrix& G, const ComplexMatrix& W, double rho,
                        double zeta) {
  if (G.cols() != W.rows())
    throw std::invalid_argument("harvested_energy: dimension mismatch");
  double q = 0.0;
  for (Eigen::Index i = 0; i < W.cols(); ++i) q += rho * (G * W.col(i)).squaredNorm();
  return zeta * q;
}

double sum_rate(const RealVector& sinrs) {
  double rate = 0.0;
  for (Eigen::Index k = 0; k < sinrs.size(); ++k) rate += std::log1p(sinrs(k));
  return rate;
}

}  // namespace wipt
