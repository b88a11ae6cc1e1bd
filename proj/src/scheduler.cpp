#include "wipt/scheduler.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <stdexcept>

namespace wipt {

double sinr_candidate_proxy(const ComplexVector& h, const ComplexMatrix& selected_rows,
                            double rho) {
  ComplexVector u = h.conjugate();  // h_j w = u_j^H w with u_j = conj(h_j)
  if (selected_rows.rows() == 0) return rho * u.squaredNorm();
  ComplexMatrix basis = selected_rows.adjoint();  // columns span the selected directions
  Eigen::HouseholderQR<ComplexMatrix> qr(basis);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(basis.rows(), basis.cols());
  ComplexVector residual = u - q * (q.adjoint() * u);
  return rho * residual.squaredNorm();
}

UserSelection sus_select(const ComplexMatrix& H, double eps, int M) {
  const int k_id = static_cast<int>(H.rows());
  if (k_id < 1) throw std::invalid_argument("sus_select: empty channel set");

  UserSelection sel;
  sel.eps = eps;

  std::vector<bool> taken(k_id, false);
  std::vector<bool> eligible(k_id, true);

  // Step 1: strongest channel.
  int first = 0;
  double best_norm = -1.0;
  for (int k = 0; k < k_id; ++k) {
    const double n = H.row(k).norm();
    if (n > best_norm) {
      best_norm = n;
      first = k;
    }
  }
  sel.indices.push_back(first);
  sel.candidate_counts.push_back(k_id);
  taken[first] = true;

  while (static_cast<int>(sel.indices.size()) < M) {
    const ComplexVector last_cdi =
        H.row(sel.indices.back()).normalized().transpose();
    // Candidate set: semi-orthogonal to every previously selected user.
    int count = 0;
    for (int k = 0; k < k_id; ++k) {
      if (taken[k] || !eligible[k]) continue;
      const ComplexVector cdi = H.row(k).normalized().transpose();
      if (std::abs(cdi.dot(last_cdi)) > eps) {
        eligible[k] = false;
        continue;
      }
      ++count;
    }
    if (count == 0) break;
    sel.candidate_counts.push_back(count);

    ComplexMatrix span(sel.indices.size(), H.cols());
    for (std::size_t j = 0; j < sel.indices.size(); ++j) span.row(j) = H.row(sel.indices[j]);

    int best = -1;
    double best_proxy = -1.0;
    for (int k = 0; k < k_id; ++k) {
      if (taken[k] || !eligible[k]) continue;
      const double proxy = sinr_candidate_proxy(H.row(k).transpose(), span, 1.0);
      if (proxy > best_proxy) {
        best_proxy = proxy;
        best = k;
      }
    }
    sel.indices.push_back(best);
    taken[best] = true;
  }
  return sel;
}

ZfBeamformers zf_beamformers(const ComplexMatrix& H_S, double rho) {
  const Eigen::Index s = H_S.rows();
  Eigen::JacobiSVD<ComplexMatrix> svd(H_S);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= numeric_settings().rank_tol * sv(0))
    throw std::invalid_argument("zf_beamformers: rank-deficient channel matrix");

  ZfBeamformers zf;
  zf.W = pseudo_inverse(H_S);
  zf.sinr_zf.resize(s);
  for (Eigen::Index k = 0; k < s; ++k) {
    zf.W.col(k).normalize();
    const Complex gain = H_S.row(k) * zf.W.col(k);
    zf.sinr_zf(k) = rho * std::norm(gain);
  }
  return zf;
}

}  // namespace wipt
