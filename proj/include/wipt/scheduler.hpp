#pragma once

#include <vector>

#include "wipt/numerics.hpp"

namespace wipt {

struct UserSelection {
  std::vector<int> indices;          // selection order pi(1..|S|)
  double eps = 0.0;
  std::vector<int> candidate_counts; // |U_i| at each step
};

struct ZfBeamformers {
  ComplexMatrix W;       // M x |S|, unit-norm columns
  RealVector sinr_zf;    // per-user, linear scale
};

/// Greedy semi-orthogonal user selection. The first user maximizes channel
/// norm; each later step keeps candidates whose CDI correlates at most eps
/// with every already-selected user and picks the one maximizing the ZF SINR
/// of the augmented set (projected-norm proxy). Ties break to lowest index.
UserSelection sus_select(const ComplexMatrix& H, double eps, int M);

/// ZF beamformers for the selected rows: normalized columns of pinv(H_S).
/// sinr_zf_k = rho * |h_k w_k|^2 (unit noise, zero multiuser interference).
ZfBeamformers zf_beamformers(const ComplexMatrix& H_S, double rho);

/// rho * ||(I - P_span) h||^2 with P_span the projector onto the span of the
/// given rows. Equals the candidate's exact ZF SINR in the augmented set.
double sinr_candidate_proxy(const ComplexVector& h, const ComplexMatrix& selected_rows,
                            double rho);

}  // namespace wipt
