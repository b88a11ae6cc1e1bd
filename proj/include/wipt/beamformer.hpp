#pragma once

#include <vector>

#include "wipt/channel.hpp"
#include "wipt/scheduler.hpp"

namespace wipt {

enum class UpdateVariant { full, reduced };

struct JointBeamformers {
  ComplexMatrix W;                     // M x beams, unit-norm columns
  double rho = 0.0;                    // per-beam transmit SNR
  RealVector gamma;                    // per-user SINR targets gamma_i = mu * sinr_zf_i
  RealVector sinr_zf;                  // ZF baseline SINRs
  int iterations_used = 0;             // outer-loop iterations (EH directions used)
  std::vector<double> steering_angles; // cumulative steering angle per beam (radians)
  std::vector<double> geh_trace;       // total normalized EH after each accepted step
  std::vector<std::size_t> pass_offsets;  // geh_trace index where each outer pass starts
};

/// Eigenvector of G^H G for the largest eigenvalue (deterministic phase).
ComplexVector eh_direction(const ComplexMatrix& G);

/// Normalized harvested energy w^H G^H G w.
double g_eh(const ComplexMatrix& G, const ComplexVector& w);

/// Harvested-energy gain per radian of steering w toward w_eh, clamped to 0
/// when negative or when the angular distance vanishes.
double eh_gradient(const ComplexMatrix& G, const ComplexVector& w_eh,
                   const ComplexVector& w);

/// Geodesic step: cos(theta) w_base + sin(theta) w_perp, with w_perp the unit
/// component of w_target orthogonal to w_base. theta is clamped to
/// [0, arccos|w_target^H w_base|].
ComplexVector steer(const ComplexVector& w_base, const ComplexVector& w_target,
                    double theta);

/// Top eigenvector of (G N N^H)^H (G N N^H) with N the null space of the
/// boundary users' CDI rows. Empty boundary set falls back to eh_direction(G).
ComplexVector update_eh_direction(const ComplexMatrix& G,
                                  const ComplexMatrix& boundary_cdi);

/// Projection update replacing the eigendecomposition: project the previous
/// EH direction onto the orthogonal complement of the boundary CDI.
ComplexVector update_eh_direction_reduced(const ComplexVector& w_eh_prev,
                                          const ComplexVector& h_bar);

/// ZFBF-initialized joint information and energy beamforming: repeatedly
/// selects the beam with the largest EH gradient, steers it in delta_d
/// increments toward the current optimal EH direction while every user stays
/// above its SINR target, backtracks one step on violation, and refreshes the
/// EH direction in the null space of boundary users between passes.
JointBeamformers joint_beamform(const ComplexMatrix& H_S, const ComplexMatrix& G,
                                double rho, double mu, double delta_d,
                                UpdateVariant variant = UpdateVariant::full);

JointBeamformers joint_beamform(const ComplexMatrix& H_S, const ComplexMatrix& G,
                                const SimConfig& cfg,
                                UpdateVariant variant = UpdateVariant::full);

/// Appends a beam in the null space of the ID channels maximizing the
/// normalized EH, re-splitting the power equally across |S|+1 beams.
JointBeamformers add_dedicated_eh_beam(const JointBeamformers& jb,
                                       const ComplexMatrix& H_S,
                                       const ComplexMatrix& G);

}  // namespace wipt
