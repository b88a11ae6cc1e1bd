#include "wipt/beamformer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wipt/metrics.hpp"

namespace wipt {

namespace {

ComplexMatrix hermitian_part(const ComplexMatrix& A) {
  return 0.5 * (A + A.adjoint());
}

double angular_distance(const ComplexVector& a, const ComplexVector& b) {
  const double ip = std::min(std::abs(a.dot(b)), 1.0);
  return std::acos(ip);
}

}  // namespace

ComplexVector eh_direction(const ComplexMatrix& G) {
  if (G.norm() == 0.0) throw std::invalid_argument("eh_direction: zero channel matrix");
  return hermitian_eig(hermitian_part(G.adjoint() * G)).top_eigenvector();
}

double g_eh(const ComplexMatrix& G, const ComplexVector& w) {
  return (G * w).squaredNorm();
}

double eh_gradient(const ComplexMatrix& G, const ComplexVector& w_eh,
                   const ComplexVector& w) {
  const double ip = std::abs(w_eh.dot(w));
  if (ip >= 1.0 - 1e-12) return 0.0;
  const double gain = g_eh(G, w_eh) - g_eh(G, w);
  if (gain <= 0.0) return 0.0;
  return gain / std::acos(std::min(ip, 1.0));
}

ComplexVector steer(const ComplexVector& w_base, const ComplexVector& w_target,
                    double theta) {
  const Complex ip = w_base.dot(w_target);  // w_base^H w_target
  if (std::abs(ip) >= 1.0 - 1e-14)
    throw std::invalid_argument("steer: base and target are colinear");
  // Rotate the base phase so its inner product with the target is real
  // positive; the geodesic then passes through the target at theta = cap.
  const ComplexVector base =
      std::abs(ip) > 0.0 ? ComplexVector(std::polar(1.0, std::arg(ip)) * w_base)
                         : w_base;
  ComplexVector perp = w_target - std::abs(ip) * base;
  const double pnorm = perp.norm();
  if (pnorm < 1e-14)
    throw std::invalid_argument("steer: base and target are colinear");
  perp /= pnorm;
  const double cap = std::acos(std::min(std::abs(ip), 1.0));
  theta = std::clamp(theta, 0.0, cap);
  return std::cos(theta) * base + std::sin(theta) * perp;
}

ComplexVector update_eh_direction(const ComplexMatrix& G,
                                  const ComplexMatrix& boundary_cdi) {
  if (boundary_cdi.rows() == 0) return eh_direction(G);
  if (boundary_cdi.rows() >= G.cols())
    throw std::invalid_argument("update_eh_direction: null space exhausted");
  const ComplexMatrix N = row_null_space(boundary_cdi).basis;
  const ComplexMatrix G_N = G * N * N.adjoint();
  return hermitian_eig(hermitian_part(G_N.adjoint() * G_N)).top_eigenvector();
}

ComplexVector update_eh_direction_reduced(const ComplexVector& w_eh_prev,
                                          const ComplexVector& h_bar) {
  // h_bar holds the CDI row entries; the beam-space direction is its conjugate.
  const ComplexVector dir = h_bar.conjugate().normalized();
  ComplexVector projected = w_eh_prev - dir.dot(w_eh_prev) * dir;
  const double norm = projected.norm();
  if (norm < 1e-12)
    throw std::invalid_argument("update_eh_direction_reduced: degenerate projection");
  return projected / norm;
}

JointBeamformers joint_beamform(const ComplexMatrix& H_S, const ComplexMatrix& G,
                                double rho, double mu, double delta_d,
                                UpdateVariant variant) {
  if (mu <= 0.0 || mu > 1.0)
    throw std::invalid_argument("joint_beamform: mu must be in (0, 1]");
  if (delta_d <= 0.0)
    throw std::invalid_argument("joint_beamform: delta_d must be > 0");

  const int s = static_cast<int>(H_S.rows());
  const int m = static_cast<int>(H_S.cols());

  ZfBeamformers zf = zf_beamformers(H_S, rho);

  JointBeamformers jb;
  jb.W = zf.W;
  jb.rho = rho;
  jb.sinr_zf = zf.sinr_zf;
  jb.gamma = mu * zf.sinr_zf;
  jb.steering_angles.assign(s, 0.0);

  auto total_geh = [&]() {
    double q = 0.0;
    for (int i = 0; i < s; ++i) q += g_eh(G, jb.W.col(i));
    return q;
  };

  ComplexVector w_eh = eh_direction(G);
  int r = s;
  int t = 1;

  std::vector<int> boundary;  // user indices at their SINR boundary, insertion order
  auto in_boundary = [&](int k) {
    return std::find(boundary.begin(), boundary.end(), k) != boundary.end();
  };

  while (true) {
    // Step 2: best beam selection and steering until all gradients vanish.
    jb.pass_offsets.push_back(jb.geh_trace.size());
    std::vector<bool> active(s, true);
    std::size_t boundary_before_pass = boundary.size();
    while (true) {
      int b = -1;
      double best_grad = 0.0;
      for (int i = 0; i < s; ++i) {
        if (!active[i]) continue;
        const double grad = eh_gradient(G, w_eh, jb.W.col(i));
        if (grad > best_grad) {
          best_grad = grad;
          b = i;
        }
      }
      if (b < 0) break;

      const ComplexVector base = jb.W.col(b);
      const double cap = angular_distance(w_eh, base);
      double theta = 0.0;
      std::vector<int> new_violators;
      while (theta < cap) {
        RealVector sinr = sinr_all(H_S, jb.W, rho);
        bool all_above = true;
        for (int i = 0; i < s; ++i)
          if (!(sinr(i) > jb.gamma(i))) all_above = false;
        if (!all_above) break;

        const double theta_next = std::min(theta + delta_d, cap);
        jb.W.col(b) = steer(base, w_eh, theta_next);
        sinr = sinr_all(H_S, jb.W, rho);
        bool violated = false;
        for (int i = 0; i < s; ++i) {
          if (sinr(i) <= jb.gamma(i)) {
            violated = true;
            if (!in_boundary(i)) new_violators.push_back(i);
          }
        }
        if (violated) {
          // Revert exactly one step; the reverted beam satisfies constraints.
          jb.W.col(b) = theta > 0.0 ? steer(base, w_eh, theta) : base;
          break;
        }
        theta = theta_next;
        jb.geh_trace.push_back(total_geh());
      }
      jb.steering_angles[b] += theta;
      std::sort(new_violators.begin(), new_violators.end());
      for (int k : new_violators) boundary.push_back(k);
      active[b] = false;
    }

    // Step 3: optimal EH direction update.
    if (r == 0) break;
    --r;
    if (boundary.size() == boundary_before_pass) break;  // no new boundary user
    if (static_cast<int>(boundary.size()) >= m) break;   // null space exhausted
    ++t;
    if (variant == UpdateVariant::full) {
      ComplexMatrix cdi(boundary.size(), m);
      for (std::size_t j = 0; j < boundary.size(); ++j)
        cdi.row(j) = H_S.row(boundary[j]).normalized();
      w_eh = update_eh_direction(G, cdi);
    } else {
      for (std::size_t j = boundary_before_pass; j < boundary.size(); ++j) {
        const ComplexVector h_bar = H_S.row(boundary[j]).normalized().transpose();
        ComplexVector dir = h_bar.conjugate();
        if ((w_eh - dir.dot(w_eh) * dir).norm() < 1e-12) continue;
        w_eh = update_eh_direction_reduced(w_eh, h_bar);
      }
    }
  }

  jb.iterations_used = t;
  return jb;
}

JointBeamformers joint_beamform(const ComplexMatrix& H_S, const ComplexMatrix& G,
                                const SimConfig& cfg, UpdateVariant variant) {
  const double rho = cfg.effective_snr() / static_cast<double>(H_S.rows());
  return joint_beamform(H_S, G, rho, cfg.mu, cfg.delta_d, variant);
}

JointBeamformers add_dedicated_eh_beam(const JointBeamformers& jb,
                                       const ComplexMatrix& H_S,
                                       const ComplexMatrix& G) {
  const int s = static_cast<int>(jb.W.cols());
  const int m = static_cast<int>(jb.W.rows());
  if (s >= m) throw std::invalid_argument("add_dedicated_eh_beam: no spare dimension");

  const ComplexMatrix N = row_null_space(H_S).basis;
  const ComplexMatrix projected = hermitian_part(N.adjoint() * G.adjoint() * G * N);
  const ComplexVector coeffs = hermitian_eig(projected).top_eigenvector();
  const ComplexVector beam = fix_phase((N * coeffs).normalized());

  JointBeamformers out = jb;
  out.W.conservativeResize(m, s + 1);
  out.W.col(s) = beam;
  const double total = jb.rho * s;
  out.rho = total / (s + 1);
  // ZF SINRs and targets scale linearly with the per-beam power.
  out.sinr_zf = jb.sinr_zf * (out.rho / jb.rho);
  out.gamma = jb.gamma * (out.rho / jb.rho);
  out.steering_angles.push_back(0.0);
  return out;
}

}  // namespace wipt
