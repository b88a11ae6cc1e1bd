#include "wipt/oracle.hpp"

#include <random>
#include <stdexcept>

#include "wipt/channel.hpp"
#include "wipt/metrics.hpp"
#include "wipt/scheduler.hpp"

namespace wipt {

namespace {

bool feasible(const RealVector& sinr, const RealVector& sinr_zf, double mu) {
  for (Eigen::Index i = 0; i < sinr.size(); ++i)
    if (sinr(i) / sinr_zf(i) < mu - 1e-9) return false;
  return true;
}

}  // namespace

OracleResult oracle_solve(const ComplexMatrix& H_S, const ComplexMatrix& G, double rho,
                          double mu, const OracleConfig& cfg) {
  if (cfg.restarts < 1) throw std::invalid_argument("oracle_solve: restarts must be >= 1");
  if (mu <= 0.0 || mu > 1.0) throw std::invalid_argument("oracle_solve: mu out of range");

  const int s = static_cast<int>(H_S.rows());
  const int m = static_cast<int>(H_S.cols());
  const ZfBeamformers zf = zf_beamformers(H_S, rho);
  const RealVector gamma = mu * zf.sinr_zf;
  const ComplexMatrix A = rho * (G.adjoint() * G);

  auto objective = [&](const ComplexMatrix& W) {
    return harvested_energy(G, W, rho);
  };

  OracleResult best;
  best.W = zf.W;
  best.eh_value = objective(zf.W);
  bool have_feasible = feasible(sinr_all(H_S, zf.W, rho), zf.sinr_zf, mu);

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> n(0.0, std::sqrt(0.5));

  for (int restart = 0; restart < cfg.restarts; ++restart) {
    ComplexMatrix W = zf.W;
    if (restart > 0) {
      const double sigma = cfg.perturbation * restart / cfg.restarts;
      for (int i = 0; i < s; ++i) {
        for (int j = 0; j < m; ++j) W(j, i) += sigma * Complex(n(rng), n(rng));
        W.col(i).normalize();
      }
    }

    double step = cfg.step_size;
    double penalty = cfg.penalty_initial;
    for (int it = 0; it < cfg.steps; ++it) {
      const ComplexMatrix gains = H_S * W;  // gains(k, i) = h_k w_i
      RealVector denom(s), sinr(s);
      for (int k = 0; k < s; ++k) {
        double interference = 0.0;
        for (int i = 0; i < s; ++i)
          if (i != k) interference += rho * std::norm(gains(k, i));
        denom(k) = 1.0 + interference;
        sinr(k) = rho * std::norm(gains(k, k)) / denom(k);
      }

      // Wirtinger ascent direction for the penalized objective.
      ComplexMatrix grad = A * W;
      for (int k = 0; k < s; ++k) {
        const double slack = gamma(k) - sinr(k);
        if (slack <= 0.0) continue;
        const ComplexVector u = H_S.row(k).adjoint();  // h_k w = u^H w
        for (int i = 0; i < s; ++i) {
          ComplexVector dsinr;
          if (i == k) {
            dsinr = (rho / denom(k)) * gains(k, k) * u;
          } else {
            dsinr = -(sinr(k) * rho / denom(k)) * gains(k, i) * u;
          }
          grad.col(i) += 2.0 * penalty * slack * dsinr;
        }
      }

      for (int i = 0; i < s; ++i) {
        // Riemannian step: move a fixed angle along the unit tangent
        // direction so the step size is scale-free in the channel gains.
        ComplexVector dir = grad.col(i);
        dir -= W.col(i).dot(dir) * W.col(i);
        const double dn = dir.norm();
        if (dn < 1e-14) continue;
        W.col(i) += step * dir / dn;
        W.col(i).normalize();
      }
      step *= cfg.step_decay;
      penalty *= cfg.penalty_growth;

      if (feasible(sinr_all(H_S, W, rho), zf.sinr_zf, mu)) {
        const double value = objective(W);
        if (!have_feasible || value > best.eh_value) {
          best.W = W;
          best.eh_value = value;
          have_feasible = true;
        }
      }
    }
  }

  if (!have_feasible)
    throw std::runtime_error("oracle_solve: no feasible point found");
  return best;
}

}  // namespace wipt
