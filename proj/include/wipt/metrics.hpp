#pragma once

#include <optional>

#include "wipt/scheduler.hpp"

namespace wipt {

/// SINR_k = rho |h_k w_k|^2 / (1 + sum_{i != k} rho |h_k w_i|^2), unit noise.
RealVector sinr_all(const ComplexMatrix& H_S, const ComplexMatrix& W, double rho);

/// zeta * sum_i rho ||G w_i||^2
double harvested_energy(const ComplexMatrix& G, const ComplexMatrix& W, double rho,
                        double zeta = 1.0);

/// sum_k ln(1 + SINR_k), in nats.
double sum_rate(const RealVector& sinrs);

struct TrialRecord {
  UserSelection selection;
  RealVector sinr;
  RealVector gamma;
  double sum_rate_nats = 0.0;
  double harvested = 0.0;
  double harvested_zf = 0.0;
  std::optional<double> oracle_value;
};

}  // namespace wipt
