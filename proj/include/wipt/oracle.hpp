#pragma once

#include <cstdint>

#include "wipt/numerics.hpp"

namespace wipt {

struct OracleConfig {
  int restarts = 64;
  int steps = 600;
  double step_size = 0.05;         // radians along the unit tangent direction
  double step_decay = 0.99;        // multiplicative, per step
  double penalty_initial = 10.0;
  double penalty_growth = 1.02;    // multiplicative, per step
  double perturbation = 0.3;       // restart spread around the ZF start
  std::uint64_t seed = 7;
};

struct OracleResult {
  ComplexMatrix W;
  double eh_value = 0.0;
};

/// Near-optimal baseline: maximize sum_i rho ||G w_i||^2 subject to
/// SINR_i >= mu * sinr_zf_i by penalized projected gradient ascent with
/// random restarts around the (feasible) ZF point. Only exactly feasible
/// iterates are eligible to become the returned solution.
OracleResult oracle_solve(const ComplexMatrix& H_S, const ComplexMatrix& G, double rho,
                          double mu, const OracleConfig& cfg = {});

}  // namespace wipt
