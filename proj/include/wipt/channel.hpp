#pragma once

#include <cstdint>
#include <numbers>

#include "wipt/numerics.hpp"

namespace wipt {

/// All scenario scalars. Channel entries are unit-variance complex Gaussian;
/// the link budget (transmit power, path loss, noise power) is folded into a
/// single effective SNR so the per-user noise is 1 in every SINR expression.
struct SimConfig {
  int M = 4;             // transmit antennas
  int K_ID = 10;         // information-decoding users
  int K_EH = 10;         // energy-harvesting users
  double P = 1.0;        // transmit power (W)
  double noise_power = 1e-8;   // W (-50 dBm)
  double path_loss_dB = 70.0;
  double zeta = 1.0;     // energy conversion efficiency
  double eps = 0.3;      // SUS semi-orthogonality threshold
  double mu = 0.7;       // target SINR ratio, in (0, 1]
  double delta_d = std::numbers::pi / 180.0;  // unit angular step (radians)
  int B_ID = 0;          // feedback bits for ID users (0 = perfect CSIT)
  int B_EH = 0;          // feedback bits for EH users
  std::uint64_t seed = 1;

  double effective_snr() const {
    return P * std::pow(10.0, -path_loss_dB / 10.0) / noise_power;
  }
  void validate() const;  // throws std::invalid_argument
};

struct ChannelSet {
  ComplexMatrix H;       // K_ID x M, rows are ID user channels
  ComplexMatrix G;       // K_EH x M, rows are EH user channels
  double effective_snr = 0.0;
};

struct QuantizedChannelSet {
  ComplexMatrix H_hat;   // unit-norm CDI rows
  ComplexMatrix G_hat;
  RealVector h_mag;      // true channel magnitudes (perfect CQI)
  RealVector g_mag;
};

// Deterministic seed splitting for trial workers and per-user codebooks.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c);

ChannelSet generate_channels(const SimConfig& cfg, std::uint64_t trial_seed);

// Best of 2^bits isotropic unit codewords by inner-product magnitude.
// bits == 0 returns the normalized input (perfect-CSIT passthrough).
ComplexVector rvq_quantize(const ComplexVector& h, int bits, std::uint64_t codebook_seed);

QuantizedChannelSet quantize_all(const ChannelSet& cs, const SimConfig& cfg);

}  // namespace wipt
