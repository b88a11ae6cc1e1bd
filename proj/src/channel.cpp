#include "wipt/channel.hpp"

#include <random>
#include <stdexcept>

namespace wipt {

void SimConfig::validate() const {
  if (M < 2) throw std::invalid_argument("SimConfig: M must be >= 2");
  if (K_ID < 1) throw std::invalid_argument("SimConfig: K_ID must be >= 1");
  if (K_EH < 1) throw std::invalid_argument("SimConfig: K_EH must be >= 1");
  if (P <= 0.0) throw std::invalid_argument("SimConfig: P must be > 0");
  if (noise_power <= 0.0) throw std::invalid_argument("SimConfig: noise_power must be > 0");
  if (mu <= 0.0 || mu > 1.0) throw std::invalid_argument("SimConfig: mu must be in (0, 1]");
  if (eps < 0.0 || eps >= 1.0) throw std::invalid_argument("SimConfig: eps must be in [0, 1)");
  if (delta_d <= 0.0) throw std::invalid_argument("SimConfig: delta_d must be > 0");
  if (B_ID < 0 || B_EH < 0) throw std::invalid_argument("SimConfig: feedback bits must be >= 0");
  if (zeta <= 0.0) throw std::invalid_argument("SimConfig: zeta must be > 0");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Unit-variance circularly symmetric complex Gaussian entries.
ComplexMatrix gaussian_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, std::sqrt(0.5));
  ComplexMatrix A(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) A(i, j) = Complex(n(rng), n(rng));
  return A;
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(a) ^ (b + 0x9E3779B97F4A7C15ULL));
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return mix_seed(mix_seed(a, b), c);
}

ChannelSet generate_channels(const SimConfig& cfg, std::uint64_t trial_seed) {
  cfg.validate();
  std::mt19937_64 rng(mix_seed(cfg.seed, trial_seed));
  ChannelSet cs;
  cs.H = gaussian_matrix(cfg.K_ID, cfg.M, rng);
  cs.G = gaussian_matrix(cfg.K_EH, cfg.M, rng);
  cs.effective_snr = cfg.effective_snr();
  return cs;
}

ComplexVector rvq_quantize(const ComplexVector& h, int bits, std::uint64_t codebook_seed) {
  const double norm = h.norm();
  if (norm <= 0.0) throw std::invalid_argument("rvq_quantize: zero channel");
  ComplexVector hbar = h / norm;
  if (bits == 0) return hbar;

  std::mt19937_64 rng(codebook_seed);
  std::normal_distribution<double> n(0.0, std::sqrt(0.5));
  const std::size_t size = std::size_t{1} << bits;
  ComplexVector best;
  double best_ip = -1.0;
  ComplexVector c(h.size());
  for (std::size_t k = 0; k < size; ++k) {
    for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = Complex(n(rng), n(rng));
    c.normalize();
    const double ip = std::abs(c.dot(hbar));
    if (ip > best_ip) {
      best_ip = ip;
      best = c;
    }
  }
  return best;
}

QuantizedChannelSet quantize_all(const ChannelSet& cs, const SimConfig& cfg) {
  QuantizedChannelSet qs;
  qs.H_hat.resize(cs.H.rows(), cs.H.cols());
  qs.G_hat.resize(cs.G.rows(), cs.G.cols());
  qs.h_mag.resize(cs.H.rows());
  qs.g_mag.resize(cs.G.rows());
  for (Eigen::Index k = 0; k < cs.H.rows(); ++k) {
    const ComplexVector h = cs.H.row(k).transpose();
    qs.h_mag(k) = h.norm();
    qs.H_hat.row(k) =
        rvq_quantize(h, cfg.B_ID, mix_seed(cfg.seed, 0x1D00u, static_cast<std::uint64_t>(k)))
            .transpose();
  }
  for (Eigen::Index k = 0; k < cs.G.rows(); ++k) {
    const ComplexVector g = cs.G.row(k).transpose();
    qs.g_mag(k) = g.norm();
    qs.G_hat.row(k) =
        rvq_quantize(g, cfg.B_EH, mix_seed(cfg.seed, 0xE400u, static_cast<std::uint64_t>(k)))
            .transpose();
  }
  return qs;
}

}  // namespace wipt
