#include "wipt/analysis.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "wipt/channel.hpp"
#include "wipt/numerics.hpp"

namespace wipt {

namespace {

// chi-square(2M) gain density and CDF in the paper's normalization:
// f(x) = x^(M-1) e^-x / (M-1)!, F(x) = 1 - e^-x sum_{p<M} x^p / p!
double chi_pdf(double x, int M) {
  if (x <= 0.0) return 0.0;
  return std::exp((M - 1) * std::log(x) - x - std::lgamma(M));
}

double chi_cdf(double x, int M) {
  if (x <= 0.0) return 0.0;
  double sum = 0.0;
  double term = 1.0;
  for (int p = 0; p < M; ++p) {
    sum += term;
    term *= x / (p + 1);
  }
  return 1.0 - std::exp(-x) * sum;
}

}  // namespace

double incomplete_beta_sum(double x, int a1, int a2) {
  const int n = a1 + a2 - 1;
  double total = 0.0;
  for (int j = a1; j <= n; ++j) {
    const double logc = std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0);
    double term = logc;
    if (j > 0) term += j * std::log(x);
    if (n - j > 0) term += (n - j) * std::log1p(-x);
    if (j > 0 && x == 0.0) continue;
    if (n - j > 0 && x == 1.0) continue;
    total += std::exp(term);
  }
  return total;
}

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

double integrate(const std::function<double(double)>& f, double a, double b) {
  if (!(b > a)) return 0.0;
  int n = 64;
  auto simpson = [&](int nodes) {
    const double h = (b - a) / nodes;
    double sum = f(a) + f(b);
    for (int i = 1; i < nodes; ++i) sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return sum * h / 3.0;
  };
  double prev = simpson(n);
  for (int iter = 0; iter < 16; ++iter) {
    n *= 2;
    const double cur = simpson(n);
    if (std::abs(cur - prev) <= 1e-8 * std::max(std::abs(cur), 1e-12)) return cur;
    prev = cur;
  }
  throw std::runtime_error("integrate: quadrature did not converge");
}

SusStatistics sus_statistics(int M, double eps, int K_ID) {
  if (eps < 0.0 || eps > 1.0)
    throw std::invalid_argument("sus_statistics: eps out of range");
  SusStatistics st;
  const double x = eps * eps;
  for (int i = 1; i <= M; ++i) {
    const double p = incomplete_beta_sum(x, i - 1, M - i + 1);
    st.step_probability.push_back(p);
    st.expected_candidates.push_back(K_ID * p);
  }
  int size = 0;
  for (int i = 0; i < M; ++i)
    if (std::llround(st.expected_candidates[i]) >= 1) ++size;
  st.expected_set_size = std::max(1, std::min(size, M));
  return st;
}

std::function<double(double)> order_stat_pdf(int i, int M, int set_size) {
  if (set_size < 1) throw std::invalid_argument("order_stat_pdf: set_size must be >= 1");
  (void)i;  // the step index only determines set_size
  return [M, set_size](double x) {
    return set_size * chi_pdf(x, M) * std::pow(chi_cdf(x, M), set_size - 1);
  };
}

double quad_upper_limit(int M, int max_set_size) {
  double hi = M + 10.0;
  while (max_set_size * (1.0 - chi_cdf(hi, M)) > 1e-12) hi *= 1.5;
  return hi;
}

namespace {

// Rounded candidate-set sizes for steps 1..|S|, each at least 1.
std::vector<int> step_set_sizes(int M, double eps, int K_ID, int* set_size_out) {
  const SusStatistics st = sus_statistics(M, eps, K_ID);
  std::vector<int> sizes;
  for (int i = 0; i < st.expected_set_size; ++i)
    sizes.push_back(std::max<long long>(1, std::llround(st.expected_candidates[i])));
  if (set_size_out) *set_size_out = st.expected_set_size;
  return sizes;
}

}  // namespace

double expected_sum_rate(double mu, double rho, int M, double eps, int K_ID) {
  if (mu * rho == 0.0) return 0.0;
  int s = 0;
  const auto sizes = step_set_sizes(M, eps, K_ID, &s);
  const double hi = quad_upper_limit(M, sizes.front());
  double rate = 0.0;
  for (int i = 0; i < s; ++i) {
    const auto pdf = order_stat_pdf(i + 1, M, sizes[i]);
    rate += integrate([&](double x) { return std::log1p(mu * rho * x) * pdf(x); }, 0.0, hi);
  }
  return rate;
}

double rate_loss(double mu, double rho, int M, double eps, int K_ID, bool high_snr) {
  if (mu <= 0.0 || mu > 1.0) throw std::invalid_argument("rate_loss: mu out of range");
  int s = 0;
  const auto sizes = step_set_sizes(M, eps, K_ID, &s);
  if (high_snr) return -s * std::log(mu);
  const double hi = quad_upper_limit(M, sizes.front());
  double loss = 0.0;
  for (int i = 0; i < s; ++i) {
    const auto pdf = order_stat_pdf(i + 1, M, sizes[i]);
    loss += integrate(
        [&](double x) { return std::log((1.0 + rho * x) / (1.0 + mu * rho * x)) * pdf(x); },
        0.0, hi);
  }
  return loss;
}

double expected_channel_norm(int M, double eps, int K_ID) {
  int s = 0;
  const auto sizes = step_set_sizes(M, eps, K_ID, &s);
  const double hi = quad_upper_limit(M, sizes.front());
  double mean = 0.0;
  for (int i = 0; i < s; ++i) {
    const auto pdf = order_stat_pdf(i + 1, M, sizes[i]);
    mean += integrate([&](double x) { return x * pdf(x); }, 0.0, hi);
  }
  return mean / s;
}

double g_mu(double mu, double rho, double expected_h2, int set_size, int M) {
  if (mu <= 0.0 || mu > 1.0) throw std::invalid_argument("g_mu: mu out of range");
  const double c = rho * expected_h2 * (set_size - 1) / (M - 1);
  return (1.0 + c) / (1.0 / mu + c);
}

double sincos_expectation(int M) {
  if (M < 2) throw std::invalid_argument("sincos_expectation: M must be >= 2");
  return (M - 1) * std::exp(log_beta(1.5, M - 0.5));
}

double f_mu(double mu, double rho, double expected_h2, int set_size, int M) {
  const double g = g_mu(mu, rho, expected_h2, set_size, M);
  return ((M - 2) * g + 1.0) / (M * (M - 1.0)) -
         2.0 * std::exp(log_beta(1.5, M - 0.5)) * std::sqrt(g * (1.0 - g));
}

double wishart_top_eig_mean(int M, int K_EH, int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("wishart_top_eig_mean: samples must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, std::sqrt(0.5));
  double acc = 0.0;
  ComplexMatrix G(K_EH, M);
  for (int s = 0; s < samples; ++s) {
    for (int i = 0; i < K_EH; ++i)
      for (int j = 0; j < M; ++j) G(i, j) = Complex(n(rng), n(rng));
    ComplexMatrix A = G.adjoint() * G;
    A = 0.5 * (A + A.adjoint());
    acc += hermitian_eig(A).lambda_max();
  }
  return acc / samples;
}

EhBoundReport eh_bounds(const AnalysisInputs& in) {
  EhBoundReport rep;
  const SusStatistics st = sus_statistics(in.M, in.eps, in.K_ID);
  rep.set_size = st.expected_set_size;
  rep.rho = in.rho > 0.0 ? in.rho : in.total_snr / rep.set_size;

  rep.lambda_max_mean = wishart_top_eig_mean(in.M, in.K_EH, in.wishart_samples, in.wishart_seed);
  rep.frob_mean = static_cast<double>(in.M) * in.K_EH;

  const double eh2 = expected_channel_norm(in.M, in.eps, in.K_ID);
  rep.g_mu = g_mu(in.mu, rep.rho, eh2, rep.set_size, in.M);
  rep.sincos = sincos_expectation(in.M);
  rep.f_mu = f_mu(in.mu, rep.rho, eh2, rep.set_size, in.M);

  const double excess = in.M * rep.lambda_max_mean - rep.frob_mean;  // >= 0
  rep.joint_lower = rep.rho * rep.lambda_max_mean - rep.rho * excess * rep.f_mu;
  // E[sin^2 phi] = (M-1)/M collapses the ZF expression to rho * K_EH.
  rep.zf_expected = rep.rho * rep.lambda_max_mean - rep.rho * excess / in.M;
  const double g = rep.g_mu;
  rep.delta_eh = rep.rho * rep.set_size * excess *
                 ((in.M - 2) * (1.0 - g) / (in.M * (in.M - 1.0)) +
                  2.0 * std::exp(log_beta(1.5, in.M - 0.5)) * std::sqrt(g * (1.0 - g)));
  return rep;
}

AsymptoticRates asymptotic_rates(int K_ID, double mu, double rho, int M) {
  if (K_ID < 2) throw std::invalid_argument("asymptotic_rates: K_ID must be >= 2");
  AsymptoticRates out;
  const double lk = std::log(static_cast<double>(K_ID));
  out.sum_rate = M * std::log1p(mu * rho * lk);
  out.rate_loss = std::log1p(rho * lk) - std::log1p(mu * rho * lk);
  return out;
}

LimitedFeedbackReport limited_feedback_analysis(int B_EH, int M, int K_EH, double mu,
                                                double rho, int set_size,
                                                double wishart_mean,
                                                double expected_h2) {
  if (B_EH < 0) throw std::invalid_argument("limited_feedback_analysis: B_EH must be >= 0");
  LimitedFeedbackReport rep;
  const double z = static_cast<double>(M) / (M - 1.0);
  const double log2b = B_EH * std::log(2.0);
  rep.delta_d = 1.0 - std::exp(log2b + log_beta(std::exp(log2b), z));

  const double frob = static_cast<double>(M) * K_EH;
  rep.quantized_top_eig =
      wishart_mean * rep.delta_d + (frob - wishart_mean) / (M - 1.0) * (1.0 - rep.delta_d);

  const double f = f_mu(mu, rho, expected_h2, set_size, M);
  rep.fb_lower = rho * rep.quantized_top_eig - rho * (M * rep.quantized_top_eig - frob) * f;
  rep.delta_q = (wishart_mean - rep.quantized_top_eig) * rho * (1.0 - M * f);
  return rep;
}

double asymptotic_eh_check(int K_EH, int M, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, std::sqrt(0.5));
  ComplexVector w(M);
  for (int j = 0; j < M; ++j) w(j) = Complex(n(rng), n(rng));
  w.normalize();
  double acc = 0.0;
  ComplexMatrix G(K_EH, M);
  for (int s = 0; s < samples; ++s) {
    for (int i = 0; i < K_EH; ++i)
      for (int j = 0; j < M; ++j) G(i, j) = Complex(n(rng), n(rng));
    acc += (G * w).squaredNorm() / K_EH;
  }
  return acc / samples;
}

}  // namespace wipt
