#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace wipt {

struct AnalysisInputs {
  int M = 4;
  int K_ID = 50;
  int K_EH = 10;
  double eps = 0.3;
  double mu = 0.7;
  double rho = 0.0;      // per-beam SNR; 0 means derive as total_snr / |S|
  double total_snr = 10.0;
  int B_EH = 0;
  int wishart_samples = 10000;
  std::uint64_t wishart_seed = 12345;
};

struct SusStatistics {
  std::vector<double> step_probability;   // Pr[k in U_i], i = 1..M
  std::vector<double> expected_candidates; // |U_i| ~ K_ID * Pr
  int expected_set_size = 0;              // rounded, capped at M
};

struct EhBoundReport {
  double lambda_max_mean = 0.0;  // E[lambda_eta]
  double frob_mean = 0.0;        // E[||G||_F^2] = M * K_EH
  double g_mu = 0.0;             // E[cos^2 theta_ID]
  double sincos = 0.0;           // E[sin phi cos phi]
  double f_mu = 0.0;
  double joint_lower = 0.0;      // per-beam lower bound on expected EH
  double zf_expected = 0.0;      // per-beam expected EH under ZFBF
  double delta_eh = 0.0;         // total expected EH gain over ZFBF
  int set_size = 0;
  double rho = 0.0;
};

struct AsymptoticRates {
  double sum_rate = 0.0;   // M ln(1 + mu rho ln K_ID), nats
  double rate_loss = 0.0;  // per-stream ln((1 + rho ln K)/(1 + mu rho ln K))
};

struct LimitedFeedbackReport {
  double delta_d = 0.0;          // expected squared axis alignment
  double quantized_top_eig = 0.0;
  double fb_lower = 0.0;         // per-beam lower bound with quantized CDI
  double delta_q = 0.0;          // per-beam EH loss due to quantization
};

// Finite binomial-sum form of the regularized incomplete beta I_x(a1, a2).
double incomplete_beta_sum(double x, int a1, int a2);

double log_beta(double a, double b);

// Composite-Simpson integration with node doubling to 1e-8 relative.
double integrate(const std::function<double(double)>& f, double a, double b);

SusStatistics sus_statistics(int M, double eps, int K_ID);

// Density of the selected user's channel gain at SUS step i (1-based),
// the maximum of set_size chi-square(2M)/2-normalized gains.
std::function<double(double)> order_stat_pdf(int i, int M, int set_size);

// Upper integration limit capturing all but <1e-10 of the order-statistic mass.
double quad_upper_limit(int M, int max_set_size);

double expected_sum_rate(double mu, double rho, int M, double eps, int K_ID);
double rate_loss(double mu, double rho, int M, double eps, int K_ID, bool high_snr);
double expected_channel_norm(int M, double eps, int K_ID);

double g_mu(double mu, double rho, double expected_h2, int set_size, int M);
double sincos_expectation(int M);
double f_mu(double mu, double rho, double expected_h2, int set_size, int M);

double wishart_top_eig_mean(int M, int K_EH, int samples, std::uint64_t seed);

EhBoundReport eh_bounds(const AnalysisInputs& inputs);

AsymptoticRates asymptotic_rates(int K_ID, double mu, double rho, int M);

LimitedFeedbackReport limited_feedback_analysis(int B_EH, int M, int K_EH, double mu,
                                                double rho, int set_size,
                                                double wishart_mean,
                                                double expected_h2);

// MC mean of ||G w||^2 / K_EH for a fixed random unit w.
double asymptotic_eh_check(int K_EH, int M, int samples, std::uint64_t seed = 99);

}  // namespace wipt
