#include "wipt/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "wipt/analysis.hpp"
#include "wipt/beamformer.hpp"
#include "wipt/metrics.hpp"

namespace wipt {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return d;
  } catch (...) {
    throw ConfigError("line " + std::to_string(line) + ": invalid number '" + v + "'");
  }
}

long parse_int(const std::string& v, int line) {
  const double d = parse_double(v, line);
  if (d != std::floor(d))
    throw ConfigError("line " + std::to_string(line) + ": expected integer, got '" + v + "'");
  return static_cast<long>(d);
}

bool parse_bool(const std::string& v, int line) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("line " + std::to_string(line) + ": invalid boolean '" + v + "'");
}

const std::vector<std::string> kSweepNames = {"mu", "K_ID", "K_EH", "B_ID", "B_EH"};

void apply_scenario_defaults(ExperimentSpec& spec) {
  if (!spec.sweep_name.empty()) return;
  if (spec.scenario == "fig4" || spec.scenario == "fig5") {
    spec.sweep_name = "mu";
    spec.sweep_values = {0.1, 0.3, 0.5, 0.7, 0.9};
  } else if (spec.scenario == "fig6") {
    spec.sweep_name = "B_EH";
    spec.sweep_values = {0, 2, 4, 6, 8};
  } else if (spec.scenario == "fig7") {
    spec.sweep_name = "K_ID";
    spec.sweep_values = {10, 25, 50, 100};
    spec.enable_oracle = true;
  } else if (spec.scenario == "fig8") {
    spec.sweep_name = "K_EH";
    spec.sweep_values = {10, 100, 1000};
  }
}

SimConfig config_at(const ExperimentSpec& spec, double value) {
  SimConfig cfg = spec.base;
  if (spec.sweep_name == "mu") cfg.mu = value;
  else if (spec.sweep_name == "K_ID") cfg.K_ID = static_cast<int>(value);
  else if (spec.sweep_name == "K_EH") cfg.K_EH = static_cast<int>(value);
  else if (spec.sweep_name == "B_ID") cfg.B_ID = static_cast<int>(value);
  else if (spec.sweep_name == "B_EH") cfg.B_EH = static_cast<int>(value);
  return cfg;
}

struct TrialMetrics {
  double set_size = 0;
  double target_sinr_db = 0;
  double received_sinr_db = 0;
  double sinr_gap_db = 0;
  double sum_rate_joint = 0;
  double sum_rate_zf = 0;
  double eh_joint = 0;
  double eh_zf = 0;
  double eh_reduced = 0;
  double eh_dedicated = 0;
  double eh_oracle = 0;
  bool has_oracle = false;
};

TrialMetrics run_trial(const SimConfig& cfg, const ExperimentSpec& spec,
                       std::uint64_t point_index, std::uint64_t trial_index) {
  const std::uint64_t trial_seed = mix_seed(point_index, trial_index);
  const ChannelSet cs = generate_channels(cfg, trial_seed);

  // BS view of the channels: quantized CDI scaled by the true magnitude.
  ComplexMatrix H_bs = cs.H;
  ComplexMatrix G_bs = cs.G;
  if (cfg.B_ID > 0 || cfg.B_EH > 0) {
    const QuantizedChannelSet qs = quantize_all(cs, cfg);
    for (Eigen::Index k = 0; k < cs.H.rows(); ++k)
      H_bs.row(k) = qs.h_mag(k) * qs.H_hat.row(k);
    for (Eigen::Index k = 0; k < cs.G.rows(); ++k)
      G_bs.row(k) = qs.g_mag(k) * qs.G_hat.row(k);
  }

  const UserSelection sel = sus_select(H_bs, cfg.eps, cfg.M);
  const int s = static_cast<int>(sel.indices.size());
  ComplexMatrix H_S_bs(s, cfg.M), H_S_true(s, cfg.M);
  for (int i = 0; i < s; ++i) {
    H_S_bs.row(i) = H_bs.row(sel.indices[i]);
    H_S_true.row(i) = cs.H.row(sel.indices[i]);
  }
  const double rho = cs.effective_snr / s;

  const ZfBeamformers zf = zf_beamformers(H_S_bs, rho);
  const JointBeamformers jb = joint_beamform(H_S_bs, G_bs, rho, cfg.mu, cfg.delta_d);
  const JointBeamformers jr =
      joint_beamform(H_S_bs, G_bs, rho, cfg.mu, cfg.delta_d, UpdateVariant::reduced);

  TrialMetrics tm;
  tm.set_size = s;

  const RealVector sinr = sinr_all(H_S_true, jb.W, rho);
  double target_db = 0, received_db = 0, gap_db = 0;
  for (int i = 0; i < s; ++i) {
    target_db += 10.0 * std::log10(jb.gamma(i));
    received_db += 10.0 * std::log10(sinr(i));
    gap_db += 10.0 * std::log10(sinr(i) / jb.gamma(i));
  }
  tm.target_sinr_db = target_db / s;
  tm.received_sinr_db = received_db / s;
  tm.sinr_gap_db = gap_db / s;

  tm.sum_rate_joint = sum_rate(sinr);
  tm.sum_rate_zf = sum_rate(sinr_all(H_S_true, zf.W, rho));
  tm.eh_joint = harvested_energy(cs.G, jb.W, rho, cfg.zeta);
  tm.eh_zf = harvested_energy(cs.G, zf.W, rho, cfg.zeta);
  tm.eh_reduced = harvested_energy(cs.G, jr.W, rho, cfg.zeta);

  if (s < cfg.M) {
    const JointBeamformers jd = add_dedicated_eh_beam(jb, H_S_bs, G_bs);
    tm.eh_dedicated = harvested_energy(cs.G, jd.W, jd.rho, cfg.zeta);
  } else {
    tm.eh_dedicated = tm.eh_joint;
  }

  if (spec.enable_oracle && cfg.M <= 4 && s <= 4) {
    OracleConfig ocfg = spec.oracle;
    ocfg.seed = mix_seed(ocfg.seed, trial_seed);
    const OracleResult res = oracle_solve(H_S_bs, G_bs, rho, cfg.mu, ocfg);
    tm.eh_oracle = harvested_energy(cs.G, res.W, rho, cfg.zeta);
    tm.has_oracle = true;
  }
  return tm;
}

struct Accumulator {
  double sum = 0.0, sumsq = 0.0;
  int n = 0;
  void add(double x) { sum += x; sumsq += x * x; ++n; }
  double mean() const { return n > 0 ? sum / n : 0.0; }
  double stderr_() const {
    if (n < 2) return 0.0;
    const double var = std::max(0.0, (sumsq - sum * sum / n) / (n - 1));
    return std::sqrt(var / n);
  }
};

}  // namespace

void ExperimentSpec::validate() const {
  try {
    base.validate();
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (parallelism < 1) throw ConfigError("parallel must be >= 1");
  if (sweep_name.empty()) throw ConfigError("no sweep variable (set 'sweep' or a figure scenario)");
  if (std::find(kSweepNames.begin(), kSweepNames.end(), sweep_name) == kSweepNames.end())
    throw ConfigError("unknown sweep variable '" + sweep_name + "'");
  if (sweep_values.empty()) throw ConfigError("sweep values must be nonempty");
  for (double v : sweep_values) {
    try {
      config_at(*this, v).validate();
    } catch (const std::exception& e) {
      throw ConfigError("sweep value " + std::to_string(v) + ": " + e.what());
    }
  }
}

ExperimentSpec parse_spec_text(const std::string& text) {
  ExperimentSpec spec;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    const auto hash = s.find('#');
    if (hash != std::string::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line) + ": expected 'key = value'");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (value.empty())
      throw ConfigError("line " + std::to_string(line) + ": empty value for '" + key + "'");

    if (key == "scenario") spec.scenario = value;
    else if (key == "M") spec.base.M = static_cast<int>(parse_int(value, line));
    else if (key == "K_ID") spec.base.K_ID = static_cast<int>(parse_int(value, line));
    else if (key == "K_EH") spec.base.K_EH = static_cast<int>(parse_int(value, line));
    else if (key == "P") spec.base.P = parse_double(value, line);
    else if (key == "noise_power") spec.base.noise_power = parse_double(value, line);
    else if (key == "path_loss_dB") spec.base.path_loss_dB = parse_double(value, line);
    else if (key == "zeta") spec.base.zeta = parse_double(value, line);
    else if (key == "eps") spec.base.eps = parse_double(value, line);
    else if (key == "mu") spec.base.mu = parse_double(value, line);
    else if (key == "delta_d") spec.base.delta_d = parse_double(value, line);
    else if (key == "delta_d_deg")
      spec.base.delta_d = parse_double(value, line) * std::numbers::pi / 180.0;
    else if (key == "B_ID") spec.base.B_ID = static_cast<int>(parse_int(value, line));
    else if (key == "B_EH") spec.base.B_EH = static_cast<int>(parse_int(value, line));
    else if (key == "seed") spec.base.seed = static_cast<std::uint64_t>(parse_int(value, line));
    else if (key == "trials") spec.trials = static_cast<int>(parse_int(value, line));
    else if (key == "parallel") spec.parallelism = static_cast<int>(parse_int(value, line));
    else if (key == "oracle") spec.enable_oracle = parse_bool(value, line);
    else if (key == "oracle_restarts") spec.oracle.restarts = static_cast<int>(parse_int(value, line));
    else if (key == "oracle_steps") spec.oracle.steps = static_cast<int>(parse_int(value, line));
    else if (key == "out") spec.out_path = value;
    else if (key == "sweep") spec.sweep_name = value;
    else if (key == "values") {
      std::istringstream vs(value);
      std::string tok;
      while (std::getline(vs, tok, ',')) {
        tok = trim(tok);
        if (!tok.empty()) spec.sweep_values.push_back(parse_double(tok, line));
      }
    } else {
      throw ConfigError("line " + std::to_string(line) + ": unknown key '" + key + "'");
    }
  }
  apply_scenario_defaults(spec);
  return spec;
}

ExperimentSpec parse_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open spec file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_spec_text(ss.str());
}

std::vector<ResultRow> run_analysis(const ExperimentSpec& spec) {
  spec.validate();
  std::vector<ResultRow> rows;
  auto push = [&](double value, const std::string& metric, double mean) {
    rows.push_back({spec.scenario, spec.sweep_name, value, 0, metric, mean, 0.0});
  };
  for (double v : spec.sweep_values) {
    const SimConfig cfg = config_at(spec, v);
    AnalysisInputs in;
    in.M = cfg.M;
    in.K_ID = cfg.K_ID;
    in.K_EH = cfg.K_EH;
    in.eps = cfg.eps;
    in.mu = cfg.mu;
    in.total_snr = cfg.effective_snr();
    in.B_EH = cfg.B_EH;
    const EhBoundReport rep = eh_bounds(in);
    push(v, "an_set_size", rep.set_size);
    push(v, "an_sum_rate", expected_sum_rate(cfg.mu, rep.rho, cfg.M, cfg.eps, cfg.K_ID));
    push(v, "an_rate_loss", rate_loss(cfg.mu, rep.rho, cfg.M, cfg.eps, cfg.K_ID, false));
    push(v, "an_eh_joint_lower_total", rep.joint_lower * rep.set_size);
    push(v, "an_eh_zf_total", rep.zf_expected * rep.set_size);
    push(v, "an_eh_gain_total", rep.delta_eh);
    if (cfg.B_EH > 0) {
      const double eh2 = expected_channel_norm(cfg.M, cfg.eps, cfg.K_ID);
      const LimitedFeedbackReport fb = limited_feedback_analysis(
          cfg.B_EH, cfg.M, cfg.K_EH, cfg.mu, rep.rho, rep.set_size, rep.lambda_max_mean, eh2);
      push(v, "an_fb_lower_total", fb.fb_lower * rep.set_size);
      push(v, "an_fb_delta_q", fb.delta_q * rep.set_size);
    }
  }
  return rows;
}

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  std::vector<ResultRow> rows;

  for (std::size_t p = 0; p < spec.sweep_values.size(); ++p) {
    const double value = spec.sweep_values[p];
    const SimConfig cfg = config_at(spec, value);

    std::vector<TrialMetrics> trials(spec.trials);
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&]() {
      for (;;) {
        const int t = next.fetch_add(1);
        if (t >= spec.trials) return;
        try {
          trials[t] = run_trial(cfg, spec, p, static_cast<std::uint64_t>(t));
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    };
    if (spec.parallelism <= 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < spec.parallelism; ++w) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    // Order-independent aggregation: trials reduced in index order.
    std::vector<std::pair<std::string, Accumulator>> acc = {
        {"set_size", {}},        {"target_sinr_db", {}}, {"received_sinr_db", {}},
        {"sinr_gap_db", {}},     {"sum_rate_joint", {}}, {"sum_rate_zf", {}},
        {"eh_joint", {}},        {"eh_zf", {}},          {"eh_reduced", {}},
        {"eh_dedicated", {}},    {"eh_oracle", {}},
    };
    for (const TrialMetrics& tm : trials) {
      acc[0].second.add(tm.set_size);
      acc[1].second.add(tm.target_sinr_db);
      acc[2].second.add(tm.received_sinr_db);
      acc[3].second.add(tm.sinr_gap_db);
      acc[4].second.add(tm.sum_rate_joint);
      acc[5].second.add(tm.sum_rate_zf);
      acc[6].second.add(tm.eh_joint);
      acc[7].second.add(tm.eh_zf);
      acc[8].second.add(tm.eh_reduced);
      acc[9].second.add(tm.eh_dedicated);
      if (tm.has_oracle) acc[10].second.add(tm.eh_oracle);
    }
    for (const auto& [metric, a] : acc) {
      if (a.n == 0) continue;
      rows.push_back({spec.scenario, spec.sweep_name, value, a.n, metric, a.mean(), a.stderr_()});
    }
  }

  for (const ResultRow& r : run_analysis(spec)) rows.push_back(r);
  return rows;
}

std::string to_csv(const std::vector<ResultRow>& table) {
  std::ostringstream out;
  out << "scenario,sweep_name,sweep_value,trials,metric,mean,stderr\n";
  out.precision(9);
  for (const ResultRow& r : table) {
    out << r.scenario << ',' << r.sweep_name << ',' << r.sweep_value << ',' << r.trials << ','
        << r.metric << ',' << r.mean << ',' << r.stderr_ << '\n';
  }
  return out.str();
}

void emit_csv(const std::vector<ResultRow>& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << to_csv(table);
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<ResultRow> parse_csv_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<ResultRow> rows;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::istringstream ls(line);
    std::string tok;
    std::vector<std::string> cols;
    while (std::getline(ls, tok, ',')) cols.push_back(tok);
    if (cols.size() != 7) throw std::runtime_error("malformed CSV row: " + line);
    rows.push_back({cols[0], cols[1], std::stod(cols[2]), std::stoi(cols[3]), cols[4],
                    std::stod(cols[5]), std::stod(cols[6])});
  }
  return rows;
}

}  // namespace wipt
