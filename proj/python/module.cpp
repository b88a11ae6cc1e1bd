#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wipt/analysis.hpp"
#include "wipt/beamformer.hpp"
#include "wipt/channel.hpp"
#include "wipt/harness.hpp"
#include "wipt/metrics.hpp"
#include "wipt/oracle.hpp"
#include "wipt/scheduler.hpp"

namespace py = pybind11;
using namespace wipt;

PYBIND11_MODULE(_wipt, m) {
  m.doc() = "Multi-user wireless information and power transfer toolkit";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<SimConfig>(m, "SimConfig")
      .def(py::init<>())
      .def_readwrite("M", &SimConfig::M)
      .def_readwrite("K_ID", &SimConfig::K_ID)
      .def_readwrite("K_EH", &SimConfig::K_EH)
      .def_readwrite("P", &SimConfig::P)
      .def_readwrite("noise_power", &SimConfig::noise_power)
      .def_readwrite("path_loss_dB", &SimConfig::path_loss_dB)
      .def_readwrite("zeta", &SimConfig::zeta)
      .def_readwrite("eps", &SimConfig::eps)
      .def_readwrite("mu", &SimConfig::mu)
      .def_readwrite("delta_d", &SimConfig::delta_d)
      .def_readwrite("B_ID", &SimConfig::B_ID)
      .def_readwrite("B_EH", &SimConfig::B_EH)
      .def_readwrite("seed", &SimConfig::seed)
      .def("effective_snr", &SimConfig::effective_snr)
      .def("validate", &SimConfig::validate);

  py::class_<ChannelSet>(m, "ChannelSet")
      .def_readonly("H", &ChannelSet::H)
      .def_readonly("G", &ChannelSet::G)
      .def_readonly("effective_snr", &ChannelSet::effective_snr);

  py::class_<UserSelection>(m, "UserSelection")
      .def_readonly("indices", &UserSelection::indices)
      .def_readonly("eps", &UserSelection::eps)
      .def_readonly("candidate_counts", &UserSelection::candidate_counts);

  py::class_<ZfBeamformers>(m, "ZfBeamformers")
      .def_readonly("W", &ZfBeamformers::W)
      .def_readonly("sinr_zf", &ZfBeamformers::sinr_zf);

  py::enum_<UpdateVariant>(m, "UpdateVariant")
      .value("full", UpdateVariant::full)
      .value("reduced", UpdateVariant::reduced);

  py::class_<JointBeamformers>(m, "JointBeamformers")
      .def_readonly("W", &JointBeamformers::W)
      .def_readonly("rho", &JointBeamformers::rho)
      .def_readonly("gamma", &JointBeamformers::gamma)
      .def_readonly("sinr_zf", &JointBeamformers::sinr_zf)
      .def_readonly("iterations_used", &JointBeamformers::iterations_used)
      .def_readonly("steering_angles", &JointBeamformers::steering_angles)
      .def_readonly("geh_trace", &JointBeamformers::geh_trace);

  py::class_<OracleConfig>(m, "OracleConfig")
      .def(py::init<>())
      .def_readwrite("restarts", &OracleConfig::restarts)
      .def_readwrite("steps", &OracleConfig::steps)
      .def_readwrite("step_size", &OracleConfig::step_size)
      .def_readwrite("step_decay", &OracleConfig::step_decay)
      .def_readwrite("penalty_initial", &OracleConfig::penalty_initial)
      .def_readwrite("penalty_growth", &OracleConfig::penalty_growth)
      .def_readwrite("perturbation", &OracleConfig::perturbation)
      .def_readwrite("seed", &OracleConfig::seed);

  py::class_<OracleResult>(m, "OracleResult")
      .def_readonly("W", &OracleResult::W)
      .def_readonly("eh_value", &OracleResult::eh_value);

  py::class_<EhBoundReport>(m, "EhBoundReport")
      .def_readonly("lambda_max_mean", &EhBoundReport::lambda_max_mean)
      .def_readonly("frob_mean", &EhBoundReport::frob_mean)
      .def_readonly("g_mu", &EhBoundReport::g_mu)
      .def_readonly("sincos", &EhBoundReport::sincos)
      .def_readonly("f_mu", &EhBoundReport::f_mu)
      .def_readonly("joint_lower", &EhBoundReport::joint_lower)
      .def_readonly("zf_expected", &EhBoundReport::zf_expected)
      .def_readonly("delta_eh", &EhBoundReport::delta_eh)
      .def_readonly("set_size", &EhBoundReport::set_size)
      .def_readonly("rho", &EhBoundReport::rho);

  py::class_<AnalysisInputs>(m, "AnalysisInputs")
      .def(py::init<>())
      .def_readwrite("M", &AnalysisInputs::M)
      .def_readwrite("K_ID", &AnalysisInputs::K_ID)
      .def_readwrite("K_EH", &AnalysisInputs::K_EH)
      .def_readwrite("eps", &AnalysisInputs::eps)
      .def_readwrite("mu", &AnalysisInputs::mu)
      .def_readwrite("rho", &AnalysisInputs::rho)
      .def_readwrite("total_snr", &AnalysisInputs::total_snr)
      .def_readwrite("B_EH", &AnalysisInputs::B_EH)
      .def_readwrite("wishart_samples", &AnalysisInputs::wishart_samples)
      .def_readwrite("wishart_seed", &AnalysisInputs::wishart_seed);

  py::class_<ResultRow>(m, "ResultRow")
      .def_readonly("scenario", &ResultRow::scenario)
      .def_readonly("sweep_name", &ResultRow::sweep_name)
      .def_readonly("sweep_value", &ResultRow::sweep_value)
      .def_readonly("trials", &ResultRow::trials)
      .def_readonly("metric", &ResultRow::metric)
      .def_readonly("mean", &ResultRow::mean)
      .def_readonly("stderr", &ResultRow::stderr_);

  py::class_<ExperimentSpec>(m, "ExperimentSpec")
      .def_readwrite("scenario", &ExperimentSpec::scenario)
      .def_readwrite("base", &ExperimentSpec::base)
      .def_readwrite("sweep_name", &ExperimentSpec::sweep_name)
      .def_readwrite("sweep_values", &ExperimentSpec::sweep_values)
      .def_readwrite("trials", &ExperimentSpec::trials)
      .def_readwrite("parallelism", &ExperimentSpec::parallelism)
      .def_readwrite("enable_oracle", &ExperimentSpec::enable_oracle)
      .def_readwrite("oracle", &ExperimentSpec::oracle)
      .def_readwrite("out_path", &ExperimentSpec::out_path)
      .def("validate", &ExperimentSpec::validate);

  // Channel model
  m.def("mix_seed", py::overload_cast<std::uint64_t, std::uint64_t>(&mix_seed));
  m.def("generate_channels", &generate_channels, py::arg("cfg"), py::arg("trial_seed"));
  m.def("rvq_quantize", &rvq_quantize, py::arg("h"), py::arg("bits"),
        py::arg("codebook_seed"));

  // Scheduling and beamforming
  m.def("sus_select", &sus_select, py::arg("H"), py::arg("eps"), py::arg("M"));
  m.def("zf_beamformers", &zf_beamformers, py::arg("H_S"), py::arg("rho"));
  m.def("joint_beamform",
        py::overload_cast<const ComplexMatrix&, const ComplexMatrix&, double, double,
                          double, UpdateVariant>(&joint_beamform),
        py::arg("H_S"), py::arg("G"), py::arg("rho"), py::arg("mu"), py::arg("delta_d"),
        py::arg("variant") = UpdateVariant::full);
  m.def("add_dedicated_eh_beam", &add_dedicated_eh_beam, py::arg("jb"), py::arg("H_S"),
        py::arg("G"));
  m.def("oracle_solve", &oracle_solve, py::arg("H_S"), py::arg("G"), py::arg("rho"),
        py::arg("mu"), py::arg("cfg") = OracleConfig{});

  // Metrics
  m.def("sinr_all", &sinr_all, py::arg("H_S"), py::arg("W"), py::arg("rho"));
  m.def("harvested_energy", &harvested_energy, py::arg("G"), py::arg("W"), py::arg("rho"),
        py::arg("zeta") = 1.0);
  m.def("sum_rate", &sum_rate, py::arg("sinrs"));

  // Closed-form analysis
  m.def("incomplete_beta_sum", &incomplete_beta_sum);
  m.def("expected_sum_rate", &expected_sum_rate, py::arg("mu"), py::arg("rho"),
        py::arg("M"), py::arg("eps"), py::arg("K_ID"));
  m.def("rate_loss", &rate_loss, py::arg("mu"), py::arg("rho"), py::arg("M"),
        py::arg("eps"), py::arg("K_ID"), py::arg("high_snr") = false);
  m.def("expected_channel_norm", &expected_channel_norm, py::arg("M"), py::arg("eps"),
        py::arg("K_ID"));
  m.def("eh_bounds", &eh_bounds, py::arg("inputs"));
  m.def("asymptotic_eh_check", &asymptotic_eh_check, py::arg("K_EH"), py::arg("M"),
        py::arg("samples"), py::arg("seed") = 99);

  // Experiment harness
  m.def("parse_spec_text", &parse_spec_text, py::arg("text"));
  m.def("parse_spec_file", &parse_spec_file, py::arg("path"));
  m.def("run_experiment", &run_experiment, py::arg("spec"),
        py::call_guard<py::gil_scoped_release>());
  m.def("run_analysis", &run_analysis, py::arg("spec"));
  m.def("to_csv", &to_csv, py::arg("table"));
  m.def("emit_csv", &emit_csv, py::arg("table"), py::arg("path"));
}
