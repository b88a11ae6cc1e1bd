"""Multi-user wireless information and power transfer toolkit."""

from ._wipt import (  # noqa: F401
    AnalysisInputs,
    ChannelSet,
    ConfigError,
    EhBoundReport,
    ExperimentSpec,
    JointBeamformers,
    OracleConfig,
    OracleResult,
    ResultRow,
    SimConfig,
    UpdateVariant,
    UserSelection,
    ZfBeamformers,
    add_dedicated_eh_beam,
    asymptotic_eh_check,
    eh_bounds,
    emit_csv,
    expected_channel_norm,
    expected_sum_rate,
    generate_channels,
    harvested_energy,
    incomplete_beta_sum,
    joint_beamform,
    mix_seed,
    oracle_solve,
    parse_spec_file,
    parse_spec_text,
    rate_loss,
    run_analysis,
    run_experiment,
    rvq_quantize,
    sinr_all,
    sum_rate,
    sus_select,
    to_csv,
    zf_beamformers,
)

__all__ = [
    "AnalysisInputs",
    "ChannelSet",
    "ConfigError",
    "EhBoundReport",
    "ExperimentSpec",
    "JointBeamformers",
    "OracleConfig",
    "OracleResult",
    "ResultRow",
    "SimConfig",
    "UpdateVariant",
    "UserSelection",
    "ZfBeamformers",
    "add_dedicated_eh_beam",
    "asymptotic_eh_check",
    "eh_bounds",
    "emit_csv",
    "expected_channel_norm",
    "expected_sum_rate",
    "generate_channels",
    "harvested_energy",
    "incomplete_beta_sum",
    "joint_beamform",
    "mix_seed",
    "oracle_solve",
    "parse_spec_file",
    "parse_spec_text",
    "rate_loss",
    "run_analysis",
    "run_experiment",
    "rvq_quantize",
    "sinr_all",
    "sum_rate",
    "sus_select",
    "to_csv",
    "zf_beamformers",
]
