"""Multi-hop V2V link quality toolkit.

Closed-form connectivity/delay/quality model, a Monte Carlo cross-check
engine, and an exhaustive hop-distance optimizer, all backed by the C++
core in the `_v2vq` extension.
"""

from ._v2vq import (
    Config,
    ConfidenceInterval,
    ConfigError,
    Engine,
    EnsembleStats,
    FadingMode,
    InsufficientDataError,
    IoError,
    LinkAssessment,
    OptimalHop,
    PlacementMode,
    RadioParams,
    ScenarioParams,
    ServiceProfile,
    SimOptions,
    SweepGrid,
    SweepResult,
    SweepRow,
    ValidationError,
    __version__,
    assess_link,
    erlang_distance_cdf,
    expected_hops,
    figure_data,
    hop_delay_us,
    hop_success_prob,
    link_margin_db,
    multihop_delay_us,
    noise_power_dbm,
    optimal_hop_distance,
    parse_config_text,
    path_connectivity,
    poisson_count_prob,
    read_csv,
    render_csv,
    render_json,
    run_ensemble,
    serialize_config,
    sweep,
)

__all__ = [
    "Config",
    "ConfidenceInterval",
    "ConfigError",
    "Engine",
    "EnsembleStats",
    "FadingMode",
    "InsufficientDataError",
    "IoError",
    "LinkAssessment",
    "OptimalHop",
    "PlacementMode",
    "RadioParams",
    "ScenarioParams",
    "ServiceProfile",
    "SimOptions",
    "SweepGrid",
    "SweepResult",
    "SweepRow",
    "ValidationError",
    "__version__",
    "assess_link",
    "erlang_distance_cdf",
    "expected_hops",
    "figure_data",
    "hop_delay_us",
    "hop_success_prob",
    "link_margin_db",
    "multihop_delay_us",
    "noise_power_dbm",
    "optimal_hop_distance",
    "parse_config_text",
    "path_connectivity",
    "poisson_count_prob",
    "read_csv",
    "render_csv",
    "render_json",
    "run_ensemble",
    "serialize_config",
    "sweep",
]
