"""Commutator-based quantumness measures for discrete-time quantum walks.

The library is organized around a single scalar measure of how far two
density operators are from commuting, the walk evolution that produces
those operators under amplitude damping, and sweep drivers that write the
resulting series to CSV files.
"""

from ._version import __version__
from .channels import (
    ChannelReport,
    KrausChannel,
    amplitude_damping,
    amplitude_damping_conventional,
    apply,
    branch_apply,
    identity_channel,
    lift_to_walk,
    named_channel,
    validate,
)
from .errors import (
    ConfigError,
    DimensionMismatchError,
    ResourceLimitError,
    ValidationError,
)
from .experiments import (
    ExperimentConfig,
    SweepResult,
    load_config,
    parse_config_text,
    read_sweep_csv,
    run_delta_sweep,
    run_distribution,
    run_noise_sweep,
    run_relative_sweep,
    run_sweep,
    write_sweep_csv,
)
from .measures import (
    QuantumnessSeries,
    phi,
    phi_av,
    phi_av_sampled,
    phi_delta_series,
    phi_mub_analytic,
    phi_pure_analytic,
    phi_relative,
)
from .states import (
    DensityOperator,
    PureState,
    density_from_pure,
    mixture,
    mub_pair,
    rotated_pure_pair,
)
from .walk import (
    PositionDistribution,
    ShiftOperator,
    WalkConfig,
    WalkHistory,
    coin_operator,
    evolve,
    evolve_dense,
    initial_state,
    position_distribution,
    shift_operator,
    step,
    trajectory_branches,
)

__all__ = [
    "__version__",
    "ChannelReport",
    "ConfigError",
    "DensityOperator",
    "DimensionMismatchError",
    "ExperimentConfig",
    "KrausChannel",
    "PositionDistribution",
    "PureState",
    "QuantumnessSeries",
    "ResourceLimitError",
    "ShiftOperator",
    "SweepResult",
    "ValidationError",
    "WalkConfig",
    "WalkHistory",
    "amplitude_damping",
    "amplitude_damping_conventional",
    "apply",
    "branch_apply",
    "coin_operator",
    "density_from_pure",
    "evolve",
    "evolve_dense",
    "identity_channel",
    "initial_state",
    "lift_to_walk",
    "load_config",
    "mixture",
    "mub_pair",
    "named_channel",
    "parse_config_text",
    "phi",
    "phi_av",
    "phi_av_sampled",
    "phi_delta_series",
    "phi_mub_analytic",
    "phi_pure_analytic",
    "phi_relative",
    "position_distribution",
    "read_sweep_csv",
    "rotated_pure_pair",
    "run_delta_sweep",
    "run_distribution",
    "run_noise_sweep",
    "run_relative_sweep",
    "run_sweep",
    "shift_operator",
    "step",
    "trajectory_branches",
    "validate",
    "write_sweep_csv",
]
