"""Python front end to the nodalvec C++ core."""

import json

from ._core import (
    CoupledParams,
    Error,
    RadialProfile,
    ReducedModel,
    admissible_interval,
    classify,
    decay_constant,
    minimize_model,
    ode_residual_max,
    pair_interaction,
    predicted_radius,
    solve_ground_state,
    synchronized_residual,
    validate_config,
    write_plot_data,
)
from ._core import run_experiment as _run_experiment


def run_experiment(config_text, output_dir, workers=1, resume=False):
    """Run a sweep described by INI text; returns the parsed summary."""
    return json.loads(_run_experiment(config_text, str(output_dir), workers, resume))


__all__ = [
    "CoupledParams",
    "Error",
    "RadialProfile",
    "ReducedModel",
    "admissible_interval",
    "classify",
    "decay_constant",
    "minimize_model",
    "ode_residual_max",
    "pair_interaction",
    "predicted_radius",
    "run_experiment",
    "solve_ground_state",
    "synchronized_residual",
    "validate_config",
    "write_plot_data",
]
