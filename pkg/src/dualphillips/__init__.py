"""Dual labor market model of the Phillips curve.

Primary (insider) workers are a fixed endowment paid through Nash
bargaining; secondary workers are hired on a competitive market.  The
package solves the equilibrium exactly, provides the small-g and large-g
asymptotic approximations, and runs comparative-statics experiments.
"""

from dualphillips.model import (
    CornerSolutionWarning,
    Equilibrium,
    FirmEquilibrium,
    FirmRecord,
    ModelParams,
    ScaledState,
    SolverError,
    aggregate_equilibrium,
    aggregate_tfp,
    compute_g,
    firm_demand_l2,
    firm_equilibrium,
    solve_v,
    w2_from_v,
    z_function,
)

__all__ = [
    "CornerSolutionWarning",
    "Equilibrium",
    "FirmEquilibrium",
    "FirmRecord",
    "ModelParams",
    "ScaledState",
    "SolverError",
    "aggregate_equilibrium",
    "aggregate_tfp",
    "compute_g",
    "firm_demand_l2",
    "firm_equilibrium",
    "solve_v",
    "w2_from_v",
    "z_function",
]

__version__ = "0.1.0"
