"""Python access to the disperse core library."""

import json

from ._core import (  # noqa: F401
    CflViolation,
    SolverBreakdown,
    burgers_exponents,
    burgers_tensor,
    degiorgi_params,
    eo_flux,
    fit_decay,
    fundamental_solution_1d,
    fundamental_study,
    geometric_times,
    hilbert_like_det,
    inf,
    kappa_nu,
    monomial_exponents,
    monomial_tensor,
)
from ._core import solve as _solve


def solve(config, snapshots=False):
    """Run the solver; `config` is a dict with the command-line config keys."""
    if not isinstance(config, str):
        config = json.dumps(config)
    return _solve(config, snapshots)
