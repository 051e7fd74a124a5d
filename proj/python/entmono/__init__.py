"""Entanglement measures, local Kraus channels and monotonicity checks.

States are numpy arrays (density matrices or amplitude vectors) paired with
their local dimensions, e.g. ``(2, 2)``. Kronecker ordering is row-major with
subsystem A as the slowest index.
"""

import json

from ._core import (
    DimensionError,
    Error,
    ParameterError,
    ValidationError,
    apply_channel,
    check_monotone,
    check_negativity_decomposition,
    classify_channel,
    h_value,
    log_negativity,
    measure,
    negativity,
    partial_trace,
    partial_transpose,
    pure_measure,
    random_channel,
    random_mixed,
    random_pure,
    random_separable,
    ree,
    relative_entropy,
    roof,
    schmidt_coefficients,
    von_neumann_entropy,
    wootters_concurrence,
    wootters_eof,
)
from ._core import run_sweep_jsonl as _run_sweep_jsonl


def run_sweep(checks=(), measures=(), dims=(), trials=200, n_kraus=0, seed=0,
              base="nats", optimize=False, states_per_channel=100):
    """Run a verification sweep and return the reports as dicts.

    Empty ``checks``, ``measures`` or ``dims`` fall back to the defaults.
    """
    lines = _run_sweep_jsonl(list(checks), list(measures), [tuple(d) for d in dims],
                             trials, n_kraus, seed, base, optimize, states_per_channel)
    return [json.loads(line) for line in lines]


__all__ = [name for name in dir() if not name.startswith("_")]
