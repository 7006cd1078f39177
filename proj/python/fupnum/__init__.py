"""Python bindings for the fup numerical library."""

import json as _json

from ._core import (
    CapacityError,
    ParameterError,
    __version__,
    baker,
    best_rational,
    beta,
    cantor_set,
    dft,
    dilated_cantor_set,
    initial_alphabet,
    interval_alphabet,
    masked_norm,
    masked_norm_dense,
    theorem1,
    theorem2,
)
from ._core import run_sweep_json as _run_sweep_json


def run_sweep(config, out_dir=None):
    """Run a sweep described by a config dict; writes files when out_dir is set."""
    return _run_sweep_json(_json.dumps(config), "" if out_dir is None else str(out_dir))


__all__ = [
    "CapacityError",
    "ParameterError",
    "__version__",
    "baker",
    "best_rational",
    "beta",
    "cantor_set",
    "dft",
    "dilated_cantor_set",
    "initial_alphabet",
    "interval_alphabet",
    "masked_norm",
    "masked_norm_dense",
    "run_sweep",
    "theorem1",
    "theorem2",
]
