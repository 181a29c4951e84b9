"""Dressed N-soliton solutions of the long-short wave system."""

import json

from ._core import (
    Error,
    Grid,
    SolitonSpec,
    check_spec,
    fields,
    figure_spec,
    lax_x_residual,
    q_matrix,
    sample,
)
from . import _core

__all__ = [
    "Error",
    "Grid",
    "SolitonSpec",
    "check_spec",
    "fields",
    "figure_spec",
    "lax_x_residual",
    "peak",
    "q_matrix",
    "sample",
    "verify",
]


def _config_text(config):
    return config if isinstance(config, str) else json.dumps(config)


def verify(config, ledger=False):
    """Run the verification suites for a config (dict or JSON text)."""
    return json.loads(_core.verify_json(_config_text(config), ledger))


def peak(config):
    """Per-slice peak statistics for a reduced config."""
    return json.loads(_core.peak_json(_config_text(config)))
