"""Exact computations for framed Higgs bundles on marked curves."""

import json as _json

from ._hfb import (
    ConfigError,
    __version__,
    commute,
    dim_moduli_higgs,
    fiber_dim,
    hitchin_base_dim,
    hitchin_map,
    spectral_genus,
    verify_poisson_identity,
)
from ._hfb import run as _run


def _text(config):
    return config if isinstance(config, str) else _json.dumps(config)


def run(config, subcommand=None, seed=None):
    """Run a job; returns (exit_code, report dict, csv text)."""
    code, report, csv = _run(_text(config), subcommand, seed)
    return code, _json.loads(report), csv


def model_call(fn, config, *args, **kwargs):
    return fn(_text(config), *args, **kwargs)


__all__ = [
    "ConfigError",
    "__version__",
    "commute",
    "dim_moduli_higgs",
    "fiber_dim",
    "hitchin_base_dim",
    "hitchin_map",
    "model_call",
    "run",
    "spectral_genus",
    "verify_poisson_identity",
]
