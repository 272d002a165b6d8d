"""HLL-type hybrid Riemann solvers in a 1D finite-volume framework."""

import json

from ._hllxw import (
    ConfigError,
    ContractViolation,
    RunError,
    beta_coeffs,
    case_names,
    dissipation,
    hllx_coeffs,
    modified_eq_coeffs,
    region_check,
    utilde,
)
from . import _hllxw

__all__ = [
    "ConfigError",
    "ContractViolation",
    "RunError",
    "beta_coeffs",
    "case_config",
    "case_names",
    "dissipation",
    "hllx_coeffs",
    "modified_eq_coeffs",
    "region_check",
    "run",
    "utilde",
]


def case_config(name):
    """Full configuration of a built-in case as a dict."""
    return json.loads(_hllxw.case_document(name))


def run(config=None, **overrides):
    """Run a case.

    ``config`` is a built-in case name or a configuration dict; keyword
    arguments override its keys (``scheme="hllx-omega", omega=0.3``).
    """
    if config is None:
        doc = {"case": "sod"}
    elif isinstance(config, str):
        doc = {"case": config}
    else:
        doc = dict(config)
    if "scheme" in overrides:
        doc.pop("omega", None)
        doc.pop("path", None)
    doc.update(overrides)
    return _hllxw.run_document(json.dumps(doc))
