# Copyright Contributors to the murearr project
# SPDX-License-Identifier: Apache-2.0
"""Weighted symmetrization and rearrangement kernels."""

import json

from ._core import (  # noqa: F401
    ConvergenceError,
    Density1D,
    DomainError,
    Error,
    IntervalSet,
    ParameterError,
    PreconditionError,
    QuadratureError,
    RadialDensity,
    RangeError,
    measure_1d,
    perimeter_1d,
    rayleigh_quotient,
    run_cli,
    set_thread_cap,
    suite_names,
    symmetrize_1d,
    thread_cap,
)
from ._core import run_suite_json as _run_suite_json
from ._core import symmetrize as _symmetrize


def gauss(c=1.0, n=2):
    return {"kind": "gauss", "c": float(c), "n": int(n)}


def symmetrize(values, density, L, mode="schwarz", is_set=False):
    return _symmetrize(values, json.dumps(density), float(L), mode, is_set)


def run_suite(name, **config):
    """Run a verification suite ("full" for all of them) and return the result dict."""
    return json.loads(_run_suite_json(name, json.dumps(config)))


__all__ = [n for n in dir() if not n.startswith("_")]
