# Copyright Contributors to the murearr project
# SPDX-License-Identifier: Apache-2.0

import math

import numpy as np
import pytest

import murearr


def test_radial_mass_closed_form():
    # n = 2: H(r) = pi (e^{c r^2} - 1) / c
    d = murearr.RadialDensity(2, 1.0)
    assert d.H(1.0) == pytest.approx(math.pi * (math.e - 1.0), rel=1e-10)
    assert d.H_inverse(d.H(0.7)) == pytest.approx(0.7, rel=1e-10)


def test_interval_symmetrization_keeps_mass():
    d = murearr.Density1D.gaussian(1.0)
    s = murearr.IntervalSet([(-0.3, 0.2), (0.9, 1.4)])
    sym = murearr.symmetrize_1d(d, s)
    assert len(sym.intervals()) == 1
    assert murearr.measure_1d(d, sym) == pytest.approx(murearr.measure_1d(d, s), rel=1e-12)
    assert murearr.perimeter_1d(d, sym) <= murearr.perimeter_1d(d, s) + 1e-12


def test_schwarz_of_grid_function():
    N, L = 64, 2.0
    x = (np.arange(N) + 0.5 - N / 2) * (2 * L / N)
    X, Y = np.meshgrid(x, x, indexing="ij")
    u = np.maximum(0.0, 1.0 - ((X - 0.5) ** 2 + Y**2) / 0.5)
    s = murearr.symmetrize(u, murearr.gauss(0.0, 2), L)
    assert s.shape == u.shape
    assert s.max() == pytest.approx(u.max())
    assert s.sum() == pytest.approx(u.sum(), rel=1e-10)  # c = 0: equal cell masses


def test_errors_map_to_python():
    d = murearr.RadialDensity(2, 1.0)
    with pytest.raises(murearr.Error):
        d.H_inverse(-1.0)


def test_suite_and_cli():
    r = murearr.run_suite("anchors")
    assert r["passed"]
    code, out, _ = murearr.run_cli(["verify", "iso1d", "--cases", "200"])
    assert code == 0
    assert '"passed": true' in out
    code, _, err = murearr.run_cli(["verify", "nope"])
    assert code == 2 and "unknown suite" in err
