import math

import numpy as np
import pytest

import schwarzflow as sf


def test_circle_samples_in_order():
    theta, z, closed = sf.sample("circle", 0.0, n=4)
    assert closed
    np.testing.assert_allclose(z, [1, 1j, -1, -1j], atol=1e-15)
    np.testing.assert_allclose(theta, [0, math.pi / 2, math.pi, 3 * math.pi / 2])


def test_paperclip_area_and_implicit_form():
    _, z, _ = sf.sample("paperclip", -1.0, n=512, arclength=True)
    assert abs(abs(sf.area(z)) - 2 * math.pi) < 1e-3
    assert max(abs(sf.implicit_residual("paperclip", -1.0, w)) for w in z) < 1e-12


def test_window_errors_are_value_errors():
    assert sf.window("paperclip") == (-math.inf, 0.0)
    with pytest.raises(ValueError):
        sf.sample("paperclip", 0.1)


def test_pde_residual_and_mutation():
    good = sf.residual("pde", "hairclip", 0.0, n=256)
    assert good["max_abs"] < 1e-10
    assert good["residual"].shape == (256,)
    bad = sf.residual("pde", "hairclip", 0.0, n=256, flip_adot=True)
    assert bad["max_abs"] > 1e-3
    assert sf.ode_residual("paperclip", -1.0) < 1e-12


def test_circle_flow_shrinks_at_the_right_rate():
    _, z, _ = sf.sample("circle", 0.0, n=128)
    out = sf.flow(z, 0.2, n=128, checkpoints=[0.1])
    assert out["reason"] == "t_end"
    last = out["checkpoints"][-1]
    assert last["t"] == pytest.approx(0.2)
    assert np.abs(np.abs(last["z"]) - math.sqrt(0.6)).max() < 1e-3
    assert last["area"] == pytest.approx(math.pi * 0.6, rel=1e-3)


def test_geometry_helpers():
    _, z, _ = sf.sample("circle", 0.0, n=200, a0=2.0)
    assert np.abs(sf.curvature(z) - 0.5).max() < 1e-3
    r = sf.resample(z, 100)
    assert r.shape == (100,)


def test_cli_in_process(tmp_path):
    out = tmp_path / "c.csv"
    assert sf.cli(["sample", "--family", "circle", "--t", "0", "--n", "8", "--out", str(out)]) == 0
    assert out.read_text().splitlines()[0] == "t,theta,x,y"
    assert sf.cli(["sample", "--family", "paperclip", "--t", "0.5"]) == 2
