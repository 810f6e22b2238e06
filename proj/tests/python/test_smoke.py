import math
import os

import numpy as np
import pytest

import cwrev


def reuleaux():
    return cwrev.PiecewiseTrigProfile([math.pi / 3])


def test_reuleaux_ratio():
    body = cwrev.Body(reuleaux(), 1.0)
    report = cwrev.analyze(body)
    assert report["method"] == "exact-piecewise"
    assert abs(report["ratio"] - (4 - math.pi)) < 1e-12
    assert abs(cwrev.F_quadrature(reuleaux()) - (1 - math.pi / 3)) < 1e-10


def test_profile_eval_and_symmetry():
    p = cwrev.Profile(cwrev.SineSeriesProfile([0.3, -0.2, 0.05]))
    t = np.linspace(-3, 3, 101)
    jets = p.eval_many(t)
    shifted = p.eval_many(t + math.pi)
    assert jets.shape == (101, 3)
    np.testing.assert_allclose(jets[:, 0], -shifted[:, 0], atol=1e-12)


def test_ball_mesh_volume():
    body = cwrev.Body(cwrev.make_ball(0.0), 1.0)
    verts, tris = cwrev.tessellate(body, 64, 64)
    assert verts.shape == (65 * 64 + 2, 3)
    assert tris.shape == (2 * 65 * 64, 3)
    assert cwrev.euler_characteristic(verts, tris) == 2
    assert abs(cwrev.mesh_signed_volume(verts, tris) / (4 * math.pi / 3) - 1) < 1e-2


def test_merge_and_derivative():
    p = cwrev.PiecewiseTrigProfile.from_cosines([0.7, 0.2])
    merged = cwrev.merge_triple(p, 0)
    assert merged.breakpoints == pytest.approx([math.pi / 3], abs=1e-14)
    diff = cwrev.F_closed_piecewise(merged) - cwrev.F_closed_piecewise(p)
    assert diff == pytest.approx(cwrev.delta_F_merge(1.0, 0.4, 0.0), abs=1e-12)
    assert cwrev.dF_deps(0.5, 0.6, 0.2) < 0 < cwrev.dF_deps(0.9, 0.3, 0.4)


def test_minimize_k1():
    result = cwrev.minimize(1, seeds=3, seed=1)
    assert result["best"].breakpoints[0] == pytest.approx(math.pi / 3, abs=1e-10)
    assert result["F"] == pytest.approx(cwrev.REULEAUX_FUNCTIONAL, abs=1e-12)


def test_errors_are_typed():
    with pytest.raises(cwrev.ValidationError):
        cwrev.Body(cwrev.PiecewiseTrigProfile([math.pi / 4]), 1.0)
    body = cwrev.Body(reuleaux(), 1.5)
    with pytest.raises(cwrev.ConvexityError):
        cwrev.normal_flow(body, 0.6)
    with pytest.raises(cwrev.ConfigError):
        cwrev.body_from_config('{"type": "torus"}')


def test_config_files():
    directory = os.environ.get("CWREV_CONFIG_DIR")
    if not directory:
        pytest.skip("CWREV_CONFIG_DIR not set")
    with open(os.path.join(directory, "reuleaux.json")) as f:
        body = cwrev.body_from_config(f.read())
    assert cwrev.ratio(body) == pytest.approx(4 - math.pi, abs=1e-12)


def test_properties_run_clean():
    for run in (cwrev.run_wirtinger, cwrev.run_bijection_checks, cwrev.run_variational_checks):
        assert run(20, 7)["violations"] == 0
