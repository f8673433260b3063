import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from nearsasaki import models
from nearsasaki.models import (DEFAULT_MODELS, build_sasakian_r2n1, build_weak_deformation, cross7,
                               get_model, resolve_models)
from nearsasaki.structure import (PointContext, compute_h, nearly_sasakian_residual, sasakian_residuals,
                                  validate_structure)

SASAKIAN = ("sas-r5", "sas-r7", "sas-s5", "sas-s7")
vec7 = arrays(np.float64, 7, elements=st.floats(-2.0, 2.0))


@given(vec7, vec7, vec7)
def test_cross_product_bilinear_and_norm(x, y, z):
    assert np.allclose(cross7(x, y), -cross7(y, x), atol=1e-12)
    assert np.allclose(cross7(x + 2 * z, y), cross7(x, y) + 2 * cross7(z, y), atol=1e-10)
    lhs = cross7(x, y) @ cross7(x, y)
    assert abs(lhs - ((x @ x) * (y @ y) - (x @ y) ** 2)) < 1e-9 * (1 + lhs)
    assert abs(cross7(x, y) @ x) < 1e-9 * (1 + np.abs(x).max() ** 2 * np.abs(y).max())


@pytest.mark.parametrize("name", DEFAULT_MODELS)
def test_every_model_passes_the_axioms(name):
    rep = validate_structure(get_model(name).structure, points=25, seed=3)
    assert rep.ok, rep.failures
    assert rep.min_q_eigenvalue > 0


@pytest.mark.parametrize("name", SASAKIAN)
def test_sasakian_models(name):
    e = get_model(name)
    rng = np.random.default_rng(0)
    for p in e.chart.sample_points(rng, 10):
        c = PointContext(e.structure, p)
        X, Y = rng.normal(size=(2, 4, c.d))
        formula, normal = sasakian_residuals(c, None, X, Y)
        assert formula.max() < 1e-8 and normal.max() < 1e-8
        assert compute_h(e.structure, p).norm < 1e-10
        # d eta(X, Y) = g(X, phi Y)
        assert np.allclose(np.einsum("ab,ka,kb->k", c.deta, X, Y), c.ip(X, c.op(c.phi, Y)), atol=1e-9)


def test_nearly_sasakian_s5_is_not_sasakian():
    e = get_model("nsas-s5")
    assert not e.profile.sasakian and e.profile.nearly_sasakian and not e.profile.h_zero
    rng = np.random.default_rng(0)
    for p in e.chart.sample_points(rng, 10):
        c = PointContext(e.structure, p)
        Y = rng.normal(size=(4, c.d))
        assert np.abs(nearly_sasakian_residual(c, None, Y)).max() < 1e-10
        assert compute_h(e.structure, p).norm > 0.5
        assert np.allclose(c.Q, np.eye(c.d), atol=1e-12)


def test_corrupted_metric_scale_breaks_the_sasakian_formula():
    e = build_sasakian_r2n1(2, metric_scale=2.0)
    rng = np.random.default_rng(0)
    p = e.chart.sample_points(rng, 1)[0]
    X, Y = rng.normal(size=(2, 8, 5))
    formula, _ = sasakian_residuals(e.structure, p, X, Y)
    assert formula.max() >= 0.1


def test_weak_deformation():
    base = get_model("sas-r5")
    assert build_weak_deformation(base, 1.0) is base
    with pytest.raises(ValueError):
        build_weak_deformation(base, 0.0)
    e = get_model("weak-r5-a2")
    c = PointContext(e.structure, e.chart.sample_points(np.random.default_rng(0), 1)[0])
    assert np.allclose(c.Q @ c.phi, c.phi @ c.Q, atol=1e-12)
    assert np.allclose(c.eta @ c.Q, c.eta, atol=1e-12)
    assert np.abs(c.Qt).max() > 1.0


def test_registry_resolution():
    assert resolve_models("all") == sorted(DEFAULT_MODELS)
    assert resolve_models("sas-r5,nsas-s5") == ["sas-r5", "nsas-s5"]
    assert get_model("weak-s7-a3").dim == 7
    with pytest.raises(KeyError):
        get_model("nope")
    with pytest.raises(KeyError):
        get_model("weak-r5-a1")
