import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from nearsasaki import geometry
from nearsasaki.geometry import GeometryError, contact_volume, wedge
from nearsasaki.jets import Jet
from nearsasaki.models import DEFAULT_MODELS, get_model
from nearsasaki.structure import PointContext

from oracles import brute_wedge, fd_christoffel, fd_riemann, relative_close

CHARTS = ("nsas-s5", "sas-r5", "sas-r7", "sas-s5", "sas-s7")
CURVATURE = {"sas-s5": 1.0, "sas-s7": 1.0, "nsas-s5": 2.0}


def _points(name, n, seed=0):
    return get_model(name).chart.sample_points(np.random.default_rng(seed), n)


@pytest.mark.parametrize("name", CHARTS)
def test_christoffel_and_curvature_match_finite_differences(name):
    chart = get_model(name).chart
    gamma_at = lambda q: geometry.christoffel_from_metric(chart.metric_jet(q, order=1)).val
    for p in _points(name, 10):
        gam = geometry.christoffel_from_metric(chart.metric_jet(p))
        assert relative_close(gam.val, fd_christoffel(chart, p), 1e-5)
        assert relative_close(geometry.riemann_from_christoffel(gam), fd_riemann(gamma_at, p), 1e-5)


@pytest.mark.parametrize("name", sorted(CURVATURE))
def test_constant_curvature_spheres(name):
    K = CURVATURE[name]
    rng = np.random.default_rng(1)
    for p in _points(name, 10):
        c = PointContext(get_model(name).structure, p)
        X, Y, Z = rng.normal(size=(3, 4, c.d))
        rhs = K * (c.ip(Y, Z)[:, None] * X - c.ip(X, Z)[:, None] * Y)
        assert np.abs(c.R(X, Y, Z) - rhs).max() < 1e-9


@pytest.mark.parametrize("name", CHARTS)
def test_curvature_symmetries(name):
    for p in _points(name, 5):
        c = PointContext(get_model(name).structure, p)
        Rl = np.einsum("ml,lijk->mijk", c.g, c.riem)  # g(R(i,j)k, m)
        assert np.allclose(Rl, -np.swapaxes(Rl, 1, 2), atol=1e-12)
        assert np.allclose(Rl, -np.swapaxes(Rl, 0, 3), atol=1e-12)
        bianchi = c.riem + np.einsum("lijk->ljki", c.riem) + np.einsum("lijk->lkij", c.riem)
        assert np.abs(bianchi).max() < 1e-12
        A = np.einsum("mijk->ijkm", Rl)
        assert np.allclose(A, A.transpose(2, 3, 0, 1), atol=1e-12)


@pytest.mark.parametrize("name", CHARTS)
def test_ricci_identity_for_phi(name):
    """nabla^2_{X,Y} phi - nabla^2_{Y,X} phi = [R_{X,Y}, phi]."""
    for p in _points(name, 5):
        c = PointContext(get_model(name).structure, p)
        comm = c.ddphi - np.swapaxes(c.ddphi, 0, 1)
        rhs = np.einsum("lijk,kb->ijlb", c.riem, c.phi) - np.einsum("lk,kijb->ijlb", c.phi, c.riem)
        assert np.abs(comm - rhs).max() < 1e-10


def _scalar_field(x):
    return (x[0] * x[1]).exp() + (x[2] * x[2] + 1.0).log() * x[3]


def _one_form(x):
    return Jet.stack([x[1] * x[2], (x[0] * x[3]).exp(), x[4] * x[4] * x[0], (x[2] + 2.0).log(), x[1]])


@given(arrays(np.float64, 5, elements=st.floats(-1.0, 1.0)))
def test_d_squared_vanishes(p):
    df = geometry.exterior_derivative_jet(_scalar_field(Jet.variables(p)), 0)
    assert np.abs(geometry.exterior_derivative_jet(df, 1).val).max() < 1e-12
    dw = geometry.exterior_derivative_jet(_one_form(Jet.variables(p)), 1)
    assert np.abs(geometry.exterior_derivative_jet(dw, 2).val).max() < 1e-12


@pytest.mark.parametrize("name", CHARTS)
def test_d_eta_coordinate_matches_covariant(name):
    p = _points(name, 1)[0]
    c = PointContext(get_model(name).structure, p)
    a = geometry.exterior_derivative_jet(c.jets.eta, 1).val
    b = geometry.exterior_derivative_covariant(c.jets.eta, c.gam, 1).val
    assert np.abs(a - b).max() < 1e-12


def _form(rng, d, k):
    w = rng.normal(size=(d,) * k)
    return brute_wedge(w, k, np.ones(()), 0) if k > 1 else w


@pytest.mark.parametrize("k,m", sorted(geometry.SUPPORTED_WEDGES))
def test_wedge_matches_permutation_oracle(k, m):
    rng = np.random.default_rng(k * 10 + m)
    a, b = _form(rng, 5, k), _form(rng, 5, m)
    assert np.allclose(wedge(a, k, b, m), brute_wedge(a, k, b, m), atol=1e-12)
    assert np.allclose(wedge(a, k, b, m), (-1) ** (k * m) * wedge(b, m, a, k), atol=1e-12)


def test_wedge_rejects_unsupported_degree():
    with pytest.raises(GeometryError):
        wedge(np.zeros((3, 3)), 2, np.zeros((3, 3, 3)), 3)


def test_exterior_derivative_rejects_three_forms():
    with pytest.raises(GeometryError):
        geometry.exterior_derivative_jet(Jet.constant(np.zeros((3, 3, 3)), 3), 3)


@pytest.mark.parametrize("name", ["sas-s5", "sas-r7", "nsas-s5"])
def test_contact_form(name):
    p = _points(name, 1)[0]
    c = PointContext(get_model(name).structure, p)
    assert abs(contact_volume(c.eta, c.deta)) > 1e-6


def test_point_outside_chart_is_rejected():
    chart = get_model("sas-s5").chart
    with pytest.raises(geometry.DomainError):
        chart.check_point(np.full(chart.dim, 50.0))
    with pytest.raises(geometry.DomainError):
        chart.check_point(np.zeros(chart.dim + 1))
