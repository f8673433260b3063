import numpy as np
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from nearsasaki import jets
from nearsasaki.jets import Jet

from oracles import fd_gradient

coords = arrays(np.float64, 3, elements=st.floats(-1.0, 1.0))


def _field(x):
    """A smooth nonlinear test field R^3 -> R^(2,2)."""
    a = (x[0] * x[1] + 1.5).reciprocal()
    b = (x[2] * x[2] + 1.0).sqrt()
    c = (x[0] - x[2]).exp()
    return Jet.stack([Jet.stack([a, b * c]), Jet.stack([c - a, (b + 2.0).log()])])


def _values(p):
    return _field(Jet.variables(p)).val


@given(coords)
def test_gradient_matches_finite_differences(p):
    J = _field(Jet.variables(p))
    assert np.allclose(J.grad, fd_gradient(_values, p), atol=1e-8)


@given(coords)
def test_hessian_matches_finite_differences(p):
    J = _field(Jet.variables(p))
    fd = fd_gradient(lambda q: _field(Jet.variables(q)).grad, p)
    assert np.allclose(J.hess, fd, atol=1e-7)


@given(coords)
def test_hessian_is_symmetric(p):
    H = _field(Jet.variables(p)).hess
    assert np.allclose(H, np.swapaxes(H, -1, -2), atol=1e-12)


@given(coords)
def test_inverse_and_dot_agree_with_identity(p):
    J = _field(Jet.variables(p))
    I = jets.dot(J, jets.inv(J))
    assert np.allclose(I.val, np.eye(2), atol=1e-10)
    assert np.allclose(I.grad, 0.0, atol=1e-9)
    assert np.allclose(I.hess, 0.0, atol=1e-8)


def test_order_truncates_to_smaller_operand():
    x = Jet.variables([0.1, 0.2, 0.3], 2)
    y = Jet.variables([0.1, 0.2, 0.3], 1)
    assert (x * y).order == 1
    assert (x * x).order == 2
