"""Residual evaluators for the identity catalog.

Every evaluator takes a :class:`~nearsasaki.structure.PointContext` and
batched vector arguments of shape ``(K, d)`` and returns ``(lhs, rhs)``.
Scalar rows return arrays of shape ``(K,)`` (or ``(K, m)`` for a bundle of
scalar equations); vector rows return ``(K, d)``.

Notation inside evaluators: ``g`` metric, ``e`` is eta, ``ph``/``h``/``hm``/
``Q``/``Qt`` apply phi, h, h - phi, Q, Q - id; ``R(X,Y,Z,V) = g(R_{X,Y}Z, V)``;
``n(X,Y) = (nabla_X phi)Y``; ``n2(X,Y,V) = (nabla^2_{X,Y} phi)V``.
"""

from __future__ import annotations

import numpy as np

from . import jets
from .jets import Jet
from .structure import AXIOMS, PointContext, nijenhuis, sasakian_formula


class Terms:
    """Short names for the multilinear building blocks at one point."""

    def __init__(self, c: PointContext):
        self.c = c
        self.g = c.ip
        self.e = c.et
        self.s = c.scal
        self.R = c.Rg
        self.Rv = c.R
        self.n = c.nphi
        self.n2 = c.n2phi
        self.dl = c.delta

    def ph(self, X):
        return self.c.op(self.c.phi, X)

    def h(self, X):
        return self.c.op(self.c.h, X)

    def hm(self, X):
        return self.c.op(self.c.hmp, X)

    def Q(self, X):
        return self.c.op(self.c.Q, X)

    def Qt(self, X):
        return self.c.op(self.c.Qt, X)

    def xi(self, X):
        return self.c.xi_b(X)

    def ker(self, X):
        return self.c.kerproj(X)

    def nh(self, X, Y):
        return self.c.nh(X, Y)

    def nhm(self, X, Y):
        """(nabla_X (h - phi)) Y"""
        return self.c.nh(X, Y) - self.c.nphi(X, Y)

    def zero(self, X):
        return np.zeros(X.shape[:-1])


def field_term(c: PointContext, V, X, Y, Z) -> np.ndarray:
    """``V(eta(Z) g((h - phi)X, QY))`` for fields parallel at the point.

    ``X``, ``Y``, ``Z`` are extended by ``W(x) = W0 - Gamma(p)(x - p, W0)``,
    so their covariant derivatives vanish at ``p``; the function is then
    differentiated with jets.
    """
    G = c.gam.val

    def parallel(W):
        grad = -np.einsum("amb,kb->kam", G, W)
        return Jet(W, grad)

    Xj, Yj, Zj = parallel(X), parallel(Y), parallel(Z)
    g = c.jets.g.truncate(1)
    eta = c.jets.eta.truncate(1)
    hm = c.h_jet - c.jets.phi.truncate(1)
    Q = c.jets.Q.truncate(1)
    etaZ = jets.einsum("a,ka->k", eta, Zj)
    inner = jets.einsum("ab,ac,kc,bd,kd->k", g, hm, Xj, Q, Yj)
    f = etaZ * inner
    return np.einsum("km,km->k", f.grad, V)


def field_term_tensorial(c: PointContext, V, X, Y, Z) -> np.ndarray:
    """The same derivative written through covariant derivatives (cross-check)."""
    t = Terms(c)
    deta_Z = c.ip(c.op(c.nabla_xi, V), Z)
    return (deta_Z * t.g(t.hm(X), t.Q(Y))
            + t.e(Z) * (t.g(t.nhm(V, X), t.Q(Y)) + t.g(t.hm(X), c.nQ(V, Y))))


# -- axioms, basic properties ---------------------------------------------------

def ric_1(t, X, Y, V, Z):
    lhs = t.g(t.n2(X, Y, V), Z) - t.g(t.n2(Y, X, V), Z)
    return lhs, t.R(X, Y, t.ph(V), Z) + t.R(X, Y, V, t.ph(Z))


def ns_0(t, Y, Z):
    rhs = t.s(2 * t.g(Y, Z), t.xi(Y)) - t.s(t.e(Z), Y) - t.s(t.e(Y), Z)
    return t.n(Y, Z) + t.n(Z, Y), rhs


def ns_skew(t, Y, V, Z):
    return t.g(t.n(Y, V), Z), -t.g(t.n(Y, Z), V)


def ns_skew2(t, X, Y, V, Z):
    return t.g(t.n2(X, Y, V), Z), -t.g(t.n2(X, Y, Z), V)


def geo_1(t):
    c = t.c
    return (c.nabla_xi @ c.xi)[None, :], np.zeros((1, c.d))


def kill_1(t, X, Y):
    c = t.c
    return t.g(c.op(c.nabla_xi, X), Y) + t.g(c.op(c.nabla_xi, Y), X), t.zero(X)


def h_xi(t):
    c = t.c
    return (c.h @ c.xi)[None, :], np.zeros((1, c.d))


def h_eta(t, X):
    return t.e(t.h(X)), t.zero(X)


def h_skew(t, X, Y):
    return t.g(t.h(X), Y), -t.g(X, t.h(Y))


# -- Lemma 1 ---------------------------------------------------------------------

def l1_a(t, X):
    return t.nh(X, t.xi(X)), -t.h(t.hm(X))


def l1_b(t, X):
    return t.h(t.ph(X)) + t.ph(t.h(X)), -2 * t.Qt(X)


def l1_c(t, X):
    return t.n(X, t.xi(X)), -t.ph(t.hm(X))


def l1_d(t, X):
    return t.h(t.Q(X)), t.Q(t.h(X))


def l1_e(t, X):
    return t.h(t.h(t.ph(X))), t.ph(t.h(t.h(X)))


def l1_f(t, X):
    return t.h(t.ph(t.ph(X))), t.ph(t.ph(t.h(X)))


def l1_g(t, X):
    return t.h(t.h(t.ph(t.ph(X)))), t.ph(t.ph(t.h(t.h(X))))


# -- conditions on Q-tilde and curvature -----------------------------------------

def qpar_1(t, X, Y):
    return t.c.nQ(X, t.ker(Y)), 0 * X


def qpar_2(t, X):
    return t.c.nQ(t.xi(X), X), 0 * X


def ci_1(t, X, Y, Z):
    X, Y, Z = t.ker(X), t.ker(Y), t.ker(Z)
    return t.e(t.Rv(t.Qt(X), Y, Z)), t.zero(X)


def ci_2(t, X, Y, Z):
    X, Y, Z = t.ker(X), t.ker(Y), t.ker(Z)
    return t.e(t.Rv(X, Y, Z)), t.zero(X)


def ci_3(t, X, Y, Z):
    X, Y, Z = t.ker(X), t.ker(Y), t.ker(Z)
    return t.e(t.Rv(X, Y, t.Qt(Z))), t.zero(X)


# -- Lemma 2 ---------------------------------------------------------------------

def l2_a(t, X, Y):
    hm2X = t.hm(t.hm(X))
    R = t.Rv(X, t.xi(X), Y)
    rhs = t.s(t.g(hm2X, Y), t.xi(X)) - t.s(t.e(Y), hm2X)
    return np.stack([R, R], axis=-2), np.stack([t.nhm(X, Y), rhs], axis=-2)


def l2_b(t, X, Y, Z):
    hm2X = t.hm(t.hm(X))
    return t.R(t.xi(X), X, Y, Z), t.e(Y) * t.g(hm2X, Z) - t.e(Z) * t.g(hm2X, Y)


def l2_c(t, X):
    xi = t.xi(X)
    rhs = t.ph(t.h(X)) + t.Qt(X)
    return np.stack([t.nh(xi, X), t.n(xi, X)], axis=-2), np.stack([rhs, rhs], axis=-2)


# -- Lemma 3 ---------------------------------------------------------------------

def l3_a(t, X, Y, Z):
    rhs = t.g(t.n(X, Y), t.ph(Z)) + t.e(Y) * t.g(t.hm(X), Z) + t.e(Z) * t.g(t.hm(X), t.Q(Y))
    return t.g(t.n(X, t.ph(Y)), Z), rhs


def l3_b(t, X, Y, Z):
    rhs = (t.g(t.n(X, Y), t.ph(Z)) - t.e(X) * t.g(t.h(Y), Z) - 2 * t.e(Y) * t.g(t.ph(X), Z)
           + 2 * t.e(Z) * t.g(t.ph(X), Y) - t.e(Z) * t.g(t.Q(X), t.hm(Y)))
    return t.g(t.n(t.ph(X), Y), Z), rhs


def l3_c(t, X, Y, Z):
    rhs = (-t.g(t.n(X, Y), t.Q(Z)) + t.e(X) * t.g(Y, t.h(t.ph(Z)))
           + t.e(Y) * t.g(t.h(t.ph(X)) + t.ph(t.ph(X)), Z)
           + t.e(Z) * t.g(t.ph(t.hm(X)), Y) + t.e(Z) * t.g(t.hm(t.ph(X)), t.Q(Y)))
    return t.g(t.n(t.ph(X), t.ph(Y)), Z), rhs


# -- Lemma 4 ---------------------------------------------------------------------

def l4_a(t, X, Y, Z, V):
    g, hm = t.g, t.hm
    lhs = t.R(t.ph(X), Y, Z, V) + t.R(X, t.ph(Y), Z, V) + t.R(X, Y, t.ph(Z), V) + t.R(X, Y, Z, t.ph(V))
    rhs = (g(Y, V) * g(hm(X), Z) - g(X, Y) * g(Z, hm(V)) + g(Y, Z) * g(X, hm(V))
           - 0.5 * g(Z, V) * g(hm(X), Y) + 0.5 * g(X, Z) * g(Y, hm(V)))
    return lhs, rhs


def l4_b(t, X, Y, Z, V):
    g, hm, ph = t.g, t.hm, t.ph
    rhs = (t.R(X, Y, ph(Z), ph(V)) - 0.5 * t.dl(X, Y, Z, V) - g(X, Y) * g(Z, t.Qt(V))
           + 0.5 * g(Y, V) * g(ph(hm(X)), Z) - 0.5 * g(Y, ph(Z)) * g(X, hm(V))
           - 0.5 * g(Y, ph(V)) * g(hm(X), Z) - 0.5 * g(Y, Z) * g(X, hm(ph(V)))
           - 0.25 * g(X, ph(Z)) * g(Y, hm(V)) - 0.25 * g(X, Z) * g(Y, hm(ph(V))))
    return t.R(ph(X), ph(Y), Z, V), rhs


def l4_c(t, X, Y, Z, V):
    g, hm, ph, e, Q = t.g, t.hm, t.ph, t.e, t.Q
    xi = t.xi(X)
    rhs = (t.R(Q(X), Q(Y), Z, V) - e(X) * t.R(xi, Q(Y), Z, V) + e(Y) * t.R(xi, Q(X), Z, V)
           + 0.5 * g(ph(Y), V) * g(hm(ph(X)), ph(Z)) + 0.5 * g(ph(ph(Y)), Z) * g(X, ph(hm(V)))
           - 0.5 * g(ph(ph(Y)), V) * g(hm(ph(X)), Z) + 0.5 * g(ph(Y), Z) * g(ph(X), hm(ph(V)))
           + 0.25 * g(ph(ph(X)), Z) * g(Y, ph(hm(V))) + 0.25 * g(ph(X), Z) * g(ph(Y), hm(ph(V)))
           - g(ph(ph(X)), Y) * g(Z, t.Qt(V)) + 0.5 * t.dl(ph(X), ph(Y), Z, V))
    return t.R(ph(X), ph(Y), ph(Z), ph(V)), rhs


def dlt_1(t, X, Y, Z, V):
    d0 = t.dl(X, Y, Z, V)
    lhs = np.stack([t.dl(Y, X, Z, V), t.dl(X, Y, V, Z), t.dl(Z, V, X, Y)], axis=-1)
    return lhs, -np.stack([d0, d0, d0], axis=-1)


def dlt_2(t, X, Y, Z, V):
    xi = t.xi(X)
    lhs = np.stack([t.dl(xi, Y, Z, V), t.dl(X, xi, Z, V), t.dl(X, Y, xi, V), t.dl(X, Y, Z, xi)], axis=-1)
    return lhs, np.zeros_like(lhs)


# -- Lemma 5, Proposition 2 ------------------------------------------------------

def l5_a(t, X, Y, Z):
    ph, h, Qt, e, g = t.ph, t.h, t.Qt, t.e, t.g
    hh = h(h(Z))
    rhs = (-e(X) * g(ph(hh) + Qt(h(Z)), Y)
           + e(Y) * g(ph(hh) - h(Z) + Qt(h(Z)), X))
    return g(t.n(X, Y), h(Z)), rhs


def p2_a(t, X, Y):
    ph, h, Qt, Q, e, s = t.ph, t.h, t.Qt, t.Q, t.e, t.s
    rhs = (s(e(X), ph(h(Y)) + Qt(Y)) - s(e(Y), ph(h(X)) + Q(X))
           + s(t.g(ph(h(X)) + Q(X), Y), t.xi(X)))
    return t.n(X, Y), rhs


def p2_b(t, X, Y):
    ph, h, Qt, e, s = t.ph, t.h, t.Qt, t.e, t.s
    hhm = h(t.hm(X))
    rhs = s(e(X), ph(h(Y)) + Qt(Y)) - s(e(Y), hhm) + s(t.g(hhm, Y), t.xi(X))
    return t.nh(X, Y), rhs


def _p2_c(t, X, Y, tail):
    ph, h, Qt, e, s = t.ph, t.h, t.Qt, t.e, t.s
    rhs = (s(e(X), ph(h(h(Y))) - h(Y) + Qt(ph(Y))) - s(e(Y), tail)
           + s(t.g(ph(h(h(X))) - h(X) + Qt(h(X)), Y), t.xi(X)))
    return t.c.nphih(X, Y), rhs


def p2_c(t, X, Y):
    # the middle coefficient is printed as g(.) of a single vector; read as the vector
    tail = t.ph(t.h(t.h(X))) - t.Q(t.h(X)) + 2 * t.Qt(t.ph(X))
    return _p2_c(t, X, Y, tail)


def p2_d(t, X, Y, V):
    from .spectral import h2_spectrum
    V0 = t.c.op(h2_spectrum(t.c).P0, V)
    return t.g(t.n(X, Y), V0), -t.e(Y) * t.g(X, V0)


def p2_e(t, X, Y):
    return t.g(t.n(X, Y), t.xi(X)), t.g(t.Q(X) + t.ph(t.h(X)), Y) - t.e(X) * t.e(Y)


def p2_f(t, X, Y, Z):
    ph, h, Qt, e, g = t.ph, t.h, t.Qt, t.e, t.g
    rhs = e(X) * g(ph(h(Y)) + Qt(Y), h(Z)) - e(Y) * g(ph(h(X)) + X + Qt(X), h(Z))
    return g(t.n(X, Y), h(Z)), rhs


def t01_a(t, X, Y):
    return t.g(t.n(X, Y), t.xi(X)), -t.g(t.ph(Y), t.hm(X))


def sas_1(t, X, Y):
    return sasakian_formula(t.c, X, Y)


def normal_1(t, X, Y):
    de = np.einsum("ab,ka,kb->k", t.c.deta, X, Y)
    return nijenhuis(t.c, X, Y) + t.s(2.0 * de, t.xi(X)), 0 * X


def sol_1(t, X):
    lhs = np.stack([t.h(t.ph(X)), t.ph(t.h(X))], axis=-2)
    return lhs, np.stack([-t.Qt(X), -t.Qt(X)], axis=-2)


# -- two-forms -------------------------------------------------------------------

def _forms(c: PointContext) -> dict:
    cache = c.__dict__.setdefault("_form_cache", {})
    if cache:
        return cache
    from .geometry import exterior_derivative_jet, wedge
    tf = c.two_form_jets
    alt = {k: 0.5 * (v - v.transpose(1, 0)) for k, v in tf.items()}
    vals = {k: v.val for k, v in alt.items()}
    d = {k: exterior_derivative_jet(v, 2).val for k, v in alt.items()}
    eta = c.eta
    cache.update(
        vals=vals, d=d,
        tf1=wedge(eta, 1, vals["Phi1"] + vals["Psi0"], 2),
        tf2=wedge(eta, 1, vals["Phi2"] - vals["Phi0"] + vals["Psi1"], 2),
        tf3=-wedge(eta, 1, vals["Psi2"] - vals["Psi1"], 2),
        tf4=wedge(c.deta, 2, vals["Phi1"] + vals["Psi0"], 2),
    )
    return cache


def _ev3(w, X, Y, Z):
    return np.einsum("abc,ka,kb,kc->k", w, X, Y, Z)


def tf_0(t, X, Y, Z):
    c = t.c
    f = _forms(c)

    def nhg(A, B, C):
        return t.g(t.nh(A, B), C)

    return 3 * _ev3(f["d"]["Phi0"], X, Y, Z), nhg(X, Z, Y) + nhg(Y, X, Z) + nhg(Z, Y, X)


def tf_1(t, X, Y, Z):
    f = _forms(t.c)
    return _ev3(f["d"]["Phi0"], X, Y, Z), _ev3(f["tf1"], X, Y, Z)


def tf_2(t, X, Y, Z):
    f = _forms(t.c)
    return _ev3(f["d"]["Phi1"], X, Y, Z), _ev3(f["tf2"], X, Y, Z)


def tf_3(t, X, Y, Z):
    f = _forms(t.c)
    return _ev3(f["d"]["Psi0"], X, Y, Z), _ev3(f["tf3"], X, Y, Z)


def tf_4(t, X, Y, Z, V):
    f = _forms(t.c)
    return np.einsum("abcd,ka,kb,kc,kd->k", f["tf4"], X, Y, Z, V), t.zero(X)


def tf_0_cyclic(t, X, Y, Z):
    l, r = tf_0(t, X, Y, Z)
    return l, -r


def tf_1_cyclic(t, X, Y, Z):
    l, r = tf_1(t, X, Y, Z)
    return l, 3 * r


def tf_2_cyclic(t, X, Y, Z):
    l, r = tf_2(t, X, Y, Z)
    return l, 3 * r


# -- proof chain, curvature block ---------------------------------------------------

def pc_ef01(t, X, Y, Z):
    hmX = t.hm(X)
    rhs = t.s(2 * t.g(Y, Z), hmX) - t.s(t.g(hmX, Z), Y) - t.s(t.g(hmX, Y), Z)
    return t.n2(X, Y, Z) + t.n2(X, Z, Y), rhs


def pc_e37(t, X, Y, Z, V):
    g, hm, ph = t.g, t.hm, t.ph
    lhs = (t.R(X, Y, Z, ph(V)) - t.R(X, Y, V, ph(Z))
           + g(t.n2(X, Z, Y), V) - g(t.n2(Y, Z, X), V))
    rhs = (2 * g(Y, Z) * g(hm(X), V) - 2 * g(X, Z) * g(hm(Y), V)
           - g(Y, V) * g(hm(X), Z) + g(X, V) * g(hm(Y), Z) + 2 * g(Z, V) * g(hm(Y), X))
    return lhs, rhs


def pc_e38(t, X, Y, Z, V):
    g, ph = t.g, t.ph
    rhs = (g(t.n2(Y, Z, V), X) - g(t.n2(Z, Y, V), X)
           - t.R(Y, Z, V, ph(X)) - t.R(Z, X, Y, ph(V)))
    return t.R(X, Y, Z, ph(V)), rhs


def _pc_e39(t, X, Y, Z, V, first):
    g, hm, ph = t.g, t.hm, t.ph
    lhs = (t.R(X, Z, Y, ph(V)) - t.R(X, Y, V, ph(Z)) - t.R(Y, Z, V, ph(X))
           - g(t.n2(Z, Y, V), X) - g(t.n2(X, Z, V), Y))
    rhs = (2 * g(t.n2(Y, Z, X), V) + 2 * g(Y, Z) * g(first, V) - 2 * g(X, Z) * g(hm(Y), V)
           + 2 * g(Z, V) * g(hm(Y), X) - g(Y, V) * g(hm(X), Z) + g(X, V) * g(hm(Y), Z))
    return lhs, rhs


def pc_e39(t, X, Y, Z, V):
    return _pc_e39(t, X, Y, Z, V, t.hm(X))


def pc_e39_printed(t, X, Y, Z, V):
    return _pc_e39(t, X, Y, Z, V, X - t.ph(X))


def pc_e310(t, X, Y, Z, V):
    g, ph = t.g, t.ph
    lhs = (t.R(X, Z, Y, ph(V)) - t.R(X, Z, V, ph(Y))
           - g(t.n2(X, Z, Y), V) + g(t.n2(Z, X, Y), V))
    return lhs, t.zero(X)


def pc_e311(t, X, Y, Z, V):
    g, hm, ph = t.g, t.hm, t.ph
    lhs = (2 * t.R(X, Z, Y, ph(V)) - t.R(X, Y, V, ph(Z)) - t.R(Y, Z, V, ph(X)) - t.R(X, Z, V, ph(Y)))
    rhs = (2 * g(t.n2(Y, V, Z), X) + 2 * g(Y, Z) * g(hm(X), V) - 2 * g(X, Z) * g(hm(Y), V)
           + 2 * g(Z, V) * g(hm(Y), X) - g(Y, V) * g(hm(X), Z) + g(X, V) * g(hm(Y), Z))
    return lhs, rhs


def pc_e312(t, X, Y, Z, V):
    g, hm, ph = t.g, t.hm, t.ph
    lhs = (2 * t.R(X, Z, V, ph(Y)) - t.R(X, V, Y, ph(Z)) - t.R(V, Z, Y, ph(X)) - t.R(X, Z, Y, ph(V)))
    rhs = (2 * g(t.n2(V, Y, Z), X) + 2 * g(Z, V) * g(hm(X), Y) - 2 * g(X, Z) * g(hm(V), Y)
           + 2 * g(Y, Z) * g(hm(V), X) - g(Y, V) * g(hm(X), Z) + g(X, Y) * g(hm(V), Z))
    return lhs, rhs


def pc_e313(t, X, Y, Z, V):
    g, hm, ph, e, Q = t.g, t.hm, t.ph, t.e, t.Q
    xi = t.xi(X)
    lhs = (-t.R(Q(X), Y, Z, V) + e(X) * t.R(xi, Y, Z, V) + t.R(ph(X), ph(Y), Z, V)
           + t.R(ph(X), Y, ph(Z), V) + t.R(ph(X), Y, Z, ph(V)))
    rhs = (g(Y, V) * g(hm(ph(X)), Z) - g(ph(X), Y) * g(Z, hm(V)) + g(Y, Z) * g(ph(X), hm(V))
           - 0.5 * g(Z, V) * g(hm(ph(X)), Y) + 0.5 * g(ph(X), Z) * g(Y, hm(V)))
    return lhs, rhs


def _pc_e314(t, X, Y, Z, V, third):
    g, hm, ph, e, Q = t.g, t.hm, t.ph, t.e, t.Q
    xi = t.xi(X)
    lhs = (t.R(X, Q(Y), Z, V) + e(Y) * t.R(xi, X, Z, V) - t.R(ph(X), ph(Y), Z, V)
           + t.R(ph(Y), X, ph(Z), V) + t.R(ph(Y), X, Z, ph(V)))
    rhs = (g(X, V) * g(hm(ph(Y)), Z) - g(ph(X), Y) * g(Z, hm(V)) - g(X, Z) * third
           - 0.5 * g(Z, V) * g(X, hm(ph(Y))) + 0.5 * g(ph(Y), Z) * g(X, hm(V)))
    return lhs, rhs


def pc_e314(t, X, Y, Z, V):
    return _pc_e314(t, X, Y, Z, V, t.g(t.ph(Y), t.hm(V)))


def pc_e314_alt(t, X, Y, Z, V):
    return _pc_e314(t, X, Y, Z, V, t.g(Y, t.ph(t.hm(V))))


def pc_e314_exchanged(t, X, Y, Z, V):
    """Literal exchange of X and Y in the preceding row."""
    l, r = _pc_e314(t, X, Y, Z, V, t.g(Y, t.ph(t.hm(V))))
    return l, r + 2 * t.g(t.ph(X), Y) * t.g(Z, t.hm(V))


def pc_e315(t, X, Y, Z, V):
    g, hm, ph, e, Qt = t.g, t.hm, t.ph, t.e, t.Qt
    xi = t.xi(X)
    lhs = (2 * t.R(ph(X), ph(Y), Z, V) - 2 * t.R(X, Y, Z, V)
           + e(X) * t.R(xi, Y, Z, V) - e(Y) * t.R(xi, X, Z, V)
           + t.R(ph(X), Y, ph(Z), V) - t.R(ph(Y), X, ph(Z), V)
           + t.R(ph(X), Y, Z, ph(V)) - t.R(ph(Y), X, Z, ph(V))
           - t.R(Qt(X), Y, Z, V) - t.R(X, Qt(Y), Z, V))
    rhs = (g(Y, V) * g(hm(ph(X)), Z) + g(Y, Z) * g(hm(V), ph(X)) + g(Z, V) * g(Qt(X), Y)
           + 0.5 * g(ph(X), Z) * g(Y, hm(V)) - 0.5 * g(ph(Y), Z) * g(X, hm(V))
           - g(X, V) * g(hm(ph(Y)), Z) + g(X, Z) * g(Y, ph(hm(V))))
    return lhs, rhs


def pc_e316(t, X, Y, Z, V):
    g, hm, ph, e, Q = t.g, t.hm, t.ph, t.e, t.Q
    xi = t.xi(X)
    rhs = (-e(Z) * t.R(xi, V, X, Y) - t.R(X, Y, ph(Z), ph(V)) - t.R(X, ph(Y), ph(Z), V)
           - t.R(ph(X), Y, ph(Z), V)
           - g(Y, V) * g(ph(hm(X)), Z) - g(X, Y) * g(ph(Z), hm(V)) + g(Y, ph(Z)) * g(X, hm(V))
           - 0.5 * g(ph(Z), V) * g(hm(X), Y) + 0.5 * g(X, ph(Z)) * g(Y, hm(V)))
    return -t.R(X, Y, Q(Z), V), rhs


def pc_e317(t, X, Y, Z, V):
    g, hm, ph, e, Q = t.g, t.hm, t.ph, t.e, t.Q
    xi = t.xi(X)
    rhs = (e(V) * t.R(xi, Z, X, Y) - t.R(X, Y, ph(Z), ph(V)) - t.R(ph(X), Y, Z, ph(V))
           - t.R(X, ph(Y), Z, ph(V))
           + g(Y, ph(V)) * g(hm(X), Z) - g(X, Y) * g(Z, hm(ph(V))) + g(Y, Z) * g(X, hm(ph(V)))
           - 0.5 * g(Z, ph(V)) * g(hm(X), Y) + 0.5 * g(X, Z) * g(Y, hm(ph(V))))
    return -t.R(X, Y, Z, Q(V)), rhs


def pc_e318(t, X, Y, Z, V):
    g, hm, ph, e, Qt = t.g, t.hm, t.ph, t.e, t.Qt
    xi = t.xi(X)
    lhs = (2 * t.R(ph(X), ph(Y), Z, V) - 2 * t.R(X, Y, ph(Z), ph(V))
           - e(Z) * t.R(xi, V, X, Y) + e(V) * t.R(xi, Z, X, Y)
           + e(X) * t.R(xi, Y, Z, V) - e(Y) * t.R(xi, X, Z, V) + t.dl(X, Y, Z, V)
           - g(Y, V) * g(ph(hm(X)), Z) + g(Y, ph(Z)) * g(X, hm(V))
           + g(Y, ph(V)) * g(hm(X), Z) + g(Y, Z) * g(X, hm(ph(V))) + 2 * g(X, Y) * g(Z, Qt(V))
           + 0.5 * g(X, ph(Z)) * g(Y, hm(V)) + 0.5 * g(X, Z) * g(Y, hm(ph(V))))
    return lhs, t.zero(X)


def pc_e338(t, X, Y, Z, V):
    g, hm, ph, e, Q = t.g, t.hm, t.ph, t.e, t.Q
    lhs = t.R(X, ph(Z), ph(V), Y) - t.R(X, ph(Z), ph(ph(V)), ph(Y))
    rhs = (t.R(X, ph(Z), ph(V), Y) + t.R(X, ph(Z), Q(V), ph(Y))
           - e(X) * e(V) * g(hm(hm(ph(Y))), ph(Z)))
    return lhs, rhs


def pc_e339(t, X, Y, Z, V):
    g, hm, ph, h = t.g, t.hm, t.ph, t.h
    lhs = (t.R(X, Z, ph(V), ph(Y)) + t.R(X, Z, ph(ph(V)), Y)
           + t.R(X, ph(Z), ph(V), Y) + t.R(ph(X), Z, ph(V), Y))
    rhs = (-g(Y, Z) * g(ph(hm(X)), V) + g(X, Z) * g(ph(hm(Y)), V) + g(Z, ph(V)) * g(X, h(Y) - ph(Y))
           - 0.5 * g(Y, ph(V)) * g(hm(X), Z) + 0.5 * g(X, ph(V)) * g(hm(Y), Z))
    return lhs, rhs


def _tail_340(t, X, Y, Z, V):
    g, hm, ph, Q, Qt = t.g, t.hm, t.ph, t.Q, t.Qt
    return (0.5 * t.dl(ph(X), Z, V, ph(Y)) + g(ph(X), Z) * g(Qt(ph(Y)), V)
            + 0.5 * g(ph(Y), Z) * g(hm(ph(X)), ph(V)) + 0.5 * g(Z, ph(V)) * g(ph(X), hm(ph(Y)))
            + 0.5 * g(ph(ph(Y)), Z) * g(hm(ph(X)), V) + 0.5 * g(Z, V) * g(hm(ph(X)), Q(Y))
            - 0.25 * g(ph(ph(X)), V) * g(hm(ph(Y)), Z) + 0.25 * g(ph(X), V) * g(Q(Y), hm(Z)))


def pc_e340(t, X, Y, Z, V):
    ph = t.ph
    lhs = t.R(ph(X), Z, ph(V), ph(ph(Y)))
    rhs = t.R(ph(ph(X)), ph(Z), V, ph(Y)) + _tail_340(t, X, Y, Z, V)
    return lhs, rhs


def pc_e308bb(t, X, Y, Z, V):
    ph, e, Q = t.ph, t.e, t.Q
    xi = t.xi(X)
    lhs = -t.R(ph(X), Z, ph(V), Q(Y)) + e(Y) * t.R(ph(X), Z, ph(V), xi)
    rhs = (-t.R(Q(X), ph(Z), V, ph(Y)) + e(X) * t.R(xi, ph(Z), V, ph(Y))
           + _tail_340(t, X, Y, Z, V))
    return lhs, rhs


def pc_e341(t, X, Y, Z, V):
    g, hm, ph, e, Q = t.g, t.hm, t.ph, t.e, t.Q
    lhs = t.R(ph(X), Z, ph(V), Y) + t.R(Q(X), ph(Z), V, ph(Y))
    rhs = (-t.R(X, Z, ph(V), ph(Y)) - t.R(X, Z, ph(ph(V)), Y) - t.R(X, ph(Z), ph(V), Y)
           + t.R(ph(X), Z, ph(V), Q(Y)) - e(Y) * e(Z) * g(ph(X), hm(hm(ph(V))))
           - g(Y, Z) * g(ph(hm(X)), V) + g(X, Z) * g(ph(hm(Y)), V) + g(Z, ph(V)) * g(X, hm(Y))
           - 0.5 * g(Y, ph(V)) * g(hm(X), Z) + 0.5 * g(X, ph(V)) * g(hm(Y), Z)
           + e(X) * e(V) * g(ph(Y), hm(hm(ph(Z))))
           + _tail_340(t, X, Y, Z, V))
    return lhs, rhs


def pc_e342(t, X, Y, Z, V):
    g, hm, ph, e, Q, Qt, h = t.g, t.hm, t.ph, t.e, t.Q, t.Qt, t.h
    lhs = t.R(X, ph(Z), ph(V), Y) - t.R(X, ph(Z), ph(ph(V)), ph(Y))
    rhs = (-t.R(Q(X), ph(Z), V, ph(Y)) - t.R(X, Z, ph(V), ph(Y))
           - t.R(X, Z, ph(ph(V)), Y) - t.R(X, ph(Z), ph(V), Y) + t.R(ph(X), Z, ph(V), Q(Y))
           + t.R(X, ph(Z), Q(V), ph(Y))
           + g(Y, Z) * g(hm(X), ph(V)) + g(X, Z) * g(ph(hm(Y)), V) + g(Z, ph(V)) * g(X, hm(Y))
           - 0.5 * g(Y, ph(V)) * g(hm(X), Z) + 0.5 * g(X, ph(V)) * g(hm(Y), Z)
           + 0.5 * t.dl(ph(X), Z, V, ph(Y)) + g(ph(X), Z) * g(Qt(ph(Y)), V)
           - e(Y) * e(Z) * g(hm(hm(ph(V))), ph(X))
           + 0.5 * g(ph(Y), Z) * g(hm(ph(X)), ph(V)) + 0.5 * g(Z, ph(V)) * g(ph(X), h(ph(Y)) + Q(Y))
           + 0.5 * g(ph(ph(Y)), Z) * g(hm(ph(X)), V) + 0.5 * g(Z, V) * g(hm(ph(X)), Q(Y))
           - 0.25 * g(ph(ph(X)), V) * g(hm(ph(Y)), Z) + 0.25 * g(ph(X), V) * g(Q(Y), hm(Z)))
    return lhs, rhs


def pc_e343(t, X, Y, Z, V):
    g, hm, ph, e, Q, Qt = t.g, t.hm, t.ph, t.e, t.Q, t.Qt
    xi = t.xi(X)
    lhs = t.R(ph(X), ph(Y), ph(Z), ph(V)) - t.R(X, Y, ph(Z), ph(V))
    rhs = (-t.R(ph(X), ph(Y), Z, V) + t.R(Q(X), Q(Y), Z, V)
           - e(X) * t.R(xi, Q(Y), Z, V) + e(Y) * t.R(xi, Q(X), Z, V)
           + 0.5 * g(ph(Y), V) * g(hm(ph(X)), ph(Z)) + 0.5 * g(ph(ph(Y)), Z) * g(X, ph(hm(V)))
           - 0.5 * g(ph(ph(Y)), V) * g(hm(ph(X)), Z) + 0.5 * g(ph(Y), Z) * g(ph(X), hm(ph(V)))
           + 0.25 * g(ph(ph(X)), Z) * g(Y, ph(hm(V))) + 0.25 * g(ph(X), Z) * g(ph(Y), hm(ph(V)))
           + 0.5 * g(Y, V) * g(ph(hm(X)), Z) - 0.5 * g(Y, ph(Z)) * g(X, hm(V))
           - 0.5 * g(Y, ph(V)) * g(hm(X), Z) - 0.5 * g(Y, Z) * g(X, hm(ph(V)))
           - 0.25 * g(X, ph(Z)) * g(Y, hm(V)) - 0.25 * g(X, Z) * g(Y, hm(ph(V)))
           - g(ph(ph(X)) + X, Y) * g(Qt(V), Z)
           + 0.5 * t.dl(ph(X), ph(Y), Z, V) - 0.5 * t.dl(X, Y, Z, V))
    return lhs, rhs


# -- proof chain, field block ---------------------------------------------------------

def _nn(t, X, Y, Z, V):
    """g((nabla_V phi)Y, (nabla_X phi)Z) + g((nabla_X phi)Y, (nabla_V phi)Z)"""
    return t.g(t.n(V, Y), t.n(X, Z)) + t.g(t.n(X, Y), t.n(V, Z))


def pc_e332(t, X, Y, Z, V):
    g, hm, ph, e = t.g, t.hm, t.ph, t.e
    rhs = (g(t.n2(V, X, ph(Y)), Z) + g(t.n2(V, X, ph(Z)), Y) - g(Y, hm(V)) * g(hm(X), Z)
           - e(Y) * g(t.nhm(V, X), Z) - field_term(t.c, V, X, Y, Z))
    return _nn(t, X, Y, Z, V), rhs


def pc_r04a_mid(t, X, Y, Z, V):
    g, hm, ph = t.g, t.hm, t.ph
    rhs = (g(t.n2(V, ph(Y), Z), X) + 2 * g(X, ph(Y)) * g(Z, hm(V))
           + g(X, Z) * g(Y, ph(hm(V))) - g(ph(Y), Z) * g(X, hm(V)))
    return g(t.n2(V, X, ph(Y)), Z), rhs


def pc_r04a(t, X, Y, Z, V):
    g, hm, ph, e, Q = t.g, t.hm, t.ph, t.e, t.Q
    xi = t.xi(X)
    rhs = (-t.R(X, Z, V, Q(Y)) - e(Y) * t.R(xi, V, X, Z) + 1.5 * g(X, ph(Y)) * g(Z, hm(V))
           + g(Z, V) * g(ph(hm(X)), Y) + 0.5 * g(ph(Y), V) * g(hm(X), Z)
           - 0.5 * t.R(X, V, ph(Y), ph(Z)) - 0.5 * t.R(V, Z, ph(Y), ph(X))
           - 0.5 * t.R(X, Z, ph(Y), ph(V)))
    return g(t.n2(V, X, ph(Y)), Z), rhs


def pc_r04aa_mid(t, X, Y, Z, V):
    g, hm, ph = t.g, t.hm, t.ph
    rhs = (g(t.n2(V, ph(Z), Y), X) + 2 * g(X, ph(Z)) * g(Y, hm(V))
           + g(X, Y) * g(Z, ph(hm(V))) - g(Y, ph(Z)) * g(X, hm(V)))
    return g(t.n2(V, X, ph(Z)), Y), rhs


def pc_r04aa(t, X, Y, Z, V):
    g, hm, ph, e, Q = t.g, t.hm, t.ph, t.e, t.Q
    xi = t.xi(X)
    rhs = (-t.R(X, Y, V, Q(Z)) - e(Z) * t.R(xi, V, X, Y) + 1.5 * g(X, ph(Z)) * g(Y, hm(V))
           + g(Y, V) * g(ph(hm(X)), Z) + 0.5 * g(ph(Z), V) * g(hm(X), Y)
           - 0.5 * t.R(X, V, ph(Z), ph(Y)) - 0.5 * t.R(V, Y, ph(Z), ph(X))
           - 0.5 * t.R(X, Y, ph(Z), ph(V)))
    return g(t.n2(V, X, ph(Z)), Y), rhs


def pc_r03b(t, X, Y, Z, V):
    g, hm, ph, e, Q = t.g, t.hm, t.ph, t.e, t.Q
    xi = t.xi(X)
    rhs = (-t.R(X, Z, V, Q(Y)) - e(Y) * t.R(xi, V, X, Z)
           + 0.5 * t.R(Y, V, ph(Z), ph(X)) + 0.5 * t.R(Y, X, ph(Z), ph(V))
           - 0.5 * t.R(V, Z, ph(Y), ph(X)) - 0.5 * t.R(X, Z, ph(Y), ph(V))
           - t.R(X, Y, V, Q(Z)) - e(Z) * t.R(xi, V, X, Y) - g(hm(V), Y) * g(hm(X), Z)
           + 1.5 * g(X, ph(Y)) * g(Z, hm(V)) + g(Z, V) * g(ph(hm(X)), Y) + 0.5 * g(ph(Y), V) * g(hm(X), Z)
           + 1.5 * g(X, ph(Z)) * g(Y, hm(V)) + g(Y, V) * g(ph(hm(X)), Z) + 0.5 * g(ph(Z), V) * g(hm(X), Y)
           - e(Y) * g(t.nhm(V, X), Z) - field_term(t.c, V, X, Y, Z))
    return _nn(t, X, Y, Z, V), rhs


def pc_e334(t, X, Y, Z, V):
    g, hm, ph, e, Q, Qt = t.g, t.hm, t.ph, t.e, t.Q, t.Qt
    rhs = (-t.R(X, Z, V, Q(Y)) - t.R(X, Y, V, Q(Z)) + t.R(V, Z, ph(X), ph(Y)) + t.R(X, Z, ph(V), ph(Y))
           - g(Y, hm(V)) * g(hm(X), Z)
           - e(X) * e(Z) * g(Y, hm(hm(V))) + e(Y) * e(Z) * g(X, hm(hm(V)))
           - 0.5 * g(Y, Z) * g(Qt(X) + ph(ph(X)), V) + g(Y, V) * g(ph(hm(X)), Z)
           + 0.75 * g(Z, V) * g(ph(hm(X)), Y) - 0.25 * g(X, Z) * g(hm(ph(Y)), V)
           - 0.25 * g(X, V) * g(hm(ph(Y)), Z) - g(Z, V) * g(Qt(Y), X) - 0.5 * g(X, Z) * g(Qt(Y), V)
           - 1.25 * g(X, ph(Z)) * g(hm(Y), V) - 0.25 * g(Z, ph(V)) * g(hm(X), Y)
           + 1.5 * g(X, ph(Y)) * g(hm(V), Z) - 0.5 * g(Y, ph(V)) * g(hm(X), Z)
           - 0.25 * t.dl(V, Z, X, Y) - 0.25 * t.dl(X, Z, V, Y) - field_term(t.c, V, X, Y, Z))
    return _nn(t, X, Y, Z, V), rhs


def pc_e335(t, X, Y, Z, V):
    g, hm, ph, Q, Qt = t.g, t.hm, t.ph, t.Q, t.Qt
    pZ, pV = ph(Z), ph(V)
    lhs = g(t.n(pV, Y), t.n(X, pZ)) + g(t.n(X, Y), t.n(pV, pZ))
    rhs = (t.R(X, pZ, ph(pV), ph(Y)) - t.R(X, pZ, pV, Q(Y)) - t.R(X, Y, Q(pZ), pV)
           + t.R(ph(X), ph(Y), pZ, pV) - g(Y, hm(pV)) * g(hm(X), pZ)
           - 0.5 * g(Y, pZ) * g(Qt(X) + ph(ph(X)), pV) + g(Y, pV) * g(ph(hm(X)), pZ)
           - 0.75 * g(ph(pZ), V) * g(ph(hm(X)), Y) - 0.25 * g(X, pZ) * g(hm(ph(Y)), pV)
           - 0.25 * g(X, pV) * g(hm(ph(Y)), pZ) + g(ph(pZ), V) * g(X, Qt(Y))
           - 0.5 * g(X, pZ) * g(Qt(Y), pV)
           - 1.25 * g(X, ph(pZ)) * g(hm(Y), pV) + 0.25 * g(pZ, Q(V)) * g(hm(X), Y)
           + 1.5 * g(X, ph(Y)) * g(hm(pV), pZ) - 0.5 * g(Y, ph(pV)) * g(hm(X), pZ)
           - 0.25 * t.dl(pV, pZ, X, Y) - 0.25 * t.dl(X, pZ, pV, Y))
    return lhs, rhs


def pc_e336(t, X, Y, Z, V):
    g, hm, ph, e, Q, h = t.g, t.hm, t.ph, t.e, t.Q, t.h
    lhs = g(t.n(ph(V), Y), t.n(X, ph(Z)))
    nXZ = t.n(X, Z)
    rhs = (g(Q(nXZ), t.n(V, Y)) - e(V) * g(nXZ, ph(h(Y))) - 2 * e(Y) * g(nXZ, ph(ph(V)))
           + e(Z) * g(t.n(V, Y), ph(hm(X))) - e(Z) * e(V) * g(hm(X), hm(Y))
           - 2 * e(Z) * e(Y) * g(hm(X), ph(V))
           - g(ph(hm(X)), Z) * g(Y, ph(hm(V))) + g(Y, hm(ph(V))) * g(hm(X), Q(Z)))
    return lhs, rhs


def pc_e337(t, X, Y, Z, V):
    g, hm, ph, e, Q, h = t.g, t.hm, t.ph, t.e, t.Q, t.h
    nXY = t.n(X, Y)
    lhs = g(nXY, t.n(ph(V), ph(Z)))
    rhs = (e(Z) * g(nXY, hm(ph(V))) - g(t.n(V, Z), Q(nXY)) + e(V) * g(nXY, ph(h(Z)))
           - g(ph(hm(X)), Y) * g(ph(hm(V)), Z) + g(ph(hm(X)), Y) * g(hm(ph(V)), Q(Z)))
    return lhs, rhs


def pc_fin(t, X, Y, Z):
    ph, h, Qt, Q, e, g = t.ph, t.h, t.Qt, t.Q, t.e, t.g
    QZ = Q(Z)
    hh = h(h(QZ))
    rhs = (-e(X) * g(ph(hh) + Qt(h(QZ)), Y)
           + e(Y) * g(ph(hh) - h(QZ) + Qt(h(QZ)), X))
    return g(t.n(X, Y), h(QZ)), rhs


def axiom_evaluator(name):
    fn = AXIOMS[name][2]

    def ev(t, *args):
        return fn(t.c, *args)

    ev.__name__ = name
    return ev
