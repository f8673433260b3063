"""Weak almost contact metric structures and their derived tensors.

A :class:`WeakStructure` produces, from one coordinate jet, the component
jets of ``(g, phi, Q, xi, eta)``.  :class:`PointContext` evaluates one
structure at one point and caches everything the identity catalog needs:
Christoffels, curvature, ``h = nabla xi + phi`` and the covariant derivatives
of ``phi``, ``h``, ``Q`` up to the order each identity uses.

Batched helpers take vectors of shape ``(..., d)`` so that many argument
tuples are evaluated in one numpy call.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, NamedTuple

import numpy as np
import scipy.linalg

from . import geometry, jets
from .geometry import ChartManifold, TensorField
from .jets import Jet

HYPOTHESES = ("HANY", "H0", "H1", "H2a", "H2b", "H3")

# Which classes each declared class includes.
IMPLIES = {
    "HANY": {"HANY"},
    "H0": {"HANY", "H0"},
    "H1": {"HANY", "H0", "H1"},
    "H2a": {"HANY", "H0", "H1", "H2a"},
    "H2b": {"HANY", "H0", "H1", "H2b"},
    "H3": {"HANY", "H0", "H1", "H2a", "H2b", "H3"},
}


class StructureJets(NamedTuple):
    g: Jet
    phi: Jet
    Q: Jet
    xi: Jet
    eta: Jet


@dataclass(frozen=True)
class WeakStructure:
    """The quintuple ``(phi, Q, xi, eta, g)`` on one chart.

    ``fields`` maps an order-2 coordinate jet to :class:`StructureJets`;
    ``phi[a, b]`` and ``Q[a, b]`` are (1,1) components (row index up).
    """

    name: str
    base: ChartManifold
    fields: Callable[[Jet], StructureJets]
    hypothesis: str = "H0"

    def __post_init__(self):
        if self.hypothesis not in HYPOTHESES:
            raise ValueError(f"unknown hypothesis class {self.hypothesis!r}")
        if self.base.dim % 2 != 1:
            raise ValueError("structure charts must be odd-dimensional")

    @property
    def dim(self) -> int:
        return self.base.dim

    def tensor(self, which: str) -> TensorField:
        valence = {"phi": "(1,1)", "Q": "(1,1)", "xi": "vector", "eta": "one-form", "g": "(0,2)"}[which]
        return TensorField(valence, lambda x: getattr(self.fields(x), which))

    def at(self, p) -> "PointContext":
        return PointContext(self, p)


class PointContext:
    """Everything known about a structure at one point."""

    def __init__(self, S: WeakStructure, p):
        self.S = S
        self.p = S.base.check_point(p)
        self.d = S.dim
        fj = S.fields(Jet.variables(self.p, 2))
        geometry.check_metric(fj.g.val)
        self.jets = fj
        self.gam = geometry.christoffel_from_metric(fj.g)
        self.g = fj.g.val
        self.ginv = np.linalg.inv(self.g)
        self.phi = fj.phi.val
        self.Q = fj.Q.val
        self.xi = fj.xi.val
        self.eta = fj.eta.val
        self.I = np.eye(self.d)
        self.Qt = self.Q - self.I

    # -- derived tensors -------------------------------------------------
    @cached_property
    def riem(self) -> np.ndarray:
        return geometry.riemann_from_christoffel(self.gam)

    @cached_property
    def nabla_xi_jet(self) -> Jet:
        """(1,1) jet ``A[a, m]`` with ``nabla_X xi = A X``."""
        d = geometry.covariant_derivative_jet(self.jets.xi, self.gam, "u")
        return d.transpose(1, 0)

    @cached_property
    def h_jet(self) -> Jet:
        return self.nabla_xi_jet + self.jets.phi.truncate(1)

    @property
    def h(self) -> np.ndarray:
        return self.h_jet.val

    @property
    def nabla_xi(self) -> np.ndarray:
        return self.nabla_xi_jet.val

    @cached_property
    def dphi_jet(self) -> Jet:
        return geometry.covariant_derivative_jet(self.jets.phi, self.gam, "ud")

    @property
    def dphi(self) -> np.ndarray:
        return self.dphi_jet.val

    @cached_property
    def ddphi(self) -> np.ndarray:
        return geometry.covariant_derivative_jet(self.dphi_jet, self.gam, "dud").val

    @cached_property
    def dh(self) -> np.ndarray:
        return geometry.covariant_derivative_jet(self.h_jet, self.gam, "ud").val

    @cached_property
    def dQ(self) -> np.ndarray:
        return geometry.covariant_derivative_jet(self.jets.Q, self.gam, "ud").val

    @cached_property
    def deta(self) -> np.ndarray:
        return geometry.exterior_derivative_jet(self.jets.eta, 1).val

    @cached_property
    def dphih(self) -> np.ndarray:
        """nabla (phi h) by the product rule."""
        return np.einsum("mab,bc->mac", self.dphi, self.h) + np.einsum("ab,mbc->mac", self.phi, self.dh)

    # -- batched multilinear helpers --------------------------------------
    def ip(self, X, Y) -> np.ndarray:
        return np.einsum("...i,ij,...j->...", X, self.g, Y)

    def norm(self, X) -> np.ndarray:
        return np.sqrt(np.maximum(self.ip(X, X), 0.0))

    def op(self, A, X) -> np.ndarray:
        return np.einsum("ij,...j->...i", A, X)

    def et(self, X) -> np.ndarray:
        return np.einsum("i,...i->...", self.eta, X)

    def scal(self, s, X) -> np.ndarray:
        """Multiply vectors by per-tuple scalars."""
        return np.asarray(s)[..., None] * X

    def xi_b(self, X) -> np.ndarray:
        return np.broadcast_to(self.xi, np.shape(X)).copy()

    def R(self, X, Y, Z) -> np.ndarray:
        return np.einsum("lijk,...i,...j,...k->...l", self.riem, X, Y, Z)

    def Rg(self, X, Y, Z, V) -> np.ndarray:
        return self.ip(self.R(X, Y, Z), V)

    def nphi(self, X, Y) -> np.ndarray:
        """(nabla_X phi) Y"""
        return np.einsum("mab,...m,...b->...a", self.dphi, X, Y)

    def n2phi(self, X, Y, V) -> np.ndarray:
        """(nabla^2_{X,Y} phi) V"""
        return np.einsum("lmab,...l,...m,...b->...a", self.ddphi, X, Y, V)

    def nh(self, X, Y) -> np.ndarray:
        return np.einsum("mab,...m,...b->...a", self.dh, X, Y)

    def nQ(self, X, Y) -> np.ndarray:
        return np.einsum("mab,...m,...b->...a", self.dQ, X, Y)

    def nphih(self, X, Y) -> np.ndarray:
        return np.einsum("mab,...m,...b->...a", self.dphih, X, Y)

    def kerproj(self, X) -> np.ndarray:
        """Orthogonal projection onto ker eta."""
        return X - self.scal(self.et(X), self.xi_b(X))

    @cached_property
    def hmp(self) -> np.ndarray:
        return self.h - self.phi

    def delta(self, X, Y, Z, V) -> np.ndarray:
        Qt = self.Qt
        return (self.Rg(X, Y, self.op(Qt, Z), V) + self.Rg(X, Y, Z, self.op(Qt, V))
                - self.Rg(self.op(Qt, X), Y, Z, V) - self.Rg(X, self.op(Qt, Y), Z, V))

    # -- two-forms of the main theorem -------------------------------------
    @cached_property
    def two_form_jets(self) -> dict[str, Jet]:
        """Lowered-index jets ``beta[a, b] = g(A d_a, d_b)`` for the six 2-forms."""
        g = self.jets.g.truncate(1)
        phi = self.jets.phi.truncate(1)
        Qt = self.jets.Q.truncate(1) - np.eye(self.d)
        h = self.h_jet
        ops = {
            "Phi0": h,
            "Phi1": jets.dot(phi, h),
            "Phi2": jets.dot(phi, jets.dot(h, h)),
            "Psi0": Qt,
            "Psi1": jets.dot(Qt, phi),
            "Psi2": jets.dot(Qt, h),
        }
        return {k: jets.einsum("ca,cb->ab", A, g) for k, A in ops.items()}


def rel_residual(lhs, rhs, norm: Callable | None = None) -> np.ndarray:
    """Scale-free residual ``|L - R| / (1 + |L| + |R|)`` per argument tuple.

    ``norm`` measures vector-valued sides (use ``PointContext.norm``); scalar
    sides use the absolute value.
    """
    lhs, rhs = np.broadcast_arrays(np.asarray(lhs, dtype=float), np.asarray(rhs, dtype=float))
    n = norm if norm is not None else np.abs
    return n(lhs - rhs) / (1.0 + n(lhs) + n(rhs))


# -- structure-level operations ------------------------------------------------

def nijenhuis(ctx: PointContext, X, Y) -> np.ndarray:
    """``[phi, phi](X, Y)`` from brackets of constant-component coordinate fields.

    For constant fields ``[X, Y] = 0``, ``[A X, B Y]^k = (A X)^i d_i(B Y)^k - (B Y)^i d_i(A X)^k``.
    """
    dphi = ctx.jets.phi.grad  # dphi[k, b, i] = d_i phi^k_b
    phi = ctx.phi
    pX, pY = ctx.op(phi, X), ctx.op(phi, Y)

    def d_along(U, W):  # directional derivative of phi W along U
        return np.einsum("kbi,...i,...b->...k", dphi, U, W)

    br_pp = d_along(pX, Y) - d_along(pY, X)  # [phi X, phi Y]
    br_px = -d_along(Y, X)       # [phi X, Y]
    br_xp = d_along(X, Y)        # [X, phi Y]
    return br_pp - ctx.op(phi, br_px + br_xp)


def normality_tensor(ctx: PointContext, X, Y) -> np.ndarray:
    """``[phi, phi](X, Y) + 2 d eta(X, Y) xi`` with the half-normalized ``d``."""
    de = np.einsum("ab,...a,...b->...", ctx.deta, X, Y)
    return nijenhuis(ctx, X, Y) + ctx.scal(2.0 * de, ctx.xi_b(X))


def sasakian_formula(ctx: PointContext, X, Y) -> tuple[np.ndarray, np.ndarray]:
    """Both sides of ``(nabla_X phi) Y = g(X, Y) xi - eta(Y) X``."""
    rhs = ctx.scal(ctx.ip(X, Y), ctx.xi_b(X)) - ctx.scal(ctx.et(Y), X)
    return ctx.nphi(X, Y), rhs


def _axioms():
    def compat(c, X, Y):
        return c.ip(c.op(c.phi, X), c.op(c.phi, Y)), c.ip(X, c.op(c.Q, Y)) - c.et(X) * c.et(Y)

    def eta_xi(c):
        return np.atleast_1d(c.eta @ c.xi), np.ones(1)

    def phi_xi(c):
        return (c.phi @ c.xi)[None, :], np.zeros((1, c.d))

    def eta_phi(c, X):
        return c.et(c.op(c.phi, X)), np.zeros(len(X))

    def eta_q(c, X):
        return c.et(c.op(c.Q, X)), c.et(X)

    def q_phi(c, X):
        return c.op(c.Q @ c.phi, X), c.op(c.phi @ c.Q, X)

    def phi_skew(c, X, Y):
        return c.ip(c.op(c.phi, X), Y), -c.ip(X, c.op(c.phi, Y))

    def q_selfadj(c, X, Y):
        return c.ip(c.op(c.Q, X), Y), c.ip(X, c.op(c.Q, Y))

    def eta_dual(c, X):
        return c.et(X), c.ip(c.xi_b(X), X)

    return {
        "AX-1": (2, "scalar", compat, "g(φX, φY) = g(X, QY) − η(X)η(Y)"),
        "AX-2": (0, "scalar", eta_xi, "η(ξ)=1"),
        "AX-3": (0, "vector", phi_xi, "φξ=0"),
        "AX-4": (1, "scalar", eta_phi, "η∘φ=0"),
        "AX-5": (1, "scalar", eta_q, "η∘Q=η"),
        "AX-6": (1, "vector", q_phi, "[Q, φ] := Q∘φ − φ∘Q = 0"),
        "AX-7": (2, "scalar", phi_skew, "φ is skew-symmetric"),
        "AX-8": (2, "scalar", q_selfadj, "Q is self-adjoint"),
        "AX-9": (1, "scalar", eta_dual, "η(X)=g(ξ, X)"),
    }


AXIOMS = _axioms()


def sample_vectors(rng: np.random.Generator, k: int, d: int) -> np.ndarray:
    """``k`` vectors uniform on the coordinate unit sphere."""
    v = rng.normal(size=(k, d))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


@dataclass
class AxiomReport:
    structure: str
    points: int
    residuals: dict[str, float]
    min_q_eigenvalue: float
    failures: list[str] = field(default_factory=list)
    tol: float = 1e-8

    @property
    def ok(self) -> bool:
        return not self.failures


def validate_structure(S: WeakStructure, points: int = 100, seed: int = 0, tuples: int = 8,
                       tol: float = 1e-8) -> AxiomReport:
    rng = np.random.default_rng(seed)
    pts = S.base.sample_points(rng, points)
    worst = {name: 0.0 for name in AXIOMS}
    qmin = np.inf
    failures = []
    for i, p in enumerate(pts):
        try:
            c = PointContext(S, p)
        except geometry.GeometryError as exc:
            failures.append(f"point {i}: {exc}")
            continue
        sym = 0.5 * (c.g @ c.Q + (c.g @ c.Q).T)
        qmin = min(qmin, float(scipy.linalg.eigh(sym, c.g, eigvals_only=True).min()))
        for name, (arity, kind, fn, _) in AXIOMS.items():
            args = [sample_vectors(rng, tuples, c.d) for _ in range(arity)]
            lhs, rhs = fn(c, *args)
            r = rel_residual(lhs, rhs, c.norm if kind == "vector" else None)
            worst[name] = max(worst[name], float(np.max(r)))
    for name, r in worst.items():
        if not r < tol:
            failures.append(f"{name}: residual {r:.3e}")
    if not qmin > 1e-10:
        failures.append(f"Q not positive definite: min eigenvalue {qmin:.3e}")
    return AxiomReport(S.name, points, worst, float(qmin), failures, tol)


@dataclass
class DerivedTensors:
    h: np.ndarray
    nabla_xi: np.ndarray
    h_xi: float
    eta_h: float
    skew: float

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.h))


def compute_h(S: WeakStructure, p) -> DerivedTensors:
    c = PointContext(S, p)
    gh = c.g @ c.h
    return DerivedTensors(c.h, c.nabla_xi, float(np.linalg.norm(c.h @ c.xi)),
                          float(np.linalg.norm(c.eta @ c.h)), float(np.abs(gh + gh.T).max()))


def nearly_sasakian_residual(S: WeakStructure | PointContext, p, Y) -> np.ndarray:
    """Vector ``(nabla_Y phi) Y - g(Y, Y) xi + eta(Y) Y`` for each row of ``Y``."""
    c = S if isinstance(S, PointContext) else PointContext(S, p)
    Y = np.atleast_2d(Y)
    return c.nphi(Y, Y) - c.scal(c.ip(Y, Y), c.xi_b(Y)) + c.scal(c.et(Y), Y)


def sasakian_residuals(S: WeakStructure | PointContext, p, X, Y) -> tuple[np.ndarray, np.ndarray]:
    """Relative residuals of the Sasakian formula and of normality, per tuple."""
    c = S if isinstance(S, PointContext) else PointContext(S, p)
    X, Y = np.atleast_2d(X), np.atleast_2d(Y)
    lhs, rhs = sasakian_formula(c, X, Y)
    formula = rel_residual(lhs, rhs, c.norm)
    normal = rel_residual(normality_tensor(c, X, Y), 0.0 * X, c.norm)
    return formula, normal


def delta(S: WeakStructure | PointContext, p, X, Y, Z, V) -> np.ndarray:
    c = S if isinstance(S, PointContext) else PointContext(S, p)
    return c.delta(X, Y, Z, V)
