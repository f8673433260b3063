"""Single-chart Riemannian kernel built on order-2 jets.

Index conventions (all component arrays):

* ``gamma[k, i, j]`` is the Christoffel symbol with upper index ``k``.
* ``riem[l, i, j, k]`` holds ``R(d_i, d_j) d_k = riem[l, i, j, k] d_l`` with
  ``R_{X,Y} = nabla_X nabla_Y - nabla_Y nabla_X - nabla_[X,Y]``.
* A covariant derivative is prepended: ``(nabla T)[m, ...] = (nabla_m T)[...]``,
  so ``(nabla^2 T)[a, b, ...]`` is ``nabla^2_{d_a, d_b} T``.
* A tensor's slot pattern is a string of ``"u"`` (contravariant) and ``"d"``
  (covariant) characters, e.g. ``"ud"`` for a (1,1) tensor.
* Forms use the alternation convention: ``(a ^ b) = Alt(a (x) b)`` and
  ``d w (X_0..X_k) = 1/(k+1) * sum_a (-1)^a X_a w(...) + bracket terms``.
"""

from __future__ import annotations

import itertools
import math
import string
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import jets
from .jets import Jet

VALENCES = {
    "scalar": "",
    "vector": "u",
    "one-form": "d",
    "(1,1)": "ud",
    "(0,2)": "dd",
    "(0,3)": "ddd",
    "(0,4)": "dddd",
}

_LETTERS = string.ascii_lowercase


class GeometryError(ValueError):
    pass


class DomainError(GeometryError):
    pass


class SingularMetricError(GeometryError):
    pass


@dataclass(frozen=True)
class ChartManifold:
    """A Riemannian metric on one coordinate chart.

    ``metric`` maps an order-2 coordinate jet to the ``(d, d)`` metric jet.
    Points are sampled uniformly in ``box`` and kept when ``domain`` accepts
    them.
    """

    name: str
    dim: int
    metric: Callable[[Jet], Jet]
    domain: Callable[[np.ndarray], bool] = lambda p: True
    box: tuple[float, float] = (-1.0, 1.0)

    def check_point(self, p) -> np.ndarray:
        p = np.asarray(p, dtype=float)
        if p.shape != (self.dim,):
            raise DomainError(f"{self.name}: point has shape {p.shape}, expected ({self.dim},)")
        if not self.domain(p):
            raise DomainError(f"{self.name}: point {p} outside chart domain")
        return p

    def metric_jet(self, p, order: int = 2) -> Jet:
        p = self.check_point(p)
        g = self.metric(Jet.variables(p, order))
        check_metric(g.val)
        return g

    def sample_points(self, rng: np.random.Generator, n: int) -> np.ndarray:
        lo, hi = self.box
        out = []
        tries = 0
        while len(out) < n:
            tries += 1
            if tries > 1000 * max(n, 1):
                raise DomainError(f"{self.name}: cannot sample admissible points")
            p = rng.uniform(lo, hi, self.dim)
            if self.domain(p):
                out.append(p)
        return np.array(out).reshape(n, self.dim)


@dataclass(frozen=True)
class TensorField:
    """Component functions of a tensor field of a named valence."""

    valence: str
    components: Callable[[Jet], Jet]
    pattern: str = field(init=False)

    def __post_init__(self):
        if self.valence not in VALENCES:
            raise GeometryError(f"unsupported valence {self.valence!r}")
        object.__setattr__(self, "pattern", VALENCES[self.valence])

    def jet(self, M: ChartManifold, p, order: int = 2) -> Jet:
        p = M.check_point(p)
        t = self.components(Jet.variables(p, order))
        want = (M.dim,) * len(self.pattern)
        if t.shape != want:
            raise GeometryError(f"{self.valence} field has component shape {t.shape}, expected {want}")
        return t


def check_metric(g: np.ndarray) -> None:
    if not np.all(np.isfinite(g)):
        raise SingularMetricError("metric has non-finite components")
    if not np.allclose(g, g.T, rtol=0, atol=1e-12 * max(1.0, np.abs(g).max())):
        raise SingularMetricError("metric is not symmetric")
    try:
        np.linalg.cholesky(g)
    except np.linalg.LinAlgError as exc:
        raise SingularMetricError("metric is not positive definite") from exc


def christoffel_from_metric(g: Jet) -> Jet:
    """Christoffel symbols as a jet one order below the metric jet."""
    ginv = jets.inv(g.truncate(g.order - 1))
    dg = g.derivative()  # dg[i, j, k] = d_k g_ij
    # d_i g_jl + d_j g_il - d_l g_ij, indexed [i, j, l]
    comb = dg.transpose(2, 0, 1) + dg.transpose(0, 2, 1) - dg
    return jets.einsum("kl,ijl->kij", ginv, comb) * 0.5


def christoffel(M: ChartManifold, p) -> tuple[np.ndarray, np.ndarray]:
    """Christoffel symbols ``gamma[k,i,j]`` and their partials ``dgamma[k,i,j,m]``."""
    gam = christoffel_from_metric(M.metric_jet(p))
    return gam.val, gam.grad


def riemann_from_christoffel(gam: Jet) -> np.ndarray:
    """``riem[l,i,j,k]`` from an order->=1 Christoffel jet."""
    G = gam.val
    dG = gam.grad  # dG[l, j, k, i] = d_i gamma^l_jk
    d_term = np.einsum("ljki->lijk", dG) - np.einsum("likj->lijk", dG)
    q_term = np.einsum("lim,mjk->lijk", G, G) - np.einsum("ljm,mik->lijk", G, G)
    return d_term + q_term


def covariant_derivative_jet(t: Jet, gam: Jet, pattern: str) -> Jet:
    """nabla of a tensor jet; the derivative index is prepended (covariant).

    The result has order ``min(t.order - 1, gam.order)``.
    """
    n = len(pattern)
    if t.val.ndim != n:
        raise GeometryError(f"pattern {pattern!r} does not match tensor rank {t.val.ndim}")
    res = t.derivative().moveaxis(-1, 0)
    letters = _LETTERS[:n]
    for s, kind in enumerate(pattern):
        src = "".join(letters)
        if kind == "u":
            # + gamma^{a_s}_{m x} T^{..x..}
            tin = src[:s] + "x" + src[s + 1:]
            res = res + jets.einsum(f"{src[s]}mx,{tin}->m{src}", gam, t)
        elif kind == "d":
            # - gamma^{x}_{m a_s} T_{..x..}
            tin = src[:s] + "x" + src[s + 1:]
            res = res - jets.einsum(f"xm{src[s]},{tin}->m{src}", gam, t)
        else:
            raise GeometryError(f"bad slot kind {kind!r} in pattern {pattern!r}")
    return res


def covariant_derivative(M: ChartManifold, T: TensorField, p) -> np.ndarray:
    """Value of nabla T at ``p`` with the derivative slot first."""
    gam = christoffel_from_metric(M.metric_jet(p))
    return covariant_derivative_jet(T.jet(M, p), gam, T.pattern).val


def second_covariant_derivative_jet(t: Jet, gam: Jet, pattern: str) -> np.ndarray:
    """``(nabla^2 T)[a, b, ...] = (nabla^2_{d_a, d_b} T)[...]``; needs order-2 ``t``."""
    if t.order < 2 or gam.order < 1:
        raise GeometryError("second covariant derivative needs an order-2 tensor jet and order-1 Christoffels")
    first = covariant_derivative_jet(t, gam, pattern)
    return covariant_derivative_jet(first, gam, "d" + pattern).val


def second_covariant_derivative_11(M: ChartManifold, T: TensorField, p) -> np.ndarray:
    if T.pattern != "ud":
        raise GeometryError("second_covariant_derivative_11 expects a (1,1) field")
    gam = christoffel_from_metric(M.metric_jet(p))
    return second_covariant_derivative_jet(T.jet(M, p), gam, "ud")


def riemann(M: ChartManifold, p, X, Y, Z) -> np.ndarray:
    gam = christoffel_from_metric(M.metric_jet(p))
    return np.einsum("lijk,i,j,k->l", riemann_from_christoffel(gam), X, Y, Z)


# -- differential forms -------------------------------------------------------

def _alternate_derivative(dw: Jet | np.ndarray, k: int) -> Jet | np.ndarray:
    """Combine ``D[m, i_1..i_k]`` into ``1/(k+1) sum_a (-1)^a D`` with m moved to slot a."""
    r = k + 1
    letters = _LETTERS[:r]
    out = None
    for a in range(r):
        src = letters[a] + letters[:a] + letters[a + 1:]
        term = jets.einsum(f"{src}->{letters}", dw) if isinstance(dw, Jet) else np.einsum(f"{src}->{letters}", dw)
        term = term * ((-1) ** a / r)
        out = term if out is None else out + term
    return out


def exterior_derivative_jet(w: Jet, k: int) -> Jet:
    """Coordinate formula for d of a k-form (k in 0, 1, 2)."""
    if k not in (0, 1, 2):
        raise GeometryError(f"exterior derivative of a {k}-form is not supported")
    if w.val.ndim != k:
        raise GeometryError(f"expected {k} component axes, got {w.val.ndim}")
    D = w.derivative().moveaxis(-1, 0)
    if k == 0:
        return D
    return _alternate_derivative(D, k)


def exterior_derivative_covariant(w: Jet, gam: Jet, k: int) -> Jet:
    """d of a k-form through its Levi-Civita covariant derivative."""
    if k not in (0, 1, 2):
        raise GeometryError(f"exterior derivative of a {k}-form is not supported")
    D = covariant_derivative_jet(w, gam, "d" * k)
    if k == 0:
        return D
    return _alternate_derivative(D, k)


def exterior_derivative(M: ChartManifold, omega: Callable[[Jet], Jet], p, k: int) -> np.ndarray:
    p = M.check_point(p)
    return exterior_derivative_jet(omega(Jet.variables(p)), k).val


def shuffles(k: int, m: int):
    """(k, m)-shuffles as (positions of the first block, sign)."""
    r = k + m
    for first in itertools.combinations(range(r), k):
        rest = tuple(i for i in range(r) if i not in first)
        perm = first + rest
        yield perm, permutation_sign(perm)


def permutation_sign(perm) -> int:
    perm = list(perm)
    sign = 1
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            sign = -sign
    return sign


def wedge_components(a: np.ndarray, k: int, b: np.ndarray, m: int) -> np.ndarray:
    """``Alt(a (x) b)`` for any degrees, via the shuffle sum."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.ndim != k or b.ndim != m:
        raise GeometryError("form rank does not match its declared degree")
    r = k + m
    letters = _LETTERS[:r]
    prod = np.multiply.outer(a, b) if r else a * b
    coef = math.factorial(k) * math.factorial(m) / math.factorial(r)
    out = np.zeros(prod.shape)
    for perm, sign in shuffles(k, m):
        src = "".join(letters[p] for p in perm)
        out += sign * np.einsum(f"{src}->{letters}", prod)
    return coef * out


SUPPORTED_WEDGES = {(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (3, 1)}


def wedge(a: np.ndarray, k: int, b: np.ndarray, m: int) -> np.ndarray:
    if (k, m) not in SUPPORTED_WEDGES:
        raise GeometryError(f"wedge of degrees ({k}, {m}) is not supported")
    return wedge_components(a, k, b, m)


def evaluate_form(w: np.ndarray, *vectors) -> float:
    letters = _LETTERS[: w.ndim]
    spec = letters + "," + ",".join(letters) + "->"
    return float(np.einsum(spec, w, *vectors))


def contact_volume(eta: np.ndarray, deta: np.ndarray) -> float:
    """``(eta ^ (d eta)^n)(d_1, ..., d_{2n+1})`` in the alternation convention."""
    d = eta.shape[0]
    n = (d - 1) // 2
    acc, deg = eta, 1
    for _ in range(n):
        acc = wedge_components(acc, deg, deta, 2)
        deg += 2
    return float(acc[tuple(range(d))]) if deg == d else 0.0
