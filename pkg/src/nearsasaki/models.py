"""Concrete charts and structures: the corpus every check runs against.

Registry names::

    sas-r5, sas-r7     Sasakian R^{2n+1} (standard contact model)
    sas-s5, sas-s7     unit sphere S^{2n+1} in C^{n+1}, stereographic chart
    nsas-s5            nearly Sasakian S^5 inside the nearly Kaehler S^6
    weak-r5-a<val>     phi -> a*phi, Q = a^2 id + (1 - a^2) eta (x) xi on sas-r5

The nearly Sasakian S^5 is the small sphere ``{p in S^6 : p_7 = 1/sqrt 2}``
(radius 1/sqrt 2, totally umbilical with unit principal curvature).  With
``J_p X = p x X`` and unit normal ``N`` inside S^6 the induced structure is
``xi = -J N``, ``eta(X) = g(J X, N)``, ``phi X = J X - eta(X) N``.
The equatorial S^5 would instead be nearly cosymplectic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from . import jets
from .geometry import ChartManifold
from .jets import Jet
from .structure import StructureJets, WeakStructure

# -- octonions / G2 cross product on R^7 ---------------------------------------

# Cayley triples e_i e_{i+1} = e_{i+3}, indices mod 7 (zero-based here).
FANO_TRIPLES = tuple((i, (i + 1) % 7, (i + 3) % 7) for i in range(7))


def cross_constants() -> np.ndarray:
    """``f[a, b, c]`` with ``(x cross y)_c = f[a, b, c] x_a y_b``."""
    f = np.zeros((7, 7, 7))
    for a, b, c in FANO_TRIPLES:
        for i, j, k in ((a, b, c), (b, c, a), (c, a, b)):
            f[i, j, k] = 1.0
            f[j, i, k] = -1.0
    return f


CROSS = cross_constants()


def cross7(x, y) -> np.ndarray:
    return np.einsum("abc,...a,...b->...c", CROSS, x, y)


def octonion_multiply(x, y) -> np.ndarray:
    """Product of octonions stored as (real, e_1..e_7)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    a, u = x[0], x[1:]
    b, v = y[0], y[1:]
    return np.concatenate([[a * b - u @ v], a * v + b * u + cross7(u, v)])


# -- chart helpers -------------------------------------------------------------

def stereographic(u: Jet, radius: float, ambient: int, pole_axis: int,
                  center: np.ndarray | None = None) -> tuple[Jet, Jet]:
    """Inverse stereographic projection from the pole ``+e_pole`` and its Jacobian.

    ``u`` has ``m = ambient - 1`` components (or fewer when the sphere sits in
    a hyperplane: then only ``m + 1`` ambient axes are used, the remaining
    ones come from ``center``).  Returns ``(P, Jac)`` jets of shapes
    ``(ambient,)`` and ``(ambient, m)``.
    """
    m = u.shape[0]
    s = jets.einsum("i,i->", u, u)
    w = (s + 1.0).reciprocal()
    w2 = w * w
    axes = [a for a in range(ambient) if a != pole_axis][:m]
    comps: list = [0.0] * ambient
    jac_rows: list = [np.zeros(m)] * ambient
    eye = np.eye(m)
    for k, a in enumerate(axes):
        comps[a] = u[k] * w * (2.0 * radius)
        # d_j (2 u_k / (1+s)) = 2 delta_kj/(1+s) - 4 u_k u_j/(1+s)^2
        jac_rows[a] = (w * eye[k]) * (2.0 * radius) - (u * (u[k] * w2)) * (4.0 * radius)
    comps[pole_axis] = (s - 1.0) * w * radius
    jac_rows[pole_axis] = u * w2 * (4.0 * radius)
    if center is not None:
        comps = [c + float(center[i]) for i, c in enumerate(comps)]
    d = u.dim
    P = Jet.stack([c if isinstance(c, Jet) else Jet.constant(c, d, u.order) for c in comps])
    Jac = Jet.stack([r if isinstance(r, Jet) else Jet.constant(r, d, u.order) for r in jac_rows])
    return P, Jac


def induced_structure(Jac: Jet, phi_amb: Jet, xi_amb: Jet) -> StructureJets:
    """Pull an ambient (phi, xi) on a hypersurface back to chart components.

    Tangent ambient vectors ``V`` map to ``g^{-1} Jac^T V``; the metric is the
    pullback ``Jac^T Jac`` and ``eta`` is the metric dual of ``xi``.
    """
    g = jets.einsum("ai,aj->ij", Jac, Jac)
    ginv = jets.inv(g)
    lift = jets.einsum("ij,aj->ia", ginv, Jac)  # g^{-1} Jac^T
    phi = jets.einsum("ia,ab,bj->ij", lift, phi_amb, Jac)
    xi = jets.einsum("ia,a->i", lift, xi_amb)
    eta = jets.einsum("a,aj->j", xi_amb, Jac)
    d = Jac.shape[1]
    return StructureJets(g, phi, Jet.constant(np.eye(d), Jac.dim, Jac.order), xi, eta)


def _cross_matrix(p: Jet) -> Jet:
    """Matrix of X -> p x X on R^7, as a jet in the chart coordinates."""
    return jets.einsum("abc,a->cb", CROSS, p)


# -- model descriptions ----------------------------------------------------------

@dataclass(frozen=True)
class Profile:
    h_zero: bool
    sasakian: bool
    weak_contact: bool
    nearly_sasakian: bool

    def as_dict(self) -> dict:
        return {"h_zero": self.h_zero, "sasakian": self.sasakian,
                "weak_contact": self.weak_contact, "nearly_sasakian": self.nearly_sasakian}


@dataclass(frozen=True)
class ModelEntry:
    name: str
    structure: WeakStructure
    profile: Profile
    description: str = ""
    params: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.structure.dim

    @property
    def hypothesis(self) -> str:
        return self.structure.hypothesis

    @property
    def chart(self) -> ChartManifold:
        return self.structure.base


def _box_domain(bound: float):
    return lambda p: bool(np.all(np.abs(p) <= bound))


def _ball_domain(radius: float):
    return lambda p: bool(p @ p <= radius * radius)


def sasakian_r2n1_fields(n: int, metric_scale: float = 1.0) -> Callable[[Jet], StructureJets]:
    """Standard Sasakian structure on R^{2n+1}, coordinates (x_1..x_n, y_1..y_n, z).

    eta = (dz - sum y_i dx_i)/2, xi = 2 d_z, g = eta (x) eta + (dx^2 + dy^2)/4,
    phi d_x = -d_y, phi d_y = d_x + y d_z.  ``metric_scale`` multiplies g
    (a deliberate fault when != 1).
    """
    d = 2 * n + 1

    def fields(x: Jet) -> StructureJets:
        order = x.order
        y = x[n:2 * n]
        one = Jet.constant(1.0, d, order)
        zero = Jet.constant(0.0, d, order)
        eta = Jet.stack([-0.5 * y[i] for i in range(n)] + [zero] * n + [0.5 * one])
        g = jets.outer(eta, eta) + np.diag([0.25] * (2 * n) + [0.0])
        phi_rows = []
        for a in range(d):
            row = []
            for b in range(d):
                if a < n and b == n + a:          # phi d_y_a has d_x_a component
                    row.append(one)
                elif n <= a < 2 * n and b == a - n:   # phi d_x_i = -d_y_i
                    row.append(-one)
                elif a == 2 * n and n <= b < 2 * n:   # phi d_y_i has y_i d_z
                    row.append(y[b - n])
                else:
                    row.append(zero)
            phi_rows.append(Jet.stack(row))
        phi = Jet.stack(phi_rows)
        xi = Jet.constant(np.eye(d)[2 * n] * 2.0, d, order)
        Q = Jet.constant(np.eye(d), d, order)
        return StructureJets(g * metric_scale, phi, Q, xi, eta)

    return fields


def build_sasakian_r2n1(n: int, metric_scale: float = 1.0) -> ModelEntry:
    if n < 2:
        raise ValueError("n must be >= 2")
    d = 2 * n + 1
    fields = sasakian_r2n1_fields(n, metric_scale)
    name = f"sas-r{d}" if metric_scale == 1.0 else f"sas-r{d}-scaled{metric_scale:g}"
    chart = ChartManifold(name, d, lambda x: fields(x).g, _box_domain(1.0), (-1.0, 1.0))
    S = WeakStructure(name, chart, fields, "H3" if metric_scale == 1.0 else "H0")
    good = metric_scale == 1.0
    return ModelEntry(name, S, Profile(True, good, good, good),
                      f"Sasakian R^{d}", {"n": n, "metric_scale": metric_scale})


def complex_structure(m: int) -> np.ndarray:
    J = np.zeros((m, m))
    for k in range(0, m, 2):
        J[k + 1, k] = 1.0
        J[k, k + 1] = -1.0
    return J


def sasakian_sphere_fields(n: int) -> Callable[[Jet], StructureJets]:
    """Unit S^{2n+1} in C^{n+1}: xi = -J p, phi X = J X - eta(X) p."""
    m = 2 * n + 2
    J = complex_structure(m)

    def fields(u: Jet) -> StructureJets:
        P, Jac = stereographic(u, 1.0, m, m - 1)
        xi_amb = jets.einsum("ab,b->a", -J, P)
        eta_amb = jets.einsum("ab,b->a", J.T, P)  # eta(X) = <J X, p>
        phi_amb = Jet.constant(J, u.dim, u.order) - jets.outer(P, eta_amb)
        return induced_structure(Jac, phi_amb, xi_amb)

    return fields


def build_sasakian_sphere(n: int) -> ModelEntry:
    if n not in (2, 3):
        raise ValueError("sphere models are built for n in {2, 3}")
    d = 2 * n + 1
    fields = sasakian_sphere_fields(n)
    name = f"sas-s{d}"
    chart = ChartManifold(name, d, lambda x: fields(x).g, _ball_domain(1.5), (-1.5, 1.5))
    S = WeakStructure(name, chart, fields, "H3")
    return ModelEntry(name, S, Profile(True, True, True, True), f"unit S^{d} in C^{n + 1}", {"n": n})


NSAS_HEIGHT = 1.0 / np.sqrt(2.0)


def nearly_sasakian_s5_fields() -> Callable[[Jet], StructureJets]:
    e7 = np.eye(7)[6]
    r = NSAS_HEIGHT

    def fields(u: Jet) -> StructureJets:
        P, Jac = stereographic(u, r, 7, 5, center=e7 * NSAS_HEIGHT)
        Jp = _cross_matrix(P)                       # X -> p x X
        N = P - e7 * np.sqrt(2.0)                   # unit normal of S^5 inside S^6
        xi_amb = -jets.einsum("ab,b->a", Jp, N)      # xi = -J N
        eta_amb = jets.einsum("ba,b->a", Jp, N)      # eta(X) = <J X, N>
        phi_amb = Jp - jets.outer(N, eta_amb)
        return induced_structure(Jac, phi_amb, xi_amb)

    return fields


def build_nearly_sasakian_s5() -> ModelEntry:
    fields = nearly_sasakian_s5_fields()
    chart = ChartManifold("nsas-s5", 5, lambda x: fields(x).g, _ball_domain(1.5), (-1.5, 1.5))
    S = WeakStructure("nsas-s5", chart, fields, "H3")
    return ModelEntry("nsas-s5", S, Profile(False, False, False, True),
                      "nearly Sasakian S^5 in the nearly Kaehler S^6")


def weak_deformation_fields(base: Callable[[Jet], StructureJets], a: float):
    def fields(x: Jet) -> StructureJets:
        f = base(x)
        d = x.dim
        Q = np.eye(d) * (a * a) + jets.outer(f.xi, f.eta) * (1.0 - a * a)
        return StructureJets(f.g, f.phi * a, Q, f.xi, f.eta)

    return fields


def build_weak_deformation(base: ModelEntry, a: float) -> ModelEntry:
    if not a > 0:
        raise ValueError("deformation parameter must be positive")
    if a == 1.0:
        return base
    fields = weak_deformation_fields(base.structure.fields, a)
    root = base.name.split("-", 1)[1]
    name = f"weak-{root}-a{a:g}"
    chart = base.chart
    S = WeakStructure(name, chart, fields, "H0")
    return ModelEntry(name, S, Profile(False, False, False, False),
                      f"phi -> {a:g} phi deformation of {base.name}", {"a": a, "base": base.name})


# -- registry ------------------------------------------------------------------

DEFAULT_MODELS = ("nsas-s5", "sas-r5", "sas-r7", "sas-s5", "sas-s7", "weak-r5-a1.5", "weak-r5-a2")

_WEAK = re.compile(r"^weak-(r5|r7|s5|s7)-a([0-9]*\.?[0-9]+)$")


@lru_cache(maxsize=None)
def get_model(name: str) -> ModelEntry:
    if name == "sas-r5":
        return build_sasakian_r2n1(2)
    if name == "sas-r7":
        return build_sasakian_r2n1(3)
    if name == "sas-s5":
        return build_sasakian_sphere(2)
    if name == "sas-s7":
        return build_sasakian_sphere(3)
    if name == "nsas-s5":
        return build_nearly_sasakian_s5()
    m = _WEAK.match(name)
    if m:
        a = float(m.group(2))
        if a == 1.0:
            raise KeyError(f"{name}: a = 1 is the undeformed base model")
        return build_weak_deformation(get_model("sas-" + m.group(1)), a)
    raise KeyError(f"unknown model {name!r}")


def model_names() -> list[str]:
    return sorted(DEFAULT_MODELS)


def resolve_models(spec: str | list[str]) -> list[str]:
    if isinstance(spec, str):
        spec = [s for s in spec.split(",") if s]
    if not spec or spec == ["all"]:
        return model_names()
    for name in spec:
        get_model(name)
    return list(spec)
