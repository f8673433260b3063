"""Spectrum of h^2, its eigendistributions and totally geodesic residuals."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from . import jets
from .structure import PointContext, WeakStructure

CLUSTER_TOL = 1e-6
CROSSING_GAP = 1e-4


class SpectralError(RuntimeError):
    pass


@dataclass
class Cluster:
    value: float
    multiplicity: int
    projector: np.ndarray
    members: np.ndarray  # indices into the sorted eigenvalue list


@dataclass
class SpectrumResult:
    """Eigen-data of the g-self-adjoint operator h^2 at one point.

    ``clusters`` is sorted by eigenvalue, so the zero cluster comes last and
    ``D_1`` (smallest nonzero lambda) comes right before it.
    """

    eigenvalues: np.ndarray
    clusters: list[Cluster]
    P_xi: np.ndarray
    P0: np.ndarray
    P: list[np.ndarray] = field(default_factory=list)  # P[i-1] projects on D_i
    lambdas: np.ndarray = field(default_factory=lambda: np.zeros(0))
    eigvecs: np.ndarray | None = None

    @property
    def zero_multiplicity(self) -> int:
        z = [c for c in self.clusters if abs(c.value) <= CLUSTER_TOL]
        return z[0].multiplicity if z else 0

    def shape(self) -> list[tuple[float, int]]:
        return [(c.value, c.multiplicity) for c in self.clusters]


def _cluster(vals: np.ndarray, tol: float = CLUSTER_TOL) -> list[np.ndarray]:
    groups = [[0]]
    for i in range(1, len(vals)):
        if abs(vals[i] - vals[groups[-1][-1]]) <= tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    return [np.array(g) for g in groups]


def h2_spectrum(ctx: PointContext) -> SpectrumResult:
    h2 = ctx.h @ ctx.h
    lowered = ctx.g @ h2
    lowered = 0.5 * (lowered + lowered.T)
    try:
        vals, vecs = scipy.linalg.eigh(lowered, ctx.g)
    except scipy.linalg.LinAlgError as exc:
        raise SpectralError(f"eigen-solver failed: {exc}") from exc
    clusters = []
    W = vecs.T @ ctx.g  # rows: dual basis
    for idx in _cluster(vals):
        P = vecs[:, idx] @ W[idx, :]
        clusters.append(Cluster(float(vals[idx].mean()), len(idx), P, idx))
    P_xi = np.outer(ctx.xi, ctx.eta)
    zero = [c for c in clusters if abs(c.value) <= CLUSTER_TOL]
    P0 = (zero[0].projector - P_xi) if zero else -P_xi
    nonzero = sorted((c for c in clusters if abs(c.value) > CLUSTER_TOL), key=lambda c: -c.value)
    lambdas = np.array([np.sqrt(max(-c.value, 0.0)) for c in nonzero])
    return SpectrumResult(vals, clusters, P_xi, P0, [c.projector for c in nonzero], lambdas, vecs)


def projector_derivative(ctx: PointContext, spec: SpectrumResult, which: list[int]) -> np.ndarray:
    """Partial derivatives ``dP[m, a, b]`` of the spectral projector onto the
    union of clusters ``which``, by first-order perturbation theory.

    Uses ``dP = sum_{i in C, j not in C} (v_i w_i dA v_j w_j + v_j w_j dA v_i w_i) / (l_i - l_j)``
    with ``A = h^2`` (a (1,1) tensor), right eigenvectors ``v`` and dual rows ``w``.
    """
    h2 = jets.dot(ctx.h_jet, ctx.h_jet)
    dA = np.moveaxis(h2.grad, -1, 0)  # [m, a, b]
    V = spec.eigvecs
    W = V.T @ ctx.g
    vals = spec.eigenvalues
    inside = np.concatenate([spec.clusters[k].members for k in which]) if which else np.array([], int)
    outside = np.setdiff1d(np.arange(len(vals)), inside)
    for i in inside:
        for j in outside:
            if abs(vals[i] - vals[j]) < CROSSING_GAP:
                raise SpectralError(
                    f"eigenvalue crossing: {vals[i]:.3e} vs {vals[j]:.3e} closer than {CROSSING_GAP:g}")
    dP = np.zeros((ctx.d, ctx.d, ctx.d))
    for i in inside:
        for j in outside:
            # coupling[m] = w_i dA_m v_j and w_j dA_m v_i
            cij = np.einsum("a,mab,b->m", W[i], dA, V[:, j])
            cji = np.einsum("a,mab,b->m", W[j], dA, V[:, i])
            denom = vals[i] - vals[j]
            dP += (np.einsum("m,a,b->mab", cij, V[:, i], W[j])
                   + np.einsum("m,a,b->mab", cji, V[:, j], W[i])) / denom
    return dP


def covariant_projector_derivative(ctx: PointContext, P: np.ndarray, dP: np.ndarray) -> np.ndarray:
    G = ctx.gam.val
    return dP + np.einsum("amc,cb->mab", G, P) - np.einsum("cmb,ac->mab", G, P)


def distribution_projector(ctx: PointContext, spec: SpectrumResult, selector: str) -> tuple[np.ndarray, list[int]]:
    """Projector onto ``[xi]+D0``, ``[xi]+D<i>`` or ``[xi]+Dall`` and the cluster indices it spans."""
    zero_idx = [k for k, c in enumerate(spec.clusters) if abs(c.value) <= CLUSTER_TOL]
    nonzero = sorted((k for k, c in enumerate(spec.clusters) if abs(c.value) > CLUSTER_TOL),
                     key=lambda k: -spec.clusters[k].value)
    if selector == "xi+D0":
        if not zero_idx:
            raise SpectralError("h^2 has no zero eigenvalue")
        return spec.clusters[zero_idx[0]].projector, zero_idx
    if selector == "xi+Dall":
        P = spec.P_xi + sum((spec.clusters[k].projector for k in nonzero), np.zeros((ctx.d, ctx.d)))
        return P, None
    if selector.startswith("xi+D"):
        i = int(selector[4:])
        if not 1 <= i <= len(nonzero):
            raise SpectralError(f"{selector}: h^2 has {len(nonzero)} nonzero eigenvalues")
        return spec.P_xi + spec.clusters[nonzero[i - 1]].projector, None
    raise ValueError(f"unknown distribution selector {selector!r}")


def _projector_jet_derivative(ctx, spec, selector) -> tuple[np.ndarray, np.ndarray]:
    P, zero_idx = distribution_projector(ctx, spec, selector)
    # the xi line lies inside the zero cluster: its projector xi (x) eta is
    # differentiated directly from the structure jets
    dPxi = np.moveaxis(jets.outer(ctx.jets.xi, ctx.jets.eta).grad, -1, 0)
    nonzero = sorted((k for k, c in enumerate(spec.clusters) if abs(c.value) > CLUSTER_TOL),
                     key=lambda k: -spec.clusters[k].value)
    if selector == "xi+D0":
        dP = projector_derivative(ctx, spec, zero_idx)
    elif selector == "xi+Dall":
        dP = dPxi + projector_derivative(ctx, spec, nonzero)
    else:
        i = int(selector[4:])
        dP = dPxi + projector_derivative(ctx, spec, [nonzero[i - 1]])
    return P, dP


def totally_geodesic_residual(ctx: PointContext, selector: str, rng: np.random.Generator,
                              samples: int = 8) -> dict:
    """Max normal components of ``nabla_X Y`` and ``[X, Y]`` for projected coordinate fields.

    ``X = P X0``, ``Y = P Y0`` with constant coordinate vectors ``X0``,
    ``Y0``; then ``(I - P) nabla_X Y = (I - P)(nabla_X P) Y0``.
    """
    spec = h2_spectrum(ctx)
    P, dP = _projector_jet_derivative(ctx, spec, selector)
    nP = covariant_projector_derivative(ctx, P, dP)
    I = np.eye(ctx.d)
    X0 = rng.normal(size=(samples, ctx.d))
    Y0 = rng.normal(size=(samples, ctx.d))
    X0 /= ctx.norm(X0)[:, None]
    Y0 /= ctx.norm(Y0)[:, None]
    X = X0 @ P.T
    Y = Y0 @ P.T
    nXY = np.einsum("mab,km,kb->ka", nP, X, Y0)
    nYX = np.einsum("mab,km,kb->ka", nP, Y, X0)
    geo = ctx.norm(nXY @ (I - P).T)
    bracket = ctx.norm((nXY - nYX) @ (I - P).T)
    return {"selector": selector, "geodesic": float(geo.max()), "integrability": float(bracket.max())}


def spectrum_constancy(S: WeakStructure, points) -> dict:
    """Largest deviation of the sorted h^2 eigenvalues across points."""
    all_vals = []
    shapes = []
    for p in points:
        spec = h2_spectrum(PointContext(S, p))
        all_vals.append(spec.eigenvalues)
        shapes.append(tuple(c.multiplicity for c in spec.clusters))
    all_vals = np.array(all_vals)
    dev = float((all_vals.max(axis=0) - all_vals.min(axis=0)).max()) if len(all_vals) else 0.0
    return {"deviation": dev, "multiplicities_constant": len(set(shapes)) <= 1,
            "multiplicities": list(shapes[0]) if shapes else []}


def invariant_residuals(ctx: PointContext, spec: SpectrumResult | None = None) -> dict:
    """Projector algebra and phi-/h-invariance of each eigendistribution."""
    spec = spec or h2_spectrum(ctx)
    I = np.eye(ctx.d)
    parts = [spec.P_xi, spec.P0] + list(spec.P)
    total = sum(parts)
    out = {
        "completeness": float(np.abs(total - I).max()),
        "idempotent": max(float(np.abs(P @ P - P).max()) for P in parts),
        "g_orthogonal": max(float(np.abs(ctx.g @ A @ B).max()) for i, A in enumerate(parts)
                            for j, B in enumerate(parts) if i != j),
        "nonpositive": float(max(spec.eigenvalues.max(), 0.0)),
        "zero_multiplicity_odd": spec.zero_multiplicity % 2 == 1,
    }
    inv = 0.0
    for P in [spec.P0] + list(spec.P):
        for A in (ctx.phi, ctx.h):
            inv = max(inv, float(np.abs((I - P) @ A @ P).max()))
    out["phi_h_invariance"] = inv
    out["Qt_on_D0"] = float(np.abs(ctx.Qt @ spec.P0).max())
    out["h_on_D0"] = float(np.abs(ctx.h @ spec.P0).max())
    return out
