"""Finite-difference and brute-force oracles independent of the jet kernel."""

import itertools
import math

import numpy as np

from nearsasaki.geometry import permutation_sign
from nearsasaki.jets import Jet


def metric_at(chart, p) -> np.ndarray:
    return chart.metric(Jet.variables(np.asarray(p, float), 1)).val


def fd_christoffel(chart, p, step: float = 1e-5) -> np.ndarray:
    """gamma[k, i, j] from central differences of metric values."""
    p = np.asarray(p, float)
    d = len(p)
    dg = np.zeros((d, d, d))  # dg[m, a, b] = d_m g_ab
    for m in range(d):
        e = np.zeros(d)
        e[m] = step
        dg[m] = (metric_at(chart, p + e) - metric_at(chart, p - e)) / (2 * step)
    ginv = np.linalg.inv(metric_at(chart, p))
    # low[l, i, j] = 1/2 (d_i g_lj + d_j g_li - d_l g_ij)
    low = 0.5 * (np.einsum("ilj->lij", dg) + np.einsum("jli->lij", dg) - np.einsum("lij->lij", dg))
    return np.einsum("kl,lij->kij", ginv, low)


def fd_riemann(gamma_at, p, step: float = 1e-5) -> np.ndarray:
    """riem[l, i, j, k] from central differences of a Christoffel evaluator."""
    p = np.asarray(p, float)
    d = len(p)
    G = gamma_at(p)
    dG = np.zeros((d,) * 4)  # dG[m, k, i, j] = d_m gamma^k_ij
    for m in range(d):
        e = np.zeros(d)
        e[m] = step
        dG[m] = (gamma_at(p + e) - gamma_at(p - e)) / (2 * step)
    # R^l_{kij}... with riem[l,i,j,k] = d_i G^l_jk - d_j G^l_ik + G^l_im G^m_jk - G^l_jm G^m_ik
    return (np.einsum("iljk->lijk", dG) - np.einsum("jlik->lijk", dG)
            + np.einsum("lim,mjk->lijk", G, G) - np.einsum("ljm,mik->lijk", G, G))


def fd_gradient(f, p, step: float = 1e-5) -> np.ndarray:
    p = np.asarray(p, float)
    cols = []
    for m in range(len(p)):
        e = np.zeros(len(p))
        e[m] = step
        cols.append((np.asarray(f(p + e)) - np.asarray(f(p - e))) / (2 * step))
    return np.stack(cols, axis=-1)


def brute_wedge(a: np.ndarray, k: int, b: np.ndarray, m: int) -> np.ndarray:
    """Alt(a (x) b) by summing over all permutations."""
    r = k + m
    d = a.shape[0] if k else b.shape[0]
    prod = np.multiply.outer(a, b)
    out = np.zeros((d,) * r)
    letters = "abcdefgh"[:r]
    for perm in itertools.permutations(range(r)):
        src = "".join(letters[p] for p in perm)
        out += permutation_sign(perm) * np.einsum(f"{src}->{letters}", prod)
    return out / math.factorial(r)


def relative_close(a, b, rtol: float) -> bool:
    a, b = np.asarray(a), np.asarray(b)
    return float(np.abs(a - b).max()) <= rtol * (1.0 + float(np.abs(b).max()))
