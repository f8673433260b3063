"""Identity catalog, suite runner and theorem gates."""

from __future__ import annotations

import math
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Callable

import numpy as np

from . import catalog as C
from .geometry import GeometryError, contact_volume, wedge
from .models import ModelEntry, get_model, resolve_models
from .structure import PointContext, WeakStructure, rel_residual, sample_vectors

HYPOTHESES = ("HANY", "H0", "H1", "H2a", "H2b", "H3")
IMPLIES = {
    "HANY": {"HANY"},
    "H0": {"HANY", "H0"},
    "H1": {"HANY", "H0", "H1"},
    "H2a": {"HANY", "H0", "H1", "H2a"},
    "H2b": {"HANY", "H0", "H1", "H2b"},
    "H3": {"HANY", "H0", "H1", "H2a", "H2b", "H3"},
}
HYPOTHESIS_TOL = 1e-8
RESAMPLE_ATTEMPTS = 3


class IdentityError(ValueError):
    pass


def implies(declared: str, required: str) -> bool:
    return required in IMPLIES[declared]


@dataclass(frozen=True)
class IdentityRecord:
    """One catalog equation with its hypothesis class and evaluator.

    ``evaluator(terms, *vectors)`` returns ``(lhs, rhs)``; ``variants`` are
    alternative readings evaluated alongside and reported, never used for
    the pass flag.
    """

    id: str
    hypothesis: str
    arity: int
    kind: str
    evaluator: Callable
    anchor: str
    group: str
    needs_fields: bool = False
    condition: str | None = None
    erratum: str | None = None
    variants: tuple[tuple[str, Callable], ...] = ()
    proof_chain: bool = False
    aliases: tuple[str, ...] = ()

    def describe(self) -> dict:
        return {
            "id": self.id, "hypothesis": self.hypothesis, "arity": self.arity, "kind": self.kind,
            "group": self.group, "anchor": self.anchor, "needs_fields": self.needs_fields,
            "condition": self.condition, "erratum": self.erratum, "proof_chain": self.proof_chain,
            "variants": [v[0] for v in self.variants], "aliases": list(self.aliases),
        }


def _r(id, hyp, arity, kind, fn, anchor, group, **kw) -> IdentityRecord:
    return IdentityRecord(id, hyp, arity, kind, fn, anchor, group, **kw)


def _axiom_records() -> list[IdentityRecord]:
    from .structure import AXIOMS
    out = []
    for name, (arity, kind, _, quote) in AXIOMS.items():
        aliases = ("E-nS-2.2",) if name == "AX-1" else ()
        out.append(_r(name, "H0", arity, kind, C.axiom_evaluator(name), quote, "axioms", aliases=aliases))
    return out


def _build_catalog() -> tuple[IdentityRecord, ...]:
    recs = _axiom_records()
    pc = dict(proof_chain=True)
    recs += [
        _r("RIC-1", "HANY", 4, "scalar", C.ric_1,
           "The Ricci identity (commutation formula)", "basic", aliases=("E-nS-05",)),
        _r("NS-0", "H1", 2, "vector", C.ns_0,
           "is called weak nearly Sasakian", "basic", aliases=("E-nS-00b",)),
        _r("NS-SKEW", "H1", 3, "scalar", C.ns_skew,
           "g((∇_Y φ)V, Z) = −g((∇_Y φ)Z, V)", "basic", aliases=("E-nS-05e",)),
        _r("NS-SKEW2", "H1", 4, "scalar", C.ns_skew2,
           "∇²_{X,Y}φ of a weak nearly Sasakian manifold is skew-symmetric", "basic"),
        _r("GEO-1", "H1", 0, "vector", C.geo_1, "ξ is a geodesic field", "basic"),
        _r("KILL-1", "H1", 2, "scalar", C.kill_1, "ξ is a Killing vector field", "basic"),
        _r("H-XI", "H1", 0, "vector", C.h_xi, "we also get hξ=0", "basic"),
        _r("H-ETA", "H1", 1, "scalar", C.h_eta, "We get η∘h = 0", "basic"),
        _r("H-SKEW", "H1", 2, "scalar", C.h_skew, "the tensor h is skew-symmetric", "basic"),
        _r("L1-a", "H1", 1, "vector", C.l1_a, "(∇_X h)ξ = −h(h−φ)X", "lemma1", aliases=("E-nS-01a",)),
        _r("L1-b", "H1", 1, "vector", C.l1_b, "hφ + φh = −2Q̃", "lemma1", aliases=("E-nS-01b",)),
        _r("L1-c", "H1", 1, "vector", C.l1_c, "(∇_X φ)ξ = −φ(h−φ)X", "lemma1", aliases=("E-nS-01c",)),
        _r("L1-d", "H1", 1, "vector", C.l1_d, "h commutes with Q", "lemma1", aliases=("E-nS-01d",)),
        _r("L1-e", "H1", 1, "vector", C.l1_e, "Moreover, h²φ = φh²", "lemma1"),
        _r("L1-f", "H1", 1, "vector", C.l1_f, "hφ² = φ²h", "lemma1"),
        _r("L1-g", "H1", 1, "vector", C.l1_g, "h²φ² = φ²h²", "lemma1"),
        _r("QPAR-1", "H2a", 2, "vector", C.qpar_1,
           "(∇_X Q̃)Y = 0, X ∈ 𝔛_M, Y ∈ ker η", "conditions", aliases=("E-nS-10",)),
        _r("QPAR-2", "H2a", 1, "vector", C.qpar_2, "∇_ξ Q̃ = 0", "conditions"),
        _r("CI-1", "H2b", 3, "scalar", C.ci_1,
           "R_{Q̃X,Y}Z ∈ ker η, X,Y,Z ∈ ker η", "conditions", aliases=("E-nS-04c",)),
        _r("CI-2", "H2b", 3, "scalar", C.ci_2,
           "R_{X,Y}Z ∈ ker η, X,Y,Z ∈ ker η", "conditions", aliases=("E-nS-04cc",)),
        _r("CI-3", "H2b", 3, "scalar", C.ci_3, "From (5) and the Bianchi identity", "conditions"),
        _r("L2-a", "H2b", 2, "vector", C.l2_a,
           "R_{X,ξ}Y = (∇_X(h−φ))Y = g((h−φ)²X, Y)ξ − η(Y)(h−φ)²X", "lemma2", aliases=("E-3.24",)),
        _r("L2-b", "H2b", 3, "scalar", C.l2_b,
           "g(R_{ξ,X}Y, Z) = η(Y)g((h−φ)²X, Z) − η(Z)g((h−φ)²X, Y)", "lemma2", aliases=("E-3.23b",)),
        _r("L2-c", "H2b", 1, "vector", C.l2_c,
           "In particular, ∇_ξ h = ∇_ξ φ = φh + Q̃", "lemma2"),
        _r("L3-a", "H2a", 3, "scalar", C.l3_a,
           "g((∇_X φ)φY, Z) = g((∇_X φ)Y, φZ) + η(Y)g((h−φ)X, Z) + η(Z)g((h−φ)X, QY)",
           "lemma3", aliases=("E-3.29",)),
        _r("L3-b", "H2a", 3, "scalar", C.l3_b,
           "For covariant derivatives of the tensor φ: g((∇_{φX} φ)Y, Z)", "lemma3", aliases=("E-3.30",)),
        _r("L3-c", "H2a", 3, "scalar", C.l3_c,
           "For covariant derivatives of the tensor φ: g((∇_{φX} φ)φY, Z)", "lemma3", aliases=("E-3.31",)),
        _r("L4-a", "H1", 4, "scalar", C.l4_a,
           "The curvature tensor of a weak nearly Sasakian manifold satisfies", "lemma4", aliases=("E-3.4",)),
        _r("L4-b", "H2b", 4, "scalar", C.l4_b,
           "g(R_{φX,φY}Z, V) = g(R_{X,Y}φZ, φV) − (1/2)δ(X,Y,Z,V) − ...", "lemma4", aliases=("E-3.6",)),
        _r("L4-c", "H2b", 4, "scalar", C.l4_c,
           "g(R_{φX,φY}φZ, φV) = g(R_{QX,QY}Z, V) − ...", "lemma4", aliases=("E-3.5",)),
        _r("DLT-1", "H1", 4, "scalar", C.dlt_1,
           "δ(Y,X,Z,V) = δ(X,Y,V,Z) = δ(Z,V,X,Y) = −δ(X,Y,Z,V)", "delta"),
        _r("DLT-2", "H2b", 4, "scalar", C.dlt_2, "has the following symmetries; δ(X,Y,Z,ξ)", "delta"),
        _r("L5-a", "H3", 3, "scalar", C.l5_a,
           "g((∇_X φ)Y, hZ) = −η(X)g((φh² + Q̃h)Z, Y) + η(Y)g((φh² − h + Q̃h)Z, X)",
           "lemma5", aliases=("E-3.50c",)),
        _r("P2-a", "H3", 2, "vector", C.p2_a,
           "(∇_X φ)Y = η(X)(φhY + Q̃Y) − η(Y)(φhX + QX) + g(φhX + QX, Y)ξ", "prop2", aliases=("EC-14",)),
        _r("P2-b", "H3", 2, "vector", C.p2_b,
           "(∇_X h)Y = η(X)(φhY + Q̃Y) − η(Y)h(h − φ)X + g(h(h − φ)X, Y)ξ", "prop2", aliases=("EC-15",)),
        _r("P2-c", "H3", 2, "vector", C.p2_c,
           "(∇_X φh)Y = η(X)(φh²Y − hY + Q̃φY) − η(Y)g(φh²X − QhX + 2Q̃φX) + g(φh²X − hX + Q̃hX, Y)ξ",
           "prop2", aliases=("EC-16",),
           erratum="the middle coefficient g(φh²X − QhX + 2Q̃φX) has one argument; read as the vector"),
        _r("P2-d", "H3", 3, "scalar", C.p2_d,
           "g((∇_X φ)Y, V) = −η(Y)g(X, V), X,Y ∈ 𝔛_M, V ∈ D_0", "prop2", aliases=("EC-14b",)),
        _r("P2-e", "H1", 2, "scalar", C.p2_e,
           "g((∇_X φ)Y, ξ) = g(QX + φhX, Y) − η(X)η(Y)", "prop2"),
        _r("P2-f", "H3", 3, "scalar", C.p2_f,
           "g((∇_X φ)Y, hZ) = η(X)g(φhY + Q̃Y, hZ) − η(Y)g(φhX + X + Q̃X, hZ)", "prop2"),
        _r("T01-a", "H0", 2, "scalar", C.t01_a,
           "0 = Xg(φY, ξ) = g((∇_X φ)Y, ξ) + g(φY, (h−φ)X)", "theorem"),
        _r("SAS-1", "H0", 2, "vector", C.sas_1,
           "(∇_X φ)Y = g(X,Y)ξ − η(Y)X", "theorem", condition="sasakian", aliases=("E-nS-Sas",)),
        _r("NORMAL-1", "H0", 2, "vector", C.normal_1,
           "the tensor [φ, φ] + dη⊗ξ vanishes identically", "theorem", condition="sasakian",
           erratum="with dη(X,Y) = ½{X(η(Y)) − Y(η(X)) − η([X,Y])} the vanishing tensor is [φ,φ] + 2dη⊗ξ"),
        _r("SOL-1", "H0", 1, "vector", C.sol_1, "hφ = φh = −Q̃", "theorem",
           condition="sasakian", aliases=("E-sol-1",)),
        _r("TF-0", "H3", 3, "scalar", C.tf_0,
           "3dΦ₀(X,Y,Z) = g((∇_X h)Z,Y) + g((∇_Y h)X, Z) + g((∇_Z h)Y, X)", "forms",
           variants=(("cyclic", C.tf_0_cyclic),)),
        _r("TF-1", "H3", 3, "scalar", C.tf_1, "dΦ₀ = η∧(Φ₁ + Ψ₀)", "forms", aliases=("E-c-03a",),
           variants=(("cyclic", C.tf_1_cyclic),)),
        _r("TF-2", "H3", 3, "scalar", C.tf_2, "dΦ₁ = η∧(Φ₂ − Φ₀ + Ψ₁)", "forms", aliases=("E-c-03b",),
           variants=(("cyclic", C.tf_2_cyclic),)),
        _r("TF-3", "H3", 3, "scalar", C.tf_3, "dΨ₀ = −η∧(Ψ₂ − Ψ₁)", "forms"),
        _r("TF-4", "H3", 4, "scalar", C.tf_4, "0 = d²Φ₀ = dη∧(Φ₁ + Ψ₀)", "forms", aliases=("E-Nic-27",)),
        # proof chain
        _r("PC-1", "H1", 3, "vector", C.pc_ef01, "Differentiating (3), we find", "proof-chain",
           aliases=("EF-nS-01",), **pc),
        _r("PC-2", "H1", 4, "scalar", C.pc_e37,
           "Applying the Ricci identity, from (33) and the skew-symmetry", "proof-chain",
           aliases=("E-3.7",), **pc),
        _r("PC-3", "H1", 4, "scalar", C.pc_e38, "By Bianchi and Ricci identities, we find",
           "proof-chain", aliases=("E-3.8",), **pc),
        _r("PC-4", "H1", 4, "scalar", C.pc_e39, "Substituting (35) into (34), it follows that",
           "proof-chain", aliases=("E-3.9",),
           erratum="printed g((X−φ)X, V) evaluated as g((h−φ)X, V)",
           variants=(("printed", C.pc_e39_printed),), **pc),
        _r("PC-5", "H1", 4, "scalar", C.pc_e310, "using (33) and the Ricci identity, we see that",
           "proof-chain", aliases=("E-3.10",), **pc),
        _r("PC-6", "H1", 4, "scalar", C.pc_e311, "Adding (37) to (36), we get", "proof-chain",
           aliases=("E-3.11",), **pc),
        _r("PC-7", "H1", 4, "scalar", C.pc_e312, "Swapping Y and V in (38), we find", "proof-chain",
           aliases=("E-3.12",), **pc),
        _r("PC-8", "H1", 4, "scalar", C.pc_e313, "Replacing X by φX in (12)", "proof-chain",
           aliases=("E-3.13",), **pc),
        _r("PC-9", "H1", 4, "scalar", C.pc_e314, "Exchanging X and Y in (40), we find", "proof-chain",
           aliases=("E-3.14",),
           erratum="printed g(φ(Y, h−φ)V) evaluated as g(φY, (h−φ)V)",
           variants=(("adjoint", C.pc_e314_alt), ("exchanged", C.pc_e314_exchanged)), **pc),
        _r("PC-10", "H1", 4, "scalar", C.pc_e315, "Subtracting (41) from (40), we obtain",
           "proof-chain", aliases=("E-3.15",), **pc),
        _r("PC-11", "H1", 4, "scalar", C.pc_e316, "replacing Z by φZ and also V by φV", "proof-chain",
           aliases=("E-3.16",), **pc),
        _r("PC-12", "H1", 4, "scalar", C.pc_e317, "replacing Z by φZ and also V by φV", "proof-chain",
           aliases=("E-3.17",), **pc),
        _r("PC-13", "H1", 4, "scalar", C.pc_e318, "Substituting the above equation into (42)",
           "proof-chain", aliases=("E-3.18",), **pc),
        _r("PC-14", "H2a", 4, "scalar", C.pc_e332, "Differentiating (14) and using", "proof-chain",
           aliases=("E-3.32",), needs_fields=True, **pc),
        _r("PC-15", "H2a", 4, "scalar", C.pc_r04a_mid, "we find ∇²-terms in (52)", "proof-chain",
           aliases=("ER-nS-04a-mid",), **pc),
        _r("PC-16", "H2b", 4, "scalar", C.pc_r04a, "we find ∇²-terms in (52)", "proof-chain",
           aliases=("ER-nS-04a",), **pc),
        _r("PC-17", "H2a", 4, "scalar", C.pc_r04aa_mid, "we find ∇²-terms in (52)", "proof-chain",
           aliases=("ER-nS-04aa-mid",), **pc),
        _r("PC-18", "H2b", 4, "scalar", C.pc_r04aa, "we find ∇²-terms in (52)", "proof-chain",
           aliases=("ER-nS-04aa",), **pc),
        _r("PC-19", "H3", 4, "scalar", C.pc_r03b, "we get from (52) the equality", "proof-chain",
           aliases=("ER-nS-03b",), needs_fields=True, **pc),
        _r("PC-20", "H3", 4, "scalar", C.pc_e334, "replacing (∇_V(h−φ))X by (9)", "proof-chain",
           aliases=("E-3.34",), needs_fields=True, **pc),
        _r("PC-21", "H3", 4, "scalar", C.pc_e335, "Replacing Z and V by φZ and φV in (56)",
           "proof-chain", aliases=("E-3.35",), **pc),
        _r("PC-22", "H3", 4, "scalar", C.pc_e336, "we rewrite terms in the lhs of (57)",
           "proof-chain", aliases=("E-3.36",), **pc),
        _r("PC-23", "H3", 4, "scalar", C.pc_e337, "we rewrite terms in the lhs of (57)",
           "proof-chain", aliases=("E-3.37",), **pc),
        _r("PC-24", "H2b", 4, "scalar", C.pc_e338, "From (10) and Lemma 1, we have", "proof-chain",
           aliases=("E-3.38",), **pc),
        _r("PC-25", "H2b", 4, "scalar", C.pc_e339, "from (12) and (13) it follows that",
           "proof-chain", aliases=("E-3.39",), **pc),
        _r("PC-26", "H2b", 4, "scalar", C.pc_e340, "from (12) and (13) it follows that",
           "proof-chain", aliases=("E-3.40",), **pc),
        _r("PC-27", "H2b", 4, "scalar", C.pc_e308bb, "From (62), using (1), we find", "proof-chain",
           aliases=("ER-nS-08bb",), **pc),
        _r("PC-28", "H2b", 4, "scalar", C.pc_e341, "Summing up the formulas", "proof-chain",
           aliases=("E-3.41",), **pc),
        _r("PC-29", "H2b", 4, "scalar", C.pc_e342, "Substituting (64) into (60), we get",
           "proof-chain", aliases=("E-3.42",), **pc),
        _r("PC-30", "H2b", 4, "scalar", C.pc_e343, "By means of (10), from (13) and (12), we have",
           "proof-chain", aliases=("E-3.43",), **pc),
        _r("PC-FIN", "H3", 3, "scalar", C.pc_fin, "Thus, (69) reads as", "proof-chain",
           aliases=("E-3.50y",), **pc),
    ]
    return tuple(recs)


@lru_cache(maxsize=None)
def catalog() -> tuple[IdentityRecord, ...]:
    return _build_catalog()


@lru_cache(maxsize=None)
def _index() -> dict[str, IdentityRecord]:
    idx = {}
    for rec in catalog():
        idx[rec.id] = rec
        for a in rec.aliases:
            idx[a] = rec
    return idx


def get_identity(name: str) -> IdentityRecord:
    try:
        return _index()[name]
    except KeyError:
        raise IdentityError(f"unknown identity {name!r}") from None


def identity_ids() -> list[str]:
    return [r.id for r in catalog()]


def resolve_identities(spec: str | list[str] | None) -> list[str]:
    if spec is None:
        return identity_ids()
    if isinstance(spec, str):
        spec = [s for s in spec.split(",") if s]
    if spec == ["all"]:
        return identity_ids()
    out = []
    for name in spec:
        rid = get_identity(name).id
        if rid not in out:
            out.append(rid)
    return out


# -- evaluation ---------------------------------------------------------------

def _norm_for(rec: IdentityRecord, ctx: PointContext):
    return ctx.norm if rec.kind == "vector" else None


def _residuals(rec, ctx, fn, vecs) -> np.ndarray:
    lhs, rhs = fn(C.Terms(ctx), *vecs)
    r = rel_residual(lhs, rhs, _norm_for(rec, ctx))
    r = np.asarray(r, dtype=float)
    k = vecs[0].shape[0] if vecs else 1
    return r.reshape(k, -1).max(axis=1) if r.ndim else np.full(k, float(r))


def _as_batch(args, d: int) -> list[np.ndarray]:
    out = []
    for a in args:
        a = np.asarray(a, dtype=float)
        if a.ndim == 1:
            a = a[None, :]
        if a.ndim != 2 or a.shape[1] != d:
            raise IdentityError(f"vector argument has shape {a.shape}, expected (K, {d})")
        out.append(a)
    return out


def evaluate_identity(rec: IdentityRecord | str, S: WeakStructure | ModelEntry | PointContext,
                      p=None, args=(), rng: np.random.Generator | None = None) -> np.ndarray:
    """Relative residual per vector tuple; NaN tuples are resampled."""
    rec = get_identity(rec) if isinstance(rec, str) else rec
    if isinstance(S, ModelEntry):
        S = S.structure
    ctx = S if isinstance(S, PointContext) else PointContext(S, p)
    if len(args) != rec.arity:
        raise IdentityError(f"{rec.id} takes {rec.arity} vector arguments, got {len(args)}")
    vecs = _as_batch(args, ctx.d)
    res = _residuals(rec, ctx, rec.evaluator, vecs)
    bad = ~np.isfinite(res)
    attempts = 0
    rng = rng or np.random.default_rng(0)
    while bad.any() and attempts < RESAMPLE_ATTEMPTS:
        fresh = [sample_vectors(rng, int(bad.sum()), ctx.d) for _ in vecs]
        for v, f in zip(vecs, fresh):
            v[bad] = f
        res[bad] = _residuals(rec, ctx, rec.evaluator, [v[bad] for v in vecs])
        bad = ~np.isfinite(res)
        attempts += 1
    if bad.any():
        raise IdentityError(f"{rec.id}: non-finite residual after resampling")
    return res


def multilinearity_defect(rec: IdentityRecord, ctx: PointContext, rng: np.random.Generator,
                          k: int = 4) -> float:
    """Largest relative deviation from linearity of either side in any slot."""
    if rec.arity == 0:
        return 0.0
    t = C.Terms(ctx)
    base = [sample_vectors(rng, k, ctx.d) for _ in range(rec.arity)]
    worst = 0.0
    a, b = 1.7, -0.6
    for slot in range(rec.arity):
        other = sample_vectors(rng, k, ctx.d)
        mixed = list(base)
        mixed[slot] = a * base[slot] + b * other
        alt = list(base)
        alt[slot] = other
        for side in (0, 1):
            f = lambda vs: np.asarray(rec.evaluator(t, *vs)[side], dtype=float)
            lhs = f(mixed)
            rhs = a * f(base) + b * f(alt)
            scale = 1.0 + np.abs(lhs).max() + np.abs(rhs).max()
            worst = max(worst, float(np.abs(lhs - rhs).max() / scale))
    return worst


# -- suite --------------------------------------------------------------------

def _crc(s: str) -> int:
    return zlib.crc32(s.encode())


def point_rng(seed: int, model: str, *extra: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, _crc(model), *extra]))


def sample_model_points(entry: ModelEntry, n: int, seed: int) -> np.ndarray:
    return entry.chart.sample_points(point_rng(seed, entry.name), n)


VERIFICATION_ROWS = {
    "H0": ("AX-1", "AX-2", "AX-3", "AX-4", "AX-5", "AX-6", "AX-7", "AX-8", "AX-9"),
    "H1": ("NS-0",),
    "H2a": ("QPAR-1",),
    "H2b": ("CI-1",),
}
CONDITION_ROWS = {"sasakian": ("SAS-1",)}


@dataclass
class RowResult:
    model: str
    identity: str
    hypothesis: str
    declared: bool
    hypothesis_ok: bool
    n: int
    max_residual: float
    mean_residual: float
    passed: bool
    status: str
    note: str
    seed: int
    tol: float
    variants: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d


@dataclass
class CheckReport:
    seed: int
    tol: float
    points: int
    tuples: int
    rows: list[RowResult] = field(default_factory=list)
    hypotheses: dict = field(default_factory=dict)

    def failures(self) -> list[RowResult]:
        bad = [r for r in self.rows if r.status in ("fail", "fail-erratum-suspect", "hypothesis-violated")]
        return sorted(bad, key=lambda r: (-r.max_residual, r.model, r.identity))

    @property
    def exit_code(self) -> int:
        return 1 if self.failures() else 0

    def row(self, model: str, identity: str) -> RowResult:
        identity = get_identity(identity).id
        for r in self.rows:
            if r.model == model and r.identity == identity:
                return r
        raise KeyError((model, identity))

    def as_dict(self) -> dict:
        return {
            "schema": 1,
            "run": {"seed": self.seed, "tol": self.tol, "points": self.points, "tuples": self.tuples},
            "hypotheses": self.hypotheses,
            "rows": [r.as_dict() for r in self.rows],
        }


def _eval_point(entry: ModelEntry, recs, p, idx: int, seed: int, tuples: int):
    """Residuals of every record (and its variants) at one point."""
    ctx = PointContext(entry.structure, p)
    out = {}
    for rec in recs:
        rng = point_rng(seed, entry.name, idx, _crc(rec.id))
        vecs = [sample_vectors(rng, tuples, ctx.d) for _ in range(rec.arity)]
        res = evaluate_identity(rec, ctx, args=vecs, rng=rng)
        var = {label: float(_residuals(rec, ctx, fn, vecs).max()) for label, fn in rec.variants}
        out[rec.id] = (res, var)
    return out


def _run_points(entry, recs, pts, seed, tuples, threads):
    jobs = list(enumerate(pts))
    if threads == 1 or len(jobs) <= 1:
        return [_eval_point(entry, recs, p, i, seed, tuples) for i, p in jobs]
    with ThreadPoolExecutor(max_workers=threads or None) as ex:
        return list(ex.map(lambda ip: _eval_point(entry, recs, ip[1], ip[0], seed, tuples), jobs))


def _q_positive(entry: ModelEntry, pts) -> bool:
    import scipy.linalg
    for p in pts:
        ctx = PointContext(entry.structure, p)
        A = ctx.g @ ctx.Q
        w = scipy.linalg.eigh(0.5 * (A + A.T), ctx.g, eigvals_only=True)
        if w.min() <= 0:
            return False
    return True


def verify_hypotheses(entry: ModelEntry, points: int = 20, seed: int = 0, tuples: int = 8,
                      tol: float = HYPOTHESIS_TOL, threads: int = 1) -> dict:
    """Which hypothesis classes and conditions hold numerically on the model."""
    pts = sample_model_points(entry, points, seed)
    names = sorted({n for rows in VERIFICATION_ROWS.values() for n in rows}
                   | {n for rows in CONDITION_ROWS.values() for n in rows})
    recs = [get_identity(n) for n in names]
    per_point = _run_points(entry, recs, pts, seed, tuples, threads)
    worst = {n: max(float(pp[n][0].max()) for pp in per_point) for n in names}
    base = {cls: all(worst[n] < tol for n in rows) for cls, rows in VERIFICATION_ROWS.items()}
    h0 = base["H0"] and _q_positive(entry, pts)
    h1 = h0 and base["H1"]
    out = {"HANY": True, "H0": h0, "H1": h1, "H2a": h1 and base["H2a"], "H2b": h1 and base["H2b"]}
    out["H3"] = out["H2a"] and out["H2b"]
    for cond, rows in CONDITION_ROWS.items():
        out[cond] = h0 and all(worst[n] < tol for n in rows)
    out["residuals"] = worst
    return out


def _applicability(entry: ModelEntry, rec: IdentityRecord, verified: dict) -> tuple[bool, bool]:
    declared = implies(entry.hypothesis, rec.hypothesis)
    ok = bool(verified[rec.hypothesis])
    if rec.condition is not None:
        declared = declared and bool(entry.profile.as_dict().get(rec.condition, False))
        ok = ok and bool(verified[rec.condition])
    return declared, ok


def run_suite(models="all", identities="all", points: int = 100, seed: int = 42, tol: float = 1e-8,
              tuples: int = 8, threads: int = 1) -> CheckReport:
    if points < 1 or tuples < 1:
        raise IdentityError("points and tuples must be at least 1")
    if not tol > 0:
        raise IdentityError("tolerance must be positive")
    model_list = resolve_models(models)
    ids = resolve_identities(identities)
    recs = [get_identity(i) for i in ids]
    report = CheckReport(seed, tol, points, tuples)
    if not recs:
        return report
    for name in model_list:
        entry = get_model(name)
        verified = verify_hypotheses(entry, min(points, 20), seed, tuples, threads=threads)
        report.hypotheses[name] = {k: v for k, v in verified.items() if k != "residuals"}
        pts = sample_model_points(entry, points, seed)
        per_point = _run_points(entry, recs, pts, seed, tuples, threads)
        for rec in recs:
            res = np.concatenate([pp[rec.id][0] for pp in per_point])
            variants = {}
            for label, _ in rec.variants:
                variants[label] = max(pp[rec.id][1][label] for pp in per_point)
            mx, mean = float(res.max()), float(res.mean())
            passed = mx < tol
            declared, ok = _applicability(entry, rec, verified)
            notes = []
            if not declared:
                status = "informational"
                notes.append("hypothesis not declared by the model")
            elif not ok:
                status = "hypothesis-violated"
                notes.append(f"model declares {entry.hypothesis} but {rec.hypothesis} fails numerically")
            elif passed:
                status = "pass"
            elif rec.proof_chain:
                status = "fail-erratum-suspect"
                notes.append("hypotheses verified; intermediate proof equality fails")
            else:
                status = "fail"
            if rec.erratum:
                notes.append("erratum reading: " + rec.erratum)
            report.rows.append(RowResult(name, rec.id, rec.hypothesis, declared, ok, points, mx, mean,
                                         passed, status, "; ".join(notes), seed, tol, variants))
    return report


# -- theorem gates --------------------------------------------------------------

@dataclass
class GateVerdict:
    gate: str
    model: str
    verdict: str
    reason: str
    checks: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return asdict(self)


def _max_over_points(entry, ids, points, seed, tuples) -> dict:
    recs = [get_identity(i) for i in ids]
    pts = sample_model_points(entry, points, seed)
    per_point = _run_points(entry, recs, pts, seed, tuples, 1)
    return {r.id: max(float(pp[r.id][0].max()) for pp in per_point) for r in recs}


def _tensor_norms(entry, points, seed) -> dict:
    pts = sample_model_points(entry, points, seed)
    qt = h = 0.0
    for p in pts:
        ctx = PointContext(entry.structure, p)
        qt = max(qt, float(np.abs(ctx.Qt).max()))
        h = max(h, float(np.abs(ctx.h).max()))
    return {"Qt": qt, "h": h}


def theorem_t01_gate(model: str | ModelEntry, points: int = 20, seed: int = 0, tuples: int = 8,
                     tol: float = 1e-8) -> GateVerdict:
    """(E-Sas) and parallel Q-tilde on ker eta force Q = id and a Sasakian structure."""
    entry = get_model(model) if isinstance(model, str) else model
    hyp = verify_hypotheses(entry, points, seed, tuples, tol=tol)
    pre = _max_over_points(entry, ("SAS-1", "QPAR-1"), points, seed, tuples)
    if not hyp["H0"]:
        return GateVerdict("T01", entry.name, "inapplicable", "weak almost contact axioms fail", pre)
    failed = [k for k, v in pre.items() if v >= tol]
    if failed:
        return GateVerdict("T01", entry.name, "inapplicable", "hypothesis fails: " + ", ".join(failed), pre)
    checks = dict(pre)
    checks.update(_tensor_norms(entry, points, seed))
    checks.update(_max_over_points(entry, ("NORMAL-1", "SOL-1"), points, seed, tuples))
    bad = [k for k, v in checks.items() if v >= tol]
    if bad:
        return GateVerdict("T01", entry.name, "fail", "conclusion fails: " + ", ".join(bad), checks)
    return GateVerdict("T01", entry.name, "pass", "Q = id, h = 0 and the structure is normal", checks)


def theorem_th45_gate(model: str | ModelEntry, points: int = 20, seed: int = 0, tuples: int = 8,
                      tol: float = 1e-8) -> GateVerdict:
    """Weak nearly Sasakian with both conditions in dimension > 5 is Sasakian."""
    entry = get_model(model) if isinstance(model, str) else model
    if entry.dim <= 5:
        return GateVerdict("TH45", entry.name, "inapplicable", f"dimension {entry.dim} <= 5")
    hyp = verify_hypotheses(entry, points, seed, tuples, tol=tol)
    if not hyp["H3"]:
        missing = [c for c in ("H0", "H1", "H2a", "H2b") if not hyp[c]]
        return GateVerdict("TH45", entry.name, "inapplicable", "hypothesis fails: " + ", ".join(missing),
                           {k: v for k, v in hyp["residuals"].items()})
    checks = _max_over_points(entry, ("TF-1", "TF-2", "TF-3", "TF-4", "SAS-1"), points, seed, tuples)
    checks.update(_phi_h_plus_qt(entry, points, seed))
    checks.update(_tensor_norms(entry, points, seed))
    bad = [k for k, v in checks.items() if v >= tol]
    if bad:
        return GateVerdict("TH45", entry.name, "fail", "conclusion fails: " + ", ".join(bad), checks)
    return GateVerdict("TH45", entry.name, "pass", "phi h = -Q-tilde, h = 0, Q = id, Sasakian", checks)


def _phi_h_plus_qt(entry, points, seed) -> dict:
    pts = sample_model_points(entry, points, seed)
    worst = 0.0
    for p in pts:
        ctx = PointContext(entry.structure, p)
        worst = max(worst, float(np.abs(ctx.phi @ ctx.h + ctx.Qt).max()))
    return {"phi_h_plus_Qt": worst}


# -- wedge injectivity ------------------------------------------------------------

def wedge_matrix(deta: np.ndarray) -> np.ndarray:
    """Matrix of ``beta -> deta ^ beta`` in the coordinate bases of 2- and 4-forms."""
    d = deta.shape[0]
    pairs = list(combinations(range(d), 2))
    quads = list(combinations(range(d), 4))
    M = np.zeros((len(quads), len(pairs)))
    for j, (a, b) in enumerate(pairs):
        beta = np.zeros((d, d))
        beta[a, b], beta[b, a] = 1.0, -1.0
        w = wedge(deta, 2, beta, 2)
        for i, q in enumerate(quads):
            M[i, j] = w[q]
    return M


def wedge_kernel_dimension(deta: np.ndarray, rtol: float = 1e-10) -> int:
    M = wedge_matrix(np.asarray(deta, dtype=float))
    n = M.shape[1]
    if M.size == 0:
        return n
    s = np.linalg.svd(M, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return n
    return n - int(np.sum(s > rtol * s[0]))


def wedge_injectivity(S: WeakStructure | ModelEntry | str, p) -> int:
    if isinstance(S, str):
        S = get_model(S)
    if isinstance(S, ModelEntry):
        S = S.structure
    ctx = PointContext(S, p)
    vol = contact_volume(ctx.eta, ctx.deta)
    if not math.isfinite(vol) or abs(vol) < 1e-10:
        raise GeometryError("injectivity claim inapplicable: eta is not a contact form at this point")
    return wedge_kernel_dimension(ctx.deta)
