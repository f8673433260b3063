"""The ten acceptance criteria; each prints one PASS/FAIL line."""

import json

import numpy as np
import pytest

from nearsasaki import geometry, spectral
from nearsasaki.cli import main
from nearsasaki.identities import (run_suite, sample_model_points, theorem_t01_gate, theorem_th45_gate,
                                   wedge_injectivity)
from nearsasaki.jets import Jet
from nearsasaki.models import DEFAULT_MODELS, get_model
from nearsasaki.structure import PointContext, compute_h, sample_vectors, sasakian_residuals

from oracles import fd_christoffel, fd_riemann, relative_close

SASAKIAN = ("sas-r5", "sas-s5", "sas-r7", "sas-s7")


@pytest.fixture
def report(capsys):
    def emit(n: int, ok: bool, detail: str):
        with capsys.disabled():
            print(f"\n[criterion {n:2d}] {'PASS' if ok else 'FAIL'}: {detail}")
        assert ok, detail
    return emit


def _failing(rep, ids, tol):
    return sorted({(r.model, r.identity) for r in rep.rows if r.identity in ids and not r.max_residual < tol})


def test_criterion_01_kernel_oracles(report):
    worst = 0.0
    ok = True
    for name in ("nsas-s5", "sas-r5", "sas-r7", "sas-s5", "sas-s7"):
        chart = get_model(name).chart
        gamma_at = lambda q: geometry.christoffel_from_metric(chart.metric_jet(q, order=1)).val
        for p in chart.sample_points(np.random.default_rng(42), 100):
            gam = geometry.christoffel_from_metric(chart.metric_jet(p))
            fd_g = fd_christoffel(chart, p)
            ok &= relative_close(gam.val, fd_g, 1e-5)
            ok &= relative_close(geometry.riemann_from_christoffel(gam), fd_riemann(gamma_at, p), 1e-5)
            worst = max(worst, float(np.abs(gam.val - fd_g).max()))
    sphere = get_model("sas-s7")
    rng = np.random.default_rng(42)
    sph = 0.0
    for p in sample_model_points(sphere, 100, 42):
        c = PointContext(sphere.structure, p)
        X, Y, Z = rng.normal(size=(3, 2, 7))
        rhs = c.ip(Y, Z)[:, None] * X - c.ip(X, Z)[:, None] * Y
        sph = max(sph, float(np.abs(c.R(X, Y, Z) - rhs).max()))
    report(1, ok and sph < 1e-9, f"christoffel vs FD max {worst:.1e}, round sphere curvature {sph:.1e}")


def test_criterion_02_axioms(report):
    ax = [f"AX-{i}" for i in range(1, 10)]
    rep = run_suite("all", ax, points=100, tuples=8)
    worst = max(r.max_residual for r in rep.rows)
    report(2, worst < 1e-8 and rep.exit_code == 0, f"H0 axioms on {len(DEFAULT_MODELS)} models, max {worst:.1e}")


def test_criterion_03_sasakian_characterization(report):
    rng = np.random.default_rng(42)
    worst = h_max = 0.0
    for name in SASAKIAN:
        e = get_model(name)
        for p in sample_model_points(e, 30, 42):
            c = PointContext(e.structure, p)
            X, Y = sample_vectors(rng, 8, c.d), sample_vectors(rng, 8, c.d)
            f, n = sasakian_residuals(c, None, X, Y)
            worst = max(worst, f.max(), n.max())
            h_max = max(h_max, compute_h(e.structure, p).norm)
    e = get_model("nsas-s5")
    big = []
    for p in sample_model_points(e, 100, 42):
        c = PointContext(e.structure, p)
        f, _ = sasakian_residuals(c, None, sample_vectors(rng, 8, 5), sample_vectors(rng, 8, 5))
        big.append(f.max() > 0.1)
    frac = float(np.mean(big))
    report(3, worst < 1e-8 and h_max < 1e-10 and frac >= 0.95,
           f"Sasakian models max {worst:.1e}, |h| {h_max:.1e}; nsas-s5 formula residual > 0.1 at {frac:.0%} of points")


LEMMA_ROWS = ("L1-a", "L1-b", "L1-c", "L1-d", "L1-e", "L2-a", "L2-b", "L3-a", "L3-b", "L3-c",
              "L4-a", "L4-b", "L4-c", "DLT-1", "DLT-2", "L5-a", "P2-a", "P2-b", "P2-c", "P2-d")


def test_criterion_04_lemma_suites(report):
    rep = run_suite(("nsas-s5",) + SASAKIAN, LEMMA_ROWS, points=15, tuples=8)
    bad = _failing(rep, LEMMA_ROWS, 1e-7)
    rows = sorted({i for _, i in bad})
    report(4, not bad, f"{len(LEMMA_ROWS)} rows on 5 models; failing rows: {', '.join(rows) or 'none'}")


PC_ROWS = tuple(f"PC-{i}" for i in range(1, 15)) + ("PC-FIN",)


def test_criterion_05_proof_chain(report):
    rep = run_suite("nsas-s5", PC_ROWS, points=15, tuples=8)
    bad = [i for _, i in _failing(rep, PC_ROWS, 1e-6)]
    report(5, not bad, f"{len(PC_ROWS)} rows on nsas-s5; failing: {', '.join(bad) or 'none'}")


def test_criterion_06_two_forms(report):
    ids = ("TF-1", "TF-2", "TF-3", "TF-4")
    rep = run_suite(("nsas-s5",) + SASAKIAN, ids, points=10, tuples=8)
    bad = _failing(rep, ids, 1e-7)
    p = np.array([0.3, -0.2, 0.5, 0.1, -0.4])
    f = (Jet.variables(p)[0] * Jet.variables(p)[1]).exp() + Jet.variables(p)[2] * Jet.variables(p)[4]
    dd = np.abs(geometry.exterior_derivative_jet(geometry.exterior_derivative_jet(f, 0), 1).val).max()
    detail = ", ".join(f"{m}:{i}" for m, i in bad) or "none"
    report(6, not bad and dd < 1e-12, f"d(df) = {dd:.1e}; failing rows: {detail}")


def test_criterion_07_wedge_rank(report):
    dims = {}
    for name in DEFAULT_MODELS:
        e = get_model(name)
        dims[name] = (e.dim, wedge_injectivity(e, sample_model_points(e, 1, 42)[0]))
    ok = all((k == 0) if d == 7 else (k >= 1) for d, k in dims.values())
    report(7, ok, "kernel dims " + ", ".join(f"{n}={k}" for n, (_, k) in sorted(dims.items())))


def test_criterion_08_spectral_foliation(report):
    e = get_model("nsas-s5")
    pts = sample_model_points(e, 30, 42)
    const = spectral.spectrum_constancy(e.structure, pts)
    spec = spectral.h2_spectrum(PointContext(e.structure, pts[0]))
    rng = np.random.default_rng(42)
    geo = max(max(r["geodesic"], r["integrability"]) for r in
              (spectral.totally_geodesic_residual(PointContext(e.structure, p), "xi+D1", rng) for p in pts[:10]))
    ok = const["deviation"] < 1e-7 and spec.zero_multiplicity % 2 == 1 and geo < 1e-7
    report(8, ok, f"constancy {const['deviation']:.1e}, zero multiplicity {spec.zero_multiplicity}, "
                  f"[xi]+D1 residual {geo:.1e}")


def test_criterion_09_theorem_gates(report):
    verdicts = {}
    for name in DEFAULT_MODELS:
        verdicts[name] = (theorem_t01_gate(name, points=5).verdict, theorem_th45_gate(name, points=5).verdict)
    expected = {n: ("pass" if n.startswith("sas-") else "inapplicable",
                    "pass" if n in ("sas-r7", "sas-s7") else "inapplicable") for n in DEFAULT_MODELS}
    report(9, verdicts == expected,
           "; ".join(f"{n} {a}/{b}" for n, (a, b) in sorted(verdicts.items())))


def test_criterion_10_determinism(report, tmp_path):
    outs = []
    for k in range(2):
        path = tmp_path / f"r{k}.json"
        main(["check", "--models", "all", "--identities", "AX-1,L1-b,P2-c,TF-4,PC-FIN", "--points", "5",
              "--seed", "42", "--out", str(path), "--threads", str(1 + 3 * k)])
        outs.append(path.read_bytes())
    report(10, outs[0] == outs[1] and json.loads(outs[0])["schema"] == 1,
           f"two runs, {len(outs[0])} bytes each, identical={outs[0] == outs[1]}")
