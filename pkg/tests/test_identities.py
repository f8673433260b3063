import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nearsasaki import catalog as C
from nearsasaki.identities import (HYPOTHESES, IdentityError, catalog, evaluate_identity, get_identity,
                                   identity_ids, implies, multilinearity_defect, resolve_identities,
                                   run_suite, sample_model_points, verify_hypotheses)
from nearsasaki.models import build_sasakian_r2n1, get_model
from nearsasaki.structure import PointContext, sample_vectors

H1_ROWS = ("L1-a", "L1-b", "L1-c", "L1-d", "L1-e", "L2-a", "L2-b", "L3-a", "L3-b", "L3-c",
           "DLT-1", "DLT-2", "L5-a", "P2-a", "P2-b", "P2-c", "P2-d")


def _ctx(name, i=0):
    e = get_model(name)
    return PointContext(e.structure, sample_model_points(e, i + 1, 0)[i])


def test_catalog_ids_are_unique_and_aliases_resolve():
    ids = identity_ids()
    assert len(ids) == len(set(ids))
    assert get_identity("E-nS-Sas").id == "SAS-1"
    assert get_identity("E-nS-2.2").id == "AX-1"
    assert resolve_identities("SAS-1,E-nS-Sas") == ["SAS-1"]
    assert resolve_identities("all") == ids
    for rec in catalog():
        assert rec.hypothesis in HYPOTHESES
        assert rec.anchor


def test_unknown_identity_and_wrong_arity():
    with pytest.raises(IdentityError):
        get_identity("L99")
    with pytest.raises(IdentityError):
        evaluate_identity("L1-b", get_model("nsas-s5"), sample_model_points(get_model("nsas-s5"), 1, 0)[0],
                          args=(np.ones(5), np.ones(5)))
    with pytest.raises(IdentityError):
        evaluate_identity("L1-b", _ctx("nsas-s5"), args=(np.ones(4),))


def test_hypothesis_lattice():
    assert implies("H3", "H2a") and implies("H3", "H2b") and implies("H2a", "H0")
    assert not implies("H2a", "H2b") and not implies("H0", "H1")
    assert all(implies(h, "HANY") for h in HYPOTHESES)


def test_l1b_matches_direct_matrix_algebra():
    """hphi + phih = -2 Q-tilde from the raw tensors."""
    c = _ctx("nsas-s5")
    X = sample_vectors(np.random.default_rng(0), 6, c.d)
    lhs, rhs = get_identity("L1-b").evaluator(C.Terms(c), X)
    M = c.h @ c.phi + c.phi @ c.h
    assert np.allclose(lhs, X @ M.T, atol=1e-12)
    assert np.allclose(rhs, -2 * X @ c.Qt.T, atol=1e-12)


def test_frozen_nearly_sasakian_values():
    c = _ctx("nsas-s5")
    assert np.linalg.norm(c.h) == pytest.approx(2.0, abs=1e-10)
    assert np.allclose(np.sort(np.linalg.eigvals(c.h @ c.h).real), [-1, -1, -1, -1, 0], atol=1e-10)


@pytest.mark.parametrize("rid", identity_ids())
def test_identities_are_multilinear(rid):
    rng = np.random.default_rng(7)
    for name in ("nsas-s5", "weak-r5-a1.5"):
        assert multilinearity_defect(get_identity(rid), _ctx(name), rng) < 1e-10


@pytest.mark.parametrize("rid", H1_ROWS)
def test_lemma_rows_hold_on_nearly_sasakian_models(rid):
    for name in ("nsas-s5", "sas-s7"):
        c = _ctx(name, 1)
        rec = get_identity(rid)
        rng = np.random.default_rng(1)
        args = [sample_vectors(rng, 8, c.d) for _ in range(rec.arity)]
        assert evaluate_identity(rec, c, args=args).max() < 1e-7


@settings(max_examples=15)
@given(st.integers(0, 2**31 - 1))
def test_sasakian_rows_hold_for_random_vectors(seed):
    c = _ctx("sas-r5")
    rng = np.random.default_rng(seed)
    for rid in ("SAS-1", "NORMAL-1", "AX-1", "NS-0", "H-SKEW"):
        rec = get_identity(rid)
        args = [rng.normal(size=(3, c.d)) * rng.uniform(0.1, 10) for _ in range(rec.arity)]
        assert evaluate_identity(rec, c, args=args).max() < 1e-8


def test_single_vector_arguments_are_accepted():
    c = _ctx("nsas-s5")
    r = evaluate_identity("L1-b", c, args=(np.arange(5.0),))
    assert r.shape == (1,) and r[0] < 1e-10


def test_fault_injection_is_detected():
    bad = build_sasakian_r2n1(2, metric_scale=2.0)
    p = bad.chart.sample_points(np.random.default_rng(0), 1)[0]
    rng = np.random.default_rng(0)
    X, Y = sample_vectors(rng, 8, 5), sample_vectors(rng, 8, 5)
    assert evaluate_identity("SAS-1", bad, p, args=(X, Y)).max() > 0.05
    assert not verify_hypotheses(bad, points=3)["sasakian"]


def test_informational_rows_on_undeclared_hypotheses():
    rep = run_suite("weak-r5-a1.5", "AX-1,NS-0,SAS-1", points=3, tuples=2)
    assert rep.row("weak-r5-a1.5", "AX-1").status == "pass"
    assert rep.row("weak-r5-a1.5", "NS-0").status == "informational"
    assert rep.row("weak-r5-a1.5", "SAS-1").status == "informational"
    assert rep.exit_code == 0


def test_failures_are_sorted_by_residual():
    rep = run_suite("nsas-s5,sas-r5", "L4-a,L4-b,L1-b,TF-1", points=3, tuples=2)
    fails = rep.failures()
    assert fails and rep.exit_code == 1
    res = [f.max_residual for f in fails]
    assert res == sorted(res, reverse=True)
    assert rep.row("nsas-s5", "L1-b").status == "pass"


def test_variant_readings_are_reported():
    rep = run_suite("nsas-s5", "TF-1,PC-4", points=3, tuples=2)
    tf = rep.row("nsas-s5", "TF-1")
    assert tf.status == "fail" and tf.variants["cyclic"] < 1e-10
    pc4 = rep.row("nsas-s5", "PC-4")
    assert pc4.status == "pass" and pc4.variants["printed"] > 1e-3 and "erratum" in pc4.note


def test_suite_rejects_bad_configuration():
    with pytest.raises(IdentityError):
        run_suite(points=0)
    with pytest.raises(IdentityError):
        run_suite(tol=-1.0)
    assert run_suite("sas-r5", [], points=2).rows == []


def test_thread_count_does_not_change_results():
    a = run_suite("nsas-s5", "L1-b,P2-a,PC-14", points=6, tuples=3, threads=1).as_dict()
    b = run_suite("nsas-s5", "L1-b,P2-a,PC-14", points=6, tuples=3, threads=4).as_dict()
    assert a == b
