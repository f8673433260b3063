import numpy as np
import pytest

from nearsasaki import spectral
from nearsasaki.identities import sample_model_points
from nearsasaki.models import get_model
from nearsasaki.structure import PointContext, StructureJets, WeakStructure


def _ctx(name, i=0):
    e = get_model(name)
    return PointContext(e.structure, sample_model_points(e, i + 1, 0)[i])


def test_nearly_sasakian_spectrum_shape():
    spec = spectral.h2_spectrum(_ctx("nsas-s5"))
    assert [m for _, m in spec.shape()] == [4, 1]
    assert spec.lambdas == pytest.approx([1.0], abs=1e-10)
    assert spec.zero_multiplicity == 1
    assert np.abs(spec.P0).max() < 1e-10


def test_sasakian_spectrum_is_a_single_zero_cluster():
    spec = spectral.h2_spectrum(_ctx("sas-r5"))
    assert spec.shape() == [(pytest.approx(0.0, abs=1e-12), 5)]
    with pytest.raises(spectral.SpectralError):
        spectral.distribution_projector(_ctx("sas-r5"), spec, "xi+D1")


@pytest.mark.parametrize("name", ["nsas-s5", "sas-s7", "weak-r5-a1.5"])
def test_projector_algebra(name):
    inv = spectral.invariant_residuals(_ctx(name, 2))
    assert inv["completeness"] < 1e-10 and inv["idempotent"] < 1e-10 and inv["g_orthogonal"] < 1e-10
    assert inv["nonpositive"] < 1e-10 and inv["zero_multiplicity_odd"]


def test_nearly_sasakian_invariances():
    inv = spectral.invariant_residuals(_ctx("nsas-s5"))
    assert inv["phi_h_invariance"] < 1e-8 and inv["Qt_on_D0"] < 1e-8 and inv["h_on_D0"] < 1e-8


def test_spectrum_constancy():
    e = get_model("nsas-s5")
    r = spectral.spectrum_constancy(e.structure, sample_model_points(e, 30, 1))
    assert r["deviation"] < 1e-7 and r["multiplicities_constant"]
    s7 = get_model("sas-s7")
    assert spectral.spectrum_constancy(s7.structure, sample_model_points(s7, 5, 1))["deviation"] < 1e-12


def test_constancy_detects_a_varying_structure():
    base = get_model("nsas-s5")

    def fields(x):
        f = base.structure.fields(x)
        return StructureJets(f.g, f.phi * (1.0 + 0.5 * x[0] * x[0]), f.Q, f.xi, f.eta)

    bent = WeakStructure("bent", base.chart, fields, "HANY")
    r = spectral.spectrum_constancy(bent, sample_model_points(base, 10, 0))
    assert r["deviation"] > 1e-3


@pytest.mark.parametrize("selector", ["xi+D0", "xi+D1", "xi+Dall"])
def test_totally_geodesic_distributions(selector):
    rng = np.random.default_rng(0)
    for i in range(3):
        r = spectral.totally_geodesic_residual(_ctx("nsas-s5", i), selector, rng)
        assert r["geodesic"] < 1e-7 and r["integrability"] < 1e-7


def test_whole_tangent_bundle_is_trivially_geodesic():
    r = spectral.totally_geodesic_residual(_ctx("sas-r5"), "xi+D0", np.random.default_rng(0))
    assert r["geodesic"] < 1e-12


def test_bad_selectors():
    c = _ctx("nsas-s5")
    spec = spectral.h2_spectrum(c)
    with pytest.raises(spectral.SpectralError):
        spectral.distribution_projector(c, spec, "xi+D2")
    with pytest.raises(ValueError):
        spectral.distribution_projector(c, spec, "D7")
