import itertools
import math

import numpy as np
import pytest

from nearsasaki.geometry import GeometryError
from nearsasaki.identities import (sample_model_points, theorem_t01_gate, theorem_th45_gate,
                                   wedge_injectivity, wedge_kernel_dimension, wedge_matrix)
from nearsasaki.models import DEFAULT_MODELS, get_model
from nearsasaki.structure import StructureJets, WeakStructure

T01_PASS = {"sas-r5", "sas-r7", "sas-s5", "sas-s7"}
TH45_PASS = {"sas-r7", "sas-s7"}


@pytest.mark.parametrize("name", DEFAULT_MODELS)
def test_gate_verdicts(name):
    t01 = theorem_t01_gate(name, points=5)
    th45 = theorem_th45_gate(name, points=5)
    assert t01.verdict == ("pass" if name in T01_PASS else "inapplicable")
    assert th45.verdict == ("pass" if name in TH45_PASS else "inapplicable")


@pytest.mark.parametrize("name", DEFAULT_MODELS)
def test_wedge_kernel_by_dimension(name):
    e = get_model(name)
    p = sample_model_points(e, 1, 0)[0]
    k = wedge_injectivity(name, p)
    assert (k == 0) if e.dim == 7 else (k >= 1)


def test_zero_two_form_has_full_kernel():
    assert wedge_kernel_dimension(np.zeros((7, 7))) == math.comb(7, 2)


def test_wedge_matrix_shape():
    assert wedge_matrix(np.zeros((5, 5))).shape == (math.comb(5, 4), math.comb(5, 2))


def test_injectivity_requires_a_contact_form():
    base = get_model("sas-r7")

    def fields(x):
        f = base.structure.fields(x)
        return StructureJets(f.g, f.phi, f.Q, f.xi, f.eta * 0.0)

    flat = WeakStructure("flat-eta", base.chart, fields, "HANY")
    with pytest.raises(GeometryError, match="inapplicable"):
        wedge_injectivity(flat, sample_model_points(base, 1, 0)[0])
