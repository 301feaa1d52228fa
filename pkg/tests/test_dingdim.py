from __future__ import annotations

import dataclasses
import json

import numpy as np
import pytest

from dingpd.complexcalc import NEG_INF, POS_INF, direct_sum_complexes, shift, stalk, zero_complex
from dingpd.dingdim import (
    NO,
    UNDETERMINED,
    YES,
    Undetermined,
    dpd_complex,
    dpd_functorial,
    dpd_module,
    find_cycle,
    injective_dimension_bound,
    is_ding_projective,
    pd_complex,
    rhom,
    rhom_inf,
    shift_value,
    value_from_doc,
    value_to_doc,
)
from dingpd.errors import CertificateError, FailedHypothesis
from dingpd.repmod import (
    ModuleMap,
    SyzygyChain,
    direct_sum,
    indecomposable_projectives,
    regular_module,
    simple_module,
)
from dingpd.resolutions import dg_projective_resolution
from dingpd.samples import xfix2


# -- value encoding ----------------------------------------------------------------------------

@pytest.mark.parametrize("v, doc", [(NEG_INF, "-inf"), (POS_INF, "+inf"), (3, 3), (Undetermined(4), {"undetermined_geq": 4})])
def test_value_documents(v, doc):
    assert value_to_doc(v) == doc
    assert value_to_doc(value_from_doc(doc)) == doc


def test_shift_value():
    assert shift_value(2, 3) == 5
    assert shift_value(POS_INF, 3) == POS_INF and shift_value(NEG_INF, -1) == NEG_INF
    assert shift_value(Undetermined(2), 3) == Undetermined(5)


# -- Ding projectivity ---------------------------------------------------------------------------

def test_k_over_fix1_is_ding_projective(algs):
    r = is_ding_projective(simple_module(algs["FIX1"], 0))
    assert r.status == YES
    c = r.certificate
    assert c.left.kind == "cycle" and c.left.cycle == (0, 1)
    assert c.right.kind == "cycle" and c.right.cycle == (0, 1)
    c.replay()


def test_s2_over_fix3_is_not(algs):
    r = is_ding_projective(simple_module(algs["FIX3"], 1))
    assert r.status == NO
    ob = r.obstruction
    assert ob.kind == "ext" and ob.side == "left" and ob.degree == 1 and ob.vertex == 0
    assert ob.witness.dim == 1


@pytest.mark.parametrize("name", ["FIX1", "FIX2", "FIX3", "FIX4", "RAD2"])
def test_projectives_are_ding_projective(algs, name):
    for pv in indecomposable_projectives(algs[name]):
        r = is_ding_projective(pv, 6)
        assert r.status == YES
        r.certificate.replay()


def test_non_reflexive_module_is_refuted(algs):
    # S_1 over FIX2 has no nonzero maps into A, so it cannot be reflexive
    r = is_ding_projective(simple_module(algs["FIX2"], 0))
    assert r.status == NO


def test_small_window_is_undetermined(algs):
    assert is_ding_projective(simple_module(algs["FIX1"], 0), 1).status == UNDETERMINED
    assert isinstance(dpd_module(simple_module(algs["FIX1"], 0), 1).value, Undetermined)


def test_injective_bound_certifies_fix4(algs):
    a4 = algs["FIX4"]
    b = injective_dimension_bound(a4, 6)
    assert b is not None and b.d == 0
    r = is_ding_projective(simple_module(a4, 0), 6)
    assert r.status == YES and r.certificate.left.kind == "injdim"
    r.certificate.replay()


def test_cycle_search(algs):
    chain = SyzygyChain(simple_module(algs["FIX3"], 1))
    j, k, iso = find_cycle(chain, 0, 6)
    assert (j, k) == (0, 1) and iso.is_iso()
    assert find_cycle(SyzygyChain(simple_module(algs["RAD2"], 0)), 0, 5) is None


# -- certificate tampering ------------------------------------------------------------------------

def test_tampered_cycle_iso_is_rejected(algs):
    c = is_ding_projective(simple_module(algs["FIX1"], 0)).certificate
    left = c.left
    bad = ModuleMap(left.iso.source, left.iso.target, [np.zeros_like(m) for m in left.iso.mats], check=False)
    with pytest.raises(CertificateError):
        dataclasses.replace(c, left=dataclasses.replace(left, iso=bad)).replay()


def test_tampered_module_is_rejected(algs):
    c = is_ding_projective(simple_module(algs["FIX1"], 0)).certificate
    with pytest.raises(CertificateError):
        dataclasses.replace(c, module=regular_module(algs["FIX1"])).replay()


def test_missing_ext_witnesses_are_rejected(algs):
    c = is_ding_projective(simple_module(algs["FIX1"], 0)).certificate
    with pytest.raises(CertificateError):
        dataclasses.replace(c, right=dataclasses.replace(c.right, ext=[])).replay()


def test_tampered_infinity_certificate(algs):
    v = dpd_module(simple_module(algs["FIX3"], 1))
    v.replay()
    bad = dataclasses.replace(v.certificate, root=regular_module(algs["FIX3"]))
    with pytest.raises(CertificateError):
        bad.replay()


# -- module dimension -------------------------------------------------------------------------------

def test_dpd_module_examples(algs):
    assert dpd_module(simple_module(algs["FIX1"], 0)).value == 0
    assert dpd_module(simple_module(algs["FIX2"], 0)).value == 1
    v = dpd_module(simple_module(algs["FIX3"], 1))
    assert v.value == POS_INF and v.certificate.cycle == (0, 1)
    assert dpd_module(simple_module(algs["FIX4"], 0)).value == 0


def test_dpd_module_of_zero(algs):
    from dingpd.repmod import zero_module

    assert dpd_module(zero_module(algs["FIX2"])).value == NEG_INF


def test_dpd_module_verdicts_replay(algs):
    for name, v in [("FIX1", 0), ("FIX2", 0), ("FIX3", 1), ("FIX4", 0)]:
        verdict = dpd_module(simple_module(algs[name], v))
        verdict.replay()


@pytest.mark.parametrize("window", [4, 6, 8])
def test_rad2_is_honestly_undetermined(algs, window):
    v = dpd_module(simple_module(algs["RAD2"], 0), window)
    assert v.value == Undetermined(window)
    assert value_to_doc(v.value) == {"undetermined_geq": window}


def test_direct_sum_takes_the_maximum(algs):
    a2 = algs["FIX2"]
    m = direct_sum([simple_module(a2, 0), indecomposable_projectives(a2)[1]])
    assert dpd_module(m).value == 1


# -- complexes ---------------------------------------------------------------------------------------

def test_dpd_complex_examples(algs):
    a2 = algs["FIX2"]
    x = xfix2(a2)
    v = dpd_complex(x)
    assert v.value == 1
    assert dpd_functorial(x, verdict=v) == 1
    assert dpd_complex(shift(x, 3)).value == 4
    assert dpd_complex(zero_complex(a2)).value == NEG_INF
    v.replay()


def test_stalk_agrees_with_module(algs):
    for name, vertex in [("FIX1", 0), ("FIX2", 0), ("FIX3", 1), ("FIX4", 0)]:
        m = simple_module(algs[name], vertex)
        assert dpd_complex(stalk(m, 0)).value == dpd_module(m).value
        assert dpd_complex(stalk(m, 2)).value == shift_value(dpd_module(m).value, 2)


def test_two_stalks(algs):
    k = simple_module(algs["FIX1"], 0)
    x = direct_sum_complexes([stalk(k, 0), stalk(k, 1)])
    assert dpd_complex(x).value == 1


def test_functorial_value_needs_finite_dimension(algs):
    assert dpd_functorial(stalk(simple_module(algs["FIX1"], 0), 0)) == 0
    with pytest.raises(FailedHypothesis):
        dpd_functorial(stalk(simple_module(algs["FIX3"], 1), 0))


def test_rhom_examples(algs):
    a1 = algs["FIX1"]
    k, a = simple_module(a1, 0), regular_module(a1)
    dims = rhom(stalk(k, 0), stalk(a, 0), -3, 3)
    assert dims == {-3: 0, -2: 0, -1: 0, 0: 1, 1: 0, 2: 0, 3: 0}
    assert rhom_inf(dims) == 0
    assert rhom_inf({0: 0}) == POS_INF


def test_pd_complex(algs):
    a2 = algs["FIX2"]
    assert pd_complex(xfix2(a2)) == 1
    assert pd_complex(stalk(simple_module(algs["FIX1"], 0), 0), window=4) is None


def test_resolution_independence(algs):
    a2 = algs["FIX2"]
    x = xfix2(a2)
    plain = dpd_complex(x, resolution=dg_projective_resolution(x, surjective=False))
    padded = dpd_complex(x, resolution=dg_projective_resolution(x, surjective=True))
    assert plain.value == padded.value == 1


def test_verdict_json_shape(algs):
    v = dpd_complex(xfix2(algs["FIX2"]))
    doc = json.loads(json.dumps(v.to_doc()))
    assert set(doc) == {"value", "certificate", "witness_complex"}
    assert doc["value"] == 1 and doc["certificate"]["kind"] == "ding_projective"
    inf = json.loads(json.dumps(dpd_module(simple_module(algs["FIX3"], 1)).to_doc()))
    assert inf["value"] == "+inf" and inf["witness_complex"] is None
