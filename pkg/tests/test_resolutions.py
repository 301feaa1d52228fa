from __future__ import annotations

import numpy as np
import pytest

from dingpd.complexcalc import (
    cokernel_at,
    direct_sum_complexes,
    is_exact,
    is_quasi_iso,
    stalk,
)
from dingpd.dingdim import is_ding_projective
from dingpd.errors import NotDingProjective, ThresholdViolated
from dingpd.repmod import (
    indecomposable_projectives,
    is_isomorphic,
    is_projective,
    random_module,
    regular_module,
    simple_module,
    syzygy,
)
from dingpd.resolutions import (
    IdentityResolution,
    check_totally_acyclic,
    dg_projective_resolution,
    f_complete_resolution,
    find_homotopy,
    lift_chain_map,
    minimal_projective_resolution,
    splice_complete_resolution,
    surjectivize,
)
from dingpd.samples import random_complex, xfix2
from dingpd.suite import _lands_in_radical, periodic_s2_complex


def test_resolution_of_k_over_fix1(algs):
    a1 = algs["FIX1"]
    k = simple_module(a1, 0)
    r = minimal_projective_resolution(k, 4)
    c = r.complex(4)
    for n in range(5):
        assert c.term(n).dims == (2,)
    for n in range(1, 5):
        assert c.diff(n).rank() == 1
    assert is_quasi_iso(r.augmentation(4), range(0, 4))


def test_resolution_of_s1_over_fix2_terminates(algs):
    r = minimal_projective_resolution(simple_module(algs["FIX2"], 0), 3)
    c = r.complex(3)
    assert [c.term(n).dims for n in range(3)] == [(1, 1), (0, 1), (0, 0)]
    assert r.eventually_zero(2)


def test_projective_resolves_itself(algs):
    p = indecomposable_projectives(algs["FIX3"])[0]
    c = minimal_projective_resolution(p, 3).complex(3)
    assert c.term(0).dims == p.dims and c.term(1).dim == 0


@pytest.mark.parametrize("name", ["FIX1", "FIX2", "FIX3", "FIX4"])
def test_minimal_resolutions_are_radical_and_match_syzygies(algs, name):
    rng = np.random.default_rng(8)
    for _ in range(3):
        m = random_module(algs[name], rng)
        r = minimal_projective_resolution(m, 4)
        for n in range(1, 5):
            assert _lands_in_radical(r.diff(n))
        assert is_isomorphic(r.cokernel(2), syzygy(syzygy(m))) is not None
        assert is_quasi_iso(r.augmentation(4), range(0, 4))


def test_xfix2_is_its_own_resolution(algs):
    x = xfix2(algs["FIX2"])
    r = dg_projective_resolution(x)
    assert isinstance(r, IdentityResolution)
    assert r.complex(3).to_doc() == x.to_doc()


def test_resolution_of_two_stalks(algs):
    k = simple_module(algs["FIX1"], 0)
    x = direct_sum_complexes([stalk(k, 0), stalk(k, 1)])
    r = dg_projective_resolution(x, 6)
    c = r.complex(6)
    assert c.all_projective()
    assert is_quasi_iso(r.augmentation(6), range(-1, 6))
    s = dg_projective_resolution(x, 6, surjective=True)
    assert all(s.augmentation(6).at(n).is_surjective() for n in x.degrees)
    assert is_quasi_iso(s.augmentation(6), range(-2, 6))


@pytest.mark.parametrize("name", ["FIX1", "FIX2", "FIX3", "FIX4"])
def test_dg_resolution_of_random_complexes(algs, name):
    rng = np.random.default_rng(12)
    for _ in range(3):
        x = random_complex(algs[name], rng)
        r = dg_projective_resolution(x, 5)
        c = r.complex(5)
        assert c.all_projective()
        assert is_quasi_iso(r.augmentation(5), range(min(c.lo, x.lo) - 1, 5))
        sup = c.support()
        if not is_exact(x):
            from dingpd.complexcalc import hinf

            assert sup[0] == hinf(x)


def test_splice_of_k_is_periodic_and_totally_acyclic(algs):
    k = simple_module(algs["FIX1"], 0)
    t = splice_complete_resolution(k, 8, certified=True)
    w = t.window(-4, 4)
    assert all(w.term(i).dims == (2,) for i in range(-4, 5))
    assert check_totally_acyclic(t, 8).passed
    assert is_isomorphic(cokernel_at(w, 0)[0], k) is not None


def test_splice_of_projective_is_contractible(algs):
    for pv in indecomposable_projectives(algs["FIX3"]):
        t = splice_complete_resolution(pv, 3, certified=True)
        w = t.window(-3, 3)
        assert w.term(0).dims == pv.dims and w.term(-1).dims == pv.dims
        assert w.term(1).dim == 0 and w.term(-2).dim == 0
        assert check_totally_acyclic(t, 3).passed


def test_splice_needs_certificate(algs):
    with pytest.raises(NotDingProjective):
        splice_complete_resolution(simple_module(algs["FIX3"], 1), 3)


def test_negative_controls(algs):
    a3 = algs["FIX3"]
    res = minimal_projective_resolution(simple_module(a3, 1), 8).complex(8)
    rep = check_totally_acyclic(res, 8)
    exact_failures = [e.degree for e in rep.failures() if e.check == "exact"]
    assert exact_failures == [0]
    rep = check_totally_acyclic(periodic_s2_complex(a3, 4), 4)
    assert all(e.passed for e in rep.entries if e.check in ("exact", "projective"))
    assert any(not e.passed for e in rep.entries if e.check.startswith("hom_exact"))


def test_check_totally_acyclic_requires_window(algs):
    k = simple_module(algs["FIX1"], 0)
    with pytest.raises(ValueError):
        check_totally_acyclic(splice_complete_resolution(k, 1, True), 0)


def test_lift_examples(algs):
    a1 = algs["FIX1"]
    k = simple_module(a1, 0)
    t = splice_complete_resolution(k, 6, True)
    q = stalk(regular_module(a1), -2)
    f0 = lift_chain_map(t, q, 0, {})
    assert all(f0.at(i).is_zero() for i in f0.source.degrees)
    f1 = lift_chain_map(t, q, 0, {}, rng=np.random.default_rng(3))
    assert f1.defect() is None
    h = find_homotopy(f0, f1)
    assert h is not None and h.verify()


def test_lift_extends_identity_base(algs):
    from dingpd.repmod import identity_map

    k = simple_module(algs["FIX4"], 0)
    w = splice_complete_resolution(k, 4, True).window(-3, 3)
    base = {i: identity_map(w.term(i)) for i in range(0, 4)}
    f = lift_chain_map(w, w, 0, base, rng=np.random.default_rng(5))
    assert f.defect() is None
    assert all(f.at(i).equals(base[i]) for i in range(0, 4))


def test_f_complete_and_surjectivize(algs):
    x = xfix2(algs["FIX2"])
    p = dg_projective_resolution(x)
    f = f_complete_resolution(p, 1, -2, 3)
    assert not f.check()
    f2, alpha = surjectivize(f, 1)
    assert not f2.check() and f2.surjective
    for i in f.t.degrees:
        assert f.tau.at(i).equals(f2.tau.at(i) @ alpha.at(i))
    assert is_quasi_iso(alpha, range(-1, 3))
    with pytest.raises(ThresholdViolated):
        surjectivize(f, -1)


def test_surjectivize_stalk_resolution(algs):
    k = simple_module(algs["FIX1"], 0)
    p = dg_projective_resolution(stalk(k, 0))
    f = f_complete_resolution(p, 0, -2, 2)
    f2, alpha = surjectivize(f, 0)
    assert not f2.check()
    assert all(f2.tau.at(i).is_surjective() for i in f2.t.degrees)
    assert is_quasi_iso(alpha, range(-1, 2))


def test_sanity_of_dp_certificate_with_splice(algs):
    r = is_ding_projective(simple_module(algs["FIX4"], 0), 6)
    assert r.status == "yes"
    t = splice_complete_resolution(r.certificate.module, 6, r.certificate)
    assert check_totally_acyclic(t, 6).passed
    assert is_projective(t.term(-3))
