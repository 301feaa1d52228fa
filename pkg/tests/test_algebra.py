from __future__ import annotations

import json

import numpy as np
import pytest

from dingpd.algebra import FIXTURES, algebra_from_doc, opposite_algebra
from dingpd.errors import InputError, NotAdmissible, NotFiniteDimensional


# path counts from listing nonzero paths by hand
EXPECTED = {
    "FIX1": (1, 2, True),
    "FIX2": (2, 3, False),
    "FIX3": (2, 4, False),
    "FIX4": (1, 4, True),
    "RAD2": (1, 3, True),
}


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixture_dimensions(algs, name):
    alg = algs[name]
    v, d, comm = EXPECTED[name]
    assert (alg.vertices, alg.dim) == (v, d)
    assert alg.is_commutative == comm
    assert alg.check_associative() and alg.check_unit()


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_opposite_is_an_involution(algs, name):
    alg = algs[name]
    op = alg.opposite()
    assert op.dim == alg.dim and op.check_associative()
    assert op.opposite() is alg


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_document_round_trip(algs, name):
    alg = algs[name]
    again = algebra_from_doc(json.loads(json.dumps(alg.to_doc())))
    assert again.dim == alg.dim and again.to_doc() == alg.to_doc()
    assert np.array_equal(again.mult, alg.mult)


def test_fix1_multiplication(algs):
    alg = algs["FIX1"]
    a = alg.arrow("a")
    x = np.zeros(alg.dim, dtype=np.int64)
    x[a] = 1
    assert not np.any(alg.multiply(x, x))
    assert np.array_equal(alg.multiply(alg.unit(), x), x)


def test_opposite_algebra_function(algs):
    assert opposite_algebra(algs["FIX3"]).dim == 4


@pytest.mark.parametrize(
    "doc, err",
    [
        ({"p": 2, "vertices": 1, "arrows": [{"id": "a", "from": 0, "to": 0}], "relations": []}, NotFiniteDimensional),
        ({"p": 2, "vertices": 1, "arrows": [{"id": "a", "from": 0, "to": 0}], "relations": [[{"coeff": 1, "path": ["a"]}]]}, NotAdmissible),
        ({"p": 4, "vertices": 1, "arrows": [], "relations": []}, InputError),
        ({"p": 2, "vertices": 1, "arrows": [{"id": "a", "from": 0, "to": 3}], "relations": []}, InputError),
        ({"p": 2, "vertices": 2, "arrows": [{"id": "a", "from": 0, "to": 1}], "relations": [[{"coeff": 1, "path": ["a", "a"]}]]}, InputError),
        ({"vertices": 1}, InputError),
    ],
)
def test_bad_algebra_documents(doc, err):
    with pytest.raises(err):
        algebra_from_doc(doc)
