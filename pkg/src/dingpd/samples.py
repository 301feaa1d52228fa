"""Fixture complexes and seeded random modules, maps and complexes."""

from __future__ import annotations

import numpy as np

from . import exactla as la
from .algebra import FIXTURES, BoundQuiverAlgebra
from .complexcalc import ChainComplex, ChainMap, build_complex, hom_complex, hom_complex_element
from .repmod import (
    HomSpace,
    ModuleMap,
    Representation,
    free_module,
    hom_space,
    indecomposable_projectives,
    kernel,
    random_module,
    zero_map,
)


class AlgebraPool:
    """One instance per fixture name so per-algebra caches are shared."""

    def __init__(self, p: int = 2):
        self.p = p
        self._algs: dict[str, BoundQuiverAlgebra] = {}

    def __getitem__(self, name: str) -> BoundQuiverAlgebra:
        if name not in self._algs:
            self._algs[name] = FIXTURES[name](self.p)
        return self._algs[name]


def xfix2(alg: BoundQuiverAlgebra) -> ChainComplex:
    """``0 -> P_2 -> P_1 -> 0`` in degrees 1, 0 over ``1 -> 2``; it resolves ``S_1``."""
    p1, p2 = indecomposable_projectives(alg)
    return build_complex(alg, {1: p2, 0: p1}, {1: hom_space(p2, p1).basis[0]})


def random_map(m: Representation, n: Representation, rng: np.random.Generator) -> ModuleMap:
    hs = HomSpace(m, n)
    if hs.dim == 0:
        return zero_map(m, n)
    return hs.combine(rng.integers(0, m.p, size=hs.dim))


def random_free(alg: BoundQuiverAlgebra, rng: np.random.Generator, max_gens: int = 2) -> Representation:
    k = int(rng.integers(0, max_gens + 1))
    return free_module(alg, sorted(int(rng.integers(0, alg.vertices)) for _ in range(k)))


def _complex_on(alg: BoundQuiverAlgebra, terms: dict[int, Representation], rng: np.random.Generator) -> ChainComplex:
    """Random square-zero differentials: each lands in the kernel of the one below."""
    lo, hi = min(terms), max(terms)
    diffs = {}
    for n in range(lo + 1, hi + 1):
        if n - 1 == lo:
            diffs[n] = random_map(terms[n], terms[n - 1], rng)
        else:
            k, inc = kernel(diffs[n - 1])
            diffs[n] = inc @ random_map(terms[n], k, rng)
    return build_complex(alg, terms, diffs)


def random_complex(
    alg: BoundQuiverAlgebra,
    rng: np.random.Generator,
    max_len: int = 3,
    max_gens: int = 2,
    lo_range: tuple[int, int] = (-1, 1),
) -> ChainComplex:
    length = int(rng.integers(1, max_len + 1))
    lo = int(rng.integers(lo_range[0], lo_range[1] + 1))
    terms = {lo + i: random_module(alg, rng, max_gens=max_gens) for i in range(length)}
    return _complex_on(alg, terms, rng)


def random_perfect_complex(alg: BoundQuiverAlgebra, rng: np.random.Generator, max_len: int = 3, max_gens: int = 2) -> ChainComplex:
    length = int(rng.integers(1, max_len + 1))
    lo = int(rng.integers(-1, 2))
    terms = {lo + i: random_free(alg, rng, max_gens) for i in range(length)}
    return _complex_on(alg, terms, rng)


def random_chain_map(x: ChainComplex, y: ChainComplex, rng: np.random.Generator) -> ChainMap:
    """A uniformly random degree-0 cycle of ``Hom(X, Y)``."""
    h = hom_complex(x, y)
    maps: dict[int, ModuleMap] = {}
    if h.dim(0):
        d = h.diff(0)
        z = la.nullspace(d, x.alg.p) if d.shape[0] else la.eye(h.dim(0))
        coords = la.mul(z, rng.integers(0, x.alg.p, size=(z.shape[1], 1)), x.alg.p)[:, 0]
        maps = hom_complex_element(h, 0, coords)
    return ChainMap(x, y, maps, check=True)
