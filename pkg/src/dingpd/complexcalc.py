"""Bounded chain complexes of representations and the calculus on them.

Differentials have degree -1: ``diff(n): C_n -> C_{n-1}``.  Sign conventions:
shift multiplies every differential by ``(-1)^i``; the cone differential is
``(x, y) -> (-dx, f x + dy)``; Hom uses ``(dφ)_q = d^A φ_q - (-1)^l φ_{q-1} d^P``;
tensor uses ``d(p⊗a) = dp⊗a + (-1)^{|p|} p⊗da``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from . import exactla as la
from .algebra import BoundQuiverAlgebra
from .errors import AlgebraMismatch, InputError, NotAComplex, NotCommutative
from .repmod import (
    HomSpace,
    ModuleMap,
    Representation,
    block_map,
    direct_sum,
    identity_map,
    is_projective,
    module_from_doc,
    quotient,
    submodule,
    zero_map,
    zero_module,
)

NEG_INF = -math.inf
POS_INF = math.inf


class ChainComplex:
    """A complex with terms in degrees ``lo..hi`` (zero elsewhere)."""

    def __init__(
        self,
        alg: BoundQuiverAlgebra,
        terms: Mapping[int, Representation],
        diffs: Mapping[int, ModuleMap] | None = None,
        check: bool = True,
    ):
        self.alg = alg
        degs = [n for n, t in terms.items()]
        for t in terms.values():
            if t.alg is not alg:
                raise AlgebraMismatch("complex term over a different algebra")
        if degs:
            self.lo, self.hi = min(degs), max(degs)
        else:
            self.lo, self.hi = 0, -1
        self._zero = zero_module(alg)
        self.terms = {n: terms.get(n, self._zero) for n in range(self.lo, self.hi + 1)}
        self.diffs: dict[int, ModuleMap] = {}
        diffs = diffs or {}
        for n in range(self.lo + 1, self.hi + 1):
            d = diffs.get(n)
            src, tgt = self.terms[n], self.terms[n - 1]
            if d is None:
                d = zero_map(src, tgt)
            elif d.source.dims != src.dims or d.target.dims != tgt.dims:
                raise InputError(f"differential at degree {n} has the wrong shape")
            else:
                d = ModuleMap(src, tgt, d.mats, check=check)
            self.diffs[n] = d
        for n in diffs:
            if not (self.lo < n <= self.hi) and not diffs[n].is_zero():
                raise InputError(f"differential at degree {n} lies outside the support")
        if check:
            for n in range(self.lo + 2, self.hi + 1):
                if not (self.diffs[n - 1] @ self.diffs[n]).is_zero():
                    raise NotAComplex(n - 1)

    def term(self, n: int) -> Representation:
        return self.terms.get(n, self._zero)

    def diff(self, n: int) -> ModuleMap:
        d = self.diffs.get(n)
        if d is None:
            return zero_map(self.term(n), self.term(n - 1))
        return d

    @property
    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def support(self) -> tuple[int, int] | None:
        nz = [n for n in self.degrees if self.terms[n].dim]
        return (min(nz), max(nz)) if nz else None

    def is_zero(self) -> bool:
        return self.support() is None

    def all_projective(self) -> bool:
        return all(is_projective(t) for t in self.terms.values())

    def to_doc(self) -> dict:
        sup = self.support()
        lo, hi = sup if sup else (0, -1)
        return {
            "lo": lo,
            "hi": hi,
            "terms": {str(n): self.term(n).to_doc() for n in range(lo, hi + 1)},
            "differentials": {
                str(n): [m.tolist() for m in self.diff(n).mats] for n in range(lo + 1, hi + 1)
            },
        }

    def __repr__(self) -> str:
        body = ", ".join(f"{n}:{list(self.terms[n].dims)}" for n in self.degrees)
        return f"ChainComplex({body})"


def build_complex(alg: BoundQuiverAlgebra, terms: Mapping[int, Representation], diffs: Mapping[int, ModuleMap]) -> ChainComplex:
    return ChainComplex(alg, terms, diffs, check=True)


def zero_complex(alg: BoundQuiverAlgebra) -> ChainComplex:
    return ChainComplex(alg, {}, {})


def complex_from_doc(alg: BoundQuiverAlgebra, doc: dict) -> ChainComplex:
    try:
        lo, hi = int(doc["lo"]), int(doc["hi"])
        raw_terms = doc["terms"]
        raw_diffs = doc.get("differentials", {})
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed complex document: {exc!r}") from None
    terms = {}
    for n in range(lo, hi + 1):
        t = raw_terms.get(str(n), raw_terms.get(n)) if isinstance(raw_terms, dict) else None
        if t is None:
            terms[n] = zero_module(alg)
        else:
            try:
                terms[n] = module_from_doc(alg, t)
            except InputError as exc:
                raise InputError(f"terms.{n}: {exc}") from None
    diffs = {}
    for key, mats in raw_diffs.items():
        n = int(key)
        if n - 1 not in terms or n not in terms:
            raise InputError(f"differentials.{n}: degree outside [{lo}, {hi}]")
        src, tgt = terms[n], terms[n - 1]
        if len(mats) != alg.vertices:
            raise InputError(f"differentials.{n}: expected {alg.vertices} vertex matrices")
        arrs = []
        for v, rows in enumerate(mats):
            shape = (tgt.dims[v], src.dims[v])
            a = np.array(rows, dtype=np.int64)
            if a.size == 0:
                a = la.zeros(*shape)
            if a.shape != shape:
                raise InputError(f"differentials.{n}[{v}]: expected shape {shape}, got {a.shape}")
            arrs.append(a)
        try:
            diffs[n] = ModuleMap(src, tgt, arrs)
        except InputError as exc:
            raise InputError(f"differentials.{n}: {exc}") from None
    return ChainComplex(alg, terms, diffs)


class ChainMap:
    """Degreewise module maps commuting with the differentials."""

    def __init__(self, source: ChainComplex, target: ChainComplex, maps: Mapping[int, ModuleMap], check: bool = True):
        self.source, self.target = source, target
        self.maps: dict[int, ModuleMap] = {}
        for n in source.degrees:
            f = maps.get(n)
            self.maps[n] = f if f is not None else zero_map(source.term(n), target.term(n))
        if check:
            bad = self.defect()
            if bad is not None:
                raise InputError(f"chain map fails to commute at degree {bad}")

    def at(self, n: int) -> ModuleMap:
        f = self.maps.get(n)
        return f if f is not None else zero_map(self.source.term(n), self.target.term(n))

    def defect(self) -> int | None:
        lo = min(self.source.lo, self.target.lo)
        hi = max(self.source.hi, self.target.hi)
        for n in range(lo, hi + 2):
            lhs = self.target.diff(n) @ self.at(n)
            rhs = self.at(n - 1) @ self.source.diff(n)
            if not lhs.equals(rhs):
                return n
        return None

    def compose(self, other: "ChainMap") -> "ChainMap":
        return ChainMap(other.source, self.target, {n: self.at(n) @ other.at(n) for n in other.source.degrees}, check=False)

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        return self.compose(other)

    def __sub__(self, other: "ChainMap") -> "ChainMap":
        return ChainMap(self.source, self.target, {n: self.at(n) - other.at(n) for n in self.source.degrees}, check=False)

    def equals(self, other: "ChainMap") -> bool:
        return all(self.at(n).equals(other.at(n)) for n in self.source.degrees)


def identity_chain_map(c: ChainComplex) -> ChainMap:
    return ChainMap(c, c, {n: identity_map(c.term(n)) for n in c.degrees}, check=False)


def zero_chain_map(x: ChainComplex, y: ChainComplex) -> ChainMap:
    return ChainMap(x, y, {}, check=False)


@dataclass
class Homotopy:
    """``f - g = d s + s d`` with ``s_n: X_n -> Y_{n+1}``."""

    f: ChainMap
    g: ChainMap
    s: dict[int, ModuleMap]

    def at(self, n: int) -> ModuleMap:
        s = self.s.get(n)
        return s if s is not None else zero_map(self.f.source.term(n), self.f.target.term(n + 1))

    def verify(self) -> bool:
        x, y = self.f.source, self.f.target
        for n in x.degrees:
            lhs = self.f.at(n) - self.g.at(n)
            rhs = (y.diff(n + 1) @ self.at(n)) + (self.at(n - 1) @ x.diff(n))
            if not lhs.equals(rhs):
                return False
        return True


@dataclass
class GradedVectorComplex:
    """Complex of finite-dimensional vector spaces (no module structure)."""

    p: int
    dims: dict[int, int]
    diffs: dict[int, np.ndarray]  # diffs[n]: dims[n] -> dims[n-1]
    spaces: dict[int, list] = field(default_factory=dict)

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def diff(self, n: int) -> np.ndarray:
        d = self.diffs.get(n)
        return d if d is not None else la.zeros(self.dim(n - 1), self.dim(n))

    def check(self) -> None:
        for n in self.dims:
            if self.dim(n - 1) and self.dim(n + 1):
                if np.any(la.mul(self.diff(n), self.diff(n + 1), self.p)):
                    raise NotAComplex(n)

    def homology_dim(self, n: int) -> int:
        z = self.dim(n) - (la.rank(self.diff(n), self.p) if self.dim(n) and self.dim(n - 1) else 0)
        b = la.rank(self.diff(n + 1), self.p) if self.dim(n + 1) and self.dim(n) else 0
        return z - b

    def homology_dims(self) -> dict[int, int]:
        return {n: self.homology_dim(n) for n in sorted(self.dims)}

    def hinf(self) -> float:
        nz = [n for n, h in self.homology_dims().items() if h]
        return min(nz) if nz else POS_INF

    def hsup(self) -> float:
        nz = [n for n, h in self.homology_dims().items() if h]
        return max(nz) if nz else NEG_INF


# -- basic constructions ---------------------------------------------------------------

def stalk(m: Representation, n: int) -> ChainComplex:
    return ChainComplex(m.alg, {n: m}, {})


def shift(c: ChainComplex, i: int) -> ChainComplex:
    sign = -1 if i % 2 else 1
    terms = {n + i: t for n, t in c.terms.items()}
    diffs = {n + i: d.scale(sign) for n, d in c.diffs.items()}
    return ChainComplex(c.alg, terms, diffs, check=False)


def shift_map(f: ChainMap, i: int) -> ChainMap:
    return ChainMap(shift(f.source, i), shift(f.target, i), {n + i: g for n, g in f.maps.items()}, check=False)


def hard_above(c: ChainComplex, n: int) -> ChainComplex:
    """Degrees ``<= n``."""
    terms = {k: t for k, t in c.terms.items() if k <= n}
    return ChainComplex(c.alg, terms, {k: d for k, d in c.diffs.items() if k <= n}, check=False)


def hard_below(c: ChainComplex, n: int) -> ChainComplex:
    """Degrees ``>= n``."""
    terms = {k: t for k, t in c.terms.items() if k >= n}
    return ChainComplex(c.alg, terms, {k: d for k, d in c.diffs.items() if k > n}, check=False)


def cokernel_at(c: ChainComplex, n: int) -> tuple[Representation, ModuleMap]:
    """``C_n(C) = Coker(d_{n+1})`` with its projection from ``C_n``."""
    d = c.diff(n + 1)
    bases = [la.column_basis(m, c.alg.p) if m.shape[1] else la.zeros(m.shape[0], 0) for m in d.mats]
    quo, proj, _ = quotient(c.term(n), bases)
    return quo, proj


def soft_above(c: ChainComplex, n: int) -> tuple[ChainComplex, ChainMap]:
    """``0 -> C_n(C) -> C_{n-1} -> ...`` and the comparison map from ``C``."""
    cok, proj = cokernel_at(c, n)
    terms = {k: t for k, t in c.terms.items() if k < n}
    terms[n] = cok
    diffs = {k: d for k, d in c.diffs.items() if k < n}
    if n - 1 in terms:
        # d_n factors through the cokernel via the sections of the projection
        d = c.diff(n)
        _, sec_proj, sections = quotient(c.term(n), [
            la.column_basis(m, c.alg.p) if m.shape[1] else la.zeros(m.shape[0], 0) for m in c.diff(n + 1).mats
        ])
        diffs[n] = ModuleMap(cok, c.term(n - 1), [la.mul(dm, s, c.alg.p) for dm, s in zip(d.mats, sections)], check=False)
    out = ChainComplex(c.alg, terms, diffs, check=False)
    maps = {k: identity_map(c.term(k)) for k in c.degrees if k < n}
    maps[n] = proj
    return out, ChainMap(c, out, maps, check=False)


def truncate(c: ChainComplex, n: int, mode: str) -> ChainComplex:
    if mode == "hard_above":
        return hard_above(c, n)
    if mode == "hard_below":
        return hard_below(c, n)
    if mode == "soft_above":
        return soft_above(c, n)[0]
    raise ValueError(f"unknown truncation mode {mode!r}")


def direct_sum_complexes(cs: list[ChainComplex]) -> ChainComplex:
    alg = cs[0].alg
    lo = min(c.lo for c in cs)
    hi = max(c.hi for c in cs)
    terms, diffs = {}, {}
    for n in range(lo, hi + 1):
        terms[n] = direct_sum([c.term(n) for c in cs])
    for n in range(lo + 1, hi + 1):
        src, tgt = terms[n], terms[n - 1]
        parts_s = [c.term(n) for c in cs]
        parts_t = [c.term(n - 1) for c in cs]
        blocks = [[cs[r].diff(n) if r == col else None for col in range(len(cs))] for r in range(len(cs))]
        diffs[n] = block_map(src, tgt, blocks, parts_s, parts_t)
    return ChainComplex(alg, terms, diffs, check=False)


# -- homology ----------------------------------------------------------------------------

def homology(c: ChainComplex, n: int) -> Representation:
    d_out, d_in = c.diff(n), c.diff(n + 1)
    p = c.alg.p
    zb = [la.nullspace(m, p) for m in d_out.mats]
    z, _ = submodule(c.term(n), zb)
    # boundaries in Z-coordinates
    bmats = []
    for v, m in enumerate(d_in.mats):
        linv = la.left_inverse(zb[v], p)
        bmats.append(la.mul(linv, m, p) if m.shape[1] else la.zeros(zb[v].shape[1], 0))
    bases = [la.column_basis(m, p) if m.shape[1] else la.zeros(m.shape[0], 0) for m in bmats]
    h, _, _ = quotient(z, bases)
    return h


def homology_dims(c: ChainComplex, n: int) -> tuple[int, ...]:
    p = c.alg.p
    out = []
    for v in range(c.alg.vertices):
        a, b = c.diff(n).mats[v], c.diff(n + 1).mats[v]
        z = a.shape[1] - la.rank(a, p)
        out.append(z - la.rank(b, p))
    return tuple(out)


@dataclass
class HomologyProfile:
    modules: dict[int, Representation]
    hsup: float
    hinf: float

    def is_exact(self) -> bool:
        return self.hsup == NEG_INF


def homology_profile(c: ChainComplex, with_modules: bool = True) -> HomologyProfile:
    mods, nz = {}, []
    for n in c.degrees:
        if sum(homology_dims(c, n)):
            nz.append(n)
            if with_modules:
                mods[n] = homology(c, n)
    return HomologyProfile(mods, max(nz) if nz else NEG_INF, min(nz) if nz else POS_INF)


def hsup(c: ChainComplex) -> float:
    for n in reversed(c.degrees):
        if sum(homology_dims(c, n)):
            return n
    return NEG_INF


def hinf(c: ChainComplex) -> float:
    for n in c.degrees:
        if sum(homology_dims(c, n)):
            return n
    return POS_INF


def is_exact(c: ChainComplex, degrees: Iterable[int] | None = None) -> bool:
    degs = c.degrees if degrees is None else degrees
    return all(not sum(homology_dims(c, n)) for n in degs)


def is_quasi_iso(f: ChainMap, degrees: Iterable[int] | None = None) -> bool:
    """Induced maps on homology are bijective (checked vertexwise)."""
    x, y = f.source, f.target
    p = x.alg.p
    if degrees is None:
        degrees = range(min(x.lo, y.lo), max(x.hi, y.hi) + 1)
    for n in degrees:
        for v in range(x.alg.vertices):
            zx = la.nullspace(x.diff(n).mats[v], p)
            bx = x.diff(n + 1).mats[v]
            by = y.diff(n + 1).mats[v]
            hx = zx.shape[1] - la.rank(bx, p)
            hy = y.term(n).dims[v] - la.rank(y.diff(n).mats[v], p) - la.rank(by, p)
            if hx != hy:
                return False
            if hx == 0:
                continue
            fz = la.mul(f.at(n).mats[v], zx, p)
            rb = la.rank(by, p)
            img = la.rank(np.hstack([fz, by]), p) - rb
            if img != hy:
                return False
    return True


# -- cone, Hom, tensor --------------------------------------------------------------------------

def mapping_cone(f: ChainMap) -> ChainComplex:
    x, y = f.source, f.target
    lo = min(x.lo + 1, y.lo)
    hi = max(x.hi + 1, y.hi)
    terms, diffs, parts = {}, {}, {}
    for n in range(lo, hi + 1):
        parts[n] = [x.term(n - 1), y.term(n)]
        terms[n] = direct_sum(parts[n])
    for n in range(lo + 1, hi + 1):
        blocks = [
            [x.diff(n - 1).scale(-1), None],
            [f.at(n - 1), y.diff(n)],
        ]
        diffs[n] = block_map(terms[n], terms[n - 1], blocks, parts[n], parts[n - 1])
    return ChainComplex(x.alg, terms, diffs, check=False)


def hom_complex(pc: ChainComplex, ac: ChainComplex) -> GradedVectorComplex:
    """``Hom(P, A)_l = ⊕_q Hom(P_q, A_{q+l})`` as a complex of vector spaces.

    ``spaces[l]`` lists ``(q, HomSpace, offset)`` so coordinates can be turned
    back into families of maps.
    """
    if pc.alg is not ac.alg:
        raise AlgebraMismatch("Hom complex over different algebras")
    p = pc.alg.p
    ps, as_ = pc.support(), ac.support()
    if ps is None or as_ is None:
        return GradedVectorComplex(p, {}, {})
    lo_l, hi_l = as_[0] - ps[1], as_[1] - ps[0]
    spaces: dict[int, list] = {}
    dims: dict[int, int] = {}
    for l in range(lo_l - 1, hi_l + 2):
        comps, off = [], 0
        for q in range(ps[0], ps[1] + 1):
            if pc.term(q).dim and ac.term(q + l).dim:
                hs = HomSpace(pc.term(q), ac.term(q + l))
                if hs.dim:
                    comps.append((q, hs, off))
                    off += hs.dim
        spaces[l] = comps
        dims[l] = off
    diffs = {}
    for l in range(lo_l, hi_l + 2):
        if not dims.get(l) or not dims.get(l - 1):
            continue
        sign = -1 if l % 2 else 1
        tgt = {q: (hs, off) for q, hs, off in spaces[l - 1]}
        mat = la.zeros(dims[l - 1], dims[l])
        for q, hs, off in spaces[l]:
            for j, phi in enumerate(hs.basis):
                col = mat[:, off + j]
                # component at q: d^A ∘ φ_q  lands in Hom(P_q, A_{q+l-1})
                if q in tgt:
                    ths, toff = tgt[q]
                    col[toff : toff + ths.dim] += ths.coords(ac.diff(q + l) @ phi)
                # component at q+1: -(-1)^l φ_q ∘ d^P_{q+1}
                if q + 1 in tgt:
                    ths, toff = tgt[q + 1]
                    col[toff : toff + ths.dim] += (-sign) * ths.coords(phi @ pc.diff(q + 1))
        diffs[l] = mat % p
    out = GradedVectorComplex(p, dims, diffs, spaces)
    out.check()
    return out


def hom_complex_element(h: GradedVectorComplex, l: int, coords: np.ndarray) -> dict[int, ModuleMap]:
    """Components ``φ_q`` of a degree-``l`` element given in coordinates."""
    out = {}
    for q, hs, off in h.spaces.get(l, []):
        out[q] = hs.combine(coords[off : off + hs.dim])
    return out


# -- module structure over commutative algebras -------------------------------------------------

def require_commutative(alg: BoundQuiverAlgebra) -> None:
    if not alg.is_commutative:
        raise NotCommutative("operation needs a commutative algebra (one vertex, commuting arrows)")


def hom_module(m: Representation, n: Representation) -> tuple[Representation, HomSpace]:
    """``Hom_A(M, N)`` as an A-module, ``(a φ)(x) = a φ(x)``."""
    require_commutative(m.alg)
    hs = HomSpace(m, n)
    mats = []
    for i in range(len(m.alg.quiver.arrows)):
        act = ModuleMap(n, n, [n.mats[i]], check=False)
        cols = [hs.coords(act @ b) for b in hs.basis]
        mats.append(np.stack(cols, axis=1) if cols else la.zeros(0, 0))
    return Representation(m.alg, [hs.dim], mats, check=False), hs


def module_hom_complex(uc: ChainComplex, xc: ChainComplex) -> ChainComplex:
    """``Hom_A(U, X)`` as a complex of A-modules (A commutative)."""
    require_commutative(uc.alg)
    h = hom_complex(uc, xc)
    alg = uc.alg
    terms = {}
    for l, comps in h.spaces.items():
        if not h.dim(l):
            continue
        mats = []
        for i in range(len(alg.quiver.arrows)):
            mat = la.zeros(h.dim(l), h.dim(l))
            for q, hs, off in comps:
                n = xc.term(q + l)
                act = ModuleMap(n, n, [n.mats[i]], check=False)
                for j, b in enumerate(hs.basis):
                    mat[off : off + hs.dim, off + j] = hs.coords(act @ b)
            mats.append(mat)
        terms[l] = Representation(alg, [h.dim(l)], mats, check=False)
    if not terms:
        return zero_complex(alg)
    lo, hi = min(terms), max(terms)
    terms = {l: terms.get(l, zero_module(alg)) for l in range(lo, hi + 1)}
    diffs = {l: ModuleMap(terms[l], terms[l - 1], [h.diff(l)], check=False) for l in range(lo + 1, hi + 1)}
    return ChainComplex(alg, terms, diffs)


@dataclass
class TensorProduct:
    module: Representation
    q: np.ndarray  # projection from M ⊗_k N
    s: np.ndarray  # section into M ⊗_k N


def tensor_modules(m: Representation, n: Representation) -> TensorProduct:
    """``M ⊗_A N`` as the quotient of ``M ⊗_k N`` by ``{am⊗n - m⊗an}``."""
    require_commutative(m.alg)
    p = m.p
    dm, dn = m.dims[0], n.dims[0]
    rel = [(np.kron(mm, la.eye(dn)) - np.kron(la.eye(dm), nm)) % p for mm, nm in zip(m.mats, n.mats)]
    span = np.hstack(rel) if rel and dm * dn else la.zeros(dm * dn, 0)
    q, s = la.complement(span, dm * dn, p)
    mats = [la.mul(q, la.mul(np.kron(mm, la.eye(dn)), s, p), p) for mm in m.mats]
    return TensorProduct(Representation(m.alg, [q.shape[0]], mats, check=False), q, s)


def tensor_maps(f: ModuleMap, g: ModuleMap, src: TensorProduct, tgt: TensorProduct) -> ModuleMap:
    p = f.p
    k = np.kron(f.mats[0], g.mats[0]) % p
    return ModuleMap(src.module, tgt.module, [la.mul(tgt.q, la.mul(k, src.s, p), p)], check=False)


def tensor_complex(pc: ChainComplex, ac: ChainComplex) -> ChainComplex:
    """``(P ⊗_A A)_l = ⊕_q P_q ⊗ A_{l-q}`` with Koszul signs."""
    if pc.alg is not ac.alg:
        raise AlgebraMismatch("tensor over different algebras")
    require_commutative(pc.alg)
    alg = pc.alg
    ps, as_ = pc.support(), ac.support()
    if ps is None or as_ is None:
        return zero_complex(alg)
    cache: dict[tuple[int, int], TensorProduct] = {}

    def tp(q: int, r: int) -> TensorProduct:
        if (q, r) not in cache:
            cache[(q, r)] = tensor_modules(pc.term(q), ac.term(r))
        return cache[(q, r)]

    qs = range(ps[0], ps[1] + 1)
    lo, hi = ps[0] + as_[0], ps[1] + as_[1]
    comps = {l: [q for q in qs if as_[0] <= l - q <= as_[1]] for l in range(lo, hi + 1)}
    terms, parts = {}, {}
    for l in range(lo, hi + 1):
        parts[l] = [tp(q, l - q).module for q in comps[l]]
        terms[l] = direct_sum(parts[l]) if parts[l] else zero_module(alg)
    diffs = {}
    for l in range(lo + 1, hi + 1):
        idx_t = {q: r for r, q in enumerate(comps[l - 1])}
        blocks = [[None] * len(comps[l]) for _ in comps[l - 1]]
        for c, q in enumerate(comps[l]):
            r = l - q
            if q - 1 in idx_t:
                blocks[idx_t[q - 1]][c] = tensor_maps(pc.diff(q), identity_map(ac.term(r)), tp(q, r), tp(q - 1, r))
            if q in idx_t:
                f = tensor_maps(identity_map(pc.term(q)), ac.diff(r), tp(q, r), tp(q, r - 1))
                blocks[idx_t[q]][c] = f.scale(-1) if q % 2 else f
        if parts[l] and parts[l - 1]:
            diffs[l] = block_map(terms[l], terms[l - 1], blocks, parts[l], parts[l - 1])
    return ChainComplex(alg, terms, diffs, check=True)
