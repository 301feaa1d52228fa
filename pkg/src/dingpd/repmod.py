"""Finitely generated modules as quiver representations.

A left module ``M`` is stored as one vector space ``M_v`` per vertex and one
matrix per arrow ``a: v -> w`` (shape ``dim M_w x dim M_v``).  A basis path
acts by the product of its arrow matrices in traversal order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from . import exactla as la
from .algebra import BoundQuiverAlgebra, _word_to_path
from .errors import AlgebraMismatch, InputError, UndeterminedIsomorphism

ISO_RANDOM_DRAWS = 64
ISO_EXHAUSTIVE_LIMIT = 1 << 20


class Representation:
    """A representation of the bound quiver of ``alg`` satisfying its relations.

    ``free_gens`` is set on modules built by :func:`free_module`; it lists the
    generator vertices of the direct sum of indecomposable projectives.
    """

    def __init__(
        self,
        alg: BoundQuiverAlgebra,
        dims: Sequence[int],
        mats: Sequence[np.ndarray] | dict,
        check: bool = True,
        free_gens: tuple[int, ...] | None = None,
    ):
        self.alg = alg
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != alg.vertices or any(d < 0 for d in self.dims):
            raise InputError(f"dimension vector {list(dims)} does not fit {alg.vertices} vertices")
        arrows = alg.quiver.arrows
        if isinstance(mats, dict):
            mats = [
                mats.get(a.id, mats.get(i)) if mats.get(a.id, mats.get(i)) is not None
                else la.zeros(self.dims[a.target], self.dims[a.source])
                for i, a in enumerate(arrows)
            ]
        if len(mats) != len(arrows):
            raise InputError("one matrix per arrow is required")
        out = []
        for a, m in zip(arrows, mats):
            m = np.asarray(m, dtype=np.int64).reshape(self.dims[a.target], self.dims[a.source]) % alg.p
            m.setflags(write=False)
            out.append(m)
        self.mats = tuple(out)
        self.free_gens = free_gens
        self._path_cache: dict[int, np.ndarray] = {}
        if check:
            bad = self.relation_defect()
            if bad is not None:
                raise InputError(f"representation violates relation {bad}")

    # -- structure ----------------------------------------------------------
    @property
    def p(self) -> int:
        return self.alg.p

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.dim == 0

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        out, s = [], 0
        for d in self.dims:
            out.append(s)
            s += d
        return tuple(out)

    def path_action(self, i: int) -> np.ndarray:
        """Matrix of basis path ``i``: ``M_source -> M_target``."""
        if i not in self._path_cache:
            s, arrows = self.alg.basis[i]
            m = la.eye(self.dims[s])
            for a in arrows:
                m = la.mul(self.mats[a], m, self.p)
            m.setflags(write=False)
            self._path_cache[i] = m
        return self._path_cache[i]

    def word_action(self, word: Sequence[str]) -> np.ndarray:
        s, arrows = _word_to_path(self.alg.quiver, word)
        m = la.eye(self.dims[s])
        for a in arrows:
            m = la.mul(self.mats[a], m, self.p)
        return m

    def element_action(self, x: np.ndarray) -> np.ndarray:
        """Matrix of an algebra element on the total space ``⊕_v M_v``."""
        n = self.dim
        out = la.zeros(n, n)
        for i in np.flatnonzero(x):
            s, t = self.alg.source(i), self.alg.target(i)
            blk = self.path_action(i)
            o_s, o_t = self.offsets[s], self.offsets[t]
            out[o_t : o_t + self.dims[t], o_s : o_s + self.dims[s]] += x[i] * blk
        return out % self.p

    def relation_defect(self):
        for rel in self.alg.relations:
            total = None
            for c, word in rel:
                m = (c * self.word_action(word)) % self.p
                total = m if total is None else (total + m) % self.p
            if total is not None and np.any(total):
                return [[c, list(w)] for c, w in rel]
        return None

    def same_data(self, other: "Representation") -> bool:
        return (
            self.alg is other.alg
            and self.dims == other.dims
            and all(np.array_equal(a, b) for a, b in zip(self.mats, other.mats))
        )

    def to_doc(self) -> dict:
        return {
            "dims": list(self.dims),
            "arrows": {a.id: m.tolist() for a, m in zip(self.alg.quiver.arrows, self.mats)},
        }

    def __repr__(self) -> str:
        return f"Representation(dims={list(self.dims)})"


def module_from_doc(alg: BoundQuiverAlgebra, doc: dict) -> Representation:
    try:
        dims = [int(d) for d in doc["dims"]]
        raw = doc.get("arrows", {})
        if not isinstance(raw, dict):
            raise TypeError("arrows must be an object")
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed module document: {exc!r}") from None
    if len(dims) != alg.vertices:
        raise InputError(f"module.dims: expected {alg.vertices} entries, got {len(dims)}")
    mats = {}
    for key, rows in raw.items():
        if key not in alg.quiver.arrow_index:
            raise InputError(f"module.arrows: unknown arrow {key!r}")
        a = alg.quiver.arrows[alg.quiver.arrow_index[key]]
        shape = (dims[a.target], dims[a.source])
        arr = np.array(rows, dtype=np.int64) if len(rows) else la.zeros(*shape)
        if arr.size == 0:
            arr = la.zeros(*shape)
        if arr.shape != shape:
            raise InputError(f"module.arrows.{key}: expected shape {shape}, got {arr.shape}")
        mats[key] = arr
    return Representation(alg, dims, mats)


class ModuleMap:
    """A homomorphism given by one matrix per vertex."""

    def __init__(self, source: Representation, target: Representation, mats: Sequence[np.ndarray], check: bool = True):
        if source.alg is not target.alg:
            raise AlgebraMismatch("module map between modules over different algebras")
        self.source = source
        self.target = target
        p = source.p
        self.mats = tuple(
            (np.asarray(m, dtype=np.int64).reshape(target.dims[v], source.dims[v]) % p)
            for v, m in enumerate(mats)
        )
        if check and not self.commutes():
            raise InputError("matrices do not commute with the arrow actions")

    @property
    def p(self) -> int:
        return self.source.p

    @property
    def alg(self) -> BoundQuiverAlgebra:
        return self.source.alg

    def commutes(self) -> bool:
        for i, a in enumerate(self.alg.quiver.arrows):
            lhs = la.mul(self.target.mats[i], self.mats[a.source], self.p)
            rhs = la.mul(self.mats[a.target], self.source.mats[i], self.p)
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def flat(self) -> np.ndarray:
        parts = [m.ravel() for m in self.mats]
        return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)

    def total(self) -> np.ndarray:
        return la.block_diag(list(self.mats))

    def is_zero(self) -> bool:
        return not any(np.any(m) for m in self.mats)

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """``self ∘ other``."""
        return ModuleMap(
            other.source,
            self.target,
            [la.mul(a, b, self.p) for a, b in zip(self.mats, other.mats)],
            check=False,
        )

    def __matmul__(self, other: "ModuleMap") -> "ModuleMap":
        return self.compose(other)

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target, [(a + b) % self.p for a, b in zip(self.mats, other.mats)], check=False)

    def __sub__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target, [(a - b) % self.p for a, b in zip(self.mats, other.mats)], check=False)

    def scale(self, c: int) -> "ModuleMap":
        return ModuleMap(self.source, self.target, [(c * a) % self.p for a in self.mats], check=False)

    def equals(self, other: "ModuleMap") -> bool:
        return all(np.array_equal(a, b) for a, b in zip(self.mats, other.mats))

    def is_injective(self) -> bool:
        return all(la.rank(m, self.p) == m.shape[1] for m in self.mats)

    def is_surjective(self) -> bool:
        return all(la.rank(m, self.p) == m.shape[0] for m in self.mats)

    def is_iso(self) -> bool:
        return self.source.dims == self.target.dims and self.is_injective()

    def inverse(self) -> "ModuleMap | None":
        inv = [la.inverse(m, self.p) for m in self.mats]
        if any(m is None for m in inv):
            return None
        return ModuleMap(self.target, self.source, inv, check=False)

    def rank(self) -> int:
        return sum(la.rank(m, self.p) for m in self.mats)

    def __repr__(self) -> str:
        return f"ModuleMap({list(self.source.dims)} -> {list(self.target.dims)})"


# -- constructors ---------------------------------------------------------------

def zero_module(alg: BoundQuiverAlgebra) -> Representation:
    return Representation(alg, [0] * alg.vertices, [la.zeros(0, 0)] * len(alg.quiver.arrows), check=False)


def zero_map(m: Representation, n: Representation) -> ModuleMap:
    return ModuleMap(m, n, [la.zeros(n.dims[v], m.dims[v]) for v in range(m.alg.vertices)], check=False)


def identity_map(m: Representation) -> ModuleMap:
    return ModuleMap(m, m, [la.eye(d) for d in m.dims], check=False)


def simple_module(alg: BoundQuiverAlgebra, v: int) -> Representation:
    dims = [0] * alg.vertices
    dims[v] = 1
    return Representation(alg, dims, [la.zeros(dims[a.target], dims[a.source]) for a in alg.quiver.arrows])


def direct_sum(mods: Sequence[Representation]) -> Representation:
    alg = mods[0].alg
    dims = [sum(m.dims[v] for m in mods) for v in range(alg.vertices)]
    mats = [la.block_diag([m.mats[i] for m in mods]) for i in range(len(alg.quiver.arrows))]
    gens = None
    if all(m.free_gens is not None for m in mods):
        gens = tuple(g for m in mods for g in m.free_gens)
    return Representation(alg, dims, mats, check=False, free_gens=gens)


def direct_sum_maps(maps: Sequence[ModuleMap], source=None, target=None) -> ModuleMap:
    source = source or direct_sum([f.source for f in maps])
    target = target or direct_sum([f.target for f in maps])
    nv = source.alg.vertices
    return ModuleMap(source, target, [la.block_diag([f.mats[v] for f in maps]) for v in range(nv)], check=False)


def block_map(source: Representation, target: Representation, blocks, src_parts, tgt_parts) -> ModuleMap:
    """Assemble a map between direct sums from a grid of component maps.

    ``blocks[r][c]`` maps ``src_parts[c]`` to ``tgt_parts[r]`` (None = zero).
    """
    nv = source.alg.vertices
    mats = []
    for v in range(nv):
        m = la.zeros(target.dims[v], source.dims[v])
        ro = 0
        for r, tp in enumerate(tgt_parts):
            co = 0
            for c, sp in enumerate(src_parts):
                b = blocks[r][c]
                if b is not None:
                    m[ro : ro + tp.dims[v], co : co + sp.dims[v]] = b.mats[v]
                co += sp.dims[v]
            ro += tp.dims[v]
        mats.append(m)
    return ModuleMap(source, target, mats, check=False)


def injection(parts: Sequence[Representation], k: int, total: Representation) -> ModuleMap:
    blocks = [[identity_map(parts[k]) if r == k else None] for r in range(len(parts))]
    return block_map(parts[k], total, blocks, [parts[k]], parts)


def projection(parts: Sequence[Representation], k: int, total: Representation) -> ModuleMap:
    blocks = [[identity_map(parts[k]) if c == k else None for c in range(len(parts))]]
    return block_map(total, parts[k], blocks, parts, [parts[k]])


def free_module(alg: BoundQuiverAlgebra, gens: Sequence[int]) -> Representation:
    """``⊕_g A e_{gens[g]}`` with the path basis, generators in the given order."""
    gens = tuple(gens)
    pb = alg.paths_between
    dims = [sum(len(pb[(g, w)]) for g in gens) for w in range(alg.vertices)]
    mats = []
    for ai, a in enumerate(alg.quiver.arrows):
        w, w2 = a.source, a.target
        blocks = []
        aidx = alg.arrow(ai)
        for g in gens:
            src = pb[(g, w)]
            tgt = pb[(g, w2)]
            blk = la.zeros(len(tgt), len(src))
            for c, q in enumerate(src):
                prod = alg.mult[aidx, q]
                blk[:, c] = prod[tgt]
            blocks.append(blk)
        mats.append(la.block_diag(blocks) if blocks else la.zeros(dims[w2], dims[w]))
    return Representation(alg, dims, mats, check=False, free_gens=gens)


def generator_positions(free: Representation) -> list[int]:
    """Index inside ``free.dims[v_g]`` of each generator ``e_{v_g}``."""
    alg = free.alg
    pb = alg.paths_between
    out = []
    fill = [0] * alg.vertices
    for g in free.free_gens:
        block = pb[(g, g)]
        out.append(fill[g] + block.index(alg.idempotent(g)))
        for w in range(alg.vertices):
            fill[w] += len(pb[(g, w)])
    return out


def map_from_free(free: Representation, target: Representation, images: Sequence[np.ndarray]) -> ModuleMap:
    """The unique map sending generator ``g`` to ``images[g]`` in ``target_{v_g}``."""
    alg, p = free.alg, free.p
    pb = alg.paths_between
    gens = free.free_gens
    # images grouped by generator vertex, one column per generator
    groups: dict[int, list[int]] = {}
    for gi, g in enumerate(gens):
        groups.setdefault(g, []).append(gi)
    stacked = {
        v: np.stack([np.asarray(images[gi], dtype=np.int64).reshape(-1) for gi in idx], axis=1)
        for v, idx in groups.items()
    }
    mats = []
    for w in range(alg.vertices):
        out = la.zeros(target.dims[w], free.dims[w])
        # column offset of generator gi's block inside free_w
        offs, o = [], 0
        for g in gens:
            offs.append(o)
            o += len(pb[(g, w)])
        for v, idx in groups.items():
            for j, q in enumerate(pb[(v, w)]):
                r = la.mul(target.path_action(q), stacked[v], p)
                out[:, [offs[gi] + j for gi in idx]] = r
        mats.append(out)
    return ModuleMap(free, target, mats, check=False)


def indecomposable_projectives(alg: BoundQuiverAlgebra) -> list[Representation]:
    cache = alg.__dict__.setdefault("_projectives", None)
    if cache is None:
        cache = [free_module(alg, [v]) for v in range(alg.vertices)]
        alg.__dict__["_projectives"] = cache
    return cache


def regular_module(alg: BoundQuiverAlgebra) -> Representation:
    return free_module(alg, list(range(alg.vertices)))


def right_mult_map(alg: BoundQuiverAlgebra, b: int) -> ModuleMap:
    """Right multiplication by basis path ``b: i -> j`` as a map ``P_j -> P_i``."""
    i, j = alg.source(b), alg.target(b)
    proj = indecomposable_projectives(alg)
    pb = alg.paths_between
    mats = []
    for w in range(alg.vertices):
        src, tgt = pb[(j, w)], pb[(i, w)]
        m = la.zeros(len(tgt), len(src))
        for c, q in enumerate(src):
            m[:, c] = alg.mult[q, b][tgt]
        mats.append(m)
    return ModuleMap(proj[j], proj[i], mats, check=False)


# -- sub- and quotient modules ----------------------------------------------------

def submodule(m: Representation, bases: Sequence[np.ndarray]) -> tuple[Representation, ModuleMap]:
    """Submodule with the given per-vertex bases (independent columns, closed)."""
    p = m.p
    linv = [la.left_inverse(b, p) for b in bases]
    dims = [b.shape[1] for b in bases]
    mats = []
    for i, a in enumerate(m.alg.quiver.arrows):
        img = la.mul(m.mats[i], bases[a.source], p)
        mats.append(la.mul(linv[a.target], img, p))
    sub = Representation(m.alg, dims, mats, check=False)
    return sub, ModuleMap(sub, m, list(bases), check=False)


def quotient(m: Representation, bases: Sequence[np.ndarray]) -> tuple[Representation, ModuleMap, list[np.ndarray]]:
    """Quotient by a submodule given by spanning columns per vertex.

    Returns the quotient, the projection, and per-vertex sections.
    """
    p = m.p
    qs, ss = [], []
    for v, b in enumerate(bases):
        q, s = la.complement(b, m.dims[v], p)
        qs.append(q)
        ss.append(s)
    mats = []
    for i, a in enumerate(m.alg.quiver.arrows):
        mats.append(la.mul(qs[a.target], la.mul(m.mats[i], ss[a.source], p), p))
    quo = Representation(m.alg, [q.shape[0] for q in qs], mats, check=False)
    return quo, ModuleMap(m, quo, qs, check=False), ss


def generated_submodule(m: Representation, elements: Sequence[tuple[int, np.ndarray]]) -> list[np.ndarray]:
    """Per-vertex spanning columns of the submodule generated by ``(v, x)`` pairs."""
    alg = m.alg
    cols: list[list[np.ndarray]] = [[] for _ in range(alg.vertices)]
    for v, x in elements:
        x = np.asarray(x, dtype=np.int64).reshape(-1, 1)
        for w in range(alg.vertices):
            for q in alg.paths_between[(v, w)]:
                cols[w].append(la.mul(m.path_action(q), x, alg.p))
    return [
        la.column_basis(np.hstack(c), alg.p) if c else la.zeros(m.dims[w], 0)
        for w, c in enumerate(cols)
    ]


def kernel_cokernel(f: ModuleMap):
    """``((ker, inclusion), (coker, projection))``."""
    p = f.p
    kb = [la.nullspace(m, p) for m in f.mats]
    ker, inc = submodule(f.source, kb)
    ib = [la.column_basis(m, p) if m.shape[1] else la.zeros(m.shape[0], 0) for m in f.mats]
    cok, proj, _ = quotient(f.target, ib)
    return (ker, inc), (cok, proj)


def kernel(f: ModuleMap) -> tuple[Representation, ModuleMap]:
    kb = [la.nullspace(m, f.p) for m in f.mats]
    return submodule(f.source, kb)


def cokernel(f: ModuleMap) -> tuple[Representation, ModuleMap, list[np.ndarray]]:
    ib = [la.column_basis(m, f.p) if m.shape[1] else la.zeros(m.shape[0], 0) for m in f.mats]
    return quotient(f.target, ib)


def image(f: ModuleMap) -> tuple[Representation, ModuleMap]:
    ib = [la.column_basis(m, f.p) if m.shape[1] else la.zeros(m.shape[0], 0) for m in f.mats]
    return submodule(f.target, ib)


def radical_bases(m: Representation) -> list[np.ndarray]:
    """Per-vertex bases of ``rad M``, the sum of the arrow images."""
    alg = m.alg
    out = []
    for w in range(alg.vertices):
        ims = [m.mats[i] for i, a in enumerate(alg.quiver.arrows) if a.target == w and m.mats[i].shape[1]]
        if ims:
            out.append(la.column_basis(np.hstack(ims), m.p))
        else:
            out.append(la.zeros(m.dims[w], 0))
    return out


def top_and_cover(m: Representation) -> tuple[Representation, ModuleMap]:
    """``(M / rad M, projective cover ⊕ P_v^{t_v} -> M)``."""
    top, _, sections = quotient(m, radical_bases(m))
    gens: list[int] = []
    images: list[np.ndarray] = []
    for v, s in enumerate(sections):
        for c in range(s.shape[1]):
            gens.append(v)
            images.append(s[:, c])
    free = free_module(m.alg, gens)
    return top, map_from_free(free, m, images)


def free_cover_all(m: Representation) -> ModuleMap:
    """Non-minimal cover, free on a basis of every ``M_v``."""
    gens, images = [], []
    for v in range(m.alg.vertices):
        for c in range(m.dims[v]):
            e = np.zeros(m.dims[v], dtype=np.int64)
            e[c] = 1
            gens.append(v)
            images.append(e)
    return map_from_free(free_module(m.alg, gens), m, images)


def syzygy(m: Representation) -> Representation:
    _, cover = top_and_cover(m)
    return kernel(cover)[0]


def is_projective(m: Representation) -> bool:
    _, cover = top_and_cover(m)
    return cover.source.dim == m.dim


# -- Hom spaces -----------------------------------------------------------------------

class HomSpace:
    """Basis of ``Hom_A(M, N)`` together with a coordinate extractor."""

    def __init__(self, m: Representation, n: Representation):
        if m.alg is not n.alg:
            raise AlgebraMismatch("Hom between modules over different algebras")
        self.source, self.target = m, n
        alg, p = m.alg, m.p
        sizes = [n.dims[v] * m.dims[v] for v in range(alg.vertices)]
        offs = np.concatenate([[0], np.cumsum(sizes)]).astype(int)
        total = int(offs[-1])
        rows = []
        for i, a in enumerate(alg.quiver.arrows):
            s, t = a.source, a.target
            r = n.dims[t] * m.dims[s]
            if r == 0:
                continue
            block = la.zeros(r, total)
            block[:, offs[s] : offs[s + 1]] = np.kron(n.mats[i], la.eye(m.dims[s]))
            block[:, offs[t] : offs[t + 1]] = (
                block[:, offs[t] : offs[t + 1]] - np.kron(la.eye(n.dims[t]), m.mats[i].T)
            ) % p
            rows.append(block)
        system = la.stack_rows(rows, total)
        self.matrix = la.nullspace(system, p)  # columns: flattened basis maps
        self._offs = offs
        self._linv = None

    @property
    def dim(self) -> int:
        return self.matrix.shape[1]

    def unflatten(self, vec: np.ndarray) -> ModuleMap:
        m, n = self.source, self.target
        mats = []
        for v in range(m.alg.vertices):
            mats.append(vec[self._offs[v] : self._offs[v + 1]].reshape(n.dims[v], m.dims[v]))
        return ModuleMap(m, n, mats, check=False)

    @cached_property
    def basis(self) -> list[ModuleMap]:
        return [self.unflatten(self.matrix[:, j]) for j in range(self.dim)]

    def coords(self, f: ModuleMap | np.ndarray) -> np.ndarray:
        vec = f.flat() if isinstance(f, ModuleMap) else f
        if self._linv is None:
            self._linv = la.left_inverse(self.matrix, self.source.p)
        return la.mul(self._linv, vec.reshape(-1, 1), self.source.p)[:, 0]

    def combine(self, coeffs: np.ndarray) -> ModuleMap:
        vec = la.mul(self.matrix, np.asarray(coeffs, dtype=np.int64).reshape(-1, 1), self.source.p)[:, 0]
        return self.unflatten(vec)


def hom_space(m: Representation, n: Representation) -> HomSpace:
    return HomSpace(m, n)


def solve_postcompose(d: ModuleMap, target: ModuleMap) -> ModuleMap | None:
    """Some ``s`` with ``d ∘ s = target`` (``s: X -> Y`` for ``d: Y -> Z``)."""
    hs = HomSpace(target.source, d.source)
    if hs.dim == 0:
        return zero_map(target.source, d.source) if target.is_zero() else None
    cols = [(d @ b).flat() for b in hs.basis]
    a = np.stack(cols, axis=1) if cols[0].size else la.zeros(0, len(cols))
    x = la.solve(a, target.flat(), d.p)
    return None if x is None else hs.combine(x)


def solve_precompose(d: ModuleMap, target: ModuleMap) -> ModuleMap | None:
    """Some ``s`` with ``s ∘ d = target`` (``s: Y -> Z`` for ``d: X -> Y``)."""
    hs = HomSpace(d.target, target.target)
    if hs.dim == 0:
        return zero_map(d.target, target.target) if target.is_zero() else None
    cols = [(b @ d).flat() for b in hs.basis]
    a = np.stack(cols, axis=1) if cols[0].size else la.zeros(0, len(cols))
    x = la.solve(a, target.flat(), d.p)
    return None if x is None else hs.combine(x)


# -- isomorphism --------------------------------------------------------------------

def _radical_layers(m: Representation) -> list[tuple[int, ...]]:
    layers = []
    cur = m
    for _ in range(m.alg.nilpotency + 1):
        layers.append(cur.dims)
        if cur.dim == 0:
            break
        cur, _ = submodule(cur, radical_bases(cur))
    return layers


def _invariants(m: Representation):
    return (m.dims, tuple(_radical_layers(m)))


def is_isomorphic(m: Representation, n: Representation, seed: int = 0) -> ModuleMap | None:
    """An isomorphism ``M -> N`` if one exists, else None.

    Raises UndeterminedIsomorphism when the invertible-element search is
    inconclusive and the exhaustive fallback is too large.
    """
    if m.alg is not n.alg:
        raise AlgebraMismatch("modules over different algebras")
    if m.dims != n.dims:
        return None
    if m.dim == 0:
        return identity_map(m) if n.dim == 0 else None
    if m.same_data(n):
        return identity_map(m)
    if _invariants(m) != _invariants(n):
        return None
    hmn = HomSpace(m, n)
    k = hmn.dim
    if k == 0 or k != HomSpace(n, m).dim or k != HomSpace(m, m).dim or k != HomSpace(n, n).dim:
        return None
    p = m.p
    rng = np.random.default_rng(seed)
    for _ in range(ISO_RANDOM_DRAWS):
        c = rng.integers(0, p, size=k)
        f = hmn.combine(c)
        if f.is_injective():
            return f
    if p**k > ISO_EXHAUSTIVE_LIMIT:
        raise UndeterminedIsomorphism(
            f"no invertible element in {ISO_RANDOM_DRAWS} draws and p^{k} exceeds the exhaustive limit"
        )
    import itertools

    for c in itertools.product(range(p), repeat=k):
        if not any(c):
            continue
        f = hmn.combine(np.array(c, dtype=np.int64))
        if f.is_injective():
            return f
    return None


# -- duality --------------------------------------------------------------------------

@dataclass
class Dual:
    """``M* = Hom_A(M, A)`` as a module over the opposite algebra."""

    module: Representation  # over alg.opposite()
    homs: list[HomSpace]  # homs[v] = Hom_A(M, P_v) spans (M*)_v
    source: Representation


def dual_star(m: Representation) -> Dual:
    alg = m.alg
    op = alg.opposite()
    proj = indecomposable_projectives(alg)
    homs = [HomSpace(m, proj[v]) for v in range(alg.vertices)]
    dims = [h.dim for h in homs]
    mats = []
    for ai, a in enumerate(alg.quiver.arrows):
        # arrow a: i -> j acts on M* as j -> i by post-composing with right mult
        i, j = a.source, a.target
        rho = right_mult_map(alg, alg.arrow(ai))
        cols = [homs[i].coords(rho @ f) for f in homs[j].basis]
        mats.append(np.stack(cols, axis=1) if cols else la.zeros(dims[i], 0))
    star = Representation(op, dims, mats, check=False)
    return Dual(star, homs, m)


def dual_map(f: ModuleMap, m_star: Dual, n_star: Dual) -> ModuleMap:
    """``f*: N* -> M*`` for ``f: M -> N``."""
    mats = []
    for v in range(f.alg.vertices):
        cols = [m_star.homs[v].coords(phi @ f) for phi in n_star.homs[v].basis]
        mats.append(np.stack(cols, axis=1) if cols else la.zeros(m_star.module.dims[v], 0))
    return ModuleMap(n_star.module, m_star.module, mats, check=False)


def double_dual_map(m: Representation, first: Dual | None = None) -> tuple[Dual, Dual, ModuleMap]:
    """``(M*, M**, eta)`` with ``eta: M -> M**`` the evaluation map."""
    first = first or dual_star(m)
    second = dual_star(first.module)
    alg = m.alg
    assert second.module.alg is alg
    p = alg.p
    mats = []
    for w in range(alg.vertices):
        cols = []
        for c in range(m.dims[w]):
            x = np.zeros((m.dims[w], 1), dtype=np.int64)
            x[c, 0] = 1
            ev = []
            for v in range(alg.vertices):
                fcols = [la.mul(f.mats[w], x, p)[:, 0] for f in first.homs[v].basis]
                size = len(alg.paths_between[(v, w)])
                ev.append(np.stack(fcols, axis=1) if fcols else la.zeros(size, 0))
            evmap = ModuleMap(first.module, indecomposable_projectives(alg.opposite())[w], ev, check=False)
            cols.append(second.homs[w].coords(evmap))
        mats.append(np.stack(cols, axis=1) if cols else la.zeros(second.module.dims[w], 0))
    eta = ModuleMap(m, second.module, mats, check=False)
    return first, second, eta


# -- syzygies and Ext -------------------------------------------------------------------

class SyzygyChain:
    """Iterated syzygies ``Ω^0 M = M, Ω^1 M, ...`` with their covers.

    ``covers[k]: F_k -> Ω^k`` and ``inclusions[k]: Ω^{k+1} -> F_k``, both built
    lazily.  The first ``nonminimal_steps`` covers are free on a basis of the
    module instead of minimal.
    """

    def __init__(self, m: Representation, minimal: bool = True, nonminimal_steps: int | None = None):
        self.minimal = minimal and not nonminimal_steps
        if nonminimal_steps is None:
            nonminimal_steps = 0 if minimal else 1 << 30
        self.nonminimal_steps = nonminimal_steps
        self.syzygies = [m]
        self.covers: list[ModuleMap] = []
        self.inclusions: list[ModuleMap] = []

    def cover(self, k: int) -> ModuleMap:
        while len(self.covers) <= k:
            j = len(self.covers)
            cur = self.syzygy(j)
            self.covers.append(free_cover_all(cur) if j < self.nonminimal_steps else top_and_cover(cur)[1])
        return self.covers[k]

    def syzygy(self, k: int) -> Representation:
        while len(self.syzygies) <= k:
            j = len(self.syzygies) - 1
            ker, inc = kernel(self.cover(j))
            self.inclusions.append(inc)
            self.syzygies.append(ker)
        return self.syzygies[k]

    def extend_to(self, k: int) -> None:
        self.syzygy(k)

    def free(self, k: int) -> Representation:
        return self.cover(k).source

    def differential(self, k: int) -> ModuleMap:
        """``d_k: F_k -> F_{k-1}`` (``k >= 1``)."""
        c = self.cover(k)
        return self.inclusions[k - 1] @ c

    def depth_within(self, budget: int, limit: int) -> int:
        """Largest ``k <= limit`` with every ``Ω^j`` (``j <= k``) of dimension at most ``budget``."""
        k = 0
        while k < limit and self.syzygy(k + 1).dim <= budget:
            k += 1
        return k


@dataclass
class ExtWitness:
    """``Ext^i(M, N)`` presented through ``Hom(F_•, N)`` in generator coordinates.

    ``restriction`` is ``d_i^*: Hom(F_{i-1}, N) -> Hom(F_i, N)`` and ``cocycles``
    is ``d_{i+1}^*``; its kernel is ``Hom(Ω^i M, N)`` (precompose with the
    cover ``F_i -> Ω^i``), so ``Ext^i`` is the cokernel of the restriction
    onto that kernel.
    """

    degree: int
    dim: int
    restriction: np.ndarray
    cocycles: np.ndarray
    hom_dim: int

    @classmethod
    def from_matrices(cls, degree: int, restriction: np.ndarray, cocycles: np.ndarray, p: int) -> "ExtWitness":
        z = cocycles.shape[1] - (la.rank(cocycles, p) if cocycles.size else 0)
        b = la.rank(restriction, p) if restriction.size else 0
        return cls(degree, z - b, restriction, cocycles, z)

    def replay(self, p: int) -> bool:
        again = ExtWitness.from_matrices(self.degree, self.restriction, self.cocycles, p)
        if self.restriction.size and self.cocycles.size:
            if np.any(la.mul(self.cocycles, self.restriction, p)):
                return False
        return again.dim == self.dim

    def to_doc(self) -> dict:
        return {
            "degree": self.degree,
            "dim": self.dim,
            "hom_dim": self.hom_dim,
            "restriction": self.restriction.tolist(),
            "cocycles": self.cocycles.tolist(),
        }


def adjunction_matrix(d: ModuleMap, n: Representation) -> np.ndarray:
    """``φ -> φ ∘ d`` on ``Hom(F, N) -> Hom(F', N)`` for ``d: F' -> F`` between free modules.

    A map out of a free module is its tuple of generator values, so columns
    run over (generator g of F, basis of ``N_{v_g}``) and rows likewise for F'.
    """
    tgt, src = d.target, d.source
    alg, p = n.alg, n.p
    pb = alg.paths_between
    col_off, off = [], 0
    for g in tgt.free_gens:
        col_off.append(off)
        off += n.dims[g]
    ncols = off
    rows = []
    # where each (generator g, path q) of F sits inside F_w
    layout: list[dict[tuple[int, int], int]] = [dict() for _ in range(alg.vertices)]
    fill = [0] * alg.vertices
    for gi, g in enumerate(tgt.free_gens):
        for w in range(alg.vertices):
            for q in pb[(g, w)]:
                layout[w][(gi, q)] = fill[w]
                fill[w] += 1
    for g2, pos in zip(src.free_gens, generator_positions(src)):
        img = d.mats[g2][:, pos]
        block = la.zeros(n.dims[g2], ncols)
        for (gi, q), r in layout[g2].items():
            c = int(img[r])
            if c:
                g = tgt.free_gens[gi]
                block[:, col_off[gi] : col_off[gi] + n.dims[g]] += c * n.path_action(q)
        rows.append(block % p)
    return la.stack_rows(rows, ncols) if rows else la.zeros(0, ncols)


def ext_from_chain(chain: SyzygyChain, n: Representation, i: int, base: int = 0) -> ExtWitness:
    """``Ext^i(Ω^base M, N)`` from the (tail of the) resolution held by ``chain``."""
    if i < 0:
        raise ValueError("Ext degree must be nonnegative")
    m = chain.syzygies[0]
    if m.alg is not n.alg:
        raise AlgebraMismatch("Ext between modules over different algebras")
    t = base + i
    p = n.p
    cocycles = adjunction_matrix(chain.differential(t + 1), n)
    if i == 0:
        restriction = la.zeros(cocycles.shape[1], 0)
    else:
        restriction = adjunction_matrix(chain.differential(t), n)
    return ExtWitness.from_matrices(i, restriction, cocycles, p)


def ext_group(m: Representation, n: Representation, i: int, chain: SyzygyChain | None = None) -> ExtWitness:
    """``Ext^i_A(M, N)`` from the minimal projective resolution of ``M``."""
    return ext_from_chain(chain or SyzygyChain(m), n, i)


def ext_group_nonminimal(m: Representation, n: Representation, i: int, steps: int | None = None) -> int:
    """Ext dimension through a resolution whose first ``steps`` covers are free on all elements.

    ``steps=None`` makes every cover non-minimal (sizes grow geometrically).
    """
    return ext_from_chain(SyzygyChain(m, minimal=False, nonminimal_steps=steps), n, i).dim


def ext_via_restriction(m: Representation, n: Representation, i: int) -> int:
    """Ext dimension as ``coker(Hom(F_{i-1}, N) -> Hom(Ω^i M, N))`` with Hom spaces solved directly."""
    if i == 0:
        return HomSpace(m, n).dim
    chain = SyzygyChain(m)
    chain.syzygy(i)
    free, inc = chain.free(i - 1), chain.inclusions[i - 1]
    target = HomSpace(chain.syzygies[i], n)
    cols = []
    for g_idx, v in enumerate(free.free_gens):
        for c in range(n.dims[v]):
            images = [np.zeros(n.dims[u], dtype=np.int64) for u in free.free_gens]
            images[g_idx][c] = 1
            cols.append(target.coords(map_from_free(free, n, images) @ inc))
    rk = la.rank(np.stack(cols, axis=1), n.p) if cols and target.dim else 0
    return target.dim - rk


# -- random modules -------------------------------------------------------------------

def random_module(alg: BoundQuiverAlgebra, rng: np.random.Generator, max_gens: int = 2, max_rels: int = 2) -> Representation:
    """A quotient of a random free module by a random cyclic-ish submodule."""
    ngens = int(rng.integers(1, max_gens + 1))
    gens = [int(rng.integers(0, alg.vertices)) for _ in range(ngens)]
    free = free_module(alg, sorted(gens))
    elements = []
    for _ in range(int(rng.integers(0, max_rels + 1))):
        v = int(rng.integers(0, alg.vertices))
        if free.dims[v] == 0:
            continue
        x = rng.integers(0, alg.p, size=free.dims[v])
        # keep relations inside the radical so the generators survive
        rad = radical_bases(free)[v]
        if rad.shape[1] == 0:
            continue
        x = la.mul(rad, rng.integers(0, alg.p, size=(rad.shape[1], 1)), alg.p)[:, 0]
        elements.append((v, x))
    sub = generated_submodule(free, elements) if elements else [la.zeros(d, 0) for d in free.dims]
    quo, _, _ = quotient(free, sub)
    return quo
