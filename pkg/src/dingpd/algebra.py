"""Finite-dimensional bound-quiver algebras over prime fields.

Paths are stored in *traversal* order as ``(source, (a1, a2, ...))`` where
``a1`` is applied first.  Relations in documents use the usual composition
order, so the word ``["b", "a"]`` means ``b∘a``: first ``a``, then ``b``.
The product ``x·y`` of basis paths is "x after y".
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import exactla as la
from .errors import InputError, NotAdmissible, NotFiniteDimensional

Path = tuple[int, tuple[int, ...]]

# inhomogeneous relations are normalized in the full path space up to the
# length cap; refuse to enumerate more paths than this
MAX_PATH_SPACE = 40_000


@dataclass(frozen=True)
class Arrow:
    id: str
    source: int
    target: int


@dataclass(frozen=True)
class Quiver:
    vertices: int
    arrows: tuple[Arrow, ...]

    def __post_init__(self) -> None:
        if self.vertices < 1:
            raise InputError("a quiver needs at least one vertex")
        seen = set()
        for a in self.arrows:
            if a.id in seen:
                raise InputError(f"duplicate arrow id {a.id!r}")
            seen.add(a.id)
            for end in (a.source, a.target):
                if not 0 <= end < self.vertices:
                    raise InputError(f"arrow {a.id!r} has invalid endpoint {end}")

    @cached_property
    def arrow_index(self) -> dict[str, int]:
        return {a.id: i for i, a in enumerate(self.arrows)}

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, tuple(Arrow(a.id, a.target, a.source) for a in self.arrows))


# a relation is a list of (coefficient, word) with the word in composition order
Relation = tuple[tuple[int, tuple[str, ...]], ...]


def _path_target(q: Quiver, path: Path) -> int:
    s, arrows = path
    return q.arrows[arrows[-1]].target if arrows else s


def _word_to_path(q: Quiver, word: Sequence[str]) -> Path:
    if not word:
        raise NotAdmissible("relation term with an empty path")
    try:
        trav = tuple(q.arrow_index[a] for a in reversed(word))
    except KeyError as exc:
        raise InputError(f"unknown arrow {exc.args[0]!r} in relation") from None
    for x, y in zip(trav, trav[1:]):
        if q.arrows[x].target != q.arrows[y].source:
            raise InputError(f"relation word {list(word)} is not a path")
    return (q.arrows[trav[0]].source, trav)


def _extend(q: Quiver, paths: list[Path]) -> list[Path]:
    out = []
    for s, arrows in paths:
        t = _path_target(q, (s, arrows))
        for i, a in enumerate(q.arrows):
            if a.source == t:
                out.append((s, arrows + (i,)))
    return out


def _path_key(path: Path):
    # longest paths first, then reverse-lexicographic; pivots of the ideal
    # become the leading (largest) paths
    s, arrows = path
    return (-len(arrows), tuple(-a for a in arrows), -s)


class BoundQuiverAlgebra:
    """``k Q / I`` with ``I`` admissible, presented by a basis of paths.

    ``mult[i, j]`` is the coordinate vector of ``basis[i] · basis[j]``.
    """

    def __init__(
        self,
        p: int,
        quiver: Quiver,
        relations: Sequence[Relation],
        basis: list[Path],
        mult: np.ndarray,
        nilpotency: int,
    ):
        self.p = p
        self.quiver = quiver
        self.relations = tuple(relations)
        self.basis = basis
        self.mult = mult
        self.mult.setflags(write=False)
        self.nilpotency = nilpotency
        self.index = {b: i for i, b in enumerate(basis)}
        self._opposite: BoundQuiverAlgebra | None = None

    # -- basic data -------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def vertices(self) -> int:
        return self.quiver.vertices

    def source(self, i: int) -> int:
        return self.basis[i][0]

    def target(self, i: int) -> int:
        return _path_target(self.quiver, self.basis[i])

    def length(self, i: int) -> int:
        return len(self.basis[i][1])

    def idempotent(self, v: int) -> int:
        return self.index[(v, ())]

    def arrow(self, a: int | str) -> int:
        if isinstance(a, str):
            a = self.quiver.arrow_index[a]
        return self.index[(self.quiver.arrows[a].source, (a,))]

    @cached_property
    def paths_between(self) -> dict[tuple[int, int], list[int]]:
        """Basis indices of paths from ``v`` to ``w``, keyed by ``(v, w)``."""
        out: dict[tuple[int, int], list[int]] = {
            (v, w): [] for v in range(self.vertices) for w in range(self.vertices)
        }
        for i in range(self.dim):
            out[(self.source(i), self.target(i))].append(i)
        return out

    def describe_path(self, i: int) -> str:
        s, arrows = self.basis[i]
        if not arrows:
            return f"e{s}"
        return "".join(self.quiver.arrows[a].id for a in reversed(arrows))

    @cached_property
    def is_commutative(self) -> bool:
        return self.vertices == 1 and np.array_equal(self.mult, self.mult.transpose(1, 0, 2))

    def multiply(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Product of two algebra elements given as coordinate vectors."""
        return np.einsum("i,j,ijk->k", x, y, self.mult) % self.p

    # -- opposite -----------------------------------------------------------
    def opposite(self) -> "BoundQuiverAlgebra":
        if self._opposite is None:
            q = self.quiver
            basis = [
                (_path_target(q, b), tuple(reversed(b[1]))) for b in self.basis
            ]
            rels = tuple(
                tuple((c, tuple(reversed(w))) for c, w in rel) for rel in self.relations
            )
            op = BoundQuiverAlgebra(
                self.p,
                q.opposite(),
                rels,
                basis,
                np.ascontiguousarray(self.mult.transpose(1, 0, 2)),
                self.nilpotency,
            )
            op._opposite = self
            self._opposite = op
        return self._opposite

    # -- checks -------------------------------------------------------------
    def check_associative(self) -> bool:
        m = self.mult
        left = np.einsum("ijk,klm->ijlm", m, m) % self.p  # (b_i b_j) b_l
        right = np.einsum("jlk,ikm->ijlm", m, m) % self.p  # b_i (b_j b_l)
        return bool(np.array_equal(left, right))

    def unit(self) -> np.ndarray:
        u = np.zeros(self.dim, dtype=np.int64)
        for v in range(self.vertices):
            u[self.idempotent(v)] = 1
        return u

    def check_unit(self) -> bool:
        u = self.unit()
        for i in range(self.dim):
            e = np.zeros(self.dim, dtype=np.int64)
            e[i] = 1
            if not (
                np.array_equal(self.multiply(u, e), e) and np.array_equal(self.multiply(e, u), e)
            ):
                return False
        return True

    def to_doc(self) -> dict:
        return {
            "p": self.p,
            "vertices": self.vertices,
            "arrows": [{"id": a.id, "from": a.source, "to": a.target} for a in self.quiver.arrows],
            "relations": [
                [{"coeff": int(c), "path": list(w)} for c, w in rel] for rel in self.relations
            ],
        }

    def __repr__(self) -> str:
        return f"BoundQuiverAlgebra(p={self.p}, vertices={self.vertices}, dim={self.dim})"


def _normalize_relations(q: Quiver, relations: Iterable, p: int) -> tuple[tuple[Relation, ...], list[dict[Path, int]]]:
    normalized = []
    elements = []
    for rel in relations:
        terms: dict[Path, int] = {}
        rel_norm = []
        for c, word in rel:
            word = tuple(word)
            path = _word_to_path(q, word)
            if len(path[1]) < 2:
                raise NotAdmissible(f"relation term {list(word)} has length < 2")
            terms[path] = (terms.get(path, 0) + int(c)) % p
            rel_norm.append((int(c) % p, word))
        terms = {k: v for k, v in terms.items() if v}
        ends = {(s, _path_target(q, (s, a))) for s, a in terms}
        if len(ends) > 1:
            raise NotAdmissible(f"relation {rel_norm} mixes non-parallel paths")
        normalized.append(tuple(rel_norm))
        if terms:
            elements.append(terms)
    return tuple(normalized), elements


def _concat(q: Quiver, left: Path, right: Path) -> Path | None:
    """Traversal ``left`` then ``right``; None if not composable."""
    if _path_target(q, left) != right[0]:
        return None
    return (left[0], left[1] + right[1])


def _graded_ideal(q, elements, p, cap):
    """Degreewise normalization for length-homogeneous relations.

    Returns (nilpotency, {L: (paths_L, rref rows, pivots)}).
    """
    by_degree: dict[int, list[dict[Path, int]]] = {}
    for el in elements:
        by_degree.setdefault(len(next(iter(el))[1]), []).append(el)
    layers = {0: [(v, ()) for v in range(q.vertices)]}
    ideal: dict[int, tuple[list[Path], np.ndarray, list[int]]] = {}
    prev_rows: list[dict[Path, int]] = []
    for L in range(1, cap + 1):
        layers[L] = _extend(q, layers[L - 1])
        paths = sorted(layers[L], key=_path_key)
        if not paths:
            return L, layers, ideal
        idx = {pth: i for i, pth in enumerate(paths)}
        gens: list[dict[Path, int]] = list(by_degree.get(L, []))
        for x in prev_rows:
            for ai, a in enumerate(q.arrows):
                for side in (0, 1):
                    y: dict[Path, int] = {}
                    for pth, c in x.items():
                        ap = (a.source, (ai,))
                        new = _concat(q, pth, ap) if side == 0 else _concat(q, ap, pth)
                        if new is not None:
                            y[new] = c
                    if y:
                        gens.append(y)
        m = la.zeros(len(gens), len(paths))
        for r, g in enumerate(gens):
            for pth, c in g.items():
                m[r, idx[pth]] = (m[r, idx[pth]] + c) % p
        rows, piv = la.rref(m, p) if len(gens) else (la.zeros(0, len(paths)), [])
        rows = rows[: len(piv)]
        ideal[L] = (paths, rows, piv)
        prev_rows = [
            {paths[j]: int(row[j]) for j in np.flatnonzero(row)} for row in rows
        ]
        if len(piv) == len(paths):
            return L, layers, ideal
    raise NotFiniteDimensional(f"nonzero paths survive at length cap {cap}")


def _filtered_ideal(q, elements, p, cap):
    """Normalization for relations that mix path lengths.

    A length ``N`` is accepted only when every path of length ``N`` is an
    exact linear combination of products ``u·rho·w`` all of whose terms have
    length at most ``cap``; this witnesses ``J^N ⊆ I`` without truncation.
    """
    layers = {0: [(v, ()) for v in range(q.vertices)]}
    total = q.vertices
    for L in range(1, cap + 1):
        layers[L] = _extend(q, layers[L - 1])
        total += len(layers[L])
        if total > MAX_PATH_SPACE:
            raise NotFiniteDimensional("path space too large to normalize inhomogeneous relations")
    allpaths = sorted((pth for L in layers for pth in layers[L]), key=_path_key)
    idx = {pth: i for i, pth in enumerate(allpaths)}

    def products(max_total: int):
        for el in elements:
            top = max(len(pth[1]) for pth in el)
            lo = min(len(pth[1]) for pth in el)
            s = next(iter(el))[0]
            t = _path_target(q, next(iter(el)))
            for a in range(0, max_total - lo + 1):
                for w in layers.get(a, []):
                    if _path_target(q, w) != s:
                        continue
                    for b in range(0, max_total - lo - a + 1):
                        for u in layers.get(b, []):
                            if u[0] != t:
                                continue
                            yield a + b + top, a + b + lo, {
                                (w[0], w[1] + pth[1] + u[1]): c for pth, c in el.items()
                            }

    gens = [g for hi, _, g in products(cap) if hi <= cap]
    m = la.zeros(len(gens), len(allpaths))
    for r, g in enumerate(gens):
        for pth, c in g.items():
            m[r, idx[pth]] = c
    rows, piv = la.rref(m, p) if gens else (m, [])
    unit_rows = {
        c for r, c in enumerate(piv) if np.count_nonzero(rows[r]) == 1
    }
    for N in range(1, cap + 1):
        if all(idx[pth] in unit_rows for pth in layers[N]):
            break
    else:
        raise NotFiniteDimensional(f"nonzero paths survive at length cap {cap}")
    short = [pth for L in range(N) for pth in layers[L]]
    short.sort(key=_path_key)
    sidx = {pth: i for i, pth in enumerate(short)}
    qgens = []
    for _, lo, g in products(N - 1):
        if lo >= N:
            continue
        qgens.append({pth: c for pth, c in g.items() if len(pth[1]) < N})
    m = la.zeros(len(qgens), len(short))
    for r, g in enumerate(qgens):
        for pth, c in g.items():
            m[r, sidx[pth]] = c
    rows, piv = la.rref(m, p) if qgens else (m, [])
    return N, short, rows[: len(piv)], piv


def build_algebra(
    quiver: Quiver,
    relations: Iterable = (),
    p: int = 2,
    length_cap: int = 16,
) -> BoundQuiverAlgebra:
    """Normalize the relations and return the algebra with its path basis.

    ``relations`` is an iterable of relations, each a list of
    ``(coeff, word)`` pairs with words in composition order.
    """
    p = la.check_prime(p)
    rels, elements = _normalize_relations(quiver, relations, p)
    homogeneous = all(len({len(pth[1]) for pth in el}) == 1 for el in elements)

    if homogeneous:
        N, layers, ideal = _graded_ideal(quiver, elements, p, length_cap)
        columns: list[Path] = []
        blocks = []
        for L in range(N - 1, -1, -1):
            paths = sorted(layers[L], key=_path_key)
            off = len(columns)
            columns.extend(paths)
            if L in ideal:
                _, rows, piv = ideal[L]
                blocks.append((off, rows, piv))
        rows_all = la.zeros(sum(b[1].shape[0] for b in blocks), len(columns))
        piv_all: list[int] = []
        r = 0
        for off, rows, piv in blocks:
            rows_all[r : r + rows.shape[0], off : off + rows.shape[1]] = rows
            piv_all.extend(off + c for c in piv)
            r += rows.shape[0]
    else:
        N, columns, rows_all, piv_all = _filtered_ideal(quiver, elements, p, length_cap)

    col_index = {pth: i for i, pth in enumerate(columns)}
    pivset = set(piv_all)
    basis = sorted(
        (pth for i, pth in enumerate(columns) if i not in pivset),
        key=lambda pth: (len(pth[1]), pth[1], pth[0]),
    )
    bidx = {pth: i for i, pth in enumerate(basis)}
    n = len(basis)
    piv_arr = np.array(piv_all, dtype=np.int64)

    def normal_form(pth: Path) -> np.ndarray:
        out = np.zeros(n, dtype=np.int64)
        if len(pth[1]) >= N:
            return out
        v = np.zeros(len(columns), dtype=np.int64)
        v[col_index[pth]] = 1
        if len(piv_arr):
            v = (v - v[piv_arr] @ rows_all) % p
        for j in np.flatnonzero(v):
            out[bidx[columns[j]]] = v[j]
        return out

    mult = np.zeros((n, n, n), dtype=np.int64)
    for i, bi in enumerate(basis):
        for j, bj in enumerate(basis):
            cat = _concat(quiver, bj, bi)  # bi after bj
            if cat is not None:
                mult[i, j] = normal_form(cat)
    alg = BoundQuiverAlgebra(p, quiver, rels, basis, mult, N)
    for v in range(quiver.vertices):
        if (v, ()) not in bidx:
            raise NotAdmissible("an idempotent vanished; relations are not admissible")
    return alg


def algebra_from_doc(doc: dict) -> BoundQuiverAlgebra:
    """Parse the algebra JSON document."""
    try:
        p = int(doc["p"])
        n = int(doc["vertices"])
        arrows = tuple(
            Arrow(str(a["id"]), int(a["from"]), int(a["to"])) for a in doc.get("arrows", [])
        )
        rels = [
            [(int(t["coeff"]), tuple(str(x) for x in t["path"])) for t in rel]
            for rel in doc.get("relations", [])
        ]
        cap = int(doc.get("length_cap", 16))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed algebra document: {exc!r}") from None
    try:
        la.check_prime(p)
    except ValueError as exc:
        raise InputError(f"algebra.p: {exc}") from None
    return build_algebra(Quiver(n, arrows), rels, p, cap)


def opposite_algebra(alg: BoundQuiverAlgebra) -> BoundQuiverAlgebra:
    return alg.opposite()


# -- shipped fixtures ----------------------------------------------------------

def fix1(p: int = 2) -> BoundQuiverAlgebra:
    """``F_p[x]/(x^2)``: one vertex, one loop ``a``."""
    return build_algebra(Quiver(1, (Arrow("a", 0, 0),)), [[(1, ("a", "a"))]], p)


def fix2(p: int = 2) -> BoundQuiverAlgebra:
    """Path algebra of ``1 -a-> 2``."""
    return build_algebra(Quiver(2, (Arrow("a", 0, 1),)), [], p)


def fix3(p: int = 2) -> BoundQuiverAlgebra:
    """``1 -a-> 2`` with a loop ``b`` at 2, relations ``ba = 0``, ``b^2 = 0``."""
    q = Quiver(2, (Arrow("a", 0, 1), Arrow("b", 1, 1)))
    return build_algebra(q, [[(1, ("b", "a"))], [(1, ("b", "b"))]], p)


def fix4(p: int = 2) -> BoundQuiverAlgebra:
    """``F_p[x,y]/(x^2, y^2, xy - yx)``."""
    q = Quiver(1, (Arrow("x", 0, 0), Arrow("y", 0, 0)))
    rels = [[(1, ("x", "x"))], [(1, ("y", "y"))], [(1, ("x", "y")), (-1, ("y", "x"))]]
    return build_algebra(q, rels, p)


def radical_square_zero_local(p: int = 2) -> BoundQuiverAlgebra:
    """``F_p[x,y]/(x^2, xy, y^2)``, the standard non-Gorenstein local example."""
    q = Quiver(1, (Arrow("x", 0, 0), Arrow("y", 0, 0)))
    rels = [[(1, (a, b))] for a in "xy" for b in "xy"]
    return build_algebra(q, rels, p)


FIXTURES = {"FIX1": fix1, "FIX2": fix2, "FIX3": fix3, "FIX4": fix4, "RAD2": radical_square_zero_local}
