"""Brute-force reference computations over tiny prime fields.

Nothing here touches row reduction from the engine: subspaces are found by
enumerating every vector, and Hom spaces by enumerating every tuple of
matrices.  Only usable for very small inputs.
"""

from __future__ import annotations

import itertools

import numpy as np


def all_vectors(n: int, p: int) -> np.ndarray:
    """Every vector of ``F_p^n`` as rows."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(itertools.product(range(p), repeat=n)), dtype=np.int64)


def log_p(count: int, p: int) -> int:
    d = 0
    while p**d < count:
        d += 1
    assert p**d == count, f"{count} is not a power of {p}"
    return d


def kernel_dim(a: np.ndarray, p: int) -> int:
    vs = all_vectors(a.shape[1], p)
    return log_p(int(np.sum(~np.any((vs @ a.T) % p, axis=1))), p)


def rank(a: np.ndarray, p: int) -> int:
    """Size of the image, found by applying ``a`` to every vector."""
    vs = all_vectors(a.shape[1], p)
    img = {tuple(r) for r in (vs @ a.T) % p}
    return log_p(len(img), p)


def hom_dim(m, n) -> int:
    """Count module maps ``M -> N`` by checking every tuple of vertex matrices."""
    alg, p = m.alg, m.p
    shapes = [(n.dims[v], m.dims[v]) for v in range(alg.vertices)]
    sizes = [r * c for r, c in shapes]
    total = sum(sizes)
    assert p**total <= 1 << 18, "brute-force Hom too large"
    count = 0
    for flat in itertools.product(range(p), repeat=total):
        mats, off = [], 0
        for (r, c), s in zip(shapes, sizes):
            mats.append(np.array(flat[off : off + s], dtype=np.int64).reshape(r, c))
            off += s
        ok = True
        for i, a in enumerate(alg.quiver.arrows):
            lhs = n.mats[i] @ mats[a.source]
            rhs = mats[a.target] @ m.mats[i]
            if np.any((lhs - rhs) % p):
                ok = False
                break
        count += ok
    return log_p(count, p)


def ext1_dim(m, n, cover_source, syz) -> int:
    """``dim Ext^1(M, N)`` from ``0 -> Hom(M,N) -> Hom(F,N) -> Hom(ΩM,N) -> Ext^1 -> 0``."""
    return hom_dim(syz, n) - hom_dim(cover_source, n) + hom_dim(m, n)


def homology_dims(diffs: dict[int, np.ndarray], dims: dict[int, int], p: int) -> dict[int, int]:
    """Homology of a complex of vector spaces, ``diffs[n]: dims[n] -> dims[n-1]``."""
    out = {}
    for n, d in dims.items():
        z = kernel_dim(diffs[n], p) if n in diffs and diffs[n].size else d
        b = rank(diffs[n + 1], p) if n + 1 in diffs and diffs[n + 1].size else 0
        out[n] = z - b
    return out
