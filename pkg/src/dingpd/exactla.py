"""Exact linear algebra over prime fields.

Matrices are plain ``numpy`` int64 arrays whose entries are residues in
``[0, p)``; the modulus travels alongside as an explicit argument.  With
``p < 2**16`` every product of two residues fits in 32 bits, so dot products
of length below ``2**31`` cannot overflow int64.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_PRIME = 1 << 16
FLOAT_EXACT = 1 << 53


@lru_cache(maxsize=None)
def check_prime(p: int) -> int:
    """Return ``p`` if it is a prime below ``2**16``, else raise ValueError."""
    if not isinstance(p, (int, np.integer)) or isinstance(p, bool):
        raise ValueError(f"modulus must be an integer, got {p!r}")
    p = int(p)
    if p < 2 or p >= MAX_PRIME:
        raise ValueError(f"modulus {p} outside supported range [2, 2**16)")
    for d in range(2, int(p**0.5) + 1):
        if p % d == 0:
            raise ValueError(f"modulus {p} is not prime")
    return p


def mat(rows, p: int, shape: tuple[int, int] | None = None) -> np.ndarray:
    """Build a reduced int64 matrix from nested lists (or an array)."""
    a = np.array(rows, dtype=np.int64)
    if shape is not None:
        a = a.reshape(shape)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {a.shape}")
    return a % p


def zeros(r: int, c: int) -> np.ndarray:
    return np.zeros((r, c), dtype=np.int64)


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def mul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"dimension mismatch {a.shape} @ {b.shape}")
    if a.size == 0 or b.size == 0:
        return zeros(a.shape[0], b.shape[1])
    if a.shape[1] * (p - 1) ** 2 < FLOAT_EXACT:
        # float64 products are exact below 2**53 and go through BLAS
        out = (a % p).astype(np.float64) @ (b % p).astype(np.float64)
        return out.astype(np.int64) % p
    return (a @ b) % p


def inv_scalar(x: int, p: int) -> int:
    return pow(int(x), p - 2, p)


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns.

    Pivoting is deterministic: columns are scanned left to right and the
    first row holding a nonzero entry is used.
    """
    m = np.array(a, dtype=np.int64) % p
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        if m[r, c] != 1:
            m[r, c:] = (m[r, c:] * inv_scalar(m[r, c], p)) % p
        col = m[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            m[hit, c:] = (m[hit, c:] - np.outer(col[hit], m[r, c:])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rref_rank(a: np.ndarray, p: int) -> tuple[np.ndarray, int]:
    r, piv = rref(a, p)
    return r, len(piv)


def rank(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    # eliminate along the shorter side
    if a.shape[0] > a.shape[1]:
        a = a.T
    return len(rref(a, p)[1])


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Columns form a basis of ``{x : a x = 0}``."""
    rows, cols = a.shape
    if rows == 0:
        return eye(cols)
    r, piv = rref(a, p)
    free = [c for c in range(cols) if c not in set(piv)]
    basis = zeros(cols, len(free))
    for j, f in enumerate(free):
        basis[f, j] = 1
        for i, pc in enumerate(piv):
            basis[pc, j] = (-r[i, f]) % p
    return basis


def column_basis(a: np.ndarray, p: int) -> np.ndarray:
    """An independent subset of the columns of ``a`` spanning its image."""
    if a.shape[1] == 0 or a.shape[0] == 0:
        return zeros(a.shape[0], 0)
    _, piv = rref(a, p)
    return a[:, piv] % p


def kernel_image(a: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    return nullspace(a, p), column_basis(a, p)


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """Some ``x`` with ``a x = b`` (``b`` may have several columns), or None."""
    if b.ndim == 1:
        b = b.reshape(-1, 1)
        squeeze = True
    else:
        squeeze = False
    if a.shape[0] != b.shape[0]:
        raise ValueError(f"dimension mismatch: A is {a.shape}, b is {b.shape}")
    n = a.shape[1]
    aug = np.hstack([a % p, b % p])
    r, piv = rref(aug, p)
    if any(c >= n for c in piv):
        return None
    x = zeros(n, b.shape[1])
    for i, c in enumerate(piv):
        x[c] = r[i, n:]
    assert np.array_equal(mul(a, x, p), b % p)
    return x[:, 0] if squeeze else x


def inverse(a: np.ndarray, p: int) -> np.ndarray | None:
    n = a.shape[0]
    if a.shape != (n, n):
        return None
    if n == 0:
        return zeros(0, 0)
    r, piv = rref(np.hstack([a % p, eye(n)]), p)
    if piv[:n] != list(range(n)):
        return None
    return r[:, n:].copy()


def left_inverse(b: np.ndarray, p: int) -> np.ndarray:
    """``L`` with ``L b = I`` for a matrix ``b`` of full column rank."""
    n, k = b.shape
    if k == 0:
        return zeros(0, n)
    _, rows = rref(b.T, p)
    if len(rows) != k:
        raise ValueError("matrix does not have full column rank")
    sub_inv = inverse(b[rows, :], p)
    out = zeros(k, n)
    out[:, rows] = sub_inv
    return out


def complement(sub: np.ndarray, n: int, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Projection onto a complement of the column span of ``sub`` in ``F_p^n``.

    Returns ``(q, s)`` where ``q`` (c x n) kills ``sub`` and is onto, and the
    section ``s`` (n x c) satisfies ``q s = I`` with ``s`` built from standard
    basis vectors.
    """
    sub = column_basis(sub, p) if sub.shape[1] else zeros(n, 0)
    k = sub.shape[1]
    full = np.hstack([sub, eye(n)])
    _, piv = rref(full, p)
    extra = [c - k for c in piv if c >= k]
    s = zeros(n, len(extra))
    for j, e in enumerate(extra):
        s[e, j] = 1
    basis = np.hstack([sub, s])
    binv = inverse(basis, p)
    q = binv[k:, :] if binv is not None else zeros(0, n)
    return q, s


def stack_rows(blocks: list[np.ndarray], cols: int) -> np.ndarray:
    blocks = [b for b in blocks if b.shape[0]]
    return np.vstack(blocks) if blocks else zeros(0, cols)


def block_diag(blocks: list[np.ndarray]) -> np.ndarray:
    r = sum(b.shape[0] for b in blocks)
    c = sum(b.shape[1] for b in blocks)
    out = zeros(r, c)
    i = j = 0
    for b in blocks:
        out[i : i + b.shape[0], j : j + b.shape[1]] = b
        i += b.shape[0]
        j += b.shape[1]
    return out


@dataclass(frozen=True)
class FpMatrix:
    """A matrix over ``F_p`` bundled with its modulus."""

    p: int
    data: np.ndarray

    def __post_init__(self) -> None:
        check_prime(self.p)
        a = np.array(self.data, dtype=np.int64)
        if a.ndim != 2:
            raise ValueError("FpMatrix data must be 2-d")
        object.__setattr__(self, "data", a % self.p)
        self.data.setflags(write=False)

    @classmethod
    def from_rows(cls, rows, p: int, cols: int | None = None) -> "FpMatrix":
        if len(rows) == 0:
            return cls(p, zeros(0, cols or 0))
        return cls(p, np.array(rows, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def rref_rank(self) -> tuple["FpMatrix", int]:
        r, k = rref_rank(self.data, self.p)
        return FpMatrix(self.p, r), k

    def kernel_image(self) -> tuple["FpMatrix", "FpMatrix"]:
        k, im = kernel_image(self.data, self.p)
        return FpMatrix(self.p, k), FpMatrix(self.p, im)

    def solve(self, b) -> np.ndarray | None:
        return solve(self.data, np.asarray(b, dtype=np.int64), self.p)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FpMatrix)
            and self.p == other.p
            and np.array_equal(self.data, other.data)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.data.shape, self.data.tobytes()))
