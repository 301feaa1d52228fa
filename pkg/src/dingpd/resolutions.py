"""Projective resolutions, complete resolutions and the comparison maps between them."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import exactla as la
from .complexcalc import (
    ChainComplex,
    ChainMap,
    Homotopy,
    cokernel_at,
    hom_complex,
    homology_dims,
    stalk,
)
from .errors import ExtensionObstructed, NotDingProjective, ThresholdViolated
from .repmod import (
    Dual,
    HomSpace,
    ModuleMap,
    Representation,
    SyzygyChain,
    block_map,
    cokernel,
    direct_sum,
    double_dual_map,
    dual_map,
    dual_star,
    identity_map,
    indecomposable_projectives,
    is_projective,
    kernel,
    generator_positions,
    map_from_free,
    top_and_cover,
    zero_map,
    zero_module,
)


class ResolutionTail:
    """An augmented complex of projectives ``P -> X`` built degree by degree.

    Subclasses provide ``_step(n)`` returning ``(P_n, d_n, aug_n)``.
    """

    minimal = False

    def __init__(self, target: Representation | ChainComplex, lo: int):
        self.target = target
        self.target_complex = stalk(target, 0) if isinstance(target, Representation) else target
        self.alg = self.target_complex.alg
        self.lo = lo
        self._terms: dict[int, Representation] = {}
        self._diffs: dict[int, ModuleMap] = {}
        self._aug: dict[int, ModuleMap] = {}
        self.built = lo - 1

    def extend_to(self, d: int) -> None:
        while self.built < d:
            n = self.built + 1
            t, dn, an = self._step(n)
            self._terms[n] = t
            if dn is not None:
                self._diffs[n] = dn
            self._aug[n] = an
            self.built = n

    def _step(self, n: int):
        raise NotImplementedError

    def term(self, n: int) -> Representation:
        if n < self.lo:
            return zero_module(self.alg)
        self.extend_to(n)
        return self._terms[n]

    def diff(self, n: int) -> ModuleMap:
        if n <= self.lo:
            return zero_map(self.term(n), self.term(n - 1))
        self.extend_to(n)
        return self._diffs.get(n) or zero_map(self.term(n), self.term(n - 1))

    def complex(self, d: int) -> ChainComplex:
        """Materialized part in degrees ``lo..d``."""
        self.extend_to(d)
        terms = {n: self._terms[n] for n in range(self.lo, d + 1)}
        diffs = {n: self._diffs[n] for n in range(self.lo + 1, d + 1) if n in self._diffs}
        return ChainComplex(self.alg, terms, diffs, check=False)

    def augmentation(self, d: int) -> ChainMap:
        c = self.complex(d)
        return ChainMap(c, self.target_complex, {n: self._aug[n] for n in c.degrees}, check=False)

    def aug_at(self, n: int) -> ModuleMap:
        if n < self.lo:
            return zero_map(zero_module(self.alg), self.target_complex.term(n))
        self.extend_to(n)
        return self._aug[n]

    def eventually_zero(self, d: int) -> bool:
        """All terms above ``d`` vanish (known once a zero kernel appears)."""
        return False


class ModuleResolution(ResolutionTail):
    """Minimal (or all-elements) projective resolution of a module."""

    def __init__(self, m: Representation, minimal: bool = True, chain: SyzygyChain | None = None):
        super().__init__(m, 0)
        self.minimal = minimal
        self.chain = chain or SyzygyChain(m, minimal=minimal)

    def _step(self, n: int):
        ch = self.chain
        t = ch.free(n)
        if n == 0:
            return t, None, ch.cover(0)
        return t, ch.differential(n), zero_map(t, self.target_complex.term(n))

    def eventually_zero(self, d: int) -> bool:
        return any(self.chain.syzygy(j).dim == 0 for j in range(1, d + 2))

    def cokernel(self, n: int) -> Representation:
        """``C_n(P) ≅ Ω^n M``."""
        return self.chain.syzygy(n)


def minimal_projective_resolution(m: Representation, d: int) -> ModuleResolution:
    r = ModuleResolution(m)
    r.extend_to(d)
    return r


class IdentityResolution(ResolutionTail):
    """A bounded complex of projectives resolves itself."""

    def __init__(self, x: ChainComplex):
        sup = x.support()
        super().__init__(x, sup[0] if sup else 0)

    def _step(self, n: int):
        x = self.target_complex
        t = x.term(n)
        dn = x.diff(n) if n > self.lo else None
        return t, dn, identity_map(t)

    def eventually_zero(self, d: int) -> bool:
        return d >= self.target_complex.hi


class ComplexResolution(ResolutionTail):
    """DG-projective resolution of a bounded complex.

    Degree ``n`` covers the cycles ``W_n`` of the mapping cone modulo the
    boundaries coming from ``X_{n+1}``; lifting the generators gives
    ``d_n`` and the augmentation.  The lowest nonzero term sits at ``hinf X``.
    """

    def __init__(self, x: ChainComplex):
        sup = x.support()
        super().__init__(x, sup[0] if sup else 0)

    def _step(self, n: int):
        x = self.target_complex
        alg, p = self.alg, self.alg.p
        prev = self._terms.get(n - 1, zero_module(alg))
        prev2 = self._terms.get(n - 2, zero_module(alg))
        dprev = self._diffs.get(n - 1) or zero_map(prev, prev2)
        aprev = self._aug.get(n - 1) or zero_map(prev, x.term(n - 1))
        xn, xn1 = x.term(n), x.term(n - 1)
        src = direct_sum([prev, xn])
        tgt = direct_sum([prev2, xn1])
        # W_n = {(x, y) : dx = 0, π x = d y}
        phi = block_map(src, tgt, [[dprev, None], [aprev, x.diff(n).scale(-1)]], [prev, xn], [prev2, xn1])
        w, w_inc = kernel(phi)
        # boundaries (0, d w') for w' in X_{n+1}, in W-coordinates
        into = block_map(x.term(n + 1), src, [[None], [x.diff(n + 1)]], [x.term(n + 1)], [prev, xn])
        bmats = []
        for v in range(alg.vertices):
            linv = la.left_inverse(w_inc.mats[v], p)
            bmats.append(la.mul(linv, into.mats[v], p))
        u = ModuleMap(x.term(n + 1), w, bmats, check=False)
        quo, _, sections = cokernel(u)
        top_cover = top_and_cover(quo)[1]
        gens = top_cover.source
        images = [la.mul(sections[v], vec.reshape(-1, 1), p)[:, 0] for v, vec in _generator_vectors(gens, top_cover)]
        full = w_inc @ map_from_free(gens, w, images)
        d_part = block_map(src, prev, [[identity_map(prev), None]], [prev, xn], [prev])
        a_part = block_map(src, xn, [[None, identity_map(xn)]], [prev, xn], [xn])
        return gens, (d_part @ full if n > self.lo else None), a_part @ full

    def eventually_zero(self, d: int) -> bool:
        return d > self.target_complex.hi and self.term(d).dim == 0


def _generator_vectors(free: Representation, cover: ModuleMap) -> list[tuple[int, np.ndarray]]:
    """Images of the generators of ``free`` under ``cover`` as (vertex, vector)."""
    return [(g, cover.mats[g][:, pos]) for g, pos in zip(free.free_gens, generator_positions(free))]


def dg_projective_resolution(x: ChainComplex, d: int | None = None, surjective: bool = False) -> ResolutionTail:
    """A DG-projective resolution of a bounded complex.

    Stalk complexes get the minimal resolution (shifted); complexes whose terms
    are already projective resolve themselves.  ``surjective=True`` adjoins a
    contractible pair ``Q --id--> Q`` in degrees ``(n, n-1)`` for the cover
    ``Q -> X_n`` of every term, so the augmentation becomes onto.
    """
    sup = x.support()
    if sup is not None and x.all_projective():
        r: ResolutionTail = IdentityResolution(x)
    elif sup is not None and sup[0] == sup[1]:
        n = sup[0]
        r = ModuleResolution(x.term(0)) if n == 0 else ShiftedResolution(ModuleResolution(x.term(n)), n, x)
    else:
        r = ComplexResolution(x)
    if surjective and sup is not None:
        pairs = []
        for n in range(sup[0], sup[1] + 1):
            if x.term(n).dim:
                c = top_and_cover(x.term(n))[1]
                pairs.append((n, c.source, c))
        r = PaddedResolution(r, pairs)
    if d is not None:
        r.extend_to(d)
    return r


class ShiftedResolution(ResolutionTail):
    """``Σ^k`` of a resolution of a stalk in degree 0, resolving the stalk in degree k."""

    def __init__(self, base: ResolutionTail, k: int, target: ChainComplex):
        super().__init__(target, base.lo + k)
        self.base, self.k = base, k
        self.minimal = base.minimal

    def _step(self, n: int):
        m = n - self.k
        sign = -1 if self.k % 2 else 1
        t = self.base.term(m)
        dn = self.base.diff(m).scale(sign) if n > self.lo else None
        return t, dn, self.base.aug_at(m)

    def eventually_zero(self, d: int) -> bool:
        return self.base.eventually_zero(d - self.k)


class PaddedResolution(ResolutionTail):
    """A resolution with contractible pairs ``Q --id--> Q`` in degrees ``(n, n-1)``.

    Each pair is ``(n, Q, a)`` where ``a: Q -> X_n`` (or None for zero); the
    lower copy maps by ``d^X_n ∘ a``.
    """

    def __init__(self, base: ResolutionTail, pairs: list[tuple[int, Representation, ModuleMap | None]]):
        lo = min([base.lo] + [n - 1 for n, _, _ in pairs])
        super().__init__(base.target_complex, lo)
        self.base, self.pairs = base, pairs
        self.minimal = False

    def _parts(self, n: int) -> list[tuple[str, int, Representation]]:
        out = [("base", -1, self.base.term(n))]
        for i, (m, q, _) in enumerate(self.pairs):
            if m == n:
                out.append(("top", i, q))
            if m - 1 == n:
                out.append(("bottom", i, q))
        return out

    def _pair_aug(self, kind: str, i: int) -> ModuleMap | None:
        m, q, a = self.pairs[i]
        if a is None:
            return None
        return a if kind == "top" else self.target_complex.diff(m) @ a

    def _step(self, n: int):
        x = self.target_complex
        parts = self._parts(n)
        mods = [q for _, _, q in parts]
        total = direct_sum(mods)
        row = [self.base.aug_at(n) if kind == "base" else self._pair_aug(kind, i) for kind, i, _ in parts]
        an = block_map(total, x.term(n), [row], mods, [x.term(n)])
        if n == self.lo:
            return total, None, an
        prev = self._parts(n - 1)
        blocks = [[None] * len(parts) for _ in prev]
        for c, (kind, i, q) in enumerate(parts):
            for r, (kind2, i2, _) in enumerate(prev):
                if kind == "base" and kind2 == "base":
                    blocks[r][c] = self.base.diff(n)
                if kind == "top" and kind2 == "bottom" and i == i2:
                    blocks[r][c] = identity_map(q)
        dn = block_map(total, self._terms[n - 1], blocks, mods, [q for _, _, q in prev])
        return total, dn, an

    def eventually_zero(self, d: int) -> bool:
        return self.base.eventually_zero(d) and all(n <= d for n, _, _ in self.pairs)


# -- complete resolutions -------------------------------------------------------------------------

class CompleteResolutionData:
    """A complete resolution glued at degree ``n0``.

    Degrees ``>= n0`` come from ``left`` (a resolution whose degree-``n0`` cokernel
    is ``G``); degrees ``< n0`` are the duals of the minimal resolution of ``G*``
    over the opposite algebra.  ``d_{n0} = ε_Q* ∘ η ∘ (P_{n0} -> G)``.
    """

    def __init__(self, g: Representation, left: Callable[[int], tuple[Representation, ModuleMap]], g_proj: ModuleMap, n0: int = 0):
        self.g = g
        self.alg = g.alg
        self.n0 = n0
        self._left = left
        self._g_proj = g_proj  # P_{n0} -> G
        self.g_star, self.g_2star, self.eta = double_dual_map(g)
        self.right = ModuleResolution(self.g_star.module)
        self._duals: dict[int, Dual] = {}

    def _dual(self, j: int) -> Dual:
        if j not in self._duals:
            self._duals[j] = dual_star(self.right.term(j))
        return self._duals[j]

    def term(self, i: int) -> Representation:
        if i >= self.n0:
            return self._left(i)[0]
        return self._dual(self.n0 - 1 - i).module

    def diff(self, i: int) -> ModuleMap:
        n0 = self.n0
        if i > n0:
            return self._left(i)[1]
        if i == n0:
            eps = self.right.augmentation(0).at(0)  # Q_0 -> G*
            eps_star = dual_map(eps, self._dual(0), self.g_2star)  # G** -> Q_0*
            return eps_star @ self.eta @ self._g_proj
        j = n0 - i  # d: Q_j -> Q_{j-1}  dualizes to  Q_{j-1}* -> Q_j*
        return dual_map(self.right.diff(j), self._dual(j), self._dual(j - 1))

    def window(self, lo: int, hi: int) -> ChainComplex:
        terms = {i: self.term(i) for i in range(lo, hi + 1)}
        diffs = {i: self.diff(i) for i in range(lo + 1, hi + 1)}
        return ChainComplex(self.alg, terms, diffs, check=False)


def splice_complete_resolution(g: Representation, right_depth: int, certified: bool | object = False) -> CompleteResolutionData:
    """Complete resolution ``T`` with ``C_0(T) ≅ G`` for a Ding projective ``G``.

    ``certified`` must be a truthy certificate (or True) from the detector.
    """
    if not certified:
        raise NotDingProjective("splice needs a Ding projectivity certificate")
    res = ModuleResolution(g)

    def left(i: int):
        return res.term(i), res.diff(i)

    t = CompleteResolutionData(g, left, res.augmentation(0).at(0), 0)
    t.left_resolution = res
    t.window(-right_depth, right_depth)
    return t


def splice_from_resolution(p: ResolutionTail, n: int) -> CompleteResolutionData:
    """Glue at degree ``n`` of ``p``: ``T_i = P_i`` for ``i >= n`` and ``C_n(T) = C_n(P)``."""
    g, proj = cokernel_at(p.complex(n + 1), n)

    def left(i: int):
        return p.term(i), p.diff(i)

    return CompleteResolutionData(g, left, proj, n)


# -- verification ----------------------------------------------------------------------------------

@dataclass
class CheckEntry:
    check: str
    degree: int | None
    passed: bool
    detail: str = ""

    def to_doc(self) -> dict:
        return {"check": self.check, "degree": self.degree, "passed": self.passed, "detail": self.detail}


@dataclass
class TotalAcyclicityReport:
    window: int
    entries: list[CheckEntry] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def failures(self) -> list[CheckEntry]:
        return [e for e in self.entries if not e.passed]

    def to_doc(self) -> dict:
        return {"window": self.window, "passed": self.passed, "entries": [e.to_doc() for e in self.entries]}


def check_totally_acyclic(t: CompleteResolutionData | ChainComplex, window: int) -> TotalAcyclicityReport:
    """Projective terms, exactness and exactness of ``Hom(T, P_v)`` on ``[-window, window]``.

    A degree is only reported when every term it depends on lies in the window.
    """
    if window < 1:
        raise ValueError("window must be at least 1")
    if isinstance(t, CompleteResolutionData):
        c = t.window(-window, window)
    else:
        terms = {i: t.term(i) for i in range(-window, window + 1)}
        diffs = {i: t.diff(i) for i in range(-window + 1, window + 1)}
        c = ChainComplex(t.alg, terms, diffs, check=False)
    rep = TotalAcyclicityReport(window)
    for i in range(-window, window + 1):
        ok = is_projective(c.term(i))
        rep.entries.append(CheckEntry("projective", i, ok, "" if ok else f"term dims {list(c.term(i).dims)}"))
    for i in range(-window + 1, window):
        h = homology_dims(c, i)
        rep.entries.append(CheckEntry("exact", i, not sum(h), "" if not sum(h) else f"homology dims {list(h)}"))
    for v, pv in enumerate(indecomposable_projectives(c.alg)):
        hc = hom_complex(c, stalk(pv, 0))
        for i in range(-window + 1, window):
            h = hc.homology_dim(-i)
            rep.entries.append(
                CheckEntry(f"hom_exact[P_{v}]", -i, h == 0, "" if h == 0 else f"homology dim {h}")
            )
    return rep


# -- lifting and homotopies ------------------------------------------------------------------------

def _kernel_of_precompose(d: ModuleMap, tgt: Representation) -> list[ModuleMap]:
    """Basis of ``{s : s ∘ d = 0}`` inside ``Hom(d.target, tgt)``."""
    hs = HomSpace(d.target, tgt)
    if hs.dim == 0:
        return []
    cols = [(b @ d).flat() for b in hs.basis]
    if cols[0].size == 0:
        return hs.basis
    a = np.stack(cols, axis=1)
    ker = la.nullspace(a, d.p)
    return [hs.combine(ker[:, j]) for j in range(ker.shape[1])]


def lift_chain_map(
    t: CompleteResolutionData | ChainComplex,
    q: ChainComplex,
    n: int,
    base: dict[int, ModuleMap],
    rng: np.random.Generator | None = None,
) -> ChainMap:
    """Extend ``base`` (maps ``T_i -> Q_i`` for ``i >= n``) to a chain map ``T -> Q``.

    Works on the window of ``T`` covering ``Q`` and ``n``.  With ``rng`` a
    random solution is chosen at every step instead of the canonical one.
    """
    from .repmod import solve_precompose

    sup = q.support()
    qlo, qhi = sup if sup else (n, n)
    lo, hi = min(qlo, n) - 1, max(qhi, n) + 1
    if isinstance(t, CompleteResolutionData):
        tw = t.window(lo, hi)
    else:
        tw = t if (t.lo <= lo and t.hi >= hi) else ChainComplex(
            t.alg, {i: t.term(i) for i in range(lo, hi + 1)}, {i: t.diff(i) for i in range(lo + 1, hi + 1)}, check=False
        )
    maps: dict[int, ModuleMap] = {}
    for i in range(n, hi + 1):
        maps[i] = base.get(i) or zero_map(tw.term(i), q.term(i))
    for i in range(n, hi + 1):
        lhs = q.diff(i) @ maps[i]
        rhs = maps[i - 1] @ tw.diff(i) if i - 1 in maps else None
        if rhs is not None and not lhs.equals(rhs):
            raise ExtensionObstructed(f"base does not commute at degree {i}")
    for i in range(n - 1, lo - 1, -1):
        target = q.diff(i + 1) @ maps[i + 1]
        if q.term(i).dim == 0:
            maps[i] = zero_map(tw.term(i), q.term(i))
            continue
        s = solve_precompose(tw.diff(i + 1), target)
        if s is None:
            raise ExtensionObstructed(f"no extension at degree {i}")
        if rng is not None:
            for k in _kernel_of_precompose(tw.diff(i + 1), q.term(i)):
                s = s + k.scale(int(rng.integers(0, t.alg.p)))
        maps[i] = s
    return ChainMap(tw, q, maps, check=True)


def find_homotopy(f: ChainMap, g: ChainMap) -> Homotopy | None:
    """Solve ``f - g = d s + s d`` globally; None if no homotopy exists."""
    x, y = f.source, f.target
    p = x.alg.p
    degs = list(x.degrees)
    unknowns: list[tuple[int, HomSpace]] = []
    for i in degs:
        if x.term(i).dim and y.term(i + 1).dim:
            hs = HomSpace(x.term(i), y.term(i + 1))
            if hs.dim:
                unknowns.append((i, hs))
    eq_sizes = {i: sum(y.term(i).dims[v] * x.term(i).dims[v] for v in range(x.alg.vertices)) for i in degs}
    eq_off, off = {}, 0
    for i in degs:
        eq_off[i] = off
        off += eq_sizes[i]
    rhs = np.concatenate([(f.at(i) - g.at(i)).flat() for i in degs]) if degs else np.zeros(0, dtype=np.int64)
    cols = []
    for i, hs in unknowns:
        for b in hs.basis:
            col = np.zeros(off, dtype=np.int64)
            col[eq_off[i] : eq_off[i] + eq_sizes[i]] += (y.diff(i + 1) @ b).flat()
            if i + 1 in eq_off:
                col[eq_off[i + 1] : eq_off[i + 1] + eq_sizes[i + 1]] += (b @ x.diff(i + 1)).flat()
            cols.append(col % p)
    if not cols:
        return Homotopy(f, g, {}) if not np.any(rhs % p) else None
    sol = la.solve(np.stack(cols, axis=1), rhs % p, p)
    if sol is None:
        return None
    s, k = {}, 0
    for i, hs in unknowns:
        s[i] = hs.combine(sol[k : k + hs.dim])
        k += hs.dim
    h = Homotopy(f, g, s)
    assert h.verify()
    return h


# -- F-complete resolutions -------------------------------------------------------------------------

@dataclass
class FCompleteResolution:
    """``T --τ--> P --π--> X`` over the window ``[lo, hi]`` with ``τ_i`` bijective for ``i >= threshold``."""

    t: ChainComplex
    p: ChainComplex
    tau: ChainMap
    augmentation: ChainMap
    threshold: int
    surjective: bool = False

    def check(self) -> list[str]:
        problems = []
        if self.tau.defect() is not None:
            problems.append(f"tau fails to commute at degree {self.tau.defect()}")
        for i in self.t.degrees:
            if i >= self.threshold and not self.tau.at(i).is_iso():
                problems.append(f"tau_{i} not bijective")
            if self.surjective and not self.tau.at(i).is_surjective():
                problems.append(f"tau_{i} not surjective")
        return problems


def f_complete_resolution(p: ResolutionTail, n: int, lo: int, hi: int) -> FCompleteResolution:
    """Build ``T -> P`` glued at ``n`` (``C_n(P)`` must be Ding projective) on ``[lo, hi]``."""
    t_data = splice_from_resolution(p, n)
    tw = t_data.window(lo, hi)
    pw = p.complex(hi)
    pw = ChainComplex(p.alg, {i: pw.term(i) for i in range(lo, hi + 1)}, {i: pw.diff(i) for i in range(lo + 1, hi + 1)}, check=False)
    base = {i: identity_map(tw.term(i)) for i in range(n, hi + 1)}
    tau = lift_chain_map(tw, pw, n, base)
    # below the support of P the lift window ends; the maps there are zero
    tau = ChainMap(tw, pw, {i: tau.at(i) if i in tau.source.degrees else zero_map(tw.term(i), pw.term(i)) for i in tw.degrees}, check=False)
    aug = p.augmentation(hi)
    aug = ChainMap(pw, p.target_complex, {i: aug.at(i) for i in pw.degrees}, check=False)
    return FCompleteResolution(tw, pw, tau, aug, n, surjective=all(tau.at(i).is_surjective() for i in tw.degrees))


def surjectivize(f: FCompleteResolution, g: int) -> tuple[FCompleteResolution, ChainMap]:
    """``T' = T ⊕ ⊏_{g-1}P ⊕ Σ^{-1}⊏_{g-1}P`` with ``d(t, x, y) = (dt, dx, x - dy)``.

    Returns the new resolution with ``τ'(t, x, y) = τ(t) + x`` and ``α(t) = (t, 0, 0)``.
    """
    t, pc, tau = f.t, f.p, f.tau
    for i in t.degrees:
        if i >= g and not tau.at(i).is_iso():
            raise ThresholdViolated(f"tau_{i} is not bijective although {i} >= {g}")
    alg = t.alg
    lo, hi = t.lo, t.hi

    def parts(n: int) -> list[Representation]:
        out = [t.term(n)]
        out.append(pc.term(n) if n <= g - 1 else zero_module(alg))
        out.append(pc.term(n + 1) if n + 1 <= g - 1 and n + 1 <= hi else zero_module(alg))
        return out

    terms = {n: direct_sum(parts(n)) for n in range(lo, hi + 1)}
    diffs = {}
    for n in range(lo + 1, hi + 1):
        src, tgt = parts(n), parts(n - 1)
        dx = pc.diff(n) if (n <= g - 1) else None
        blocks = [
            [t.diff(n), None, None],
            [None, dx, None],
            [None, identity_map(pc.term(n)) if n <= g - 1 else None, pc.diff(n + 1).scale(-1) if n + 1 <= g - 1 and n + 1 <= hi else None],
        ]
        diffs[n] = block_map(terms[n], terms[n - 1], blocks, src, tgt)
    t2 = ChainComplex(alg, terms, diffs, check=True)
    tau2 = ChainMap(
        t2,
        pc,
        {n: block_map(terms[n], pc.term(n), [[tau.at(n), identity_map(pc.term(n)) if n <= g - 1 else None, None]], parts(n), [pc.term(n)]) for n in range(lo, hi + 1)},
        check=True,
    )
    alpha = ChainMap(
        t,
        t2,
        {n: block_map(t.term(n), terms[n], [[identity_map(t.term(n))], [None], [None]], [t.term(n)], parts(n)) for n in range(lo, hi + 1)},
        check=True,
    )
    return FCompleteResolution(t2, pc, tau2, f.augmentation, g, surjective=True), alpha
