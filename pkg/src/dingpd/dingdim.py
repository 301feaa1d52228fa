"""Certified Ding projectivity and Ding projective dimension.

Over the supported algebras flat modules are projective, so a module ``M`` is
Ding projective exactly when it is the degree-0 cokernel of a totally acyclic
complex of projectives.  The detector decides this by three finite checks:

* the evaluation map ``M -> M**`` is an isomorphism;
* ``Ext^i(M, P_v) = 0`` for all ``i >= 1`` and every vertex ``v``;
* ``Ext^i(M*, P^op_v) = 0`` for all ``i >= 1`` over the opposite algebra.

"For all ``i``" is certified either by a syzygy cycle ``Ω^j ≅ Ω^k`` (after
which Ext is periodic) or by an injective-dimension bound
``Ext^{d+1}(S_w, P_v) = 0`` for every simple ``S_w``, which kills all Ext
above ``d``.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .algebra import BoundQuiverAlgebra
from .complexcalc import (
    NEG_INF,
    POS_INF,
    ChainComplex,
    cokernel_at,
    hom_complex,
    homology_dims,
    hsup,
    soft_above,
    stalk,
)
from .errors import CertificateError, FailedHypothesis
from .repmod import (
    ExtWitness,
    ModuleMap,
    Representation,
    SyzygyChain,
    double_dual_map,
    ext_from_chain,
    indecomposable_projectives,
    is_isomorphic,
    is_projective,
    simple_module,
)
from .resolutions import (
    ModuleResolution,
    ResolutionTail,
    check_totally_acyclic,
    dg_projective_resolution,
    splice_complete_resolution,
)

SYZYGY_BUDGET = 1024  # largest syzygy dimension a detector will build
SANITY_WINDOW = 4  # window of the splice re-check attached to every YES

YES, NO, UNDETERMINED = "yes", "no", "undetermined"


@dataclass(frozen=True)
class Undetermined:
    """No verdict within the window; the true value is at least ``lower_bound``."""

    lower_bound: int


def value_to_doc(v) -> Any:
    if isinstance(v, Undetermined):
        return {"undetermined_geq": v.lower_bound}
    if v == NEG_INF:
        return "-inf"
    if v == POS_INF:
        return "+inf"
    return int(v)


def value_from_doc(d) -> Any:
    if d == "-inf":
        return NEG_INF
    if d == "+inf":
        return POS_INF
    if isinstance(d, dict):
        return Undetermined(int(d["undetermined_geq"]))
    return int(d)


def is_finite(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def shift_value(v, k: int):
    if isinstance(v, Undetermined):
        return Undetermined(v.lower_bound + k)
    if is_finite(v):
        return v + k
    return v


def _digest(*arrays: np.ndarray) -> str:
    h = hashlib.sha256()
    for a in arrays:
        a = np.ascontiguousarray(a, dtype=np.int64)
        h.update(str(a.shape).encode())
        h.update(a.tobytes())
    return h.hexdigest()[:16]


def _map_doc(f: ModuleMap) -> list:
    return [m.tolist() for m in f.mats]


# -- chain-level helpers ----------------------------------------------------------------------------

def ext_limit(chain: SyzygyChain, window: int) -> int:
    """Largest ``t <= window`` for which ``Ext^t`` fits the syzygy budget (needs ``Ω^{t+1}``)."""
    return min(window, chain.depth_within(SYZYGY_BUDGET, window + 1) - 1)


def find_cycle(chain: SyzygyChain, lo: int, hi: int, seed: int = 0) -> tuple[int, int, ModuleMap] | None:
    """Least ``k <= hi`` with ``Ω^j ≅ Ω^k`` for some ``lo <= j < k``."""
    cache = chain.__dict__.setdefault("_cycles", {})
    key = (lo, hi, seed)
    if key in cache:
        return cache[key]
    found = None
    top = chain.depth_within(SYZYGY_BUDGET, hi)
    for k in range(lo + 1, top + 1):
        mk = chain.syzygy(k)
        for j in range(lo, k):
            mj = chain.syzygy(j)
            if mj.dims != mk.dims:
                continue
            iso = is_isomorphic(mj, mk, seed=seed)
            if iso is not None:
                found = (j, k, iso)
                break
        if found:
            break
    cache[key] = found
    return found


class ExtProfile:
    """Memoized ``Ext^t(Ω^0, P_v)`` along a chain."""

    def __init__(self, chain: SyzygyChain, targets: list[Representation]):
        self.chain, self.targets = chain, targets
        self._w: dict[tuple[int, int], ExtWitness] = {}

    def witness(self, t: int, v: int) -> ExtWitness:
        if (t, v) not in self._w:
            self._w[(t, v)] = ext_from_chain(self.chain, self.targets[v], t)
        return self._w[(t, v)]

    def nonzero_at(self, t: int) -> tuple[int, ExtWitness] | None:
        for v in range(len(self.targets)):
            w = self.witness(t, v)
            if w.dim:
                return v, w
        return None


def _profile(chain: SyzygyChain, alg: BoundQuiverAlgebra) -> ExtProfile:
    prof = chain.__dict__.get("_profile")
    if prof is None:
        prof = ExtProfile(chain, indecomposable_projectives(alg))
        chain.__dict__["_profile"] = prof
    return prof


@dataclass
class InjectiveBound:
    """``Ext^{d+1}(S_w, P_v) = 0`` for all simples, so ``id P_v <= d`` for all ``v``."""

    d: int
    witnesses: list[tuple[int, int, ExtWitness]]

    def to_doc(self) -> dict:
        return {
            "d": self.d,
            "witnesses": [{"simple": w, "vertex": v, "degree": x.degree, "dim": x.dim, "digest": _digest(x.restriction, x.cocycles)} for w, v, x in self.witnesses],
        }


def injective_dimension_bound(alg: BoundQuiverAlgebra, window: int) -> InjectiveBound | None:
    """Least ``d < window`` with ``Ext^{d+1}(S_w, A) = 0`` for every simple ``S_w``."""
    cache = alg.__dict__.setdefault("_injdim", {})
    if window in cache:
        return cache[window]
    chains = alg.__dict__.setdefault("_simple_chains", {})
    out = None
    for d in range(0, window):
        wit, ok = [], True
        for w in range(alg.vertices):
            ch = chains.setdefault(w, SyzygyChain(simple_module(alg, w)))
            if ext_limit(ch, window) < d + 1:
                ok = False
                break
            prof = _profile(ch, alg)
            for v in range(alg.vertices):
                x = prof.witness(d + 1, v)
                if x.dim:
                    ok = False
                    break
                wit.append((w, v, x))
            if not ok:
                break
        if ok:
            out = InjectiveBound(d, wit)
            break
    cache[window] = out
    return out


# -- certificates --------------------------------------------------------------------------------------

@dataclass
class Obstruction:
    kind: str  # "ext" | "reflexivity"
    side: str
    degree: int | None = None
    vertex: int | None = None
    witness: ExtWitness | None = None
    eta: ModuleMap | None = None

    def to_doc(self) -> dict:
        d: dict[str, Any] = {"kind": self.kind, "side": self.side}
        if self.kind == "ext":
            d.update(degree=self.degree, vertex=self.vertex, dim=self.witness.dim, hom_dim=self.witness.hom_dim,
                     digest=_digest(self.witness.restriction, self.witness.cocycles))
        else:
            d.update(eta_rank=self.eta.rank(), source_dim=self.eta.source.dim, target_dim=self.eta.target.dim)
        return d


@dataclass
class SideCertificate:
    """Vanishing of ``Ext^{>=1}(Ω^base R, P_v)`` for the chain rooted at ``R``."""

    side: str
    kind: str  # "projective" | "cycle" | "injdim"
    base: int
    cycle: tuple[int, int] | None = None
    iso: ModuleMap | None = None
    injdim: InjectiveBound | None = None
    ext: list[tuple[int, int, ExtWitness]] = field(default_factory=list)

    def to_doc(self) -> dict:
        d: dict[str, Any] = {"side": self.side, "kind": self.kind, "base": self.base}
        if self.cycle:
            d["cycle"] = list(self.cycle)
            d["iso"] = _map_doc(self.iso)
        if self.injdim:
            d["injdim"] = self.injdim.to_doc()
        d["ext_vanishing"] = [
            {"degree": t - self.base, "vertex": v, "dim": w.dim, "digest": _digest(w.restriction, w.cocycles)}
            for t, v, w in self.ext
        ]
        return d

    def replay(self, root: Representation, window: int) -> None:
        chain = SyzygyChain(root)
        m = chain.syzygy(self.base)
        if self.kind == "projective":
            if not is_projective(m):
                raise CertificateError(f"{self.side}: module claimed projective is not")
            return
        if self.kind == "cycle":
            j, k = self.cycle
            if not (self.base <= j < k <= window):
                raise CertificateError(f"{self.side}: cycle indices {self.cycle} out of range")
            mj, mk = chain.syzygy(j), chain.syzygy(k)
            f = self.iso
            if mj.dims != f.source.dims or mk.dims != f.target.dims:
                raise CertificateError(f"{self.side}: cycle iso has the wrong shape")
            g = ModuleMap(mj, mk, f.mats, check=False)
            if not g.commutes() or g.inverse() is None:
                raise CertificateError(f"{self.side}: cycle map is not an isomorphism")
            need = set(range(self.base + 1, k + 1))
        else:
            b = self.injdim
            for w, v, x in b.witnesses:
                again = ext_from_chain(SyzygyChain(simple_module(root.alg, w)), indecomposable_projectives(root.alg)[v], b.d + 1)
                if again.dim != 0:
                    raise CertificateError(f"{self.side}: injective-dimension witness does not vanish")
            if len({(w, v) for w, v, _ in b.witnesses}) != root.alg.vertices ** 2:
                raise CertificateError(f"{self.side}: injective-dimension witnesses incomplete")
            need = set(range(self.base + 1, self.base + b.d + 1))
        have = {t for t, _, _ in self.ext}
        if not need <= have:
            raise CertificateError(f"{self.side}: Ext degrees {sorted(need - have)} not witnessed")
        projs = indecomposable_projectives(root.alg)
        for t, v, w in self.ext:
            again = ext_from_chain(chain, projs[v], t)
            if again.dim != 0 or not w.replay(root.p) or w.dim != 0:
                raise CertificateError(f"{self.side}: Ext^{t - self.base} into P_{v} does not vanish")
            if not (np.array_equal(again.restriction, w.restriction) and np.array_equal(again.cocycles, w.cocycles)):
                raise CertificateError(f"{self.side}: Ext presentation differs on recomputation")


@dataclass
class DpCertificate:
    module: Representation
    root: Representation  # chain root for the left side
    base: int
    window: int
    eta: ModuleMap
    left: SideCertificate
    right: SideCertificate
    dual: Representation

    def to_doc(self) -> dict:
        return {
            "kind": "ding_projective",
            "module": self.module.to_doc(),
            "syzygy_index": self.base,
            "window": self.window,
            "reflexivity": {"eta": _map_doc(self.eta)},
            "left": self.left.to_doc(),
            "right": self.right.to_doc(),
        }

    def replay(self) -> None:
        chain = SyzygyChain(self.root)
        m = chain.syzygy(self.base)
        if m.dims != self.module.dims or not m.same_data(self.module):
            raise CertificateError("certified module does not match the recomputed syzygy")
        first, _, eta = double_dual_map(m)
        if not (np.all([np.array_equal(a, b) for a, b in zip(eta.mats, self.eta.mats)]) and eta.is_iso() and eta.commutes()):
            raise CertificateError("evaluation map M -> M** is not an invertible module map")
        self.left.replay(self.root, self.window)
        if not first.module.same_data(self.dual):
            raise CertificateError("dual module differs on recomputation")
        self.right.replay(self.dual, self.window)


@dataclass
class DpResult:
    status: str
    certificate: DpCertificate | None = None
    obstruction: Obstruction | None = None
    note: str = ""

    def to_doc(self) -> dict:
        return {
            "status": self.status,
            "certificate": self.certificate.to_doc() if self.certificate else None,
            "obstruction": self.obstruction.to_doc() if self.obstruction else None,
            "note": self.note,
        }


def _side_check(side: str, chain: SyzygyChain, base: int, window: int, seed: int, stop_at_gap: bool):
    """``(status, SideCertificate | Obstruction | None)`` for ``Ω^base`` of the chain."""
    m = chain.syzygy(base)
    alg = m.alg
    if is_projective(m):
        return YES, SideCertificate(side, "projective", base)
    limit = ext_limit(chain, window)
    prof = _profile(chain, alg)
    cyc = find_cycle(chain, base, window, seed)
    inj = None if cyc else injective_dimension_bound(alg, window)
    if cyc is not None:
        need = range(base + 1, cyc[1] + 1)
    elif inj is not None:
        need = range(base + 1, base + inj.d + 1)
    else:
        need = None
    scan = need if need is not None and need.stop - 1 <= limit else range(base + 1, limit + 1)
    ext = []
    for t in scan:
        hit = prof.nonzero_at(t)
        if hit is not None:
            v, w = hit
            return NO, Obstruction("ext", side, t - base, v, w)
        ext.extend((t, v, prof.witness(t, v)) for v in range(alg.vertices))
    if need is None or need.stop - 1 > limit:
        return UNDETERMINED, None
    if cyc is not None:
        return YES, SideCertificate(side, "cycle", base, (cyc[0], cyc[1]), cyc[2], None, ext)
    return YES, SideCertificate(side, "injdim", base, None, None, inj, ext)


def _dp_test(root: Representation, chain: SyzygyChain, base: int, window: int, seed: int, exhaustive: bool) -> DpResult:
    if window < 2:
        return DpResult(UNDETERMINED, note="window below 2 cannot certify a syzygy cycle")
    m = chain.syzygy(base)
    status, left = _side_check("left", chain, base, window, seed, not exhaustive)
    if status == NO:
        return DpResult(NO, obstruction=left)
    if status == UNDETERMINED and not exhaustive:
        return DpResult(UNDETERMINED, note="left Ext vanishing not certified within the window")
    if m.dim > SYZYGY_BUDGET:
        return DpResult(UNDETERMINED, note="module exceeds the syzygy budget")
    first, _, eta = double_dual_map(m)
    if not eta.is_iso():
        return DpResult(NO, obstruction=Obstruction("reflexivity", "left", eta=eta))
    dual = first.module
    dchain = SyzygyChain(dual)
    rstatus, right = _side_check("right", dchain, 0, window, seed, not exhaustive)
    if rstatus == NO:
        return DpResult(NO, obstruction=right)
    if status == UNDETERMINED or rstatus == UNDETERMINED:
        return DpResult(UNDETERMINED, note="Ext vanishing not certified within the window")
    cert = DpCertificate(m, root, base, window, eta, left, right, dual)
    return DpResult(YES, certificate=cert)


def _sanity(cert: DpCertificate, window: int) -> None:
    w = max(1, min(window, SANITY_WINDOW))
    t = splice_complete_resolution(cert.module, w, certified=cert)
    rep = check_totally_acyclic(t, w)
    if not rep.passed:
        bad = rep.failures()[0]
        raise CertificateError(f"splice of a certified module fails {bad.check} at degree {bad.degree}")


def is_ding_projective(m: Representation, window: int = 20, seed: int = 0, sanity: bool = True) -> DpResult:
    """Decide Ding projectivity of ``m`` with syzygies and Ext degrees up to ``window``."""
    chain = SyzygyChain(m)
    res = _dp_test(m, chain, 0, window, seed, exhaustive=True)
    if res.status == YES and sanity:
        _sanity(res.certificate, window)
    return res


# -- dimension verdicts ------------------------------------------------------------------------------

@dataclass
class InfinityCertificate:
    root: Representation
    cycle: tuple[int, int]
    iso: ModuleMap
    members: list[tuple[int, Obstruction]]

    def to_doc(self) -> dict:
        return {
            "kind": "syzygy_cycle_not_ding_projective",
            "cycle": list(self.cycle),
            "iso": _map_doc(self.iso),
            "members": [{"syzygy_index": n, "obstruction": o.to_doc()} for n, o in self.members],
        }

    def replay(self) -> None:
        chain = SyzygyChain(self.root)
        j, k = self.cycle
        mj, mk = chain.syzygy(j), chain.syzygy(k)
        if mj.dims != self.iso.source.dims or mk.dims != self.iso.target.dims:
            raise CertificateError("cycle iso has the wrong shape")
        f = ModuleMap(mj, mk, self.iso.mats, check=False)
        if not f.commutes() or f.inverse() is None:
            raise CertificateError("cycle map is not an isomorphism")
        if sorted(n for n, _ in self.members) != list(range(j, k)):
            raise CertificateError("cycle members are not all refuted")
        for n, ob in self.members:
            m = chain.syzygy(n)
            if ob.kind == "ext":
                if ob.side == "left":
                    w = ext_from_chain(chain, indecomposable_projectives(m.alg)[ob.vertex], n + ob.degree)
                else:
                    dual = double_dual_map(m)[0].module
                    w = ext_from_chain(SyzygyChain(dual), indecomposable_projectives(dual.alg)[ob.vertex], ob.degree)
                if w.dim == 0:
                    raise CertificateError(f"obstruction for syzygy {n} vanishes on recomputation")
            else:
                if double_dual_map(m)[2].is_iso():
                    raise CertificateError(f"syzygy {n} is reflexive after all")


@dataclass
class DpdVerdict:
    value: Any
    certificate: Any = None  # DpCertificate | InfinityCertificate | dict
    witness_complex: ChainComplex | None = None
    ext_profile: dict[int, list[int]] = field(default_factory=dict)
    note: str = ""

    def to_doc(self) -> dict:
        cert = self.certificate
        if hasattr(cert, "to_doc"):
            cert = cert.to_doc()
        return {
            "value": value_to_doc(self.value),
            "certificate": cert,
            "witness_complex": self.witness_complex.to_doc() if self.witness_complex is not None else None,
        }

    def replay(self) -> None:
        c = self.certificate
        if hasattr(c, "replay"):
            c.replay()
        if is_finite(self.value):
            w = self.witness_complex
            if w is None:
                raise CertificateError("finite verdict without witness complex")
            sup = w.support()
            if sup is None or sup[1] != self.value:
                raise CertificateError("witness complex does not end at the claimed degree")
            for n in range(sup[0], sup[1]):
                if not is_projective(w.term(n)):
                    raise CertificateError(f"witness term at degree {n} is not projective")


def dpd_module(m: Representation, window: int = 20, seed: int = 0, sanity: bool = True) -> DpdVerdict:
    """Least ``n`` with ``Ω^n M`` Ding projective, ``+inf`` on a refuted cycle, else undetermined."""
    if m.dim == 0:
        return DpdVerdict(NEG_INF, {"kind": "zero_module"})
    chain = SyzygyChain(m)
    alg = m.alg
    limit = ext_limit(chain, window)
    prof = _profile(chain, alg)
    cyc = find_cycle(chain, 0, window, seed) if window >= 2 else None
    last = cyc[0] if cyc else min(window, limit + 1)
    results: dict[int, DpResult] = {}
    for n in range(0, last + 1):
        r = _dp_test(m, chain, n, window, seed, exhaustive=cyc is not None)
        results[n] = r
        if r.status == YES:
            if any(results[i].status == UNDETERMINED for i in range(n)):
                break
            if sanity:
                _sanity(r.certificate, window)
            res = ModuleResolution(m, chain=chain)
            witness, _ = soft_above(res.complex(n + 1), n)
            return DpdVerdict(n, r.certificate, witness)
    if cyc is not None:
        j, k, iso = cyc
        members = []
        for n in range(j, k):
            r = results.get(n) or _dp_test(m, chain, n, window, seed, exhaustive=True)
            if r.status != NO:
                members = None
                break
            members.append((n, r.obstruction))
        if members is not None:
            return DpdVerdict(POS_INF, InfinityCertificate(m, (j, k), iso, members))
    b = 0
    for t in range(1, limit + 1):
        if prof.nonzero_at(t) is not None:
            b = t
    note = "" if limit >= window else f"Ext computed through degree {limit} within the syzygy budget"
    return DpdVerdict(Undetermined(b), {"kind": "window_exhausted", "window": window, "ext_degrees_checked": limit}, note=note)


def dpd_complex(
    x: ChainComplex,
    window: int = 20,
    seed: int = 0,
    resolution: ResolutionTail | None = None,
    sanity: bool = True,
) -> DpdVerdict:
    """``Dpd`` of a bounded complex: least ``n >= hsup X`` with ``C_n(P)`` Ding projective."""
    s = hsup(x)
    if s == NEG_INF:
        return DpdVerdict(NEG_INF, {"kind": "exact", "homology_dims": {str(n): list(homology_dims(x, n)) for n in x.degrees}})
    p = resolution or dg_projective_resolution(x)
    g, _ = cokernel_at(p.complex(s + 1), s)
    mv = dpd_module(g, window, seed, sanity=False)
    if not is_finite(mv.value):
        return DpdVerdict(shift_value(mv.value, s), mv.certificate, None, note=mv.note)
    n = s + mv.value
    cn, _ = cokernel_at(p.complex(n + 1), n)
    r = is_ding_projective(cn, window, seed, sanity=sanity)
    if r.status != YES:
        raise CertificateError(f"cokernel at degree {n} not certified although its syzygy class is ({r.status})")
    witness, _ = soft_above(p.complex(n + 1), n)
    return DpdVerdict(n, r.certificate, witness)


def dpd_functorial(x: ChainComplex, window: int = 20, seed: int = 0, verdict: DpdVerdict | None = None) -> int:
    """``max_v -inf H(Hom(W, P_v))`` for the finite witness complex ``W``."""
    v = verdict or dpd_complex(x, window, seed)
    if not is_finite(v.value):
        raise FailedHypothesis(f"Dpd is {value_to_doc(v.value)}, not finite")
    w = v.witness_complex
    best = NEG_INF
    for pv in indecomposable_projectives(x.alg):
        h = hom_complex(w, stalk(pv, 0))
        inf = h.hinf()
        if inf != POS_INF:
            best = max(best, -inf)
    return int(best) if best != NEG_INF else best


def rhom(x: ChainComplex, u: ChainComplex, lo: int, hi: int, resolution: ResolutionTail | None = None) -> dict[int, int]:
    """Homology dimensions of ``RHom(X, U)`` in degrees ``lo..hi``."""
    sup_u = u.support()
    if sup_u is None or x.is_zero():
        return {l: 0 for l in range(lo, hi + 1)}
    p = resolution or dg_projective_resolution(x)
    depth = sup_u[1] - lo + 1
    pc = p.complex(max(depth, p.lo))
    pc = ChainComplex(pc.alg, {n: pc.term(n) for n in range(pc.lo, depth + 1)}, {n: pc.diff(n) for n in range(pc.lo + 1, depth + 1)}, check=False)
    h = hom_complex(pc, u)
    return {l: h.homology_dim(l) for l in range(lo, hi + 1)}


def rhom_inf(dims: dict[int, int]) -> float:
    nz = [l for l, d in dims.items() if d]
    return min(nz) if nz else POS_INF


def pd_complex(x: ChainComplex, window: int = 20, resolution: ResolutionTail | None = None):
    """Least ``n >= hsup X`` with ``C_n(P)`` projective, searched through ``hsup + window``."""
    s = hsup(x)
    if s == NEG_INF:
        return NEG_INF
    p = resolution or dg_projective_resolution(x)
    for n in range(s, s + window + 1):
        cn, _ = cokernel_at(p.complex(n + 1), n)
        if is_projective(cn):
            return n
    return None


def verdict_report(v: DpdVerdict) -> dict:
    return v.to_doc()
