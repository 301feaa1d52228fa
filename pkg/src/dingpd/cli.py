"""Command line front end.

Documents are UTF-8 JSON files; anywhere an algebra document is expected a
shipped fixture name (FIX1, FIX2, FIX3, FIX4, RAD2) may be given instead.

Exit status: 0 for any computed answer (undetermined included), 1 for input
errors, 2 when a certificate fails to replay or a suite property fails.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
from pathlib import Path
from typing import Any, Callable

from .algebra import FIXTURES, BoundQuiverAlgebra, algebra_from_doc
from .complexcalc import ChainComplex, complex_from_doc, homology_dims, hsup, hinf, stalk
from .dingdim import (
    YES,
    dpd_complex,
    dpd_module,
    is_ding_projective,
    rhom,
    rhom_inf,
    value_to_doc,
)
from .errors import CertificateError, EngineError, InputError
from .repmod import Representation, module_from_doc
from .resolutions import check_totally_acyclic, dg_projective_resolution, splice_complete_resolution
from .suite import run_suite

CACHE_ENV = "DPD_CACHE"
CACHE_VERSION = 1


# -- documents ----------------------------------------------------------------------------------

def read_json(path: str) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: cannot read ({exc.strerror})") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def load_algebra(source: str) -> tuple[BoundQuiverAlgebra, Any]:
    """Algebra from a fixture name or a document path, plus the document used for cache keys."""
    if source in FIXTURES and not Path(source).exists():
        alg = FIXTURES[source]()
        return alg, {"fixture": source}
    doc = read_json(source)
    try:
        return algebra_from_doc(doc), doc
    except InputError as exc:
        raise InputError(f"{source}: {exc}") from None


def _object_doc(path: str) -> dict:
    doc = read_json(path)
    if not isinstance(doc, dict):
        raise InputError(f"{path}: top level must be a JSON object")
    return doc


def load_module(alg: BoundQuiverAlgebra, path: str) -> tuple[Representation, dict]:
    doc = _object_doc(path)
    try:
        return module_from_doc(alg, doc), doc
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from None


def load_complex(alg: BoundQuiverAlgebra, path: str) -> tuple[ChainComplex, dict]:
    """A complex document, or a module document read as a stalk in degree 0."""
    doc = _object_doc(path)
    try:
        if "terms" in doc:
            return complex_from_doc(alg, doc), doc
        return stalk(module_from_doc(alg, doc), 0), doc
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from None


# -- cache ----------------------------------------------------------------------------------------

class ReportCache:
    """Content-addressed report store; writes land by atomic rename."""

    def __init__(self, root: str | None):
        self.root = Path(root) if root else None

    @staticmethod
    def key(payload: Any) -> str:
        blob = json.dumps([CACHE_VERSION, payload], sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def _path(self, key: str) -> Path:
        return self.root / key[:2] / f"{key}.json"

    def get(self, key: str) -> dict | None:
        if self.root is None:
            return None
        try:
            return json.loads(self._path(key).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError):
            return None

    def put(self, key: str, report: dict) -> None:
        if self.root is None:
            return
        path = self._path(key)
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(report, fh, sort_keys=True)
        os.replace(tmp, path)


def cached(args: argparse.Namespace, key_parts: Any, compute: Callable[[], dict]) -> dict:
    cache = ReportCache(os.environ.get(CACHE_ENV) if args.cache == "on" else None)
    key = cache.key(key_parts)
    hit = cache.get(key)
    if hit is not None:
        return hit
    report = compute()
    # round-trip so a fresh report and a cached one are byte-identical
    report = json.loads(json.dumps(report, sort_keys=True))
    cache.put(key, report)
    return report


# -- commands -----------------------------------------------------------------------------------

def cmd_algebra_check(args) -> dict:
    alg, _ = load_algebra(args.algebra)
    return {
        "p": alg.p,
        "vertices": alg.vertices,
        "arrows": [a.id for a in alg.quiver.arrows],
        "dim": alg.dim,
        "dims_per_vertex": [len([i for i in range(alg.dim) if alg.source(i) == v]) for v in range(alg.vertices)],
        "commutative": alg.is_commutative,
        "associative": alg.check_associative(),
        "unital": alg.check_unit(),
    }


def cmd_module_is_dp(args) -> dict:
    alg, adoc = load_algebra(args.algebra)
    m, mdoc = load_module(alg, args.module)

    def run() -> dict:
        r = is_ding_projective(m, args.window, args.seed)
        if r.certificate is not None:
            r.certificate.replay()
        return {"window": args.window, **r.to_doc()}

    return cached(args, [adoc, mdoc, "module is-dp", args.window, args.seed], run)


def cmd_module_dpd(args) -> dict:
    alg, adoc = load_algebra(args.algebra)
    m, mdoc = load_module(alg, args.module)

    def run() -> dict:
        v = dpd_module(m, args.window, args.seed)
        v.replay()
        return v.to_doc()

    return cached(args, [adoc, mdoc, "module dpd", args.window, args.seed], run)


def cmd_complex_homology(args) -> dict:
    alg, _ = load_algebra(args.algebra)
    x, _ = load_complex(alg, args.complex)
    return {
        "hsup": value_to_doc(hsup(x)),
        "hinf": value_to_doc(hinf(x)),
        "homology": {str(n): list(homology_dims(x, n)) for n in x.degrees},
    }


def cmd_complex_dpd(args) -> dict:
    alg, adoc = load_algebra(args.algebra)
    x, xdoc = load_complex(alg, args.complex)

    def run() -> dict:
        v = dpd_complex(x, args.window, args.seed)
        v.replay()
        return v.to_doc()

    return cached(args, [adoc, xdoc, "complex dpd", args.window, args.seed], run)


def cmd_complex_rhom(args) -> dict:
    alg, adoc = load_algebra(args.algebra)
    x, xdoc = load_complex(alg, args.complex)
    u, udoc = load_complex(alg, args.target)
    if args.lo > args.hi:
        raise InputError(f"empty degree range [{args.lo}, {args.hi}]")

    def run() -> dict:
        dims = rhom(x, u, args.lo, args.hi)
        inf = rhom_inf(dims)
        return {"range": [args.lo, args.hi], "homology_dims": {str(k): d for k, d in dims.items()}, "inf_in_range": value_to_doc(inf)}

    return cached(args, [adoc, xdoc, udoc, "complex rhom", args.lo, args.hi], run)


def cmd_resolve(args) -> dict:
    alg, adoc = load_algebra(args.algebra)
    x, xdoc = load_complex(alg, args.input)

    def run() -> dict:
        p = dg_projective_resolution(x)
        top = max(args.degree, p.lo)
        c = p.complex(top)
        aug = p.augmentation(top)
        doc = c.to_doc()
        doc["augmentation"] = {str(n): [m.tolist() for m in aug.at(n).mats] for n in range(p.lo, top + 1)}
        return doc

    return cached(args, [adoc, xdoc, "resolve", args.degree], run)


def cmd_check_ta(args) -> dict:
    alg, adoc = load_algebra(args.algebra)
    m, mdoc = load_module(alg, args.module)

    def run() -> dict:
        r = is_ding_projective(m, max(args.window, 2), args.seed, sanity=False)
        if r.status != YES:
            return {"certified": False, "status": r.status, "window": args.window, "passed": False, "entries": []}
        t = splice_complete_resolution(m, args.window, r.certificate)
        return {"certified": True, **check_totally_acyclic(t, args.window).to_doc()}

    return cached(args, [adoc, mdoc, "check-ta", args.window, args.seed], run)


def cmd_suite(args) -> dict:
    return run_suite(args.seed, args.window).to_doc()


# -- text rendering ------------------------------------------------------------------------------

def render_text(command: str, report: dict) -> str:
    lines = []
    if command == "suite":
        for r in report["properties"]:
            crit = f"[{r['criterion']}] " if r["criterion"] else ""
            lines.append(f"{r['status'].upper():7s} {crit}{r['name']} ({r['checked']} checks) {r['detail']}".rstrip())
        lines.append("suite " + ("passed" if report["passed"] else "FAILED"))
        return "\n".join(lines)
    if "value" in report:
        lines.append(f"value: {_fmt_value(report['value'])}")
        cert = report.get("certificate") or {}
        if cert.get("kind"):
            lines.append(f"certificate: {cert['kind']}")
        if report.get("witness_complex"):
            w = report["witness_complex"]
            terms = ", ".join(f"{n}:{t['dims']}" for n, t in w["terms"].items())
            lines.append(f"witness complex: {terms}")
        return "\n".join(lines)
    if "status" in report and "obstruction" in report:
        lines.append(f"ding projective: {report['status']}")
        if report["obstruction"]:
            ob = report["obstruction"]
            if ob["kind"] == "ext":
                lines.append(f"obstruction: {ob['side']} Ext^{ob['degree']} into P_{ob['vertex']} has dimension {ob['dim']}")
            else:
                lines.append(f"obstruction: {ob['side']} evaluation map M -> M** not invertible")
        if report["certificate"]:
            c = report["certificate"]
            for side in ("left", "right"):
                s = c[side]
                extra = f" {tuple(s['cycle'])}" if "cycle" in s else (f" (injective dimension <= {s['injdim']['d']})" if "injdim" in s else "")
                lines.append(f"{side}: {s['kind']}{extra}")
        if report.get("note"):
            lines.append(f"note: {report['note']}")
        return "\n".join(lines)
    if "entries" in report:
        bad = [e for e in report["entries"] if not e["passed"]]
        lines.append(f"totally acyclic on window {report.get('window', '?')}: {'yes' if report['passed'] else 'no'} ({len(report['entries'])} checks)")
        lines.extend(f"  failed {e['check']} at degree {e['degree']}: {e['detail']}" for e in bad)
        if not report.get("certified", True):
            lines.append(f"module not certified Ding projective ({report['status']})")
        return "\n".join(lines)
    for k in sorted(report):
        v = report[k]
        lines.append(f"{k}: {v if not isinstance(v, (dict, list)) else json.dumps(v, sort_keys=True)}")
    return "\n".join(lines)


def _fmt_value(v) -> str:
    if isinstance(v, dict):
        return f"undetermined (>= {v['undetermined_geq']})"
    return str(v)


# -- parser --------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--window", type=int, default=20, help="syzygy/Ext window (default 20)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized steps (default 0)")
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--cache", choices=["on", "off"], default="on", help=f"use the report cache under ${CACHE_ENV}")

    parser = argparse.ArgumentParser(prog="dpd", description="Ding projective dimension engine", parents=[common])
    sub = parser.add_subparsers(dest="group", required=True)

    alg = sub.add_parser("algebra", help="algebra documents").add_subparsers(dest="action", required=True)
    p = alg.add_parser("check", parents=[common], help="validate an algebra")
    p.add_argument("algebra")
    p.set_defaults(func=cmd_algebra_check, command="algebra check")

    mod = sub.add_parser("module", help="module computations").add_subparsers(dest="action", required=True)
    p = mod.add_parser("is-dp", parents=[common], help="decide Ding projectivity")
    p.add_argument("algebra")
    p.add_argument("module")
    p.set_defaults(func=cmd_module_is_dp, command="module is-dp")
    p = mod.add_parser("dpd", parents=[common], help="Ding projective dimension of a module")
    p.add_argument("algebra")
    p.add_argument("module")
    p.set_defaults(func=cmd_module_dpd, command="module dpd")

    cpx = sub.add_parser("complex", help="complex computations").add_subparsers(dest="action", required=True)
    p = cpx.add_parser("homology", parents=[common], help="homology dimensions")
    p.add_argument("algebra")
    p.add_argument("complex")
    p.set_defaults(func=cmd_complex_homology, command="complex homology")
    p = cpx.add_parser("dpd", parents=[common], help="Ding projective dimension of a complex")
    p.add_argument("algebra")
    p.add_argument("complex")
    p.set_defaults(func=cmd_complex_dpd, command="complex dpd")
    p = cpx.add_parser("rhom", parents=[common], help="homology of RHom(X, U)")
    p.add_argument("algebra")
    p.add_argument("complex")
    p.add_argument("target")
    p.add_argument("--lo", type=int, required=True)
    p.add_argument("--hi", type=int, required=True)
    p.set_defaults(func=cmd_complex_rhom, command="complex rhom")

    p = sub.add_parser("resolve", parents=[common], help="DG-projective resolution up to a degree")
    p.add_argument("algebra")
    p.add_argument("input", help="module or complex document")
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(func=cmd_resolve, command="resolve")

    p = sub.add_parser("check-ta", parents=[common], help="splice a Ding projective module and verify total acyclicity")
    p.add_argument("algebra")
    p.add_argument("module")
    p.set_defaults(func=cmd_check_ta, command="check-ta")

    p = sub.add_parser("suite", parents=[common], help="run the property suite")
    p.set_defaults(func=cmd_suite, command="suite")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.window < 1:
        print("error: --window must be at least 1", file=sys.stderr)
        return 1
    if not -(1 << 63) <= args.seed < (1 << 64):
        print("error: --seed must fit in 64 bits", file=sys.stderr)
        return 1
    try:
        report = args.func(args)
    except CertificateError as exc:
        print(f"certificate replay failed: {exc}", file=sys.stderr)
        return 2
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except EngineError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if args.format == "json":
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        print(render_text(args.command, report))
    if args.command == "suite" and not report["passed"]:
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
