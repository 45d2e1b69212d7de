"""Command-line front end.

Exit status: 0 success, 1 certificate check failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .algebra import (
    AlgebraError,
    ModuleError,
    ModuleSum,
    SerialAlgebra,
    Uniserial,
    algebra_from_json,
    all_indecomposables,
    build_cyclic,
    is_injective_projective,
    is_self_injective,
    syzygy_orbit,
)
from .complexes import (
    CertificateFormatError,
    bounded_search,
    certificate_dumps,
    certificate_to_json,
    check_certificate,
    check_quasi_resolution,
)
from .homext import ext_table, minimal_resolution
from .qpd import engine, findim_gldim, fmt, has_complex, qgldim, qpd_bounds, table_rows, closed_form_qgldim

CERT_ENV = "SERIALHOM_CERT_DIR"


class UsageError(Exception):
    pass


# --- argument handling ------------------------------------------------------------------


def _add_algebra(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("algebra")
    g.add_argument("--cyclic", type=int, metavar="N", help="cyclic algebra on N vertices")
    g.add_argument("--delta", help="comma-separated vertices of the relation set")
    g.add_argument("--spec", metavar="FILE", help="JSON algebra spec")


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")
    p.add_argument("--out", metavar="FILE", help="write output here instead of stdout")


def _add_modules(p: argparse.ArgumentParser) -> None:
    p.add_argument("--top", type=int, action="append", default=[], help="top vertex (repeatable)")
    p.add_argument("--len", type=int, action="append", default=[], help="Loewy length (repeatable)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="serialhom", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="algebra data")
    _add_algebra(p)
    _add_output(p)

    p = sub.add_parser("table", help="per-indecomposable invariant table")
    _add_algebra(p)
    _add_output(p)
    p.add_argument("--emit-certificates", metavar="DIR", default=os.environ.get(CERT_ENV))

    p = sub.add_parser("resolve", help="syzygy orbit, minimal resolution and Ext table")
    _add_algebra(p)
    _add_modules(p)
    _add_output(p)

    p = sub.add_parser("qpd", help="quasi-projective dimension bounds")
    _add_algebra(p)
    _add_modules(p)
    _add_output(p)
    p.add_argument("--emit-certificates", metavar="DIR", default=os.environ.get(CERT_ENV))

    p = sub.add_parser("qgldim", help="quasi-global, finitistic and global dimension")
    _add_algebra(p)
    _add_output(p)

    p = sub.add_parser("grid", help="all cyclic algebras with n in a range")
    p.add_argument("--min-n", type=int, default=2)
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--parallel", action="store_true", help="fan out over worker processes")
    _add_output(p)

    p = sub.add_parser("check", help="verify a certificate file")
    p.add_argument("certificate", metavar="FILE")
    _add_output(p)

    p = sub.add_parser("search", help="bounded brute-force certificate search")
    _add_algebra(p)
    _add_modules(p)
    _add_output(p)
    p.add_argument("--max-width", type=int, default=2)
    p.add_argument("--max-length", type=int, default=3)
    p.add_argument("--max-dim", type=int, default=64)
    p.add_argument("--target", type=int, default=0)
    return parser


def _algebra(args) -> SerialAlgebra:
    has_inline = args.cyclic is not None or args.delta is not None
    if has_inline and args.spec:
        raise UsageError("give either --cyclic/--delta or --spec, not both")
    if args.spec:
        try:
            text = Path(args.spec).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read spec file: {exc}") from None
        return algebra_from_json(text)
    if args.cyclic is None or args.delta is None:
        raise UsageError("an algebra is required: --cyclic N --delta a,b,... or --spec FILE")
    try:
        delta = [int(x) for x in args.delta.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--delta must be comma-separated integers, got {args.delta!r}") from None
    return build_cyclic(args.cyclic, delta)


def _modules(args, A: SerialAlgebra) -> list[Uniserial]:
    if not args.top and not args.len:
        raise UsageError("a module is required: --top i --len k")
    if len(args.top) != len(args.len):
        raise UsageError("--top and --len must be given the same number of times")
    mods = [Uniserial(i, k) for i, k in zip(args.top, args.len)]
    for u in mods:
        A.check(u)
    return mods


# --- rendering ----------------------------------------------------------------------------


def _scalar(x):
    if isinstance(x, float) and x == float("inf"):
        return "inf"
    if isinstance(x, float) and x.is_integer():
        return int(x)
    return x


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return _scalar(obj)


def render(data, fmt_name: str) -> str:
    """``data`` is a record (dict) or a list of flat records."""
    data = _jsonable(data)
    if fmt_name == "json":
        return json.dumps(data, indent=2, sort_keys=True) + "\n"
    rows = data if isinstance(data, list) else [data]
    if fmt_name == "csv":
        buf = io.StringIO()
        cols = list(rows[0]) if rows else []
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: _flat(v) for k, v in r.items()})
        return buf.getvalue()
    if isinstance(data, dict):
        width = max((len(k) for k in data), default=0)
        return "".join(f"{k.ljust(width)}  {_flat(v)}\n" for k, v in data.items())
    if not rows:
        return ""
    cols = list(rows[0])
    cells = [[str(c) for c in cols]] + [[_flat(r[c]) for c in cols] for r in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(cols))]
    return "".join("  ".join(x.ljust(w) for x, w in zip(row, widths)).rstrip() + "\n" for row in cells)


def _flat(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list):
        return " ".join(_flat(x) for x in v)
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True)
    return str(v)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# --- certificate emission ---------------------------------------------------------------


def _write_certificates(A: SerialAlgebra, M: Uniserial, certs, directory: str) -> list[str]:
    """Write every complex-bearing certificate after re-checking it."""
    os.makedirs(directory, exist_ok=True)
    paths = []
    for cert in certs:
        if not has_complex(cert):
            continue
        C = cert.complex()
        info = check_quasi_resolution(C, M)
        doc = certificate_to_json(C, M, cert.kind, cert.bound)
        assert info.score == cert.bound and check_certificate(doc).ok
        path = os.path.join(directory, f"{A.slug}_L{M.top}-{M.len}_{cert.kind}.json")
        Path(path).write_text(certificate_dumps(doc))
        paths.append(path)
    return paths


# --- subcommands ------------------------------------------------------------------------------


def cmd_info(args) -> int:
    A = _algebra(args)
    findim, gldim = findim_gldim(A)
    data = {
        "algebra": A.label,
        "n": A.n,
        "successor": ["-" if s is None else s for s in A.successor],
        "loewy": list(A.loewy),
        "nakayama": A.is_nakayama,
        "self_injective": is_self_injective(A),
        "projective_injective": [v for v in A.vertices if is_injective_projective(A, v)],
        "components": [list(c) for c in A.components],
        "uniserials": len(all_indecomposables(A)),
        "findim": findim,
        "gldim": gldim,
    }
    _emit(render(data, args.format), args.out)
    return 0


def cmd_table(args) -> int:
    A = _algebra(args)
    rows = table_rows(A)
    if args.emit_certificates:
        eng = engine(A)
        for row, M in zip(rows, eng.mods):
            paths = _write_certificates(A, M, eng.result(M).certificates, args.emit_certificates)
            row["certificates"] = " ".join(paths)
    _emit(render(rows, args.format), args.out)
    return 0


def cmd_resolve(args) -> int:
    A = _algebra(args)
    out = []
    for M in _modules(args, A):
        orb = syzygy_orbit(A, M)
        res = minimal_resolution(A, M)
        ext = ext_table(A, M, M)
        out.append(
            {
                "module": str(M),
                "orbit": [str(u) for u in orb.modules] + (["0"] if orb.period is None else ["..."]),
                "preperiod": orb.preperiod,
                "period": orb.period if orb.period is not None else "-",
                "pd": orb.pd,
                "terms": [f"P{v}" for v in res.terms],
                "diff_lengths": list(res.diff_lengths[1:]),
                "self_ext": list(ext.ext),
                "self_ext_tail": ext.tail,
            }
        )
    _emit(render(out if len(out) > 1 else out[0], args.format), args.out)
    return 0


def cmd_qpd(args) -> int:
    A = _algebra(args)
    mods = _modules(args, A)
    target = mods[0] if len(mods) == 1 else ModuleSum(mods)
    r = qpd_bounds(A, target)
    paths = []
    if args.emit_certificates and isinstance(target, Uniserial):
        paths = _write_certificates(A, target, r.certificates, args.emit_certificates)
    data = {
        "algebra": A.label,
        "module": str(target),
        "qpd_lower": r.lower,
        "qpd_upper": r.upper,
        "exact": r.exact,
        "rules": list(r.rules_fired),
        "certificates": [_cert_summary(c) for c in r.certificates],
        "certificate_files": paths,
    }
    _emit(render(data, args.format), args.out)
    return 0


def _cert_summary(c) -> str:
    extra = {
        "LadderCone": lambda: f"m={c.m},n={c.n}",
        "PeriodicTruncation": lambda: f"period={c.period}",
        "PiCoverCone": lambda: f"via {c.inner.kind}",
        "SocleEmbedding": lambda: "into " + ",".join(str(u) for u in c.witnesses),
        "ExtVanishingInfinite": lambda: f"Ext^s(M,M)=0 for s in [{c.window[0]},{c.window[1]}]",
        "CaseAnalysis": lambda: c.case_id,
        "FinitePd": lambda: f"pd={c.pd}",
    }[c.kind]()
    return f"{c.kind}({extra}) bound={fmt(c.bound)}"


def cmd_qgldim(args) -> int:
    A = _algebra(args)
    q = qgldim(A)
    findim, gldim = findim_gldim(A)
    data = {
        "algebra": A.label,
        "qgldim_lower": q.lower,
        "qgldim_upper": q.upper,
        "exact": q.exact,
        "findim": findim,
        "gldim": gldim,
        "note": q.note,
    }
    _emit(render(data, args.format), args.out)
    return 0


def grid_row(n: int, delta: tuple[int, ...]) -> dict:
    A = build_cyclic(n, delta)
    q = qgldim(A)
    eng = engine(A)
    findim, gldim = findim_gldim(A)
    return {
        "n": n,
        "delta": ",".join(map(str, delta)),
        "m": len(delta),
        "qgldim_engine": f"[{fmt(max(eng.lo.values()))},{fmt(max(eng.hi.values()))}]",
        "qgldim": q.lower if q.exact else f"[{fmt(q.lower)},{fmt(q.upper)}]",
        "expected": closed_form_qgldim(A),
        "findim": findim,
        "gldim": gldim,
        "exact_modules": sum(1 for M in eng.mods if eng.lo[M] == eng.hi[M]),
        "modules": len(eng.mods),
    }


def _grid_job(job: tuple[int, tuple[int, ...]]) -> dict:
    return grid_row(*job)


def cmd_grid(args) -> int:
    if args.min_n < 2 or args.max_n < args.min_n:
        raise UsageError("need 2 <= --min-n <= --max-n")
    if args.max_n > 8:
        raise UsageError("--max-n is capped at 8 (2^n relation sets per n)")
    jobs = [
        (n, d) for n in range(args.min_n, args.max_n + 1) for m in range(1, n + 1)
        for d in itertools.combinations(range(1, n + 1), m)
    ]
    if args.parallel:
        with ProcessPoolExecutor() as pool:
            rows = list(pool.map(_grid_job, jobs, chunksize=8))
    else:
        rows = [_grid_job(j) for j in jobs]
    _emit(render(rows, args.format), args.out)
    return 0


def cmd_check(args) -> int:
    try:
        doc = json.loads(Path(args.certificate).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read certificate: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"certificate is not valid JSON: {exc}") from None
    outcome = check_certificate(doc)
    data = {
        "certificate": args.certificate,
        "ok": outcome.ok,
        "message": outcome.message,
    }
    if outcome.result is not None:
        data["score"] = outcome.result.score
        data["multiplicities"] = {str(k): v for k, v in outcome.result.multiplicities.items()}
    _emit(render(data, args.format), args.out)
    return 0 if outcome.ok else 1


def cmd_search(args) -> int:
    A = _algebra(args)
    mods = _modules(args, A)
    if len(mods) != 1:
        raise UsageError("search takes exactly one module")
    M = mods[0]
    C = bounded_search(A, M, args.max_width, args.max_length, args.target, args.max_dim)
    data = {"module": str(M), "target_score": args.target, "found": C is not None}
    if C is not None:
        info = check_quasi_resolution(C, M)
        data["score"] = info.score
        data["certificate"] = certificate_to_json(C, M, "BoundedSearch", info.score)
    _emit(render(data, args.format), args.out)
    return 0


COMMANDS = {
    "info": cmd_info,
    "table": cmd_table,
    "resolve": cmd_resolve,
    "qpd": cmd_qpd,
    "qgldim": cmd_qgldim,
    "grid": cmd_grid,
    "check": cmd_check,
    "search": cmd_search,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except AlgebraError as exc:
        where = f" (field {exc.field})" if exc.field else ""
        print(f"serialhom: invalid algebra{where}: {exc}", file=sys.stderr)
    except CertificateFormatError as exc:
        print(f"serialhom: malformed certificate: {exc}", file=sys.stderr)
    except (ModuleError, UsageError) as exc:
        print(f"serialhom: {exc}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
