"""Command line interface: ``crskit check | example | classify``.

Exit codes: 0 verdict True, 1 False, 2 Unknown, 3 invalid model or
parameters, 4 input/output failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .catalog import EXAMPLES, emit
from .errors import BadParameters, CRSError
from .kahlerdecide import (
    classify_low_codim,
    decide_locally_kahler,
    default_precision,
    necessary_conditions_report,
)
from .modelio import parse_model
from .truth import Truth

EXIT = {Truth.TRUE: 0, Truth.FALSE: 1, Truth.UNKNOWN: 2}
EXIT_INVALID = 3
EXIT_IO = 4
REPORT_VERSION = 1


def run(path, *, precision=None, certificates=True, surrogate=False, assertions=None, timings=False,
        classify=False) -> tuple:
    """(report dict, exit code) for one model file."""
    T, file_assertions = parse_model(path)
    merged = dict(file_assertions)
    merged.update(assertions or {})
    prec = precision or default_precision()
    t0 = time.perf_counter()
    verdict = decide_locally_kahler(T, prec=prec, surrogate=surrogate)
    t1 = time.perf_counter()
    necessary = necessary_conditions_report(T, verdict)
    t2 = time.perf_counter()
    classification = None
    if verdict.value is Truth.TRUE and T.codim in (1, 2):
        classification = classify_low_codim(T, verdict, merged).to_dict()
    elif classify:
        reason = (f"verdict is {verdict.value}" if verdict.value is not Truth.TRUE
                  else f"codimension {T.codim} is outside 1..2")
        classification = {"codim": T.codim, "case": None, "error": reason, "assumptions_used": [],
                          "candidates": [], "notes": []}
    report = {
        "report_version": REPORT_VERSION,
        "model": T.name,
        "file": Path(path).name,
        "dimension": {"complex": T.n, "g0_real": T.g0.dim, "codim": T.codim},
        "precision": prec,
        "backend": "exact" if (surrogate or not T.has_constants) else "interval",
        "verdict": verdict.to_dict(certificates),
        "necessary_conditions": necessary,
        "classification": classification,
        "assertions": merged,
        "backend_notes": list(verdict.backend_notes),
    }
    if timings:
        report["timings"] = {"decide_s": round(t1 - t0, 6), "necessary_s": round(t2 - t1, 6),
                             "total_s": round(time.perf_counter() - t0, 6)}
    return report, EXIT[verdict.value]


def format_text(report: dict) -> str:
    v = report["verdict"]
    lines = [
        f"model: {report['model'] or report['file']}",
        f"dimension: complex {report['dimension']['complex']}, g0 real {report['dimension']['g0_real']}, "
        f"codim {report['dimension']['codim']}",
        f"backend: {report['backend']} (precision {report['precision']} bits)",
        f"locally Kaehler: {v['value']}",
    ]
    for name, val in v["conditions"].items():
        lines.append(f"  {name}: {val}")
    if v["failed_condition"]:
        lines.append(f"failed condition: {v['failed_condition']}")
    if v["witness"] is not None:
        lines.append("witness: " + json.dumps(v["witness"], sort_keys=True))
    checks = report["necessary_conditions"].get("checks", {})
    if checks:
        lines.append("necessary conditions:")
        for k, val in checks.items():
            lines.append(f"  {k}: {val}")
    if "consistent" in report["necessary_conditions"]:
        lines.append(f"  consistent with verdict: {report['necessary_conditions']['consistent']}")
    c = report["classification"]
    if c is not None:
        if c.get("error"):
            lines.append(f"classification: not applicable ({c['error']})")
        else:
            lines.append(f"classification: {c['case']}  (candidates: {', '.join(c['candidates'])})")
            for note in c["notes"]:
                lines.append(f"  note: {note}")
    for note in report["backend_notes"]:
        lines.append(f"note: {note}")
    if "timings" in report:
        lines.append("timings: " + ", ".join(f"{k}={val}" for k, val in report["timings"].items()))
    return "\n".join(lines) + "\n"


def _parse_kv(items):
    out = {}
    for it in items:
        if "=" not in it:
            raise BadParameters(f"parameter {it!r} must be key=value")
        k, v = it.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _parse_asserts(items):
    out = {}
    for it in items or []:
        key = it.strip()
        low = key.lower().replace(" ", "")
        if low in ("o=c", "no-holomorphic-functions", "no_holomorphic_functions", "cousin"):
            out["no_holomorphic_functions"] = True
        elif low.startswith(("base-dim=", "reduction_base_dim=", "base_dim=")):
            try:
                out["reduction_base_dim"] = int(low.split("=", 1)[1])
            except ValueError:
                raise BadParameters(f"bad base dimension in {it!r}") from None
        else:
            raise BadParameters(f"unknown assertion {it!r} (use O=C or base-dim=N)")
    return out


def _emit_report(report, fmt, out):
    if fmt == "json":
        out.write(json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        out.write(format_text(report))


class _Parser(argparse.ArgumentParser):
    # usage errors must not collide with the "Unknown" exit code
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="crskit", description="Decide local Kaehlerness of CR-solvmanifold models.")
    ap.add_argument("--version", action="version", version=f"crskit {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("file")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--precision", type=int, default=None,
                       help="interval precision in bits (default: $CRSKIT_PRECISION or 64)")
        p.add_argument("--certificates", choices=("on", "off"), default="on")
        p.add_argument("--surrogate", action="store_true", help="use exact stand-ins for named constants")
        p.add_argument("--timings", action="store_true")

    check = sub.add_parser("check", help="decide a model file")
    common(check)

    ex = sub.add_parser("example", help="write a catalog example as a model file")
    ex.add_argument("name", help="one of: " + ", ".join(sorted(EXAMPLES)))
    ex.add_argument("params", nargs="*", help="key=value parameters, e.g. beta=i or k=2")
    ex.add_argument("-o", "--output", required=True)

    cl = sub.add_parser("classify", help="decide and classify using assertions about the lattice")
    common(cl)
    cl.add_argument("--assert", dest="asserts", action="append", default=[],
                    help="O=C (no holomorphic functions) or base-dim=N")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "example":
            params = _parse_kv(args.params)
            emit(args.name, params, args.output)
            print(f"wrote {args.output}")
            return 0
        if args.precision is not None and args.precision < 2:
            raise BadParameters("--precision must be at least 2")
        asserts = _parse_asserts(getattr(args, "asserts", None))
        report, code = run(
            args.file,
            precision=args.precision,
            certificates=args.certificates == "on",
            surrogate=args.surrogate,
            assertions=asserts,
            timings=args.timings,
            classify=args.command == "classify",
        )
        _emit_report(report, args.format, sys.stdout)
        return code
    except CRSError as exc:
        print(f"crskit: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"crskit: error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
