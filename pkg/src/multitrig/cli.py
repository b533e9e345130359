"""Command-line entry point: values, verify, approximate, table.

Numeric output goes to stdout and is byte-identical across reruns; the
run manifest (argv, parameters, timing) is written to stderr as one JSON
line.  Exit codes: 0 pass, 1 numeric failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .approx import BASES, PROFILES, ApproximationError, ApproxTarget, audit_certificate, certify
from .certfile import dumps, load
from .dirichlet import beta_fn, catalan, eta, lambda_fn, zeta
from .identities import (
    SUITES,
    IdentityReport,
    coslog_moment,
    quarter_closed_form_check,
    run_suite,
    sinlog_moment,
)
from .multifun import log_multicos, log_multisin
from .numerics import WORKING_DPS, DomainError, NumericsError, mp

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

VALUE_KINDS = ("zeta", "eta", "lambda", "beta", "catalan", "multicos", "multisin")
TABLES = {
    # name: (first r, last supported r)
    "eq1": (2, 10),
    "lemma31": (0, 12),
    "eq114": (2, 12),
}


class UsageError(Exception):
    pass


@dataclass
class RunManifest:
    command: list
    params: dict
    version: str = __version__
    working_digits: int = WORKING_DPS
    wall_time: float = 0.0
    summary: dict = field(default_factory=dict)

    def emit(self, stream=None):
        stream = stream or sys.stderr
        doc = {
            "command": self.command,
            "params": self.params,
            "version": self.version,
            "workingDigits": self.working_digits,
            "wallTime": round(self.wall_time, 3),
            "summary": self.summary,
        }
        stream.write(json.dumps(doc, sort_keys=True, default=str) + "\n")


# ---------------------------------------------------------------------------
# values


def _fraction_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational number: {text!r}") from exc


def _int_arg(text: str) -> int:
    try:
        return int(text)
    except ValueError as exc:
        raise UsageError(f"not an integer: {text!r}") from exc


def cmd_values(args, out) -> tuple[int, dict]:
    kind, params, digits = args.kind, args.params, args.digits
    series = {"zeta": zeta, "eta": eta, "lambda": lambda_fn, "beta": beta_fn}
    if kind in series or kind == "catalan":
        if digits > 60:
            raise UsageError("at most 60 digits for Dirichlet-series values")
        dps = max(WORKING_DPS, digits + 5)
        if kind == "catalan":
            if params:
                raise UsageError("catalan takes no parameters")
            sv, label = catalan(dps), "catalan"
        else:
            if len(params) != 1:
                raise UsageError(f"{kind} takes one integer order")
            s = _int_arg(params[0])
            sv, label = series[kind](s, dps), f"{kind}({s})"
        val = sv.val
    else:
        if digits > 30:
            raise UsageError("at most 30 digits for multiple sine/cosine values")
        if len(params) != 2:
            raise UsageError(f"{kind} takes an order and an argument")
        r, x = _int_arg(params[0]), _fraction_arg(params[1])
        xm = mp.mpf(x.numerator) / x.denominator
        fn = log_multicos if kind == "multicos" else log_multisin
        val = fn(r, xm, route=args.route).log_value
        label = f"log {'C' if kind == 'multicos' else 'S'}_{r}({x})"
    out.write(f"{mp.nstr(val.value, digits)}  {label}  err<={mp.nstr(val.err, 3)}\n")
    return EXIT_OK, {"kind": kind, "err": mp.nstr(val.err, 3)}


# ---------------------------------------------------------------------------
# verify


def _fmt(v, n=20):
    if v is None:
        return "non-finite"
    if isinstance(v, (int, float)) or not hasattr(v, "value"):
        return mp.nstr(mp.mpf(v), n) if v is not None and mp.isfinite(mp.mpf(v)) else "non-finite"
    return mp.nstr(v.value, n)


def _report_lines(reports) -> list[str]:
    lines = [f"{'status':<6} {'identity':<58} {'residual':>10} {'tolerance':>9}  detail"]
    for rep in reports:
        status = "PASS" if rep.passed else "FAIL"
        res = mp.nstr(rep.residual, 3) if mp.isfinite(rep.residual) else "inf"
        if isinstance(rep, IdentityReport):
            detail = f"lhs={_fmt(rep.lhs)} rhs={_fmt(rep.rhs)}"
        else:
            detail = f"winner: {rep.winner}; " + ", ".join(
                f"{k}: {mp.nstr(v, 3) if v is not None else 'non-finite'}" for k, v in rep.candidates.items()
            )
        if rep.notes:
            detail += f" ({rep.notes})"
        lines.append(f"{status:<6} {rep.identity_id:<58} {res:>10} {rep.tolerance:>9.0e}  {detail}")
    return lines


def cmd_verify(args, out) -> tuple[int, dict]:
    if args.certificate:
        return _verify_certificate(args.certificate, out)
    reports = run_suite(args.suite, args.tol)
    for line in _report_lines(reports):
        out.write(line + "\n")
    failed = [r for r in reports if not r.passed]
    out.write(f"{len(reports) - len(failed)}/{len(reports)} passed\n")
    summary = {"checks": len(reports), "failed": len(failed)}
    if failed:
        sys.stderr.write(f"first failing identity: {failed[0].identity_id}\n")
        summary["firstFailure"] = failed[0].identity_id
        return EXIT_FAIL, summary
    return EXIT_OK, summary


def _verify_certificate(path, out) -> tuple[int, dict]:
    try:
        cert = load(path)
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(f"cannot read certificate {path}: {exc}") from exc
    audit = audit_certificate(cert)
    out.write(f"coefficients rebuilt from weighted polynomial: {'match' if audit.coefficients_match else 'MISMATCH'}\n")
    out.write(f"residual from stored basis values differs by {mp.nstr(audit.stored_gap, 3)}\n")
    out.write(f"residual from fresh basis values differs by {mp.nstr(audit.fresh_gap, 3)}\n")
    out.write(f"stored residual {mp.nstr(cert.residual, 20)}; {'PASS' if audit.passed else 'FAIL'} at {audit.tolerance:.0e}\n")
    return (EXIT_OK if audit.passed else EXIT_FAIL), {"audit": audit.passed}


# ---------------------------------------------------------------------------
# approximate


def cmd_approximate(args, out) -> tuple[int, dict]:
    x = None
    if args.basis in ("multicos", "multisin"):
        if args.x is None:
            raise UsageError(f"--x is required for basis {args.basis}")
        x = _fraction_arg(args.x)
    try:
        target = ApproxTarget(args.alpha, args.basis, x, args.k0, args.q, args.n)
    except (ValueError, SyntaxError) as exc:
        raise UsageError(str(exc)) from exc
    try:
        cert = certify(target, profile=args.profile)
    except ApproximationError as exc:
        sys.stderr.write(f"stage {exc.stage} failed: {exc}\n")
        return EXIT_FAIL, {"stage": exc.stage}
    text = dumps(cert)
    bound = cert.fitted_k / target.n ** target.q
    line = (f"residual={mp.nstr(cert.residual, 6)} fittedK={cert.fitted_k:.6g} "
            f"bound=fittedK/n^q={bound:.6g} {'PASS' if cert.passed else 'FAIL'}\n")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        out.write(line)
    else:
        out.write(text)
        sys.stderr.write(line)
    return (EXIT_OK if cert.passed else EXIT_FAIL), {"passed": cert.passed, "residual": mp.nstr(cert.residual, 6)}


# ---------------------------------------------------------------------------
# tables


def table_rows(which: str, rmax: int) -> list[dict]:
    first, last = TABLES[which]
    if rmax > last:
        raise UsageError(f"--rmax for {which} is at most {last}")
    rows = []
    for r in range(first, rmax + 1):
        if which == "eq1":
            rep = sinlog_moment(r)
        elif which == "lemma31":
            rep = coslog_moment(r)
        else:
            rep = quarter_closed_form_check(r)
        rows.append({
            "r": r,
            "lhs": _fmt(rep.lhs, 30),
            "rhs": _fmt(rep.rhs, 30),
            "residual": mp.nstr(rep.residual, 6),
            "tolerance": f"{rep.tolerance:.0e}",
            "passed": rep.passed,
        })
    return rows


TABLE_FIELDS = ("r", "lhs", "rhs", "residual", "tolerance", "passed")


def render_table(rows, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=TABLE_FIELDS, lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow(row)
    return buf.getvalue()


def cmd_table(args, out) -> tuple[int, dict]:
    rows = table_rows(args.which, args.rmax)
    text = render_table(rows, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        out.write(text)
    failed = sum(not r["passed"] for r in rows)
    return (EXIT_FAIL if failed else EXIT_OK), {"rows": len(rows), "failed": failed}


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="multitrig", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("values", help="print a special value")
    v.add_argument("kind", choices=VALUE_KINDS)
    v.add_argument("params", nargs="*", help="order s, or order r and argument x for multicos/multisin")
    v.add_argument("--digits", type=int, default=30)
    v.add_argument("--route", choices=("integral", "product", "closed-form"), default=None)

    ver = sub.add_parser("verify", help="run identity suites or audit a certificate")
    ver.add_argument("--suite", choices=SUITES, default="all")
    ver.add_argument("--tol", type=float, default=None, help="override every check's tolerance")
    ver.add_argument("--certificate", metavar="FILE")

    a = sub.add_parser("approximate", help="build an approximation certificate")
    a.add_argument("--alpha", required=True, help="decimal or expression in pi, e, log2, catalan, sqrt, log, exp, zeta")
    a.add_argument("--basis", choices=BASES, required=True)
    a.add_argument("--x", default=None, help="anchor for multicos/multisin, e.g. 0.25 or 1/4")
    a.add_argument("--k0", type=int, default=1)
    a.add_argument("--q", type=int, default=2)
    a.add_argument("--n", type=int, default=32)
    a.add_argument("--profile", choices=PROFILES, default="bump")
    a.add_argument("--out", metavar="FILE")

    t = sub.add_parser("table", help="write a reproducible identity table")
    t.add_argument("--which", choices=tuple(TABLES), required=True)
    t.add_argument("--rmax", type=int, default=8)
    t.add_argument("--format", choices=("csv", "json"), default="csv")
    t.add_argument("--out", metavar="FILE")
    return p


COMMANDS = {"values": cmd_values, "verify": cmd_verify, "approximate": cmd_approximate, "table": cmd_table}


def main(argv=None, out=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    manifest = RunManifest(command=argv, params={k: v for k, v in vars(args).items() if k != "command"})
    start = time.perf_counter()
    try:
        code, summary = COMMANDS[args.command](args, out)
    except (UsageError, DomainError, ValueError) as exc:
        sys.stderr.write(f"multitrig: error: {exc}\n")
        code, summary = EXIT_USAGE, {"error": str(exc)}
    except NumericsError as exc:
        sys.stderr.write(f"multitrig: numeric failure: {exc}\n")
        code, summary = EXIT_FAIL, {"error": str(exc)}
    manifest.wall_time = time.perf_counter() - start
    manifest.summary = dict(summary, exitCode=code)
    manifest.emit()
    return code


if __name__ == "__main__":
    sys.exit(main())
