"""Command-line entry point: ``offdiag-rado {compute,sweep,certify,check-coloring,export-coloring}``.

Exit status: 0 success/valid/agree, 1 mismatch/invalid, 2 usage, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .certificates import (
    CertificateSyntaxError,
    CertifiedUnsat,
    Setting,
    certify_upper_bound,
    check_certificate,
    load_certificates,
)
from .core import ResultKind, as_rational, format_rational, validate_discrete
from .extremal import lower_bound_coloring_continuous, lower_bound_coloring_discrete, parity_coloring
from .formats import (
    ColoringParseError,
    DiscreteColoringFile,
    dump_discrete,
    dump_interval,
    read_coloring,
)
from .formulas import Branch, branch_of, rado_formula_continuous, rado_formula_discrete
from .intervals import validate_interval
from .search import SearchCapExceeded, min_rado_discrete

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
DEFAULT_VERIFY_CAP = 64


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        value = as_rational(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational (use num/den or an integer): {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def _check_pair(c: Fraction, k: Fraction, discrete: bool) -> None:
    if c < 1 or k < c:
        raise UsageError(f"need 1 <= c <= k, got c={format_rational(c)}, k={format_rational(k)}")
    if discrete and (c.denominator != 1 or k.denominator != 1):
        raise UsageError("discrete parameters must be integers (pass --alpha for the continuous setting)")


# -- compute -----------------------------------------------------------------


def cmd_compute(args, out) -> int:
    c, k, alpha = args.c, args.k, args.alpha
    _check_pair(c, k, alpha is None)
    branch = branch_of(c, k)
    if alpha is None:
        formula = rado_formula_discrete(int(c), int(k))
        print(f"setting: discrete [1,N]  c={c} k={k}", file=out)
    else:
        formula = rado_formula_continuous(c, k, alpha)
        print(f"setting: continuous [alpha,N]  c={format_rational(c)} k={format_rational(k)} "
              f"alpha={format_rational(alpha)}", file=out)
    print(f"branch: {branch.value}", file=out)
    if formula.kind is ResultKind.INFINITE:
        print("formula: INFINITE (parity)", file=out)
    else:
        print(f"formula: {formula}", file=out)
    if not args.verify:
        return EXIT_OK
    if alpha is not None:
        print("search: not available in the continuous setting", file=out)
        return EXIT_OK
    cap = args.cap if args.cap is not None else DEFAULT_VERIFY_CAP
    try:
        found = min_rado_discrete(int(c), int(k), cap)
    except SearchCapExceeded as exc:
        print(f"search: node budget exhausted ({exc})", file=out)
        return EXIT_CAP
    print(f"search: {found}", file=out)
    if found.kind is ResultKind.EXCEEDED_CAP:
        if formula.kind is ResultKind.INFINITE:
            print(f"verdict: CONSISTENT (no finite value up to {cap})", file=out)
            return EXIT_OK
        print(f"verdict: CAP (formula {formula} not reached within {cap})", file=out)
        return EXIT_CAP
    if formula.is_finite and found.value == formula.value:
        print("verdict: AGREE", file=out)
        return EXIT_OK
    print("verdict: MISMATCH", file=out)
    return EXIT_FAIL


# -- sweep -------------------------------------------------------------------


@dataclass(frozen=True)
class SweepRow:
    c: int
    k: int
    alpha: str
    branch: str
    formula_value: str
    search_value: str
    lower_bound_ok: str
    certificate_ok: str
    status: str
    runtime_ms: int


def _ok(flag: bool) -> str:
    return "ok" if flag else "FAIL"


def sweep_row(c: int, k: int, cap: int, alpha: Optional[Fraction] = None) -> SweepRow:
    start = time.perf_counter()
    branch = branch_of(c, k)
    if alpha is None:
        formula = rado_formula_discrete(c, k)
        try:
            found = min_rado_discrete(c, k, cap)
            search = str(found)
        except SearchCapExceeded:
            found, search = None, "NODE_CAP"
    else:
        formula = rado_formula_continuous(c, k, alpha)
        found, search = None, ""
    if branch is Branch.PARITY_INFINITE:
        if alpha is None:
            lb = validate_discrete(parity_coloring(c, k, max(cap, 1)), c, k) is None
        else:
            lb = True
        lower_ok, cert_ok = _ok(lb), "n/a"
        consistent = found is not None and found.kind is ResultKind.EXCEEDED_CAP
        status = "INFINITE" if (consistent or alpha is not None) and lb else "MISMATCH"
    else:
        if alpha is None:
            lb_col = lower_bound_coloring_discrete(c, k)
            lb = validate_discrete(lb_col, c, k) is None and lb_col.n == formula.value - 1
        else:
            try:
                lower_bound_coloring_continuous(c, k, alpha)
                lb = True
            except ValueError:
                lb = False
        report = certify_upper_bound(c, k, alpha)
        lower_ok, cert_ok = _ok(lb), _ok(report.certified)
        if alpha is not None:
            status = "AGREE" if lb and report.certified else "UNCERTIFIED"
        elif found is None:
            status = "NODE_CAP"
        elif found.kind is ResultKind.EXCEEDED_CAP:
            status = "CAP"
        else:
            status = "AGREE" if found.value == formula.value else "MISMATCH"
    elapsed = int((time.perf_counter() - start) * 1000)
    formula_text = "INFINITE" if formula.kind is ResultKind.INFINITE else str(formula)
    return SweepRow(
        c, k, "" if alpha is None else format_rational(alpha), branch.value,
        formula_text, search, lower_ok, cert_ok, status, elapsed,
    )


def _sweep_task(job):
    return sweep_row(*job)


def run_sweep(c_max: int, k_max: int, cap: int, alpha: Optional[Fraction] = None, jobs: int = 1) -> list[SweepRow]:
    work = [(c, k, cap, alpha) for c in range(1, c_max + 1) for k in range(c, k_max + 1)]
    if jobs <= 1 or len(work) <= 1:
        return [_sweep_task(job) for job in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_sweep_task, work))


def rows_to_csv(rows: Sequence[SweepRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([f.name for f in fields(SweepRow)])
    for row in rows:
        writer.writerow(astuple(row))
    return buf.getvalue()


def _jobs(flag: Optional[int]) -> int:
    if flag is not None:
        return flag
    env = os.environ.get("RADO_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"RADO_JOBS must be an integer, got {env!r}") from None
    return 1


def cmd_sweep(args, out) -> int:
    if args.alpha is None and args.cap is None:
        raise UsageError("--cap is required for a discrete sweep")
    rows = run_sweep(args.c_max, args.k_max, args.cap or 0, args.alpha, _jobs(args.jobs))
    text = rows_to_csv(rows)
    if args.out:
        path = Path(args.out)
        try:
            path.write_text(text)
        except OSError as exc:
            print(f"error: cannot write {path}: {exc.strerror}", file=sys.stderr)
            return EXIT_FAIL
    else:
        out.write(text)
    bad = [r for r in rows if r.status in ("MISMATCH", "UNCERTIFIED")]
    capped = [r for r in rows if r.status in ("CAP", "NODE_CAP")]
    summary = f"{len(rows)} rows, {len(bad)} MISMATCH/UNCERTIFIED, {len(capped)} capped"
    print(summary, file=sys.stderr if not args.out else out)
    if bad:
        return EXIT_FAIL
    return EXIT_CAP if capped else EXIT_OK


# -- certify -----------------------------------------------------------------


def cmd_certify(args, out) -> int:
    c, k, alpha = args.c, args.k, args.alpha
    _check_pair(c, k, alpha is None)
    branch = branch_of(c, k)
    if branch is Branch.PARITY_INFINITE:
        raise UsageError(f"c={c}, k={k}: parity-infinite, there is no upper bound to certify")
    if args.cert:
        try:
            certs = load_certificates(args.cert)
        except (OSError, CertificateSyntaxError) as exc:
            print(f"error: {args.cert}: {exc}", file=sys.stderr)
            return EXIT_USAGE
        setting = Setting.DISCRETE if alpha is None else Setting.CONTINUOUS
        cert = next((x for x in certs if x.setting is setting), certs[0])
        a = Fraction(1) if alpha is None else alpha
        n = (rado_formula_discrete(int(c), int(k)) if alpha is None else rado_formula_continuous(c, k, a)).value
        result = check_certificate(cert, c, k, a, n)
        claim, diagnostics = cert.claim_id, ()
    else:
        report = certify_upper_bound(c, k, alpha)
        result, n, claim, diagnostics = report.result, report.n, report.claim_id, report.diagnostics
    domain = f"[1,{format_rational(n)}]" if alpha is None else f"[{format_rational(alpha)},{format_rational(n)}]"
    print(f"certificate {claim} on {domain}  c={format_rational(c)} k={format_rational(k)}", file=out)
    for line in result.trace:
        case = "/".join("RB"[p] if i == 0 else "rb"[p] for i, p in enumerate(line.path))
        print(f"  [{case}] {line.text}", file=out)
    for d in diagnostics:
        if not d.in_range:
            print(f"  range: {d.form} = {format_rational(d.value)} outside {domain}", file=out)
    if isinstance(result, CertifiedUnsat):
        print(f"CERTIFIED: every coloring of {domain} has a red c-solution or a blue k-solution", file=out)
        return EXIT_OK
    print(f"STEP ERROR: {result}", file=out)
    return EXIT_FAIL


# -- check-coloring / export-coloring ------------------------------------------


def cmd_check_coloring(args, out) -> int:
    try:
        parsed = read_coloring(args.file)
    except OSError as exc:
        print(f"error: cannot read {args.file}: {exc.strerror}", file=sys.stderr)
        return EXIT_USAGE
    except ColoringParseError as exc:
        print(f"error: {args.file}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    c = args.c if args.c is not None else parsed.c
    k = args.k if args.k is not None else parsed.k
    if isinstance(parsed, DiscreteColoringFile):
        _check_pair(Fraction(c), Fraction(k), True)
        violation = validate_discrete(parsed.coloring, int(c), int(k))
    else:
        _check_pair(Fraction(c), Fraction(k), False)
        violation = validate_interval(parsed.coloring, c, k)
    if violation is None:
        print("VALID", file=out)
        return EXIT_OK
    x, y, z = (format_rational(v) for v in violation.triple)
    print(f"INVALID ({x},{y},{z}) {violation.color.word}", file=out)
    return EXIT_FAIL


def cmd_export_coloring(args, out) -> int:
    c, k, alpha = args.c, args.k, args.alpha
    _check_pair(c, k, alpha is None)
    branch = branch_of(c, k)
    if alpha is None:
        if branch is Branch.PARITY_INFINITE:
            coloring = parity_coloring(int(c), int(k), args.n)
        else:
            coloring = lower_bound_coloring_discrete(int(c), int(k))
        text = dump_discrete(coloring, int(c), int(k))
    else:
        if branch is Branch.PARITY_INFINITE:
            raise UsageError("no interval coloring is exported for the parity-infinite case")
        text = dump_interval(lower_bound_coloring_continuous(c, k, alpha), c, k)
    if args.out:
        try:
            Path(args.out).write_text(text)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
            return EXIT_FAIL
    else:
        out.write(text)
    return EXIT_OK


# -- wiring ------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="offdiag-rado", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def pair(p, alpha_help="continuous setting on [alpha, N]"):
        p.add_argument("--c", type=_rational, required=True)
        p.add_argument("--k", type=_rational, required=True)
        p.add_argument("--alpha", type=_rational, default=None, help=alpha_help)

    p = sub.add_parser("compute", help="closed-form value, optionally cross-checked by search")
    pair(p)
    p.add_argument("--verify", action="store_true", help="also run the backtracking search (discrete)")
    p.add_argument("--cap", type=_positive_int, default=None, help=f"search cap on N (default {DEFAULT_VERIFY_CAP})")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("sweep", help="CSV over 1 <= c <= c-max, c <= k <= k-max")
    p.add_argument("--c-max", type=_positive_int, required=True)
    p.add_argument("--k-max", type=_positive_int, required=True)
    p.add_argument("--cap", type=_positive_int, default=None)
    p.add_argument("--alpha", type=_rational, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--jobs", type=_positive_int, default=None, help="worker processes (env RADO_JOBS)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("certify", help="check the forcing-chain upper bound")
    pair(p)
    p.add_argument("--cert", default=None, help="check this certificate file instead of the builtin one")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("check-coloring", help="validate a coloring file")
    p.add_argument("file")
    p.add_argument("--c", type=_rational, default=None, help="override the header's c")
    p.add_argument("--k", type=_rational, default=None, help="override the header's k")
    p.set_defaults(func=cmd_check_coloring)

    p = sub.add_parser("export-coloring", help="write the lower-bound coloring to a file")
    pair(p)
    p.add_argument("--n", type=_positive_int, default=100, help="length of a parity coloring")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_export_coloring)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"offdiag-rado: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
