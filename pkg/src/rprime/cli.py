"""Command-line front end.

Subcommands: info, count, verify, scan, sweep, targets. Field specs are
`rational`, `quad:<d>`, or `poly:<c0,c1,...>`. Output is CSV (default)
with `#`-prefixed metadata lines and a fixed column order, or JSON with a
version field; both are deterministic for a fixed configuration.

Exit codes: 0 success, 1 usage error, 2 domain error, 3 verification
failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import __version__
from .analysis import (
    PROBE_LABEL,
    delta_series,
    discriminant_sweep,
    error_series,
    fit_exponent,
    target_catalog,
    target_verdicts,
    transfer_error_exponents,
)
from .analytic import REGRESSION_MIN_N, residue_c, zeta_K_value
from .counting import ORACLE_BOUND, brute_force_rprime_series, count_rprime, ideal_count
from .errors import (
    OracleBoundExceeded,
    RPrimeError,
    UsageError,
    VerificationFailure,
)
from .multsieve import build_table, load_table, save_table
from .numberfield import is_squarefree, parse_field_spec, splitting_type

CACHE_DIR_ENV = "RPRIME_CACHE_DIR"
DEFAULT_SAMPLES = 50
DEFAULT_SLACK = 0.15
# Bump when the CSV column set or JSON layout changes.
FORMAT_VERSION = 1


class _Parser(argparse.ArgumentParser):
    """argparse reports bad flags via error(); route that to exit code 1."""

    def error(self, message):
        raise UsageError(message)


def _num(tok: str) -> float:
    """One grid endpoint: a plain number or `a^b`."""
    tok = tok.strip()
    try:
        if "^" in tok:
            base, _, exp = tok.partition("^")
            return float(base) ** float(exp)
        return float(tok)
    except ValueError:
        raise UsageError(f"bad numeric token {tok!r}") from None


def snap_half(x: float) -> float:
    """Nearest half-integer k + 1/2; counts only jump at integers."""
    return math.floor(x) + 0.5


def parse_x_grid(text: str, samples: int):
    """`a..b` (endpoints allow `base^exp`) into a geometric half-integer
    grid, or a single explicit point taken verbatim."""
    if ".." not in text:
        return [_num(text)]
    lo_s, _, hi_s = text.partition("..")
    lo, hi = _num(lo_s), _num(hi_s)
    if not (1 <= lo <= hi):
        raise UsageError(f"bad x range {text!r}: need 1 <= lo <= hi")
    if samples < 1:
        raise UsageError(f"--samples must be positive, got {samples}")
    if samples == 1 or lo == hi:
        pts = [hi]
    else:
        ratio = (hi / lo) ** (1 / (samples - 1))
        pts = [lo * ratio ** k for k in range(samples)]
    out = []
    for p in pts:
        s = snap_half(min(p, hi))
        if not out or s > out[-1]:
            out.append(s)
    return out


def parse_quad_range(text: str):
    """`quad:a..b` into the squarefree d values between a and b inclusive."""
    if not text.startswith("quad:") or ".." not in text:
        raise UsageError(
            f"sweep needs a quadratic range like quad:-1..-30, got {text!r}"
        )
    a_s, _, b_s = text[5:].partition("..")
    try:
        a, b = int(a_s), int(b_s)
    except ValueError:
        raise UsageError(f"bad quadratic range {text!r}") from None
    step = 1 if b >= a else -1
    ds = [
        d
        for d in range(a, b + step, step)
        if d not in (0, 1) and is_squarefree(d)
    ]
    if not ds:
        raise UsageError(f"quadratic range {text!r} contains no valid d")
    return ds


def _table_for(K, N: int, cache_dir):
    if cache_dir:
        table = load_table(K, N, cache_dir)
        if table is not None:
            return table
        table = build_table(K, N)
        save_table(table, K, cache_dir)
        return table
    return build_table(K, N)


def _residue_for(K, table, cache_dir):
    """Residue of zeta_K at 1; degree >= 3 needs a regression-sized table."""
    if K.degree <= 2:
        return residue_c(K)
    if table is None or table.N < REGRESSION_MIN_N:
        table = _table_for(K, REGRESSION_MIN_N, cache_dir)
    return residue_c(K, table)


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.10g}"
    return str(v)


def _emit_csv(out, meta, columns, rows, extra_comments=()):
    for k, v in meta:
        out.write(f"# {k}={_fmt(v)}\n")
    for line in extra_comments:
        out.write(f"# {line}\n")
    out.write(",".join(columns) + "\n")
    for row in rows:
        out.write(",".join(_fmt(v) for v in row) + "\n")


def emit_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False)


def _emit(args, meta, columns, rows, extra=None, extra_comments=()):
    """Shared writer: CSV to stdout/file, or the mirrored JSON document."""
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        if args.format == "json":
            doc = {
                "version": __version__,
                "format": FORMAT_VERSION,
                "metadata": {k: v for k, v in meta},
                "columns": list(columns),
                "rows": [list(r) for r in rows],
            }
            if extra:
                doc.update(extra)
            out.write(emit_json(doc) + "\n")
        else:
            _emit_csv(out, meta, columns, rows, extra_comments)
    finally:
        if args.out:
            out.close()


def _base_meta(args, K=None):
    meta = [("tool", "rprime"), ("version", __version__), ("seed", args.seed)]
    if K is not None:
        meta.insert(2, ("field", K.spec_string()))
    return meta


def cmd_info(args) -> int:
    K = parse_field_spec(args.field)
    res = _residue_for(K, None, args.cache_dir)
    lines = [
        f"field: {K.spec_string()}",
        f"degree: {K.degree}",
        f"signature: ({K.r1}, {K.r2})",
        f"discriminant: {K.disc_signed} (|D| = {K.disc_abs})",
        f"residue c: {res.c:.10g} (method={res.method}, "
        f"uncertainty={res.uncertainty:.3g})",
        "splitting of the first 10 primes:",
    ]
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29):
        st = splitting_type(K, p)
        pat = " * ".join(f"(e={e}, f={f})" for e, f in st.entries)
        lines.append(f"  p={p}: {pat}")
    print("\n".join(lines))
    return 0


def cmd_count(args) -> int:
    K = parse_field_spec(args.field)
    xs = parse_x_grid(args.x, args.samples)
    N = args.N if args.N else math.ceil(max(xs))
    if max(xs) > N:
        raise UsageError(f"x grid exceeds table bound N={N}")
    table = _table_for(K, N, args.cache_dir)
    res = _residue_for(K, table, args.cache_dir)
    meta = _base_meta(args, K) + [
        ("m", args.m),
        ("r", args.r),
        ("c", res.c),
    ]
    columns = ("x", "I", "V", "main", "E")
    if args.m * args.r >= 2:
        z, _ = zeta_K_value(K, float(args.m * args.r))
        meta.append(("zeta_rm", z))
        pts = error_series(K, table, res, xs, args.m, args.r)
        rows = [(pt.x, pt.I, pt.V, pt.main, pt.E) for pt in pts]
    else:
        # rm = 1: V is identically 1 and the main-term constant has a
        # pole, so the main and E columns stay empty
        meta.append(("zeta_rm", None))
        rows = [
            (float(x), ideal_count(K, table, x),
             count_rprime(K, table, x, args.m, args.r), None, None)
            for x in xs
        ]
    _emit(args, meta, columns, rows)
    return 0


def cmd_verify(args) -> int:
    K = parse_field_spec(args.field)
    if args.xmax > ORACLE_BOUND:
        raise OracleBoundExceeded(
            f"xmax={args.xmax} exceeds the oracle bound {ORACLE_BOUND}"
        )
    if args.xmax < 1:
        raise UsageError(f"xmax must be at least 1, got {args.xmax}")
    table = _table_for(K, args.xmax, args.cache_dir)
    oracle = brute_force_rprime_series(K, args.xmax, args.m, args.r)
    for x in range(1, args.xmax + 1):
        got = count_rprime(K, table, x, args.m, args.r)
        want = int(oracle[x])
        if got != want:
            raise VerificationFailure(x, want, got)
    print(
        f"PASS {K.spec_string()} m={args.m} r={args.r}: sieve count matches "
        f"exhaustive enumeration for all x <= {args.xmax}"
    )
    return 0


def cmd_scan(args) -> int:
    K = parse_field_spec(args.field)
    xs = parse_x_grid(args.x, args.samples)
    N = math.ceil(max(xs))
    table = _table_for(K, N, args.cache_dir)
    res = _residue_for(K, table, args.cache_dir)
    meta = _base_meta(args, K)
    if args.delta:
        pts = delta_series(K, table, res, xs)
        columns = ("x", "I", "delta")
        rows = pts
        fit = fit_exponent([(x, d) for x, _, d in pts], envelope=True)
        meta += [("series", "delta"), ("c", res.c)]
        m_eff, r_eff, delta_mode = 1, 1, True
    else:
        series = error_series(K, table, res, xs, args.m, args.r)
        columns = ("x", "I", "V", "main", "E")
        rows = [(pt.x, pt.I, pt.V, pt.main, pt.E) for pt in series]
        fit = fit_exponent([(pt.x, pt.E) for pt in series], envelope=True)
        z, _ = zeta_K_value(K, float(args.m * args.r))
        meta += [
            ("series", "E"),
            ("m", args.m),
            ("r", args.r),
            ("c", res.c),
            ("zeta_rm", z),
        ]
        m_eff, r_eff, delta_mode = args.m, args.r, False
    fit_obj = {
        "exponent": fit.exponent,
        "intercept": fit.intercept,
        "stderr": fit.stderr,
        "points_used": fit.points_used,
        "envelope": fit.envelope,
        "label": PROBE_LABEL,
    }
    comments = [
        f"fit exponent={_fmt(fit.exponent)} stderr={_fmt(fit.stderr)} "
        f"points={fit.points_used} label={PROBE_LABEL}"
    ]
    extra = {"fit": fit_obj}
    if args.targets:
        verdicts = target_verdicts(
            K.degree, m_eff, r_eff, fit.exponent,
            delta_mode=delta_mode, slack=args.slack,
        )
        extra["verdicts"] = [
            {
                "target": v["target"].name,
                "status": v["target"].status,
                "bound_x_exp": v["bound_x_exp"],
                "side_condition": v["target"].scope.side_condition,
                "verdict": v["verdict"],
                "slack": v["slack"],
                "label": v["label"],
            }
            for v in verdicts
        ]
        for v in extra["verdicts"]:
            comments.append(
                f"target {v['target']} status={v['status']} "
                f"bound={_fmt(v['bound_x_exp'])} slack={_fmt(v['slack'])} "
                f"verdict={v['verdict']} label={v['label']}"
            )
    _emit(args, meta, columns, rows, extra=extra, extra_comments=comments)
    return 0


def cmd_sweep(args) -> int:
    ds = parse_quad_range(args.family)
    xs = parse_x_grid(args.x, args.samples)
    result = discriminant_sweep(ds, xs, args.m, args.r)
    meta = _base_meta(args) + [
        ("family", args.family),
        ("m", args.m),
        ("r", args.r),
        ("label", result.label),
    ]
    columns = ("field", "D", "max_absE", "exponent")
    rows = [
        (row.spec, row.disc_abs, row.max_absE,
         row.fit.exponent if row.fit else None)
        for row in result.rows
    ]
    summary = {"label": result.label}
    if result.x_fit is not None:
        comments = [
            f"x_fit exponent={_fmt(result.x_fit.exponent)} "
            f"stderr={_fmt(result.x_fit.stderr)} label={result.label}"
        ]
        summary["x_fit"] = {
            "exponent": result.x_fit.exponent,
            "stderr": result.x_fit.stderr,
            "points_used": result.x_fit.points_used,
        }
    else:
        comments = ["x_fit skipped: too few grid points"]
        summary["x_fit"] = None
    if result.d_fit is not None:
        summary["d_fit"] = {
            "exponent": result.d_fit.exponent,
            "stderr": result.d_fit.stderr,
            "points_used": result.d_fit.points_used,
        }
        comments.append(
            f"d_fit exponent={_fmt(result.d_fit.exponent)} "
            f"stderr={_fmt(result.d_fit.stderr)} label={result.label}"
        )
    else:
        summary["d_fit"] = None
        comments.append(f"d_fit skipped: {result.d_fit_note}")
    if result.joint is not None:
        summary["joint_fit"] = {
            "x_exp": result.joint.x_exp,
            "D_exp": result.joint.D_exp,
            "x_stderr": result.joint.x_stderr,
            "D_stderr": result.joint.D_stderr,
        }
        comments.append(
            f"joint_fit x_exp={_fmt(result.joint.x_exp)} "
            f"D_exp={_fmt(result.joint.D_exp)} label={result.label}"
        )
    else:
        summary["joint_fit"] = None
    _emit(args, meta, columns, rows, extra={"summary": summary},
          extra_comments=comments)
    return 0


def cmd_targets(args) -> int:
    catalog = target_catalog(max(args.n, 24))
    shown = 0
    for t in catalog:
        if t.scope.n not in (0, args.n):
            continue
        if args.family and t.scope.family != args.family:
            continue
        if t.scope.m_r is not None and (args.m, args.r) != (None, None) \
                and t.scope.m_r != (args.m, args.r):
            continue
        shown += 1
        side = f"  side: {t.scope.side_condition}" if t.scope.side_condition else ""
        print(
            f"{t.name}  [{t.status}]  x^{_fmt(t.x_exp)} "
            f"D^{_fmt(t.D_exp)} log^{_fmt(t.log_pow)}{side}"
        )
        if t.scope.m_r is None and args.m is not None and args.r is not None:
            alpha = 1 - t.x_exp
            if 0 < alpha <= 1:
                b = transfer_error_exponents(alpha, t.D_exp, args.m, args.r)
                terms = " + ".join(
                    f"x^{_fmt(xe)} D^{_fmt(de)} log^{_fmt(lp)}"
                    for xe, de, lp in b.terms
                )
                print(
                    f"  E_{args.m}^{args.r} via transfer ({b.case}): "
                    f"{terms}  side: {b.side_condition}"
                )
    if shown == 0:
        print("no catalog entries match the given scope")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="rprime", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--cache-dir", default=os.environ.get(CACHE_DIR_ENV) or None,
        help=f"sieve table cache directory (default: ${CACHE_DIR_ENV})",
    )
    common.add_argument("--seed", type=int, default=0,
                        help="recorded in output metadata")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", parents=[common],
                       help="field invariants and prime splitting")
    p.add_argument("field")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("count", parents=[common],
                       help="I, V, main term and E on an x grid")
    p.add_argument("field")
    p.add_argument("--x", required=True, help="point or range a..b (a^b ok)")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--N", type=int, default=None, help="sieve bound override")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify", parents=[common],
                       help="sieve counts vs exhaustive enumeration")
    p.add_argument("field")
    p.add_argument("--xmax", type=int, required=True)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--r", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", parents=[common],
                       help="error series and envelope exponent fit")
    p.add_argument("field")
    p.add_argument("--x", required=True)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--delta", action="store_true",
                   help="ideal-count error instead of E_m^r")
    p.add_argument("--targets", action="store_true",
                   help="compare the fit against applicable catalog entries")
    p.add_argument("--slack", type=float, default=DEFAULT_SLACK)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("sweep", parents=[common],
                       help="error terms across a quadratic family")
    p.add_argument("family", help="range like quad:-1..-30")
    p.add_argument("--x", required=True)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--r", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("targets", parents=[common],
                       help="print the exponent catalog for one degree")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--family", default=None,
                   choices=("all", "abelian", "cubic", "fixed-field"))
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--r", type=int, default=None)
    p.set_defaults(func=cmd_targets)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 1
    except VerificationFailure as e:
        print(f"verification failure: {e}", file=sys.stderr)
        return 3
    except RPrimeError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
