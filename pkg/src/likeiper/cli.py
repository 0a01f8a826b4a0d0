"""Command-line surface.

Subcommands::

    table       per-index ladder: phi, lambda, bounds, residuals
    verify      run every invariant check; exit 0 iff all pass
    constant    the constant c by route {exact, lambda, binary, split}
    xi          dump the xi Taylor coefficients a_0..a_order
    partitions  dump the partitions of one n with their cluster weights

Output is fully deterministic: no clocks, no machine identifiers, no
locale-dependent formatting; two runs with the same configuration are
byte-identical.  Every real number is printed with exactly
min(digits - 10, 30) significant digits; equilibrium residuals below
10^-(digits-15) — pure arithmetic noise — print as zero.

Exit codes: 0 success, 1 verification failure or cache corruption,
2 usage error, 3 precision error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from mpmath import mp, mpf, workdps

from . import cluster, constants
from .errors import (
    CacheError,
    LikeiperError,
    PrecisionError,
    UsageError,
)
from .mpseries import BigReal
from .verify import all_passed, run_verification
from .xifactory import MIN_CONSTANT_DIGITS, ConstantCache, xi_taylor

MAX_ORDER = 50
ENV_CACHE = "LIKEIPER_CACHE"


@dataclass(frozen=True)
class RunConfig:
    """Everything a run depends on.  Seed-free: there is no randomness
    anywhere in the pipeline."""

    digits: int = 60
    order: int = 40
    max_n: int = 15
    format: str = "text"
    cache_path: Optional[str] = None

    def validate(self, needs_series: bool = True,
                 needs_table: bool = False) -> None:
        if self.format not in ("text", "csv", "json"):
            raise UsageError(
                f"format must be text, csv, or json, got {self.format!r}")
        if not isinstance(self.digits, int) or not isinstance(
                self.order, int) or not isinstance(self.max_n, int):
            raise UsageError("digits, order, and max_n must be integers")
        if self.digits < MIN_CONSTANT_DIGITS:
            raise PrecisionError(
                f"digits must be at least {MIN_CONSTANT_DIGITS} "
                f"(got {self.digits}): below that the shared constants "
                "lose their certified accuracy"
            )
        if not 1 <= self.order <= MAX_ORDER:
            raise UsageError(
                f"order must be between 1 and {MAX_ORDER}, "
                f"got {self.order}"
            )
        if needs_series and self.digits < self.order + 20:
            raise PrecisionError(
                f"digits = {self.digits} cannot support series order "
                f"{self.order}: the binomial ladder amplifies coefficient "
                "rounding by roughly one digit per order, so the "
                f"constraint digits >= order + 20 applies (needs digits "
                f">= {self.order + 20} here); raise --digits or lower "
                "--order"
            )
        if needs_table:
            if self.max_n < 1:
                raise UsageError(f"max_n must be positive, got {self.max_n}")
            if self.max_n > self.order:
                raise UsageError(
                    f"max_n = {self.max_n} exceeds the series order "
                    f"{self.order}; raise --order or lower --max-n"
                )

    @property
    def sig_digits(self) -> int:
        return min(self.digits - 10, 30)

    def as_dict(self) -> Dict[str, object]:
        return {
            "digits": self.digits,
            "order": self.order,
            "max_n": self.max_n,
            "format": self.format,
            "cache_path": self.cache_path,
        }


def resolve_cache_path(flag_value: Optional[str]) -> Optional[str]:
    """Flag beats the LIKEIPER_CACHE environment variable beats the
    per-user cache directory; the literal values none/off disable the
    cache entirely."""
    if flag_value is not None:
        if flag_value.lower() in ("none", "off"):
            return None
        return flag_value
    env = os.environ.get(ENV_CACHE)
    if env:
        return env
    base = os.environ.get("XDG_CACHE_HOME")
    root = Path(base) if base else Path.home() / ".cache"
    return str(root / "likeiper" / "constants.txt")


def _open_cache(cfg: RunConfig) -> Optional[ConstantCache]:
    if cfg.cache_path is None:
        return None
    return ConstantCache(digits=cfg.digits, order=cfg.order,
                         path=cfg.cache_path)


# --------------------------------------------------------------------------
# Rendering
# --------------------------------------------------------------------------

def _fmt_real(value: BigReal, cfg: RunConfig, clamp: bool = False) -> str:
    if clamp:
        with workdps(cfg.digits + 10):
            if abs(mpf(value.value)) < mpf(10) ** -(cfg.digits - 15):
                return BigReal(0, cfg.digits).to_decimal(cfg.sig_digits)
    return value.to_decimal(cfg.sig_digits)


def _emit_rows(cfg: RunConfig, columns: Sequence[str],
               rows: Sequence[Dict[str, object]],
               out=None) -> None:
    out = out or sys.stdout
    if cfg.format == "json":
        payload = {"config": cfg.as_dict(), "rows": list(rows)}
        out.write(json.dumps(payload, indent=2))
        out.write("\n")
        return
    str_rows = [[str(r[c]) for c in columns] for r in rows]
    if cfg.format == "csv":
        out.write(",".join(columns) + "\n")
        for row in str_rows:
            out.write(",".join(row) + "\n")
        return
    widths = [max(len(c), *(len(r[i]) for r in str_rows)) if str_rows
              else len(c) for i, c in enumerate(columns)]
    out.write("  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()
              + "\n")
    for row in str_rows:
        out.write("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip()
                  + "\n")


# --------------------------------------------------------------------------
# Subcommands
# --------------------------------------------------------------------------

def cmd_table(cfg: RunConfig, curves: bool = False,
              figures_dir: Optional[str] = None, out=None) -> int:
    """One row per index with the full ladder of derived quantities."""
    cfg.validate(needs_series=True, needs_table=True)
    cache = _open_cache(cfg)
    xi = xi_taylor(cfg.order, cfg.digits, cache=cache)
    records = cluster.build_li_records(xi, cfg.max_n)
    columns = ["n", "phi", "lambda", "lower", "upper", "rwb_lower",
               "residual", "delta", "epsilon"]
    if curves:
        columns += ["curve_linear", "curve_nlogn"]
    lam1 = records[0].lam
    rows: List[Dict[str, object]] = []
    for rec in records:
        row: Dict[str, object] = {
            "n": rec.n,
            "phi": _fmt_real(rec.phi, cfg),
            "lambda": _fmt_real(rec.lam, cfg),
            "lower": _fmt_real(rec.lower, cfg),
            "upper": _fmt_real(rec.upper, cfg),
            "rwb_lower": _fmt_real(rec.rwb_lower, cfg),
            "residual": _fmt_real(rec.residual, cfg, clamp=True),
            "delta": _fmt_real(rec.delta, cfg),
            "epsilon": _fmt_real(rec.epsilon, cfg),
        }
        if curves:
            with workdps(cfg.digits + 10):
                linear = mpf(3) / 10 * rec.n + (mpf(lam1.value)
                                                - mpf(3) / 10)
                nlogn = mpf(1) / 10 * rec.n * mp.log(rec.n) \
                    + mpf(lam1.value)
            row["curve_linear"] = _fmt_real(BigReal(linear, cfg.digits), cfg)
            row["curve_nlogn"] = _fmt_real(BigReal(nlogn, cfg.digits), cfg)
        rows.append(row)
    _emit_rows(cfg, columns, rows, out=out)
    if figures_dir is not None:
        from .figures import render_figures
        for path in render_figures(records, figures_dir):
            print(f"wrote {path}", file=sys.stderr)
    return 0


def cmd_verify(cfg: RunConfig, out=None) -> int:
    """Run the invariant suite; exit 0 only if every check passes."""
    cfg.validate(needs_series=True)
    cache = _open_cache(cfg)
    results = run_verification(cfg.digits, cfg.order, cache=cache)
    ok = all_passed(results)
    out = out or sys.stdout
    if cfg.format == "json":
        payload = {
            "config": cfg.as_dict(),
            "report": {
                "checks": [
                    {"name": r.name, "passed": r.passed,
                     "measured": r.measured, "bound": r.bound,
                     "note": r.note}
                    for r in results
                ],
                "all_passed": ok,
            },
        }
        out.write(json.dumps(payload, indent=2) + "\n")
    elif cfg.format == "csv":
        out.write("status,name,measured,bound,note\n")
        for r in results:
            status = "pass" if r.passed else "FAIL"
            note = r.note.replace(",", ";")
            bound = r.bound.replace(",", ";")
            measured = r.measured.replace(",", ";")
            out.write(f"{status},{r.name},{measured},{bound},{note}\n")
    else:
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            out.write(f"{status}  {r.name:26s} measured {r.measured}  "
                      f"(bound {r.bound})\n")
        out.write(f"{sum(r.passed for r in results)}/{len(results)} "
                  "checks passed\n")
    return 0 if ok else 1


def cmd_constant(cfg: RunConfig, route: str, terms: Optional[int],
                 out=None) -> int:
    """Compute c by the requested route and report value, terms_used,
    est_error, and (for inexact routes) the gap to the exact route."""
    if route not in ("exact", "lambda", "binary", "split"):
        raise UsageError(
            f"unknown route {route!r}; choose exact, lambda, binary, "
            "or split"
        )
    cfg.validate(needs_series=(route == "lambda"))
    cache = _open_cache(cfg)
    exact = constants.c_exact(cfg.digits, cache=cache)
    rows: List[Dict[str, object]] = []

    def add_row(component: str, value: BigReal, terms_used: int,
                est: Optional[BigReal], with_gap: bool) -> None:
        if with_gap:
            gap = abs(value - exact.value)
            gap_str = _fmt_real(gap, cfg)
        else:
            gap_str = ""
        rows.append({
            "route": route,
            "component": component,
            "value": _fmt_real(value, cfg),
            "terms_used": terms_used,
            "est_error": "" if est is None else _fmt_real(est, cfg),
            "gap": gap_str,
        })

    if route == "exact":
        add_row("total", exact.value, exact.terms_used, exact.est_error,
                with_gap=False)
    elif route == "lambda":
        used = 15 if terms is None else terms
        if used < 1:
            raise UsageError(f"--terms must be positive, got {used}")
        if used > cfg.order:
            raise UsageError(
                f"--terms {used} needs lambda coefficients past the "
                f"series order {cfg.order}; raise --order"
            )
        xi = xi_taylor(cfg.order, cfg.digits, cache=cache)
        phis = cluster.phi_ladder(xi, used, guard=15)
        lambdas = [v.with_digits(cfg.digits)
                   for v in cluster.lambdas_from_phis(phis, used)]
        report = constants.c_from_lambda(lambdas, used)
        add_row("total", report.value, report.terms_used,
                report.est_error, with_gap=True)
    elif route == "binary":
        used = 32 if terms is None else terms
        report = constants.c_from_binary(used, cfg.digits, cache=cache)
        add_row("total", report.value, report.terms_used,
                report.est_error, with_gap=True)
    else:
        arch, zeta_part = constants.trend_tiny_split(cfg.digits,
                                                     cache=cache)
        report = constants.c_trend_tiny(cfg.digits, cache=cache)
        add_row("archimedean_factor", arch, 0, None, with_gap=False)
        add_row("zeta_factor", zeta_part, 0, None, with_gap=False)
        add_row("total", report.value, report.terms_used,
                report.est_error, with_gap=True)

    out = out or sys.stdout
    if cfg.format == "json":
        payload = {"config": cfg.as_dict(),
                   "report": {"route": route, "rows": rows}}
        out.write(json.dumps(payload, indent=2) + "\n")
    elif cfg.format == "csv":
        columns = ["route", "component", "value", "terms_used",
                   "est_error", "gap"]
        out.write(",".join(columns) + "\n")
        for row in rows:
            out.write(",".join(str(row[c]) for c in columns) + "\n")
    else:
        out.write(f"route = {route}\n")
        for row in rows:
            if row["component"] != "total":
                out.write(f"{row['component']} = {row['value']}\n")
                continue
            out.write(f"value = {row['value']}\n")
            out.write(f"terms_used = {row['terms_used']}\n")
            if row["est_error"]:
                out.write(f"est_error = {row['est_error']}\n")
            if row["gap"]:
                out.write(f"gap = {row['gap']}\n")
    return 0


def cmd_xi(cfg: RunConfig, out=None) -> int:
    """Dump the Taylor coefficients a_0..a_order."""
    cfg.validate(needs_series=True)
    cache = _open_cache(cfg)
    xi = xi_taylor(cfg.order, cfg.digits, cache=cache)
    columns = ["n", "a_n"]
    rows = [{"n": n, "a_n": _fmt_real(xi.coeff(n), cfg)}
            for n in range(cfg.order + 1)]
    _emit_rows(cfg, columns, rows, out=out)
    return 0


def cmd_partitions(cfg: RunConfig, n: int, out=None) -> int:
    """Dump the partitions of n (cluster enumeration order) with their
    exact weights and expansion signs."""
    cfg.validate(needs_series=False)
    parts = cluster.partitions(n)
    columns = ["n", "k", "parts", "weight", "sign"]
    rows: List[Dict[str, object]] = []
    for p in parts:
        weight = cluster.cluster_weight(p)
        rows.append({
            "n": n,
            "k": p.k,
            "parts": "+".join(str(v) for v in p.ascending()),
            "weight": int(weight) if weight.denominator == 1 else
            str(weight),
            "sign": 1 if p.k % 2 == 1 else -1,
        })
    _emit_rows(cfg, columns, rows, out=out)
    return 0


# --------------------------------------------------------------------------
# Argument parsing
# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="likeiper",
        description="Li-Keiper coefficients, cluster-expansion bounds, "
                    "and the xi log-derivative constant c at arbitrary "
                    "precision.",
    )

    def add_common(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("--digits", type=int, default=60,
                         help="decimal working precision (default 60)")
        sub.add_argument("--order", type=int, default=40,
                         help="xi series truncation order (default 40)")
        sub.add_argument("--format", choices=("text", "csv", "json"),
                         default="text", help="output format")
        sub.add_argument("--cache", default=None, metavar="PATH",
                         help="constants cache file; 'none' disables; "
                              f"default ${ENV_CACHE} or the per-user "
                              "cache directory")

    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("table", help="per-index coefficient ladder")
    add_common(p)
    p.add_argument("--max-n", type=int, default=15,
                   help="last table row (default 15)")
    p.add_argument("--curves", action="store_true",
                   help="append the 0.3n+const and 0.1nlog(n)+const "
                        "comparison columns")
    p.add_argument("--figures", metavar="DIR", default=None,
                   help="also render the three PNG figures into DIR")

    p = subs.add_parser("verify", help="run every invariant check")
    add_common(p)

    p = subs.add_parser("constant", help="the constant c by one route")
    add_common(p)
    p.add_argument("--route", default="exact",
                   choices=("exact", "lambda", "binary", "split"),
                   help="computation route (default exact)")
    p.add_argument("--terms", type=int, default=None,
                   help="series terms (lambda default 15, binary "
                        "default 32)")

    p = subs.add_parser("xi", help="dump xi Taylor coefficients")
    add_common(p)

    p = subs.add_parser("partitions",
                        help="partitions of n with cluster weights")
    add_common(p)
    p.add_argument("n", type=int, help="the integer to partition")

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        digits=args.digits,
        order=args.order,
        max_n=getattr(args, "max_n", 15),
        format=args.format,
        cache_path=resolve_cache_path(args.cache),
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = _config_from_args(args)
    if args.command == "table":
        return cmd_table(cfg, curves=args.curves,
                         figures_dir=args.figures)
    if args.command == "verify":
        return cmd_verify(cfg)
    if args.command == "constant":
        return cmd_constant(cfg, args.route, args.terms)
    if args.command == "xi":
        return cmd_xi(cfg)
    if args.command == "partitions":
        return cmd_partitions(cfg, args.n)
    raise UsageError(f"unknown command {args.command!r}")


def entrypoint() -> None:
    try:
        raise SystemExit(main())
    except CacheError as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(1)
    except PrecisionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(3)
    except LikeiperError as exc:
        # UsageError, DomainError, and anything else user-facing.
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(2)


if __name__ == "__main__":
    entrypoint()
