"""Command-line front end: classify rational functions and emit reports.

Each input function gets one report carrying the degeneracy check, the
measured image dimension of its doubling map, the fitted canonical form
(when one certifies), the dependence certificate, and the probe
diagnostics.  Reports are deterministic: the same seed, flags, and input
produce byte-identical output.

Exit status: 0 when every verdict is decisive (including no-constraint and
degenerate), 2 when any function is unresolved or the rank sampling is
inconclusive, 1 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .classify import classify_trivariate, fit_bivariate, fit_polynomial_composition
from .dimension import (
    AllPolesError,
    InconclusiveRankError,
    image_dimension,
    is_nondegenerate,
)
from .modular import primes_below
from .ratfun import ParseError, parse

_VERDICT = {
    "GroupAdditive": "group-additive",
    "GroupMultiplicative": "group-multiplicative",
    "Field": "field",
    "Twisted": "twisted",
    "NoConstraint": "no-constraint",
    "Degenerate": "degenerate",
    "Unresolved": "unresolved",
}

_DECISIVE = frozenset(v for v in _VERDICT.values() if v != "unresolved")


class _ArgumentParser(argparse.ArgumentParser):
    """argparse that exits 1 on usage errors (2 is reserved for unresolved)."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _build_parser() -> argparse.ArgumentParser:
    ap = _ArgumentParser(
        prog="analyze",
        description=(
            "Detect algebraic constraints on the doubling map of a rational "
            "function and fit the canonical form that explains them."
        ),
    )
    ap.add_argument(
        "--function",
        action="append",
        default=[],
        metavar="EXPR",
        help="rational function to analyze (repeatable); grammar: + - * / ^ ( ) integers variables",
    )
    ap.add_argument(
        "--vars",
        metavar="NAMES",
        required=True,
        help="comma-separated variable names, e.g. x,y,z (two or three)",
    )
    ap.add_argument(
        "--corpus",
        metavar="PATH",
        help="file with one expression per line; # starts a comment",
    )
    ap.add_argument("--format", choices=("json", "text"), default="text")
    ap.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    ap.add_argument(
        "--prime-bits",
        type=int,
        default=31,
        dest="prime_bits",
        help="bit size of the two sampling primes (default 31)",
    )
    ap.add_argument(
        "--samples",
        type=int,
        default=16,
        help="random points per prime for rank sampling (default 16)",
    )
    ap.add_argument(
        "--max-degree",
        type=int,
        default=None,
        dest="max_degree",
        help="total-degree bound for the annihilator search (default: auto)",
    )
    ap.add_argument(
        "--probe-conjecture",
        action="store_true",
        dest="probe_conjecture",
        help=(
            "experimental: when a form s is fitted to a polynomial input, "
            "probe whether the input is u(s) for a univariate polynomial u "
            "and report fit/no-fit (no correctness claim either way)"
        ),
    )
    return ap


def analyze_function(
    expr: str,
    names: tuple[str, ...],
    primes: tuple[int, ...],
    samples: int,
    seed: int,
    dmax: int | None,
    probe: bool,
) -> tuple[dict, int]:
    """One report dict (schema order) and its exit status for a single input.

    May raise ParseError; every other outcome is encoded in the report.
    """
    f = parse(expr, names)
    f = f if f.canonical else f.reduce()
    n = len(names)
    report: dict = {
        "function": expr,
        "vars": list(names),
        "nondegenerate": None,
        "image_dimension": None,
        "has_constraint": None,
        "verdict": None,
        "fitted": None,
        "certificate": None,
        "diagnostics": {},
        "timing": None,
        "seed": seed,
        "primes": list(primes),
    }
    if not is_nondegenerate(f):
        report["nondegenerate"] = False
        report["verdict"] = "degenerate"
        report["diagnostics"] = {"nondegenerate": False}
        return report, 0
    report["nondegenerate"] = True
    try:
        dim = image_dimension(f, primes=primes, samples=samples, seed=seed)
    except (InconclusiveRankError, AllPolesError):
        report["verdict"] = "unresolved"
        report["diagnostics"] = {"rank_inconclusive": True}
        return report, 2
    report["image_dimension"] = dim
    report["has_constraint"] = dim < 2 * n
    if n == 2:
        fr = fit_bivariate(f, dmax=dmax, primes=primes, seed=seed)
    else:
        fr = classify_trivariate(
            f, dmax=dmax, primes=primes, samples=samples, seed=seed, dim=dim
        )
    report["verdict"] = _VERDICT[fr.verdict]
    diagnostics = dict(fr.diagnostics)
    if fr.fitted is not None:
        parts = fr.fitted
        if n == 2:
            fitted = {
                "r1": parts["F"].to_str(names),
                "r2": parts["G"].to_str(names),
                "r3": None,
            }
        else:
            fitted = {
                "r1": parts["r1"].to_str(names),
                "r2": parts["r2"].to_str(names),
                "r3": parts["r3"].to_str(names),
            }
        fitted["s"] = parts["s"].to_str(names)
        fitted["pivot"] = fr.pivot
        fitted["n"] = fr.exponent
        report["fitted"] = fitted
    if fr.certificate is not None:
        report["certificate"] = {
            "annihilator": fr.certificate.annihilator.to_str(("p", "q")),
            "degree_bound": fr.certificate.degree_bound,
        }
    if probe:
        s_fit = fr.fitted.get("s") if fr.fitted else None
        if s_fit is not None and f.is_polynomial:
            u = fit_polynomial_composition(f, s_fit)
            diagnostics["conjecture_composition"] = u is not None
            if u is not None:
                diagnostics["conjecture_u"] = u.to_str(("t",))
        else:
            diagnostics["conjecture_applicable"] = False
    report["diagnostics"] = diagnostics
    status = 0 if report["verdict"] in _DECISIVE else 2
    return report, status


def _disp(value) -> str:
    if value is None or isinstance(value, bool):
        return str(value).lower()
    return str(value)


def _format_text(report: dict) -> str:
    lines = [
        f"function:        {report['function']}",
        f"vars:            {', '.join(report['vars'])}",
        f"verdict:         {report['verdict']}",
        f"nondegenerate:   {_disp(report['nondegenerate'])}",
        f"image dimension: {_disp(report['image_dimension'])}",
        f"has constraint:  {_disp(report['has_constraint'])}",
    ]
    fitted = report["fitted"]
    if fitted is not None:
        for key in ("r1", "r2", "r3", "s", "pivot", "n"):
            if fitted[key] is not None:
                lines.append(f"fitted {key}:{' ' * (9 - len(key))}{fitted[key]}")
    cert = report["certificate"]
    if cert is not None:
        lines.append(f"certificate:     {cert['annihilator']} = 0 at (p, q) = (P, s)")
        lines.append(f"degree bound:    {cert['degree_bound']}")
    diag = ", ".join(f"{k}={str(v).lower()}" for k, v in report["diagnostics"].items())
    lines.append(f"diagnostics:     {diag if diag else '(none)'}")
    lines.append(f"seed:            {report['seed']}")
    lines.append(f"primes:          {', '.join(str(p) for p in report['primes'])}")
    return "\n".join(lines)


def _read_corpus(path: str) -> list[str]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            text = line.split("#", 1)[0].strip()
            if text:
                out.append(text)
    return out


def main(argv: list[str] | None = None) -> int:
    ap = _build_parser()
    args = ap.parse_args(argv)

    names = tuple(v.strip() for v in args.vars.split(",") if v.strip())
    if len(names) not in (2, 3):
        ap.error(f"--vars needs two or three names, got {len(names)}")
    if len(set(names)) != len(names):
        ap.error("--vars names must be distinct")
    if not (0 <= args.seed < 1 << 64):
        ap.error("--seed must fit an unsigned 64-bit integer")
    if not (4 <= args.prime_bits <= 62):
        ap.error("--prime-bits must be between 4 and 62")
    if args.samples < 1:
        ap.error("--samples must be positive")
    if args.max_degree is not None and args.max_degree < 1:
        ap.error("--max-degree must be positive")

    exprs = list(args.function)
    if args.corpus is not None:
        try:
            exprs.extend(_read_corpus(args.corpus))
        except OSError as exc:
            print(f"{ap.prog}: error: cannot read corpus: {exc}", file=sys.stderr)
            return 1
    if not exprs:
        ap.error("no input: pass --function and/or --corpus")

    primes = primes_below(1 << args.prime_bits, 2)
    reports = []
    status = 0
    for expr in exprs:
        try:
            report, code = analyze_function(
                expr,
                names,
                primes=primes,
                samples=args.samples,
                seed=args.seed,
                dmax=args.max_degree,
                probe=args.probe_conjecture,
            )
        except ParseError as exc:
            print(f"{ap.prog}: error: cannot parse {expr!r}: {exc}", file=sys.stderr)
            return 1
        reports.append(report)
        status = max(status, code)

    if args.format == "json":
        sys.stdout.write(json.dumps(reports, indent=2) + "\n")
    else:
        sys.stdout.write("\n\n".join(_format_text(r) for r in reports) + "\n")
    return status


if __name__ == "__main__":
    raise SystemExit(main())
