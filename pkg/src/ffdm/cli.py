"""Command-line front end.

Exit codes: 0 ok, 1 internal error or failed bound check, 2 bad input
(usage or block length), 3 word not in the codebook, 4 I/O error.
"""
from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from fractions import Fraction

from . import analysis, codebook, combinatorics, matcher
from .infotheory import TargetSource

SCHEMA = 1
EXIT_OK, EXIT_INTERNAL, EXIT_LENGTH, EXIT_CODEWORD, EXIT_IO = range(5)


class UsageError(Exception):
    pass


def fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, int):
        return str(x)
    return format(float(x), ".12g")


def parse_n_spec(text: str) -> list[int]:
    """``"8"``, ``"8,16"``, ``"a..b"``, ``"a..b:step"`` or ``"pow2:a..b"``."""
    text = text.strip()
    if not text:
        return []
    try:
        if text.startswith("pow2:"):
            lo, hi = text[5:].split("..")
            return [2**e for e in range(int(lo), int(hi) + 1)]
        if ".." in text:
            rng, _, step = text.partition(":")
            lo, hi = rng.split("..")
            step = int(step) if step else 1
            if step < 1:
                raise ValueError("step must be positive")
            return list(range(int(lo), int(hi) + 1, step))
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise UsageError(f"bad --n spec {text!r}: {exc}") from exc


def parse_source(text) -> TargetSource:
    try:
        return TargetSource.of(str(text))
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from exc


def parse_codebook(selector: str, n: int, src: TargetSource):
    """Return ``(spec, k_hat)``; ``k_hat`` only for ``optimal``."""
    kind, _, rest = selector.partition(":")
    args = rest.split(":") if rest else []
    try:
        if kind == "optimal" and not args:
            res = analysis.optimal_k(n, src)
            return codebook.UnionOfTypeSets(n, res.k_hat), res.k_hat
        if kind == "union" and len(args) == 1:
            return codebook.UnionOfTypeSets(n, int(args[0])), None
        if kind == "cc" and len(args) in (1, 2):
            w = int(args[0])
            size = int(args[1]) if len(args) == 2 else math.comb(n, w)
            return codebook.ConstantComposition(n, w, size), None
        if kind == "greedy" and len(args) == 1:
            return codebook.GreedyPrefix(n, int(args[0])), None
    except ValueError as exc:
        raise UsageError(f"bad codebook {selector!r}: {exc}") from exc
    raise UsageError(
        f"bad codebook {selector!r}; use union:K, cc:W[:SIZE], greedy:M or optimal"
    )


def emit(out, **pairs):
    for key, value in pairs.items():
        out.write(f"{key}={fmt(value) if not isinstance(value, str) else value}\n")


def cmd_analyze(args, out) -> int:
    src = parse_source(args.p)
    n = args.n
    if n < 1:
        raise UsageError("--n must be positive")
    spec, k_hat = parse_codebook(args.codebook, n, src)
    bd = codebook.divergence_decomposed(spec, src)
    size = codebook.codebook_size(spec)
    emit(out, n=n, p=src.value, mirrored=src.mirrored, codebook=args.codebook)
    if k_hat is not None:
        emit(out, k_hat=k_hat)
    emit(out, size=size, log2_size=bd.log2_size, p_letter=bd.p_letter.value,
         total=bd.total, codebook_term=bd.codebook_term, letter_term=bd.letter_term)
    if isinstance(spec, codebook.UnionOfTypeSets) and 2 * spec.k < n:
        rep = analysis.optimal_lower_bound(n, spec.k, src)
        gap = codebook.pletter_gap_bounds(n, spec.k)
        emit(out, pletter_gap_upper=gap.upper, eq17_lower=rep.bound_bits)
    if isinstance(spec, codebook.ConstantComposition) and 0 < spec.w < n:
        design_m = matcher.floor_log(math.comb(n, spec.w), args.B)
        if size == args.B**design_m:
            cb = analysis.ccdm_codebook_bounds(n, spec.w, args.B)
            emit(out, ccdm_lower=cb.lower, ccdm_upper=cb.upper)
    if args.csv:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["n", "p", "codebook", "log2_size", "p_letter", "total",
                    "codebook_term", "letter_term"])
        w.writerow([n, fmt(src.value), args.codebook, fmt(bd.log2_size),
                    fmt(bd.p_letter.value), fmt(bd.total), fmt(bd.codebook_term),
                    fmt(bd.letter_term)])
    return EXIT_OK


def build_matcher(args) -> matcher.Matcher:
    src = parse_source(args.p)
    if args.n < 1:
        raise UsageError("--n must be positive")
    if args.scheme == "ccdm":
        return matcher.as_matcher(matcher.ccdm_design(args.n, src, args.B))
    k_hat = analysis.optimal_k(args.n, src).k_hat
    spec = codebook.UnionOfTypeSets(args.n, k_hat)
    m = matcher.floor_log(codebook.codebook_size(spec), args.B)
    return matcher.Matcher(spec, args.B, m, src.mirrored)


def _read_line(stream) -> str:
    return stream.readline().strip()


def cmd_match(args, out, stdin) -> int:
    mt = build_matcher(args)
    out.write(matcher.match(_read_line(stdin), mt) + "\n")
    return EXIT_OK


def cmd_dematch(args, out, stdin) -> int:
    mt = build_matcher(args)
    out.write(matcher.dematch(_read_line(stdin), mt) + "\n")
    return EXIT_OK


def write_sweep_csv(records, out):
    out.write(f"# schema={SCHEMA}\n")
    w = csv.writer(out, lineterminator="\n")
    w.writerow(analysis.FIELDS)
    for rec in records:
        w.writerow([fmt(getattr(rec, f)) if f != "flags" else rec.flags
                    for f in analysis.FIELDS])


def cmd_sweep(args, out) -> int:
    src = parse_source(args.p)
    records = analysis.sweep(src, parse_n_spec(args.n), args.B, jobs=args.jobs)
    buf = io.StringIO()
    write_sweep_csv(records, buf)
    if args.out in (None, "-"):
        out.write(buf.getvalue())
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    return EXIT_OK


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name} is required for --kind {args.kind}")


def _verdict(out, ok: bool) -> int:
    out.write(f"result={'PASS' if ok else 'FAIL'}\n")
    return EXIT_OK if ok else EXIT_INTERNAL


def cmd_bounds(args, out) -> int:
    kind = args.kind
    try:
        if kind in ("stirling", "partial-sum"):
            _need(args, "n", "p")
            p = Fraction(str(args.p))
            k = args.n * p
            if kind == "stirling":
                bp = combinatorics.stirling_bounds(args.n, p)
                exact = combinatorics.binom(args.n, int(k))
            else:
                bp = combinatorics.partial_sum_bounds(args.n, p)
                exact = combinatorics.partial_binom_sum(args.n, int(k))
            emit(out, lower=bp.lower, exact=exact, upper=bp.upper)
            return _verdict(out, bp.contains(exact))
        if kind == "center-weight":
            _need(args, "n", "k")
            total = combinatorics.center_weighted_sum(args.n, args.k)
            closed = (args.k + 1) * combinatorics.binom(args.n, args.k + 1)
            emit(out, doubled_sum=total, closed_form=closed)
            return _verdict(out, total == closed)
        if kind == "pletter-gap":
            _need(args, "n", "k")
            bp = codebook.pletter_gap_bounds(args.n, args.k)
            pc = codebook.letter_distribution(codebook.UnionOfTypeSets(args.n, args.k))
            gap = Fraction(args.k, args.n) - pc.as_fraction()
            emit(out, lower=bp.lower, gap=gap, upper=bp.upper)
            return _verdict(out, bp.contains(gap))
        if kind == "eq17":
            _need(args, "n", "p")
            src = parse_source(args.p)
            k = args.k if args.k is not None else analysis.optimal_k(args.n, src).k_hat
            rep = analysis.optimal_lower_bound(args.n, k, src)
            emit(out, k=k, epsilon_n=rep.epsilon_n, lower=rep.bound_bits,
                 divergence=rep.divergence_bits)
            return _verdict(out, rep.bound_bits <= rep.divergence_bits)
        if kind == "eq18":
            _need(args, "p")
            emit(out, constant=analysis.asymptotic_gap_constant(parse_source(args.p)))
            return EXIT_OK
        if kind == "ccdm":
            _need(args, "n", "p")
            design = matcher.ccdm_design(args.n, parse_source(args.p), args.B)
            bp = analysis.ccdm_codebook_bounds(args.n, design.w, args.B)
            term = analysis.ccdm_divergence(design).codebook_term
            emit(out, w=design.w, m=design.m, lower=bp.lower, codebook_term=term,
                 upper=bp.upper)
            return _verdict(out, bp.contains(term))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    raise UsageError(f"unknown kind {kind!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ffdm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, n_type=int, need_n=True):
        p.add_argument("--n", type=n_type, required=need_n)
        p.add_argument("--p", required=True, help="target P(1), decimal or a/b")
        p.add_argument("--B", type=int, default=2)

    a = sub.add_parser("analyze", help="divergence of one codebook")
    common(a)
    a.add_argument("--codebook", default="optimal",
                   help="union:K | cc:W[:SIZE] | greedy:M | optimal")
    a.add_argument("--csv", action="store_true", help="also print a one-row CSV")

    for name in ("match", "dematch"):
        m = sub.add_parser(name, help=f"{name} one block read from stdin")
        common(m)
        m.add_argument("--scheme", choices=("ccdm", "optimal"), default="ccdm")

    s = sub.add_parser("sweep", help="CSV of optimal and CCDM divergence over n")
    common(s, n_type=str)
    s.add_argument("--out", help="output path (default stdout)")
    s.add_argument("--jobs", type=int, default=1)

    b = sub.add_parser("bounds", help="evaluate and verify one bound")
    b.add_argument("--kind", required=True, choices=(
        "stirling", "partial-sum", "center-weight", "pletter-gap", "eq17", "eq18", "ccdm"))
    b.add_argument("--n", type=int)
    b.add_argument("--k", type=int)
    b.add_argument("--p")
    b.add_argument("--B", type=int, default=2)
    return parser


def main(argv=None, stdin=None, stdout=None) -> int:
    stdin = stdin or sys.stdin
    out = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_LENGTH
    try:
        if getattr(args, "B", 2) < 2:
            raise UsageError("--B must be at least 2")
        if args.command == "analyze":
            return cmd_analyze(args, out)
        if args.command == "match":
            return cmd_match(args, out, stdin)
        if args.command == "dematch":
            return cmd_dematch(args, out, stdin)
        if args.command == "sweep":
            return cmd_sweep(args, out)
        return cmd_bounds(args, out)
    except UsageError as exc:
        print(f"ffdm: error: {exc}", file=sys.stderr)
        return EXIT_LENGTH
    except matcher.BlockLengthError as exc:
        print(f"ffdm: {exc}", file=sys.stderr)
        return EXIT_LENGTH
    except matcher.NotACodeword as exc:
        print(f"ffdm: {exc}", file=sys.stderr)
        return EXIT_CODEWORD
    except OSError as exc:
        print(f"ffdm: {exc}", file=sys.stderr)
        return EXIT_IO
    except Exception as exc:  # noqa: BLE001
        print(f"ffdm: internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
