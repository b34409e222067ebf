"""Command-line interface.

Exit codes: 0 success, 1 completed with discrepancy flags (game flags,
lemma mismatches, degree disagreement), 2 refused move or indeterminate
verdict, 3 usage error.  Results go to stdout (or --output), diagnostics
to stderr.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

from .board import MoveRefused
from .chern import (
    condition3_bound,
    cover_degree,
    h0_twisted_quotient,
    section_count_ld,
    section_count_syzygy,
)
from .games import run_game
from .oracle import check_lemma, ext_on_flag, ext_on_M, hom_bundle, koszul_terms
from .render import (
    emit_json_lines,
    game_result_to_json,
    render_ascii,
    render_latex,
)
from .schur import INDETERMINATE, BundleDescriptor, sym_cohomology, sym_filtration
from .weights import line_bundle_cohomology, rho

EXIT_OK = 0
EXIT_FLAGGED = 1
EXIT_REFUSED = 2
EXIT_USAGE = 3

EMIT_FORMATS = ("text", "latex", "json", "json-lines")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    """Resolved options for the game-family subcommands."""

    subcommand: str
    n: int = 0
    eps: int = 0
    mode: str = "fibration"
    validate: bool | None = None
    emit: str = "text"
    output: str | None = None


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _triple(text: str) -> tuple[int, int, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected m,x,y; got {text!r}")
    try:
        m, x, y = (int(p) for p in parts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected integers m,x,y; got {text!r}") from exc
    return m, x, y


def _fmt_graded(g) -> str:
    if g is INDETERMINATE:
        return "indeterminate"
    if not g:
        return "0"
    return ", ".join(f"h^{k} = {v}" for k, v in sorted(g.items()))


def _write(lines: list[str], output: str | None) -> None:
    text = "\n".join(lines) + ("\n" if lines else "")
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)


def _need_N(N: int) -> None:
    if N < 3:
        raise UsageError(f"need N >= 3, got {N}")


def _need_n(n: int) -> None:
    if n < 2:
        raise UsageError(f"need n >= 2, got {n}")


def cmd_bwb(args: argparse.Namespace) -> int:
    _need_N(args.N)
    res = line_bundle_cohomology(args.N, args.x, args.y)
    start = tuple(a + b for a, b in zip((args.x, args.y) + (0,) * (args.N - 3), rho(args.N)))
    lines = [f"line bundle O({args.x},{args.y}) on F(1,2,{args.N})",
             f"shifted weight: {start}"]
    for idx, w in res.trace:
        lines.append(f"  reflect {idx}: {w}")
    if res.vanishes:
        lines.append("result: 0 (singular shifted weight)")
    else:
        lines.append(f"result: H^{res.degree} of dimension {res.dim}, "
                     f"dominant weight {res.dominant}")
    _write(lines, args.output)
    return EXIT_OK


def cmd_cohom(args: argparse.Namespace) -> int:
    _need_N(args.N)
    d = BundleDescriptor(args.m, args.x, args.y, args.N)
    lines = [f"Sym^{args.m} twisted by ({args.x},{args.y}) on F(1,2,{args.N})"]
    for px, py in sym_filtration(d):
        piece = line_bundle_cohomology(args.N, px, py)
        if piece.vanishes:
            lines.append(f"  piece O({px},{py}): 0")
        else:
            lines.append(f"  piece O({px},{py}): H^{piece.degree} of dimension {piece.dim}")
    total = sym_cohomology(d)
    lines.append(f"total: {_fmt_graded(total)}")
    _write(lines, args.output)
    return EXIT_REFUSED if total is INDETERMINATE else EXIT_OK


def cmd_ext(args: argparse.Namespace) -> int:
    _need_N(args.N)
    src = BundleDescriptor(*args.src, args.N)
    tgt = BundleDescriptor(*args.tgt, args.N)
    lines = [f"Ext on {args.space} between Sym^{src.m}({src.x},{src.y}) "
             f"and Sym^{tgt.m}({tgt.x},{tgt.y}), N={args.N}"]
    for s in hom_bundle(src, tgt):
        lines.append(f"  hom summand: Sym^{s.m}({s.x},{s.y})")
    if args.space == "flag":
        res = ext_on_flag(src, tgt)
    else:
        A, B = koszul_terms(src, tgt)
        lines.append(f"  twisted term (target twisted by (-1,-1)): {_fmt_graded(A)}")
        lines.append(f"  plain term: {_fmt_graded(B)}")
        res = ext_on_M(src, tgt)
    lines.append(f"result: {_fmt_graded(res)}")
    _write(lines, args.output)
    return EXIT_REFUSED if res is INDETERMINATE else EXIT_OK


def cmd_lemma(args: argparse.Namespace) -> int:
    _need_n(args.n)
    report = check_lemma(args.which, args.n, args.eps)
    lines = [f"{args.which} sweep at n={args.n}, eps={args.eps} "
             f"(N={2 * args.n + args.eps}): {report.total} points",
             f"matches {report.total - report.mismatches - report.indeterminates}, "
             f"mismatches {report.mismatches}, indeterminates {report.indeterminates}"]
    for p in report.points:
        if p.verdict != "match":
            params = ", ".join(f"{k}={v}" for k, v in p.params)
            lines.append(f"  {p.verdict} at {params}: expected {list(p.expected)}, "
                         f"got {p.computed}")
    _write(lines, args.output)
    if report.indeterminates:
        return EXIT_REFUSED
    return EXIT_FLAGGED if report.mismatches else EXIT_OK


def cmd_game(args: argparse.Namespace) -> int:
    _need_n(args.n)
    emit = args.emit if args.emit is not None else os.environ.get("FLAGCHESS_EMIT", "text")
    if emit not in EMIT_FORMATS:
        raise UsageError(f"unknown emit format {emit!r}; expected one of {EMIT_FORMATS}")
    cfg = RunConfig("game", args.n, args.eps, args.mode, args.validate, emit, args.output)
    phases: list[tuple[str, object, int]] = []
    result = run_game(cfg.n, cfg.eps, mode=cfg.mode, validate=cfg.validate,
                      phase_hook=lambda name, board, count: phases.append((name, board, count)))
    if emit == "json":
        lines = [game_result_to_json(result)]
    elif emit == "json-lines":
        lines = emit_json_lines(result, phases)  # type: ignore[arg-type]
    elif emit == "latex":
        lines = []
        for name, board, count in phases:
            lines.append(f"% phase: {name} (after {count} moves)")
            lines.append(render_latex(board))  # type: ignore[arg-type]
        for flag in result.flags:
            lines.append(f"% flag: {flag}")
    else:
        lines = []
        for name, board, count in phases:
            lines.append(f"== {name} (after {count} moves) ==")
            lines.append(render_ascii(board))  # type: ignore[arg-type]
            lines.append("")
        lines.append(f"moves applied: {len(result.log)}")
        gr2_copies = sum(b.copies for b in result.gr2_boxes)
        lines.append(f"column found: {'yes' if result.gr2_found else 'no'} "
                     f"({len(result.gr2_boxes)} boxes, {gr2_copies} copies)")
        lines.append(f"residual copies: {result.residual_f_count}")
        for flag in result.flags:
            lines.append(f"flag: {flag}")
    _write(lines, cfg.output)
    return EXIT_FLAGGED if result.flags else EXIT_OK


def cmd_degree(args: argparse.Namespace) -> int:
    _need_n(args.n)
    via_series, via_closed, agree = cover_degree(args.n, args.eps)
    lines = [f"branch degree at n={args.n}, eps={args.eps}",
             f"series expansion: {via_series}",
             f"closed form: {via_closed}",
             f"agree: {'yes' if agree else 'no'}"]
    _write(lines, args.output)
    return EXIT_OK if agree else EXIT_FLAGGED


def cmd_conditions(args: argparse.Namespace) -> int:
    _need_n(args.n)
    N = 2 * args.n + args.eps
    h0 = h0_twisted_quotient(N)
    ld = section_count_ld(N)
    sy = section_count_syzygy(N)
    bound = condition3_bound(N)
    lines = [f"N = {N}",
             f"sections of the twisted quotient: {h0}",
             f"condition 1 (linear determinantal) parameter count: {ld}",
             f"condition 2 (syzygy) parameter count: {sy}",
             f"condition 3 codimension bound: {bound}",
             f"comparison: condition 1 gives {ld} >= {sy} from condition 2"]
    _write(lines, args.output)
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="flagchess",
                     description="Cohomology oracles and mutation games on F(1,2,N)")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add(name: str, func, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.error = parser.error  # type: ignore[method-assign]
        p.add_argument("--output", default=None, help="write results to a file instead of stdout")
        p.set_defaults(func=func)
        return p

    p = add("bwb", cmd_bwb, "regularize a line-bundle weight and report its cohomology")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=int, required=True)

    p = add("cohom", cmd_cohom, "cohomology of a twisted symmetric power")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=int, required=True)

    p = add("ext", cmd_ext, "Ext between twisted symmetric powers")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--space", choices=("flag", "M"), required=True)
    p.add_argument("--src", type=_triple, required=True, metavar="m,x,y")
    p.add_argument("--tgt", type=_triple, required=True, metavar="m,x,y")

    p = add("lemma", cmd_lemma, "sweep a vanishing lemma over its stated grid")
    p.add_argument("--which", choices=("A4", "A5", "A6"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eps", type=int, choices=(0, 1), required=True)

    p = add("game", cmd_game, "play the straightening game")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eps", type=int, choices=(0, 1), required=True)
    p.add_argument("--mode", choices=("fibration", "flip"), default="fibration")
    p.add_argument("--validate", action=argparse.BooleanOptionalAction, default=None,
                   help="force oracle validation on or off (default: on for n <= 4)")
    p.add_argument("--emit", choices=EMIT_FORMATS, default=None,
                   help="output format (default: FLAGCHESS_EMIT or text)")

    p = add("degree", cmd_degree, "branch-divisor degree, two independent ways")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eps", type=int, choices=(0, 1), required=True)

    p = add("conditions", cmd_conditions, "section and condition counts for M")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eps", type=int, choices=(0, 1), required=True)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"flagchess: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MoveRefused as exc:
        print(f"flagchess: refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED


if __name__ == "__main__":
    sys.exit(main())
