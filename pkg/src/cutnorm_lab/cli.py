"""Cut norms, Schur-multiplier cuts and step graphons from the command line.

Exit status: 0 on success with every check passing, 1 if a check failed,
2 on usage errors (bad flags, unreadable input, violated preconditions).
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from ._threads import resolve_threads
from .approx import RelaxationConfig
from .exact import (DEFAULT_CAP, EnumerationCapExceeded, cut_norm_bracket, cut_norm_exact,
                    inf_one_bracket, inf_one_norm_exact, operator_norm)
from .experiments import (COLUMNS, KINDS, ExperimentConfig, ExperimentReport, _metadata,
                          emit_report, run_growth, run_inequality_suite, run_invariant_suite,
                          summarize_inequalities)
from .graphon import (StepGraphon, adjacency_from_edges, as_fraction, banded_cut,
                      corner_embed, corner_embed_symmetric, graphon_cut_norm, graphon_from_json,
                      l1_normalize, refine, save_graphon, step_graphon_from_matrix,
                      tensor_graphon, triangular_cut_graphon)
from .matrix import (Matrix, identity, make_An, make_An_tensor, matrix_from_csv,
                     matrix_from_json, ones, save_matrix, triangular_cut, triangular_mask, zeros)


class UsageError(Exception):
    pass


_CONSTRUCTORS = {
    "an": make_An,
    "an-tensor": make_An_tensor,
    "tri-an": lambda n: triangular_cut(make_An(n)),
    "jn": ones,
    "mask": triangular_mask,
    "eye": identity,
    "zero": zeros,
}


def parse_construct(spec: str) -> Matrix:
    """``an:8``, ``an-tensor:3``, ``tri-an:5``, ``jn:4``, ``mask:5``, ``eye:3``, ``zero:2``."""
    name, _, arg = spec.partition(":")
    if name not in _CONSTRUCTORS or not arg:
        raise UsageError(f"--construct: unknown spec {spec!r}; expected one of "
                         + ", ".join(f"{k}:N" for k in _CONSTRUCTORS))
    try:
        n = int(arg)
    except ValueError:
        raise UsageError(f"--construct: size in {spec!r} must be an integer") from None
    if n < 1:
        raise UsageError(f"--construct: size in {spec!r} must be >= 1")
    return _CONSTRUCTORS[name](n)


def parse_range(text: str) -> list:
    """``2..10`` (inclusive), ``5``, or a comma list ``2,4,8``."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            a, b = int(a), int(b)
            if b < a:
                raise ValueError
            return list(range(a, b + 1))
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"--n: expected A..B, N or a comma list, got {text!r}") from None


def parse_lambda(text: str) -> Fraction:
    try:
        return as_fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"--lambda: {exc}") from None


def load_input(path: str):
    """Matrix JSON/CSV, graphon JSON, or edge list (``.txt``, ``.edges``, ``.el``)."""
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"--in: no such file {path!r}")
    text = p.read_text()
    try:
        if p.suffix in (".txt", ".edges", ".el"):
            return step_graphon_from_matrix(adjacency_from_edges(text))
        if text.lstrip().startswith("{"):
            obj = json.loads(text)
            if isinstance(obj, dict) and "values" in obj:
                return graphon_from_json(text)
            return matrix_from_json(text)
        return matrix_from_csv(text)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"--in: malformed file {path!r}: {exc}") from None


def _relaxation(args) -> RelaxationConfig:
    try:
        return RelaxationConfig(rank=args.rank, sweeps=args.sweeps,
                                rounding_rounds=args.rounds, seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _experiment_config(args, lam=Fraction(1, 2)) -> ExperimentConfig:
    return ExperimentConfig(cap=args.cap, relaxation=_relaxation(args), lam=lam,
                            threads=args.threads)


def _emit(args, report: ExperimentReport) -> int:
    try:
        emit_report(report, args.out, args.dest, include_timing=args.timing)
    except OSError as exc:
        raise UsageError(f"--dest: {exc}") from None
    return 0 if report.passed else 1


def _witness_text(w) -> str:
    if w is None:
        return ""
    if hasattr(w, "S"):
        return f"S={list(w.S)};T={list(w.T)}"
    return f"x={list(w.x)};y={list(w.y)}"


def _witness_ok(A, w, value, scale) -> bool:
    return w is None or abs(abs(w.evaluate(A)) - value * scale) <= 1e-9 * max(1.0, value * scale)


# -- subcommands -------------------------------------------------------------

def _single_input(args):
    if (args.construct is None) == (args.in_path is None):
        raise UsageError("give exactly one of --construct or --in")
    if args.construct is not None:
        return parse_construct(args.construct)
    return load_input(args.in_path)


def cmd_norms(args) -> int:
    obj = _single_input(args)
    A = obj.values if isinstance(obj, StepGraphon) else obj.entries
    n = A.shape[0]
    if args.save:
        save_matrix(args.save, A)
    cfg = _relaxation(args)
    rows = []
    if args.exact:
        try:
            c, cw = cut_norm_exact(A, cap=args.cap, threads=args.threads)
            s, sw = inf_one_norm_exact(A, cap=args.cap, threads=args.threads)
        except EnumerationCapExceeded as exc:
            raise UsageError(f"--exact: {exc}") from None
        brackets = [("cut_norm", c, c, "enumeration-exact", cw, n * n),
                    ("inf_one", s, s, "enumeration-exact", sw, 1)]
    else:
        sb = inf_one_bracket(A, cap=args.cap, cfg=cfg, threads=args.threads)
        cb = cut_norm_bracket(A, cap=args.cap, cfg=cfg, threads=args.threads,
                              inf_one_upper=None if sb.exact else sb.upper)
        brackets = [("cut_norm", cb.lower, cb.upper, cb.method, cb.witness, n * n),
                    ("inf_one", sb.lower, sb.upper, sb.method, sb.witness, 1)]
    for name, lo, hi, method, w, scale in brackets:
        if name == "cut_norm" and w is not None and not hasattr(w, "S"):
            ok = lo <= hi + 1e-9
        else:
            ok = lo <= hi + 1e-9 and _witness_ok(A, w, lo, scale)
        rows.append({"norm": name, "lower": lo, "upper": hi, "method": method,
                     "witness": _witness_text(w), "pass": ok})
    s = operator_norm(A)
    rows.append({"norm": "operator", "lower": s, "upper": s, "method": "power-iteration",
                 "witness": "", "pass": True})
    meta = _metadata(ExperimentConfig(cap=args.cap, relaxation=cfg), n=n,
                     source=args.construct or args.in_path)
    return _emit(args, ExperimentReport("norms", list(COLUMNS["norms"]), rows, meta))


def cmd_growth(args) -> int:
    if args.kind is None:
        raise UsageError("--kind is required")
    if args.n is None:
        raise UsageError("--n is required")
    lam = parse_lambda(args.lam) if args.lam else Fraction(1, 2)
    try:
        report = run_growth(args.kind, parse_range(args.n), _experiment_config(args, lam))
    except (ValueError, EnumerationCapExceeded) as exc:
        raise UsageError(str(exc)) from None
    return _emit(args, report)


def cmd_banded(args) -> int:
    args.kind = "banded-box"
    return cmd_growth(args)


def cmd_verify(args) -> int:
    try:
        ineq = run_inequality_suite(args.count, args.n_max, seed=args.seed, pairs=args.pairs,
                                    cap=args.cap, threads=args.threads)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    inv = run_invariant_suite(seed=args.seed, cap=args.cap, threads=args.threads)
    rows = summarize_inequalities(ineq) + inv.rows
    meta = dict(inv.metadata)
    meta.update(count=args.count, pairs=ineq.metadata["pairs"], n_max=args.n_max)
    timing = {"wall_clock_s": ineq.timing["wall_clock_s"] + inv.timing["wall_clock_s"]}
    return _emit(args, ExperimentReport("verify", list(COLUMNS["invariants"]), rows, meta, timing))


def _graphon_input(args) -> StepGraphon:
    if args.construct is not None and args.construct.startswith("wn:"):
        if args.in_path is not None:
            raise UsageError("give exactly one of --construct or --in")
        try:
            return tensor_graphon(int(args.construct[3:]))
        except ValueError:
            raise UsageError(f"--construct: bad size in {args.construct!r}") from None
    obj = _single_input(args)
    if isinstance(obj, StepGraphon):
        return obj
    return step_graphon_from_matrix(obj, double_diagonal=args.double_diagonal)


def _apply_op(w: StepGraphon, op: str, lam) -> StepGraphon:
    if op == "tri":
        return triangular_cut_graphon(w)
    if op == "band":
        return banded_cut(w, lam)
    if op == "corner":
        return corner_embed(w, lam)
    if op == "corner-sym":
        return corner_embed_symmetric(w, lam)
    if op == "reflect":
        return w.reflect()
    if op == "normalize":
        return l1_normalize(w)
    if op.startswith("refine:"):
        try:
            return refine(w, int(op[7:]))
        except ValueError as exc:
            raise UsageError(f"--op {op}: {exc}") from None
    raise UsageError(f"--op: unknown operation {op!r} "
                     "(tri, band, corner, corner-sym, reflect, normalize, refine:K)")


def cmd_graphon(args) -> int:
    w = _graphon_input(args)
    lam = parse_lambda(args.lam) if args.lam else Fraction(1, 2)
    for op in args.op or []:
        try:
            w = _apply_op(w, op, lam)
        except UsageError:
            raise
        except ValueError as exc:
            raise UsageError(f"--op {op}: {exc}") from None
    if args.save:
        save_graphon(args.save, w)
    try:
        c, _ = graphon_cut_norm(w, cap=args.cap, threads=args.threads)
        lo = hi = c
        method = "enumeration-exact"
    except EnumerationCapExceeded:
        b = cut_norm_bracket(w.values, cap=args.cap, cfg=_relaxation(args), threads=args.threads)
        lo, hi, method = b.lower, b.upper, b.method
    row = {"m": w.m, "symmetric": w.is_symmetric, "l1_norm": w.l1_norm, "cut_lo": lo,
           "cut_hi": hi, "method": method, "pass": bool(lo <= hi + 1e-9)}
    meta = _metadata(ExperimentConfig(cap=args.cap, relaxation=_relaxation(args)),
                     ops=list(args.op or []), source=args.construct or args.in_path)
    return _emit(args, ExperimentReport("graphon", list(COLUMNS["graphon"]), [row], meta))


# -- parser ------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--construct", help="an:N, an-tensor:N, tri-an:N, jn:N, mask:N, eye:N, zero:N")
    common.add_argument("--in", dest="in_path", metavar="PATH",
                        help="matrix JSON/CSV, graphon JSON, or edge list")
    common.add_argument("--exact", action="store_true", help="fail instead of bracketing above the cap")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="enumeration cap (default 25)")
    common.add_argument("--rank", type=int, default=None)
    common.add_argument("--sweeps", type=int, default=200)
    common.add_argument("--rounds", type=int, default=1000)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--kind", choices=KINDS)
    common.add_argument("--n", help="A..B, N, or comma list")
    common.add_argument("--lambda", dest="lam", metavar="P/Q")
    common.add_argument("--out", choices=("json", "csv"), default="json")
    common.add_argument("--dest", metavar="PATH", help="output file (default stdout)")
    common.add_argument("--threads", type=int, default=None,
                        help="worker threads (default $CUTNORM_LAB_THREADS or CPU count)")
    common.add_argument("--timing", action="store_true", help="include wall-clock in JSON")

    parser = _Parser(prog="cutnorm-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    p = sub.add_parser("norms", parents=[common], help="cut, (inf,1) and operator norms")
    p.add_argument("--save", metavar="PATH", help="also write the input matrix as JSON")
    p.set_defaults(func=cmd_norms)
    p = sub.add_parser("growth", parents=[common], help="norm-growth experiment")
    p.set_defaults(func=cmd_growth)
    p = sub.add_parser("banded", parents=[common], help="banded-cut experiment")
    p.set_defaults(func=cmd_banded)
    p = sub.add_parser("verify", parents=[common], help="inequality and invariant suites")
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--pairs", type=int, default=200)
    p.add_argument("--n-max", dest="n_max", type=int, default=8)
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("graphon", parents=[common], help="build and transform step graphons")
    p.add_argument("--op", action="append", help="tri, band, corner, corner-sym, reflect, "
                   "normalize, refine:K (repeatable, applied in order)")
    p.add_argument("--double-diagonal", action="store_true")
    p.add_argument("--save", metavar="PATH", help="write the resulting graphon JSON")
    p.set_defaults(func=cmd_graphon)
    return parser


def dispatch(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("missing subcommand (norms, growth, verify, banded, graphon)")
        if args.cap < 1:
            raise UsageError("--cap must be >= 1")
        try:
            args.threads = resolve_threads(args.threads)
        except ValueError as exc:
            raise UsageError(f"--threads: {exc}") from None
        return args.func(args)
    except UsageError as exc:
        print(f"cutnorm-lab: error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
