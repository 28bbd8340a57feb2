"""Command-line entry point: ``evciso {gen,evc,check,simulate}``.

Exit codes: 0 success / isomorphic, 1 not isomorphic (``check``),
2 usage or input error, 3 computation error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .experiment import (
    DEFAULT_MASTER_SEED,
    DEFAULT_N,
    DEFAULT_P_LIST,
    DEFAULT_SUITE_SIZE,
    render_report,
    run_full_experiment,
)
from .generator import suite
from .graph import GraphFormatError, read_graph, render_graph, write_graph
from .invariants import DEFAULT_TOLERANCE, SignatureCache, Verdict, compare
from .matcher import is_isomorphic
from .spectral import DEFAULT_CONFIG, ConvergenceConfig, SpectralError, evc_sequence, power_iteration

EXIT_OK = 0
EXIT_NOT_ISOMORPHIC = 1
EXIT_USAGE = 2
EXIT_COMPUTATION = 3

STAGES = (
    ("counts", Verdict.REJECTED_BY_COUNTS),
    ("degree", Verdict.REJECTED_BY_DEGREE_SEQ),
    ("evc", Verdict.REJECTED_BY_EVC_SEQ),
)


class UsageError(Exception):
    pass


def _fmt_seq(values, digits: int) -> str:
    return "[" + ", ".join(f"{x:.{digits}f}" for x in values) + "]"


def _config(args) -> ConvergenceConfig:
    return ConvergenceConfig(
        norm_tolerance=DEFAULT_CONFIG.norm_tolerance,
        vector_tolerance=DEFAULT_CONFIG.vector_tolerance,
        max_iterations=args.max_iters,
    )


def _p_list(text: str) -> list[float]:
    try:
        values = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty p-list")
    return values


def cmd_gen(args, out) -> int:
    if args.count != 1 and args.out_dir is None:
        raise UsageError("--out-dir is required when --count is not 1")
    graphs = suite(args.n, args.p, args.count, args.seed)
    if args.out_dir is None:
        out.write(render_graph(graphs[0]))
        return EXIT_OK
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for k, g in enumerate(graphs):
        write_graph(g, out_dir / f"graph_{k:05d}.txt")
    out.write(f"wrote {len(graphs)} graphs to {out_dir}\n")
    return EXIT_OK


def cmd_evc(args, out) -> int:
    g = read_graph(args.input)
    res = power_iteration(g, _config(args))
    d = args.precision
    out.write(f"n={g.n} m={g.m}\n")
    out.write("vertex  evc\n")
    for v, x in enumerate(res.values):
        out.write(f"{v:>6}  {x:.{d}f}\n")
    out.write(f"sorted: {_fmt_seq(evc_sequence(res), d)}\n")
    out.write(f"spectral_radius: {res.spectral_radius:.{d}f}\n")
    out.write(f"iterations: {res.iterations}\n")
    out.write(f"used_shift: {str(res.used_shift).lower()}\n")
    return EXIT_OK


def cmd_check(args, out) -> int:
    g1, g2 = read_graph(args.a), read_graph(args.b)
    cfg = _config(args)
    d = args.precision
    cache = SignatureCache(cfg)
    verdict = compare(g1, g2, cfg, args.tol, cache)

    out.write(f"A: {args.a} (n={g1.n}, m={g1.m})\n")
    out.write(f"B: {args.b} (n={g2.n}, m={g2.m})\n")
    failed = False
    for name, rejection in STAGES:
        if failed:
            status, detail = "skipped", ""
        elif verdict.verdict is rejection:
            status, detail, failed = "FAIL", verdict.detail, True
        elif name == "counts":
            status, detail = "pass", f"|V|,|E| = {g1.n},{g1.m}"
        elif name == "degree":
            status, detail = "pass", str(list(cache.basic(g1).degree_seq))
        elif verdict.verdict is Verdict.TRIVIALLY_ISOMORPHIC:
            status, detail = "pass", "both graphs edgeless"
        else:
            status, detail = "pass", _fmt_seq(cache.full(g1).evc_seq, d)
        out.write(f"{name:<8} {status:<8} {detail}\n".rstrip() + "\n")
    out.write(f"verdict  {verdict.verdict}\n")
    if not verdict.passed:
        return EXIT_NOT_ISOMORPHIC

    mapping = verdict.mapping
    if mapping.unique:
        pairs = " ".join(f"{a}->{b}" for a, b in enumerate(mapping.bijection()))
        out.write(f"mapping  unique: {pairs}\n")
    else:
        out.write(f"mapping  tie classes: {len(mapping.classes)}\n")
        for a, b in mapping.classes:
            out.write(f"         {{{', '.join(map(str, a))}}} <-> {{{', '.join(map(str, b))}}}\n")
    if args.filter_only:
        return EXIT_OK

    match = is_isomorphic(g1, g2, "evc-classes", mapping=mapping)
    if match.isomorphic:
        witness = " ".join(f"{u}->{v}" for u, v in enumerate(match.witness))
        out.write(f"exact    Confirmed (nodes explored: {match.nodes_explored})\n")
        out.write(f"witness  {witness}\n")
        return EXIT_OK
    out.write(f"exact    NotIsomorphic (nodes explored: {match.nodes_explored})\n")
    return EXIT_NOT_ISOMORPHIC


def cmd_simulate(args, out) -> int:
    report = run_full_experiment(
        n=args.n,
        p_list=args.p_list,
        suite_size=args.suite_size,
        master_seed=args.seed,
        cfg=_config(args),
        tol=args.tol,
        workers=args.workers,
        confirm_all_degree=args.confirm_all_degree,
        artifact_dir=args.artifact_dir,
    )
    text = render_report(report, args.format, include_timing=args.timing)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        out.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="evciso", description="EVC-sequence precursor screening for graph isomorphism")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def numeric(p, precision=True):
        p.add_argument("--tol", type=float, default=DEFAULT_TOLERANCE, help="EVC sequence tolerance (default 1e-6)")
        p.add_argument("--max-iters", type=int, default=DEFAULT_CONFIG.max_iterations)
        if precision:
            p.add_argument("--precision", type=int, default=5, help="decimal places in printed values")

    p = sub.add_parser("gen", help="write seeded G(n, p) graphs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=DEFAULT_MASTER_SEED)
    p.add_argument("--out-dir")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("evc", help="eigenvector centrality of one graph")
    p.add_argument("--input", required=True)
    numeric(p)
    p.set_defaults(func=cmd_evc)

    p = sub.add_parser("check", help="run the precursor pipeline on two graphs")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--filter-only", action="store_true", help="skip exact confirmation")
    numeric(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("simulate", help="random-graph study over a p_link sweep")
    p.add_argument("--n", type=int, default=DEFAULT_N)
    p.add_argument("--p-list", type=_p_list, default=list(DEFAULT_P_LIST))
    p.add_argument("--suite-size", type=int, default=DEFAULT_SUITE_SIZE)
    p.add_argument("--seed", type=int, default=DEFAULT_MASTER_SEED)
    p.add_argument("--format", choices=("json", "table", "csv"), default="json")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--confirm-all-degree", action="store_true")
    p.add_argument("--artifact-dir", help="where to dump EVC false-positive pairs")
    p.add_argument("--timing", action="store_true", help="include wall time (output no longer reproducible)")
    p.add_argument("--out", help="write the report to a file instead of stdout")
    numeric(p, precision=False)
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args, out)
    except (GraphFormatError, UsageError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        err.write(f"error: cannot access {exc.filename}: {exc.strerror}\n")
        return EXIT_USAGE
    except SpectralError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_COMPUTATION
    except ValueError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
