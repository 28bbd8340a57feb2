"""Random-graph study: how many pairs each precursor flags, and how many are real.

For every unordered pair in a suite of G(n, p) graphs the harness records
whether the pair survives the count, degree-sequence and EVC-sequence stages,
then confirms EVC-flagged pairs with the exact matcher. A flagged pair that the
matcher refutes is a false positive of that stage.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import time
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Sequence

from .generator import p_key, suite
from .graph import Graph, write_graph
from .invariants import DEFAULT_TOLERANCE, SignatureCache, Verdict, compare
from .matcher import is_isomorphic
from .spectral import DEFAULT_CONFIG, ConvergenceConfig, SpectralError, power_iteration

log = logging.getLogger(__name__)

DEFAULT_MASTER_SEED = 1959
DEFAULT_N = 10
DEFAULT_SUITE_SIZE = 1000
DEFAULT_P_LIST = (0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8)


class SuiteComputationError(SpectralError):
    def __init__(self, p_link: float, index: int, cause: Exception):
        super().__init__(f"suite p_link={p_link}: graph {index}: {cause}")
        self.p_link = p_link
        self.index = index


@dataclass
class SuiteReport:
    n: int
    p_link: float
    suite_size: int
    pairs_total: int = 0
    count_matched: int = 0
    degree_flagged: int = 0
    evc_flagged: int = 0
    confirmed: int = 0
    degree_false_positives: int = 0
    evc_false_positives: int = 0
    evc_computations: int = 0
    wall_time: float | None = None
    # EVC-flagged pairs refuted by the exact matcher, as [i, j] suite indices.
    counterexamples: list[list[int]] = field(default_factory=list)
    # Set only with confirm_all_degree: EVC-rejected pairs found isomorphic.
    missed_isomorphic: int | None = None

    def check_chain(self) -> None:
        """Raise AssertionError unless the containment chain and derived fields hold."""
        s = self.suite_size
        assert self.pairs_total == s * (s - 1) // 2
        assert 0 <= self.confirmed <= self.evc_flagged <= self.degree_flagged
        assert self.degree_flagged <= self.count_matched <= self.pairs_total
        assert self.degree_false_positives == self.degree_flagged - self.confirmed
        assert self.evc_false_positives == self.evc_flagged - self.confirmed
        assert len(self.counterexamples) == self.evc_false_positives


@dataclass
class ExperimentReport:
    master_seed: int
    config: dict
    suites: list[SuiteReport]


def _pairs_within(counter: Counter) -> int:
    return sum(c * (c - 1) // 2 for c in counter.values())


def _evc_job(args):
    index, g, cfg = args
    try:
        return index, power_iteration(g, cfg), None
    except SpectralError as exc:
        return index, None, exc


def evaluate_suite(
    graphs: Sequence[Graph],
    n: int,
    p_link: float,
    cfg: ConvergenceConfig = DEFAULT_CONFIG,
    tol: float = DEFAULT_TOLERANCE,
    workers: int = 1,
    confirm_all_degree: bool = False,
    artifact_dir: Path | str | None = None,
) -> SuiteReport:
    """Classify every unordered pair of ``graphs`` and count the outcomes."""
    start = time.perf_counter()
    size = len(graphs)
    report = SuiteReport(n=n, p_link=p_link, suite_size=size, pairs_total=size * (size - 1) // 2)
    cache = SignatureCache(cfg)
    sigs = [cache.basic(g, key=i) for i, g in enumerate(graphs)]

    report.count_matched = _pairs_within(Counter((s.n, s.m) for s in sigs))
    groups: dict[tuple[int, ...], list[int]] = defaultdict(list)
    for i, s in enumerate(sigs):
        groups[s.degree_seq].append(i)
    report.degree_flagged = sum(len(g) * (len(g) - 1) // 2 for g in groups.values())

    # Only graphs sharing a degree sequence with another graph reach the EVC stage.
    need = [i for members in groups.values() if len(members) > 1 for i in members if sigs[i].m > 0]
    need.sort()
    jobs = [(i, graphs[i], cfg) for i in need]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_evc_job, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        results = [_evc_job(j) for j in jobs]
    for i, evc, exc in results:
        if exc is not None:
            raise SuiteComputationError(p_link, i, exc) from exc
        cache.put(graphs[i], evc, key=i)

    missed = 0
    for members in groups.values():
        for a_pos, i in enumerate(members):
            for j in members[a_pos + 1 :]:
                verdict = compare(graphs[i], graphs[j], cfg, tol, cache, keys=(i, j))
                if verdict.passed:
                    report.evc_flagged += 1
                    match = is_isomorphic(graphs[i], graphs[j], "evc-classes", mapping=verdict.mapping)
                    if match.isomorphic:
                        report.confirmed += 1
                    else:
                        report.counterexamples.append([i, j])
                        _dump_counterexample(artifact_dir, p_link, i, j, graphs)
                elif confirm_all_degree and verdict.verdict is Verdict.REJECTED_BY_EVC_SEQ:
                    if is_isomorphic(graphs[i], graphs[j], "degree").isomorphic:
                        missed += 1
                        log.warning("p=%s: pair (%d, %d) isomorphic but rejected by EVC stage", p_link, i, j)

    report.counterexamples.sort()
    report.degree_false_positives = report.degree_flagged - report.confirmed
    report.evc_false_positives = report.evc_flagged - report.confirmed
    report.evc_computations = cache.evc_computations
    report.missed_isomorphic = missed if confirm_all_degree else None
    report.wall_time = time.perf_counter() - start
    report.check_chain()
    return report


def _dump_counterexample(artifact_dir, p_link: float, i: int, j: int, graphs: Sequence[Graph]) -> None:
    log.warning("p=%s: EVC false positive between graphs %d and %d", p_link, i, j)
    if artifact_dir is None:
        return
    out = Path(artifact_dir)
    out.mkdir(parents=True, exist_ok=True)
    stem = f"evc_fp_p{p_key(p_link):04d}_{i:05d}_{j:05d}"
    write_graph(graphs[i], out / f"{stem}_a.txt")
    write_graph(graphs[j], out / f"{stem}_b.txt")


def run_suite_experiment(
    n: int,
    p_link: float,
    suite_size: int,
    master_seed: int = DEFAULT_MASTER_SEED,
    cfg: ConvergenceConfig = DEFAULT_CONFIG,
    tol: float = DEFAULT_TOLERANCE,
    workers: int = 1,
    confirm_all_degree: bool = False,
    artifact_dir: Path | str | None = None,
) -> SuiteReport:
    if suite_size < 0:
        raise ValueError("suite_size must be non-negative")
    graphs = suite(n, p_link, suite_size, master_seed)
    return evaluate_suite(graphs, n, p_link, cfg, tol, workers, confirm_all_degree, artifact_dir)


def run_full_experiment(
    n: int = DEFAULT_N,
    p_list: Sequence[float] = DEFAULT_P_LIST,
    suite_size: int = DEFAULT_SUITE_SIZE,
    master_seed: int = DEFAULT_MASTER_SEED,
    cfg: ConvergenceConfig = DEFAULT_CONFIG,
    tol: float = DEFAULT_TOLERANCE,
    workers: int = 1,
    confirm_all_degree: bool = False,
    artifact_dir: Path | str | None = None,
) -> ExperimentReport:
    p_list = [float(p) for p in p_list]
    if not p_list:
        raise ValueError("p_list must not be empty")
    if any(not 0.0 <= p <= 1.0 for p in p_list):
        raise ValueError("every p_link must lie in [0, 1]")
    if any(b <= a for a, b in zip(p_list, p_list[1:])):
        raise ValueError("p_list must be strictly increasing")
    suites = []
    for p in p_list:
        rep = run_suite_experiment(n, p, suite_size, master_seed, cfg, tol, workers, confirm_all_degree, artifact_dir)
        log.info("p=%.2f: degree=%d evc=%d confirmed=%d", p, rep.degree_flagged, rep.evc_flagged, rep.confirmed)
        suites.append(rep)
    config = {
        "n": n,
        "p_list": p_list,
        "suite_size": suite_size,
        "tol": tol,
        "norm_tolerance": cfg.norm_tolerance,
        "vector_tolerance": cfg.vector_tolerance,
        "max_iterations": cfg.max_iterations,
        "confirm_all_degree": confirm_all_degree,
    }
    return ExperimentReport(master_seed=master_seed, config=config, suites=suites)


# -- rendering ---------------------------------------------------------------

TABLE_COLUMNS = (
    ("p_link", "p_link"),
    ("pairs", "pairs_total"),
    ("count", "count_matched"),
    ("degree", "degree_flagged"),
    ("evc", "evc_flagged"),
    ("confirmed", "confirmed"),
    ("deg_fp", "degree_false_positives"),
    ("evc_fp", "evc_false_positives"),
    ("evc_runs", "evc_computations"),
)


def _suite_dict(s: SuiteReport, include_timing: bool) -> dict:
    d = asdict(s)
    if not include_timing:
        d["wall_time"] = None
    return d


def render_report(report: ExperimentReport, fmt: str = "json", include_timing: bool = False) -> str:
    """Render as ``json``, ``table`` or ``csv``.

    Wall-clock time is nondeterministic, so it is emitted as null unless
    ``include_timing`` is set; without it equal inputs give byte-identical output.
    """
    if fmt == "json":
        doc = {
            "master_seed": report.master_seed,
            "config": report.config,
            "suites": [_suite_dict(s, include_timing) for s in report.suites],
        }
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        names = [f for f in SuiteReport.__dataclass_fields__ if f != "counterexamples"]
        writer = csv.DictWriter(buf, fieldnames=names, lineterminator="\n", extrasaction="ignore")
        writer.writeheader()
        for s in report.suites:
            writer.writerow(_suite_dict(s, include_timing))
        return buf.getvalue()
    if fmt == "table":
        header = [c for c, _ in TABLE_COLUMNS]
        if include_timing:
            header.append("time_s")
        rows = []
        for s in report.suites:
            row = [f"{s.p_link:.2f}"] + [str(getattr(s, f)) for _, f in TABLE_COLUMNS[1:]]
            if include_timing:
                row.append(f"{s.wall_time:.2f}" if s.wall_time is not None else "-")
            rows.append(row)
        widths = [max(len(r[k]) for r in [header, *rows]) for k in range(len(header))]
        lines = [f"n={report.config.get('n')} suite_size={report.config.get('suite_size')} master_seed={report.master_seed}"]
        lines.append("  ".join(h.rjust(w) for h, w in zip(header, widths)))
        lines.append("  ".join("-" * w for w in widths))
        lines.extend("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in rows)
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}; expected json, table or csv")


def report_from_json(text: str) -> ExperimentReport:
    doc = json.loads(text)
    suites = [SuiteReport(**s) for s in doc["suites"]]
    return ExperimentReport(master_seed=doc["master_seed"], config=doc["config"], suites=suites)
