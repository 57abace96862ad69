"""Monte Carlo harness: sample, colour, aggregate, and compare to the limits.

For each requested size the harness draws R trees on independent derived
seed streams, colours them, and aggregates the six per-tree fractions
(colour counts and I, M, N over n).  Records carry the limiting constants
of the family's regime and the absolute gaps for the colour fractions.

Replicates may run in worker processes (capped by the TRICOLOR_THREADS
environment variable, default: hardware concurrency); output is
byte-identical at any parallelism because every replicate owns a derived
seed and the reduction runs in replicate order.
"""

from __future__ import annotations

import io
import json
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Optional, Sequence

from .colouring import derived_stats, tricolour
from .limits import LimitConstants, limit_constants
from .sampler import SamplerConfig, replicate_seed, sample_conditioned
from .weights import WeightFamily, classify, family_label, feasible

__all__ = [
    "ExperimentConfig",
    "ExperimentRecord",
    "run_experiment",
    "records_to_csv",
    "records_to_json",
    "CSV_HEADER",
]

log = logging.getLogger(__name__)

CSV_HEADER = (
    "family,n,replicates,seed,"
    "mean_ng,sd_ng,mean_no,sd_no,mean_nr,sd_nr,"
    "mean_I,sd_I,mean_M,sd_M,mean_N,sd_N,"
    "lim_ng,lim_no,lim_nr,lim_I,lim_M,lim_N,"
    "gap_ng,gap_no,gap_nr"
)

_STAT_KEYS = ("ng", "no", "nr", "I", "M", "N")


@dataclass(frozen=True)
class ExperimentConfig:
    family: WeightFamily
    sizes: tuple[int, ...]
    replicates: int = 100
    seed: int = 0
    method: str = "auto"
    degree_cap: Optional[int] = None

    def __post_init__(self):
        if self.replicates < 1:
            raise ValueError("need at least one replicate")
        if not self.sizes:
            raise ValueError("need at least one size")


@dataclass(frozen=True)
class ExperimentRecord:
    """One aggregation row; sd fields are None when replicates == 1."""

    family: str
    n: int
    replicates: int
    seed: int
    mean_ng: float
    sd_ng: Optional[float]
    mean_no: float
    sd_no: Optional[float]
    mean_nr: float
    sd_nr: Optional[float]
    mean_I: float
    sd_I: Optional[float]
    mean_M: float
    sd_M: Optional[float]
    mean_N: float
    sd_N: Optional[float]
    lim_ng: float
    lim_no: float
    lim_nr: float
    lim_I: float
    lim_M: float
    lim_N: float
    gap_ng: float
    gap_no: float
    gap_nr: float


def _replicate_fracs(
    family: WeightFamily, n: int, method: str, cap: Optional[int], seed: int
) -> tuple[float, float, float, float, float, float]:
    """Colour-count and statistic fractions of one sampled tree."""
    tree = sample_conditioned(
        family, SamplerConfig(n=n, seed=seed, method=method, degree_cap=cap)
    )
    tc = tricolour(tree)
    ind, mat, nul = derived_stats(tc)
    inv = 1.0 / n
    return (tc.n_g * inv, tc.n_o * inv, tc.n_r * inv, ind * inv, mat * inv, nul * inv)


def _run_chunk(family, n, method, cap, seeds):
    return [_replicate_fracs(family, n, method, cap, s) for s in seeds]


def _worker_count(replicates: int) -> int:
    env = os.environ.get("TRICOLOR_THREADS")
    workers = os.cpu_count() or 1
    if env is not None:
        workers = min(workers, max(1, int(env)))
    return max(1, min(workers, replicates))


def _mean_sd(values: Sequence[float]) -> tuple[float, Optional[float]]:
    r = len(values)
    mean = math.fsum(values) / r
    if r == 1:
        return mean, None
    var = math.fsum((x - mean) ** 2 for x in values) / (r - 1)
    return mean, math.sqrt(var)


def _aggregate(
    family_str: str,
    n: int,
    seed: int,
    rows: list[tuple[float, ...]],
    lc: LimitConstants,
) -> ExperimentRecord:
    stats = {}
    for i, key in enumerate(_STAT_KEYS):
        mean, sd = _mean_sd([row[i] for row in rows])
        stats[f"mean_{key}"] = mean
        stats[f"sd_{key}"] = sd
    lims = {
        "lim_ng": lc.p_green,
        "lim_no": lc.p_orange,
        "lim_nr": lc.p_red,
        "lim_I": lc.lim_I,
        "lim_M": lc.lim_M,
        "lim_N": lc.lim_N,
    }
    gaps = {
        "gap_ng": abs(stats["mean_ng"] - lc.p_green),
        "gap_no": abs(stats["mean_no"] - lc.p_orange),
        "gap_nr": abs(stats["mean_nr"] - lc.p_red),
    }
    return ExperimentRecord(
        family=family_str, n=n, replicates=len(rows), seed=seed,
        **stats, **lims, **gaps,
    )


def run_experiment(cfg: ExperimentConfig) -> list[ExperimentRecord]:
    """Aggregate R coloured trees per size; skips infeasible sizes with a warning."""
    family = cfg.family
    label = family_label(family)
    lc = limit_constants(classify(family))

    records = []
    for n in cfg.sizes:
        if not feasible(family, n, cfg.degree_cap):
            log.warning("size %d is infeasible for %s; skipping", n, label)
            continue
        seeds = [replicate_seed(cfg.seed, n, i) for i in range(cfg.replicates)]
        workers = _worker_count(cfg.replicates)
        if workers <= 1:
            rows = _run_chunk(family, n, cfg.method, cfg.degree_cap, seeds)
        else:
            # warm the per-(family, n) tables in the parent so forked
            # workers inherit them read-only instead of rebuilding
            _replicate_fracs(family, n, cfg.method, cfg.degree_cap, seeds[0])
            chunk_size = max(1, math.ceil(cfg.replicates / (4 * workers)))
            chunks = [seeds[i : i + chunk_size] for i in range(0, len(seeds), chunk_size)]
            with ProcessPoolExecutor(max_workers=workers) as pool:
                futures = [
                    pool.submit(_run_chunk, family, n, cfg.method, cfg.degree_cap, c)
                    for c in chunks
                ]
                rows = [row for fut in futures for row in fut.result()]
        records.append(_aggregate(label, n, cfg.seed, rows, lc))
    return records


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def records_to_csv(records: Sequence[ExperimentRecord]) -> str:
    out = io.StringIO()
    out.write(CSV_HEADER + "\n")
    for rec in records:
        row = asdict(rec)
        out.write(",".join(_csv_cell(row[col]) for col in CSV_HEADER.split(",")) + "\n")
    return out.getvalue()


def records_to_json(records: Sequence[ExperimentRecord]) -> str:
    return json.dumps([asdict(rec) for rec in records], indent=2) + "\n"
