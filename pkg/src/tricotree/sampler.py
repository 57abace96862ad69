"""Exact samplers for simply generated trees with a fixed vertex count.

Two routes produce a tree whose probability is proportional to the product
of its outdegree weights:

* rejection (regimes 1 and 2): draw n i.i.d. walk steps from the tilted
  offspring law shifted down by one, accept when they sum to -1, and
  rotate the accepted bridge into the unique excursion (cycle lemma);
* exact DP (every regime, the only route in regime 3): sample the
  outdegree sequence directly from its conditional law via a
  boxes-remaining / sum-remaining table in log domain, then rotate.

Both routes are deterministic functions of (family, config): all
randomness comes from a PCG64 generator seeded with ``config.seed``.
Replicate streams are derived with the published mixing function
:func:`mix64` so results never depend on scheduling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import (
    BadSum,
    Infeasible,
    NumericalFailure,
    NumericalUnderflow,
    RejectionBudgetExceeded,
    TooLarge,
)
from .tree import PlaneTree, tree_from_outdegrees
from .weights import WeightFamily, classify, feasible, log_weights, span

__all__ = [
    "SamplerConfig",
    "mix64",
    "replicate_seed",
    "cycle_shift_to_excursion",
    "sample_conditioned",
    "sample_degree_sequence_dp",
]

_DP_SIZE_CAP = 20000  # the table has O(n^2) states; refuse beyond desk scale
_MASK64 = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def mix64(seed: int, index: int) -> int:
    """Derive a decorrelated 64-bit stream seed from (seed, index).

    mix64(a, b) = splitmix64(splitmix64(a) XOR splitmix64(b)), where
    splitmix64 is the standard finalizer with constants 0x9E3779B97F4A7C15,
    0xBF58476D1CE4E5B9 and 0x94D049BB133111EB.
    """
    return _splitmix64(_splitmix64(seed & _MASK64) ^ _splitmix64(index & _MASK64))


def replicate_seed(master_seed: int, n: int, index: int) -> int:
    """Stream seed for replicate ``index`` at size ``n``: mix64(mix64(master, n), index)."""
    return mix64(mix64(master_seed, n), index)


@dataclass(frozen=True)
class SamplerConfig:
    """Target size, stream seed, method choice and budgets for one draw.

    ``method`` is one of "auto", "rejection", "dp"; auto picks rejection
    whenever the tilted law exists (regimes 1 and 2) and the exact DP
    otherwise.  ``max_rejection_tries`` defaults to 10 * n * span and
    ``degree_cap`` to n - 1 (no effective restriction).
    """

    n: int
    seed: int = 0
    method: str = "auto"
    max_rejection_tries: Optional[int] = None
    degree_cap: Optional[int] = None


def cycle_shift_to_excursion(steps: Sequence[int]) -> list[int]:
    """The unique cyclic rotation whose partial sums stay >= 0 before the end.

    Input steps must each be >= -1 and sum to -1; the rotation starting
    right after the first minimum of the partial sums is the excursion
    (cycle lemma), and it is unique.
    """
    arr = np.asarray(steps, dtype=np.int64)
    if arr.size == 0 or arr.min() < -1:
        raise BadSum("steps must be >= -1 and nonempty")
    if int(arr.sum()) != -1:
        raise BadSum(f"steps sum to {int(arr.sum())}, expected -1")
    sums = np.cumsum(arr)
    cut = int(np.argmin(sums)) + 1  # first minimum; argmin takes the first
    return arr[cut:].tolist() + arr[:cut].tolist()


# --- step samplers for the rejection route ----------------------------------


class _AliasTable:
    """Vose alias method over outdegrees 0..cap; O(1) per draw after O(cap) setup."""

    def __init__(self, probs: np.ndarray):
        p = np.asarray(probs, dtype=np.float64)
        total = p.sum()
        if not total > 0:
            raise NumericalFailure("alias table needs positive total mass")
        p = p / total
        k = len(p)
        self.k = k
        self.prob = np.ones(k)
        self.alias = np.arange(k)
        scaled = p * k
        small = [i for i in range(k) if scaled[i] < 1.0]
        large = [i for i in range(k) if scaled[i] >= 1.0]
        while small and large:
            s = small.pop()
            g = large.pop()
            self.prob[s] = scaled[s]
            self.alias[s] = g
            scaled[g] = scaled[g] + scaled[s] - 1.0
            (small if scaled[g] < 1.0 else large).append(g)

    def sample(self, rng: np.random.Generator, size) -> np.ndarray:
        idx = rng.integers(0, self.k, size=size)
        flip = rng.random(size=size) >= self.prob[idx]
        return np.where(flip, self.alias[idx], idx)


_alias_cache: dict = {}


def _step_sampler(w: WeightFamily, cap: int):
    """Vectorised sampler of walk steps (offspring count minus one).

    Closed-form families draw from numpy generators directly; the generic
    path renormalises the tilted law truncated at ``cap``, which leaves
    the sum-conditioned law untouched because a tree with n vertices
    cannot contain an outdegree above n - 1.
    """
    info = classify(w)
    if info.regime == 3:
        raise ValueError("rejection sampling needs a tilted offspring law (regimes 1-2)")
    kind = info.pi.kind
    if kind == "poisson-1":
        return lambda rng, size: rng.poisson(1.0, size=size) - 1
    if kind == "uniform-geometric":
        return lambda rng, size: rng.geometric(0.5, size=size) - 2
    if kind == "binary-half":
        return lambda rng, size: 2 * rng.integers(0, 2, size=size) - 1
    key = (w, cap)
    table = _alias_cache.get(key)
    if table is None:
        table = _AliasTable(info.pi.probs(cap))
        _alias_cache[key] = table
    return lambda rng, size: table.sample(rng, size) - 1


# --- conditioned sampling ----------------------------------------------------


def sample_conditioned(w: WeightFamily, cfg: SamplerConfig) -> PlaneTree:
    """Draw one tree with cfg.n vertices, probability proportional to its weight."""
    n = cfg.n
    if n < 1:
        raise ValueError("tree size must be at least 1")
    cap = n - 1 if cfg.degree_cap is None else min(cfg.degree_cap, n - 1)
    if not feasible(w, n, cap):
        raise Infeasible(f"no tree with {n} vertices exists for {w}")

    method = cfg.method
    if method == "auto":
        try:
            method = "rejection" if classify(w).regime in (1, 2) else "dp"
        except NumericalFailure:
            method = "dp"  # degenerate families the walk route cannot serve
    if method == "dp":
        degrees = sample_degree_sequence_dp(w, n, cap, cfg.seed)
        return _tree_from_degrees(degrees)
    if method != "rejection":
        raise ValueError(f"unknown sampling method {cfg.method!r}")

    if n == 1:
        return tree_from_outdegrees([0])
    steps_fn = _step_sampler(w, cap)
    budget = cfg.max_rejection_tries
    if budget is None:
        budget = 10 * n * span(w)
    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    remaining = budget
    while remaining > 0:
        batch = min(64, remaining)
        mat = steps_fn(rng, (batch, n))
        hits = np.nonzero(mat.sum(axis=1) == -1)[0]
        if hits.size:
            return _tree_from_degrees((mat[hits[0]] + 1).tolist())
        remaining -= batch
    raise RejectionBudgetExceeded(
        f"no walk of length {n} summed to -1 in {budget} tries; "
        "heavy-tailed families may need method='dp'"
    )


def _tree_from_degrees(degrees: Sequence[int]) -> PlaneTree:
    shifted = cycle_shift_to_excursion([d - 1 for d in degrees])
    return tree_from_outdegrees([x + 1 for x in shifted])


# --- exact degree-sequence sampler (all regimes) ------------------------------

_dp_cache: dict = {}


def _dp_table(w: WeightFamily, n: int, cap: int):
    """(supported degrees, their log weights, log partition table).

    ``table[b, s]`` is the log weight sum over ways to fill b boxes with
    supported degrees totalling s, for b = 0..n and s = 0..n-1.  Built
    once per (family, n, cap) and shared read-only afterwards.
    """
    key = (w, n, cap)
    cached = _dp_cache.get(key)
    if cached is not None:
        return cached

    lw = log_weights(w, cap)
    ks = np.nonzero(np.isfinite(lw))[0]
    lwk = lw[ks]
    s_range = n  # remaining sums 0..n-1
    table = np.full((n + 1, s_range), -np.inf)
    table[0, 0] = 0.0
    buf = np.empty((len(ks), s_range))
    with np.errstate(invalid="ignore", over="ignore"):
        for b in range(1, n + 1):
            prev = table[b - 1]
            buf.fill(-np.inf)
            for i, k in enumerate(ks):
                if k < s_range:
                    buf[i, k:] = lwk[i] + prev[: s_range - k]
            high = buf.max(axis=0)
            out = high + np.log(np.exp(buf - high).sum(axis=0))
            out[~np.isfinite(high)] = -np.inf
            table[b] = out

    total = table[n, n - 1]
    if math.isnan(total) or total == math.inf:
        raise NumericalUnderflow(
            "partition value left the float range; reduce the degree cap or size"
        )
    result = (ks, lwk, table)
    _dp_cache[key] = result
    return result


def sample_degree_sequence_dp(
    w: WeightFamily, n: int, cap: Optional[int] = None, seed: int = 0
) -> list[int]:
    """Sample n outdegrees summing to n - 1 with probability prop. to the weights.

    Backward table over (boxes remaining, sum remaining), then forward
    sequential draws; exact for every weight family including zero-radius
    ones, up to float rounding in the log-domain arithmetic.
    """
    if n < 1:
        raise ValueError("tree size must be at least 1")
    if n > _DP_SIZE_CAP:
        raise TooLarge(
            f"the DP table is O(n^2); {n} exceeds the {_DP_SIZE_CAP} vertex guard"
        )
    cap = n - 1 if cap is None else min(cap, n - 1)
    if not feasible(w, n, cap):
        raise Infeasible(f"no degree sequence of length {n} exists for {w}")
    ks, lwk, table = _dp_table(w, n, cap)

    rng = np.random.Generator(np.random.PCG64(seed))
    degrees = []
    r = n - 1
    for j in range(n):
        b = n - j - 1  # boxes left after this one
        usable = ks <= r
        cand = ks[usable]
        logp = lwk[usable] + table[b, r - cand] - table[b + 1, r]
        probs = np.exp(logp)
        cum = np.cumsum(probs)
        if not cum[-1] > 0:
            raise NumericalUnderflow(f"no admissible degree at box {j}, remainder {r}")
        pick = int(np.searchsorted(cum, rng.random() * cum[-1], side="right"))
        d = int(cand[min(pick, len(cand) - 1)])
        degrees.append(d)
        r -= d
    if r != 0:
        raise NumericalUnderflow("degree draws failed to exhaust the target sum")
    return degrees
