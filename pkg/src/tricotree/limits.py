"""Limiting colour fractions and derived statistics for large random trees.

For an offspring generating function G, the probability q that the root of
the unconditioned branching tree is red solves q = G(1 - q).  The three
limiting colour fractions follow from q and G'(1 - q); the rescaled
independence number, matching number and nullity converge to q, 1 - q and
2q - 1.  In regime 3 (zero radius of convergence) the tree condenses into
a near-star and the fractions degenerate to (0, 0, 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import BracketFailure
from .weights import RegimeInfo

__all__ = ["LimitConstants", "solve_q", "colour_limits", "stat_limits", "limit_constants"]

_Q_TOL = 1e-12


@dataclass(frozen=True)
class LimitConstants:
    """Fixed point q, its companion q_tilde, colour fractions, and limits.

    Invariants (checked in the test suite): the colour fractions sum to 1;
    lim_I = p_red + p_orange / 2, lim_M = p_green + p_orange / 2 and
    lim_N = p_red - p_green; in regimes 1 and 2 these equal q, 1 - q and
    2q - 1.  Regime 3 carries q = 1 and fractions (0, 0, 1).
    """

    q: float
    q_tilde: float
    p_green: float
    p_orange: float
    p_red: float
    lim_I: float
    lim_M: float
    lim_N: float
    regime: int


def solve_q(G: Callable[[float], float]) -> float:
    """Unique root of G(1 - q) = q in [0, 1], by bisection.

    G must be a probability generating function with G(1) = 1 and mass at
    zero in (0, 1): then f(q) = G(1 - q) - q decreases from 1 to G(0) - 1
    and the bracket is guaranteed.  Converges to |G(1 - q) - q| <= 1e-12.
    """
    f0 = G(1.0)
    f1 = G(0.0) - 1.0
    if not (f0 > 0.0 and f1 < 0.0):
        raise BracketFailure(
            f"no sign change: f(0) = {f0}, f(1) = {f1}; G is not a probability pgf"
        )
    lo, hi = 0.0, 1.0
    mid = 0.5
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        f = G(1.0 - mid) - mid
        if abs(f) <= _Q_TOL:
            return mid
        if f > 0.0:
            lo = mid
        else:
            hi = mid
    return mid


def colour_limits(
    G: Callable[[float], float] | None,
    Gprime: Callable[[float], float] | None,
    q: float,
    regime: int,
) -> LimitConstants:
    """Limiting green/orange/red fractions from the fixed point q.

    Regimes 1 and 2 share the same formulas in terms of d = G'(1 - q):
    red q/(1+d), orange 2qd/(1+d), green (1-q+(1-2q)d)/(1+d), and
    q_tilde = d/(1+d), the red probability of the cut upward component.
    Regime 3 is the degenerate (0, 0, 1) point with q = 1.
    """
    if regime == 3:
        return LimitConstants(
            q=1.0, q_tilde=0.0, p_green=0.0, p_orange=0.0, p_red=1.0,
            lim_I=1.0, lim_M=0.0, lim_N=1.0, regime=3,
        )
    d = Gprime(1.0 - q)
    denom = 1.0 + d
    p_red = q / denom
    p_orange = 2.0 * q * d / denom
    p_green = (1.0 - q + (1.0 - 2.0 * q) * d) / denom
    return LimitConstants(
        q=q,
        q_tilde=d / denom,
        p_green=p_green,
        p_orange=p_orange,
        p_red=p_red,
        lim_I=q,
        lim_M=1.0 - q,
        lim_N=2.0 * q - 1.0,
        regime=regime,
    )


def stat_limits(lc: LimitConstants) -> tuple[float, float, float]:
    """(lim I/n, lim M/n, lim N/n): (q, 1-q, 2q-1), or (1, 0, 1) in regime 3."""
    return (lc.lim_I, lc.lim_M, lc.lim_N)


def limit_constants(info: RegimeInfo) -> LimitConstants:
    """Solve the fixed point for a classified family and fill all constants."""
    if info.regime == 3:
        return colour_limits(None, None, 1.0, 3)
    q = solve_q(info.G)
    return colour_limits(info.G, info.Gprime, q, info.regime)
