"""Fixed-point solver and limiting colour fractions."""

import math

import numpy as np
import pytest

from tricotree import (
    BracketFailure,
    Explicit,
    Factorial,
    FullBinary,
    Geometric,
    PowerLaw,
    Poisson,
    classify,
    colour_limits,
    limit_constants,
    solve_q,
    stat_limits,
)

GOLDEN_Q_GEOMETRIC = (math.sqrt(5.0) - 1.0) / 2.0  # root of q^2 + q - 1
GOLDEN_Q_BINARY = 2.0 - math.sqrt(2.0)  # root of q^2 - 4q + 2


def _poisson_q_fixed_point() -> float:
    # independent oracle: contraction q <- exp(-q) converges linearly
    q = 0.5
    for _ in range(200):
        q = math.exp(-q)
    return q


def test_solve_q_geometric_closed_form():
    q = solve_q(lambda t: 1.0 / (2.0 - t))
    assert abs(q - GOLDEN_Q_GEOMETRIC) <= 1e-10


def test_solve_q_binary_closed_form():
    q = solve_q(lambda t: 0.5 * (1.0 + t * t))
    assert abs(q - GOLDEN_Q_BINARY) <= 1e-10


def test_solve_q_poisson():
    q = solve_q(lambda t: math.exp(t - 1.0))
    assert abs(math.exp(-q) - q) <= 1e-12
    assert abs(q - _poisson_q_fixed_point()) <= 1e-12
    assert abs(q - 0.5671432904) <= 1e-9


def test_solve_q_bracket_failure():
    with pytest.raises(BracketFailure):
        solve_q(lambda t: 1.0)  # all mass at zero: G(0) - 1 = 0, no bracket
    with pytest.raises(BracketFailure):
        solve_q(lambda t: -t)


def test_solve_q_stable_under_tail_truncation():
    info = classify(Poisson(1.0))
    q_exact = solve_q(info.G)
    probs = info.pi.probs(20)  # tail mass beyond 20 is ~1e-20 < 1e-10
    probs = probs / probs.sum()

    def g_truncated(t: float) -> float:
        return float(np.polynomial.polynomial.polyval(t, probs))

    assert abs(solve_q(g_truncated) - q_exact) < 1e-8


def test_poisson_colour_limits_cross_check():
    info = classify(Poisson(1.0))
    q = solve_q(info.G)
    lc = colour_limits(info.G, info.Gprime, q, info.regime)
    # for this family G'(1-q) = e^(-q) = q, so the fractions simplify
    assert lc.p_green == pytest.approx((1.0 - 2.0 * q * q) / (1.0 + q), abs=1e-12)
    assert lc.p_orange == pytest.approx(2.0 * q * q / (1.0 + q), abs=1e-12)
    assert lc.p_red == pytest.approx(q / (1.0 + q), abs=1e-12)
    assert lc.p_green == pytest.approx(0.22761, abs=5e-6)
    assert lc.p_orange == pytest.approx(0.41049, abs=5e-6)
    assert lc.p_red == pytest.approx(0.36190, abs=5e-6)


def test_geometric_red_limit_is_inverse_root_five():
    lc = limit_constants(classify(Geometric(0.5)))
    assert lc.p_red == pytest.approx(1.0 / math.sqrt(5.0), abs=1e-12)
    assert lc.q == pytest.approx(GOLDEN_Q_GEOMETRIC, abs=1e-10)


@pytest.mark.parametrize(
    "fam",
    [Poisson(1.0), Geometric(0.5), FullBinary(1.0, 1.0), PowerLaw(1.5),
     Explicit((1.0, 0.0, 1.0)), Explicit((1.0, 2.0, 0.0, 1.0))],
)
def test_limit_constants_identities(fam):
    info = classify(fam)
    lc = limit_constants(info)
    d = info.Gprime(1.0 - lc.q)
    assert lc.p_green + lc.p_orange + lc.p_red == pytest.approx(1.0, abs=1e-12)
    # direct identities against the defining formulas
    assert lc.p_red * (1.0 + d) == pytest.approx(lc.q, abs=1e-12)
    assert lc.p_orange * (1.0 + d) == pytest.approx(2.0 * lc.q * d, abs=1e-12)
    # the companion fixed point satisfies q_tilde = (1 - q_tilde) G'(1 - q)
    assert lc.q_tilde == pytest.approx((1.0 - lc.q_tilde) * d, abs=1e-12)
    # consistency chain: colour fractions reproduce the statistic limits
    assert lc.p_red + lc.p_orange / 2.0 == pytest.approx(lc.lim_I, abs=1e-10)
    assert lc.p_green + lc.p_orange / 2.0 == pytest.approx(lc.lim_M, abs=1e-10)
    assert lc.p_red - lc.p_green == pytest.approx(lc.lim_N, abs=1e-10)
    assert stat_limits(lc) == (lc.q, 1.0 - lc.q, 2.0 * lc.q - 1.0)
    assert abs(info.G(1.0 - lc.q) - lc.q) <= 1e-12


def test_regime3_limits():
    lc = limit_constants(classify(Factorial(1.0)))
    assert (lc.p_green, lc.p_orange, lc.p_red) == (0.0, 0.0, 1.0)
    assert stat_limits(lc) == (1.0, 0.0, 1.0)
    assert lc.q == 1.0 and lc.q_tilde == 0.0
    assert lc.regime == 3


def test_stat_limits_symmetry_point():
    lc = colour_limits(lambda t: 0.5 + 0.5 * t * t, lambda t: t, 0.5, 1)
    # hypothetical q = 1/2 makes the nullity limit vanish
    assert stat_limits(lc)[2] == 0.0
