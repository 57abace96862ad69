"""Offspring weight sequences, regime classification, and the tilted law.

A weight family assigns a nonnegative weight ``w_k`` to every outdegree k,
with ``w_0 > 0`` and ``w_k > 0`` for at least one k >= 1.  The generating
series ``phi(x) = sum w_k x^k`` has radius of convergence ``rho``, and
``psi(x) = x phi'(x) / phi(x)`` is increasing on [0, rho).  Families fall
into three regimes:

* regime 1: rho > 0 and nu = lim_{x->rho} psi(x) >= 1; a unique tau with
  psi(tau) = 1 exists and the tilted law ``pi_k = tau^k w_k / phi(tau)``
  is critical (mean 1);
* regime 2: rho > 0 and 0 < nu < 1; tau = rho and the tilted law is
  subcritical (mean nu), the heavy-tail condensation setting;
* regime 3: rho = 0; no tilted law exists.

The tilted law drives the walk-based sampler and all the limit constants;
the exact-DP sampler only needs the raw weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Sequence, Union

import numpy as np
from scipy.special import gammaln, zeta

from .errors import NumericalFailure, OutOfRadius

__all__ = [
    "Poisson",
    "Geometric",
    "FullBinary",
    "PowerLaw",
    "Factorial",
    "Explicit",
    "WeightFamily",
    "OffspringLaw",
    "RegimeInfo",
    "span",
    "feasible",
    "classify",
    "tilt",
    "parse_family",
    "family_label",
    "FAMILY_GRAMMAR",
]

FAMILY_GRAMMAR = (
    "poisson:LAMBDA | geometric:P | binary:W0,W2 | powerlaw:THETA[,C] | "
    "factorial:ALPHA | explicit:w0,w1,...,wK"
)

_SERIES_TOL = 1e-12  # tail bound shared by normalisation and G evaluation


def _power_series(s: float, x: float, tol: float = _SERIES_TOL) -> float:
    """sum_{k>=1} k^(-s) x^k for 0 <= x < 1, truncated once the tail is < tol.

    Terms decrease by a ratio <= x, so the tail after K is bounded by
    term(K+1) / (1 - x).
    """
    if x == 0.0:
        return 0.0
    if not 0.0 < x < 1.0:
        raise OutOfRadius(f"series argument {x} outside [0, 1)")
    total = 0.0
    lo, hi = 1, 64
    while True:
        ks = np.arange(lo, hi + 1, dtype=np.float64)
        total += float(np.sum(ks ** (-s) * x ** ks))
        tail = (hi + 1.0) ** (-s) * x ** (hi + 1) / (1.0 - x)
        if tail < tol:
            return total
        lo, hi = hi + 1, hi * 2
        if hi > 1 << 34:
            raise NumericalFailure("power series truncation did not converge")


class _FamilyBase:
    """Shared evaluator plumbing; subclasses provide phi and phi_prime."""

    def psi(self, x: float) -> float:
        if x == 0.0:
            return 0.0
        return x * self.phi_prime(x) / self.phi(x)

    def __str__(self) -> str:
        return family_label(self)


def _fmt(x: float) -> str:
    # shortest exact representation; integers drop the trailing ".0"
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


@dataclass(frozen=True)
class Poisson(_FamilyBase):
    """w_k = lam^k / k!; phi(x) = e^(lam x) up to a constant factor."""

    lam: float

    def __post_init__(self):
        if not self.lam > 0:
            raise ValueError("poisson rate must be positive")

    rho = math.inf

    def phi(self, x: float) -> float:
        return math.exp(self.lam * x)

    def phi_prime(self, x: float) -> float:
        return self.lam * math.exp(self.lam * x)


@dataclass(frozen=True)
class Geometric(_FamilyBase):
    """w_k = p^k; phi(x) = 1 / (1 - p x) for x < 1/p."""

    p: float

    def __post_init__(self):
        if not 0.0 < self.p < 1.0:
            raise ValueError("geometric ratio must lie in (0, 1)")

    @property
    def rho(self) -> float:
        return 1.0 / self.p

    def phi(self, x: float) -> float:
        if x >= self.rho:
            raise OutOfRadius(f"{x} is outside [0, {self.rho})")
        return 1.0 / (1.0 - self.p * x)

    def phi_prime(self, x: float) -> float:
        if x >= self.rho:
            raise OutOfRadius(f"{x} is outside [0, {self.rho})")
        return self.p / (1.0 - self.p * x) ** 2


@dataclass(frozen=True)
class FullBinary(_FamilyBase):
    """Only outdegrees 0 and 2 carry weight; spans even sums, so n must be odd."""

    w0: float = 1.0
    w2: float = 1.0

    def __post_init__(self):
        if not (self.w0 > 0 and self.w2 > 0):
            raise ValueError("binary weights must be positive")

    rho = math.inf

    def phi(self, x: float) -> float:
        return self.w0 + self.w2 * x * x

    def phi_prime(self, x: float) -> float:
        return 2.0 * self.w2 * x


@dataclass(frozen=True)
class PowerLaw(_FamilyBase):
    """Heavy-tail law pi_k = c k^(-(1+theta)) for k >= 1, pi_0 = 1 - sum.

    The weights are the probability law itself.  When ``c`` is omitted it
    defaults to 1 / (2 sum_{k>=1} k^(-theta)), which pins the offspring
    mean at 1/2 and therefore lands in regime 2 (condensation) for every
    theta > 1.
    """

    theta: float
    c: Optional[float] = None

    def __post_init__(self):
        if not self.theta > 1.0:
            raise ValueError("power-law exponent must exceed 1")
        if self.c is None:
            object.__setattr__(self, "c", 1.0 / (2.0 * zeta(self.theta)))
        if not self.c > 0:
            raise ValueError("power-law scale must be positive")
        if self.c * zeta(1.0 + self.theta) >= 1.0:
            raise ValueError("power-law scale leaves no mass at outdegree 0")

    rho = 1.0

    @property
    def w0(self) -> float:
        return 1.0 - self.c * zeta(1.0 + self.theta)

    def phi(self, x: float) -> float:
        if x == 1.0:
            return 1.0
        return self.w0 + self.c * _power_series(1.0 + self.theta, x)

    def phi_prime(self, x: float) -> float:
        # sum k pi_k x^(k-1) = (1/x) sum k^(-theta) x^k
        if x == 1.0:
            return self.c * zeta(self.theta)
        if x == 0.0:
            return self.c
        return self.c * _power_series(self.theta, x) / x


@dataclass(frozen=True)
class Factorial(_FamilyBase):
    """w_k = (k!)^alpha: zero radius of convergence, the regime-3 showcase."""

    alpha: float

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError("factorial exponent must be positive")

    rho = 0.0

    def phi(self, x: float) -> float:
        if x == 0.0:
            return 1.0
        raise OutOfRadius("factorial weights have zero radius of convergence")

    def phi_prime(self, x: float) -> float:
        raise OutOfRadius("factorial weights have zero radius of convergence")


@dataclass(frozen=True)
class Explicit(_FamilyBase):
    """Finite list w_0..w_K of nonnegative weights."""

    weights: tuple[float, ...]

    def __post_init__(self):
        ws = tuple(float(w) for w in self.weights)
        object.__setattr__(self, "weights", ws)
        if any(w < 0 for w in ws):
            raise ValueError("weights must be nonnegative")
        if not ws or ws[0] <= 0:
            raise ValueError("weight at outdegree 0 must be positive")
        if not any(w > 0 for w in ws[1:]):
            raise ValueError("some outdegree k >= 1 must carry positive weight")

    rho = math.inf

    def phi(self, x: float) -> float:
        acc = 0.0
        for w in reversed(self.weights):
            acc = acc * x + w
        return acc

    def phi_prime(self, x: float) -> float:
        acc = 0.0
        for k in range(len(self.weights) - 1, 0, -1):
            acc = acc * x + k * self.weights[k]
        return acc


WeightFamily = Union[Poisson, Geometric, FullBinary, PowerLaw, Factorial, Explicit]


# --- support queries --------------------------------------------------------


def positive_support(w: WeightFamily, cap: int) -> list[int]:
    """Supported outdegrees k with 1 <= k <= cap."""
    if isinstance(w, FullBinary):
        return [2] if cap >= 2 else []
    if isinstance(w, Explicit):
        return [k for k in range(1, min(cap, len(w.weights) - 1) + 1) if w.weights[k] > 0]
    return list(range(1, cap + 1))


def log_weights(w: WeightFamily, cap: int) -> np.ndarray:
    """log w_k for k = 0..cap, -inf where unsupported.

    Any positive rescaling of the weights leaves the conditioned tree law
    unchanged, so convenient normalisations are used freely.
    """
    ks = np.arange(cap + 1, dtype=np.float64)
    if isinstance(w, Poisson):
        return ks * math.log(w.lam) - gammaln(ks + 1.0)
    if isinstance(w, Geometric):
        return ks * math.log(w.p)
    if isinstance(w, FullBinary):
        out = np.full(cap + 1, -np.inf)
        out[0] = math.log(w.w0)
        if cap >= 2:
            out[2] = math.log(w.w2)
        return out
    if isinstance(w, PowerLaw):
        out = np.full(cap + 1, -np.inf)
        out[0] = math.log(w.w0)
        if cap >= 1:
            out[1:] = math.log(w.c) - (1.0 + w.theta) * np.log(ks[1:])
        return out
    if isinstance(w, Factorial):
        return w.alpha * gammaln(ks + 1.0)
    if isinstance(w, Explicit):
        out = np.full(cap + 1, -np.inf)
        for k, wk in enumerate(w.weights[: cap + 1]):
            if wk > 0:
                out[k] = math.log(wk)
        return out
    raise TypeError(f"unknown weight family {type(w).__name__}")


def span(w: WeightFamily) -> int:
    """gcd of the supported positive outdegrees; tree sizes must be 1 mod span."""
    if isinstance(w, FullBinary):
        return 2
    if isinstance(w, Explicit):
        g = 0
        for k in range(1, len(w.weights)):
            if w.weights[k] > 0:
                g = math.gcd(g, k)
        return g
    # every other built-in family puts positive weight on outdegree 1
    return 1


def feasible(w: WeightFamily, n: int, cap: Optional[int] = None) -> bool:
    """Whether a tree with n vertices and outdegrees <= cap exists (Z_n > 0).

    Exact support-only decision: n boxes with degree sum n - 1 reduce to
    representing n - 1 as a nonnegative combination of the supported
    positive degrees (the leaf boxes are never binding since every
    positive degree is >= 1).
    """
    if n < 1:
        raise ValueError("tree size must be at least 1")
    if n == 1:
        return True
    limit = n - 1 if cap is None else min(cap, n - 1)
    coins = positive_support(w, limit)
    if not coins:
        return False
    if (n - 1) % math.gcd(*coins) != 0:
        return False
    if 1 in coins:
        return True
    target = n - 1
    reach = bytearray(target + 1)
    reach[0] = 1
    for s in range(1, target + 1):
        for k in coins:
            if k > s:
                break
            if reach[s - k]:
                reach[s] = 1
                break
    return bool(reach[target])


# --- regime classification and the tilted law -------------------------------


@dataclass(frozen=True)
class OffspringLaw:
    """Offspring probability law: sampler tag, mean, and pmf vector access."""

    kind: str  # "poisson-1" | "uniform-geometric" | "binary-half" | "series"
    mean: float
    _probs: Callable[[int], np.ndarray]

    def probs(self, cap: int) -> np.ndarray:
        """pi_0..pi_cap as a vector (not renormalised)."""
        return self._probs(cap)


@dataclass(frozen=True)
class RegimeInfo:
    """Classification output: regime tag, tilted law, and its generating function.

    In regime 3 there is no tilted law: ``tau``, ``pi``, ``m``, ``G`` and
    ``Gprime`` are all None and ``nu`` is NaN.
    """

    rho: float
    nu: float
    tau: Optional[float]
    regime: int
    pi: Optional[OffspringLaw]
    m: Optional[float]
    G: Optional[Callable[[float], float]]
    Gprime: Optional[Callable[[float], float]]


def _solve_psi_equals_one(psi: Callable[[float], float], hi_limit: float) -> float:
    """Bisection for psi(tau) = 1; psi is increasing on [0, hi_limit)."""
    lo = 0.0
    if math.isinf(hi_limit):
        hi = 1.0
        while True:
            val = psi(hi)
            if math.isnan(val):
                raise NumericalFailure(f"psi({hi}) is not a number")
            if val >= 1.0:
                break
            hi *= 2.0
            if not math.isfinite(hi):
                # e.g. only outdegrees 0 and 1 supported: psi < 1 everywhere
                raise NumericalFailure("psi stays below 1 on every bounded interval")
    else:
        hi = hi_limit
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        f = psi(mid) - 1.0
        if abs(f) <= 1e-12:
            return mid
        if f < 0.0:
            lo = mid
        else:
            hi = mid
    raise NumericalFailure("bisection on psi did not reach tolerance 1e-12")


@lru_cache(maxsize=256)
def classify(w: WeightFamily) -> RegimeInfo:
    """Fill rho, nu, tau, the regime tag, the tilted law pi, and G, G'.

    Closed forms are used for the parametric families; Explicit lists go
    through the generic bisection on psi.
    """
    if isinstance(w, Poisson):
        # psi(x) = lam x, so tau = 1/lam and the tilt is always Poisson(1)
        def probs(cap: int) -> np.ndarray:
            ks = np.arange(cap + 1, dtype=np.float64)
            return np.exp(-1.0 - gammaln(ks + 1.0))

        pi = OffspringLaw(kind="poisson-1", mean=1.0, _probs=probs)
        return RegimeInfo(
            rho=math.inf, nu=math.inf, tau=1.0 / w.lam, regime=1, pi=pi, m=1.0,
            G=lambda t: math.exp(t - 1.0),
            Gprime=lambda t: math.exp(t - 1.0),
        )

    if isinstance(w, Geometric):
        # psi(x) = p x / (1 - p x), so tau = 1/(2p): pi_k = 2^-(k+1),
        # the offspring law of uniform random plane trees
        def probs(cap: int) -> np.ndarray:
            return 0.5 ** (np.arange(cap + 1, dtype=np.float64) + 1.0)

        pi = OffspringLaw(kind="uniform-geometric", mean=1.0, _probs=probs)
        return RegimeInfo(
            rho=1.0 / w.p, nu=math.inf, tau=1.0 / (2.0 * w.p), regime=1, pi=pi, m=1.0,
            G=lambda t: 1.0 / (2.0 - t),
            Gprime=lambda t: 1.0 / (2.0 - t) ** 2,
        )

    if isinstance(w, FullBinary):
        # psi(tau) = 1 at tau = sqrt(w0/w2); the tilt is always {0: 1/2, 2: 1/2}
        def probs(cap: int) -> np.ndarray:
            out = np.zeros(cap + 1)
            out[0] = 0.5
            if cap >= 2:
                out[2] = 0.5
            return out

        pi = OffspringLaw(kind="binary-half", mean=1.0, _probs=probs)
        return RegimeInfo(
            rho=math.inf, nu=2.0, tau=math.sqrt(w.w0 / w.w2), regime=1, pi=pi, m=1.0,
            G=lambda t: 0.5 * (1.0 + t * t),
            Gprime=lambda t: t,
        )

    if isinstance(w, PowerLaw):
        nu = w.c * zeta(w.theta)  # = psi(1): phi(1) = 1 and phi'(1) = c zeta(theta)
        if nu < 1.0:
            # regime 2: tau = rho = 1 and the tilted law is the family itself
            def probs(cap: int, w=w) -> np.ndarray:
                out = np.empty(cap + 1)
                out[0] = w.w0
                if cap >= 1:
                    ks = np.arange(1, cap + 1, dtype=np.float64)
                    out[1:] = w.c * ks ** -(1.0 + w.theta)
                return out

            pi = OffspringLaw(kind="series", mean=nu, _probs=probs)
            return RegimeInfo(
                rho=1.0, nu=nu, tau=1.0, regime=2, pi=pi, m=nu,
                G=w.phi, Gprime=w.phi_prime,
            )
        tau = _solve_psi_equals_one(w.psi, 1.0)
        phi_tau = w.phi(tau)

        def probs(cap: int, w=w, tau=tau, phi_tau=phi_tau) -> np.ndarray:
            out = np.empty(cap + 1)
            out[0] = w.w0 / phi_tau
            if cap >= 1:
                ks = np.arange(1, cap + 1, dtype=np.float64)
                out[1:] = w.c * ks ** -(1.0 + w.theta) * tau ** ks / phi_tau
            return out

        pi = OffspringLaw(kind="series", mean=1.0, _probs=probs)
        return RegimeInfo(
            rho=1.0, nu=nu, tau=tau, regime=1, pi=pi, m=1.0,
            G=lambda t: w.phi(tau * t) / phi_tau,
            Gprime=lambda t: tau * w.phi_prime(tau * t) / phi_tau,
        )

    if isinstance(w, Factorial):
        return RegimeInfo(
            rho=0.0, nu=math.nan, tau=None, regime=3, pi=None, m=None,
            G=None, Gprime=None,
        )

    if isinstance(w, Explicit):
        top = max(k for k in range(len(w.weights)) if w.weights[k] > 0)
        nu = float(top)  # psi(x) -> degree of phi as x -> infinity
        if top == 1:
            # only leaves and unary vertices: psi < 1 everywhere, no finite
            # tilt point exists (the conditioned tree is the bare path)
            raise NumericalFailure("unary-support weights admit no critical tilt")
        tau = _solve_psi_equals_one(w.psi, math.inf)
        pi_vec = tuple(tilt(w, tau))

        def probs(cap: int, pi_vec=pi_vec) -> np.ndarray:
            out = np.zeros(cap + 1)
            upto = min(cap + 1, len(pi_vec))
            out[:upto] = pi_vec[:upto]
            return out

        pi = OffspringLaw(kind="series", mean=1.0, _probs=probs)

        def G(t: float, pi_vec=pi_vec) -> float:
            acc = 0.0
            for q in reversed(pi_vec):
                acc = acc * t + q
            return acc

        def Gprime(t: float, pi_vec=pi_vec) -> float:
            acc = 0.0
            for k in range(len(pi_vec) - 1, 0, -1):
                acc = acc * t + k * pi_vec[k]
            return acc

        return RegimeInfo(
            rho=math.inf, nu=nu, tau=tau, regime=1, pi=pi, m=1.0,
            G=G, Gprime=Gprime,
        )

    raise TypeError(f"unknown weight family {type(w).__name__}")


def tilt(w: Explicit, tau: float) -> list[float]:
    """pi_k = tau^k w_k / phi(tau) for a finite explicit weight list."""
    if not isinstance(w, Explicit):
        raise TypeError("tilt needs a finite explicit weight list")
    if not tau > 0:
        raise ValueError("tilt point must be positive")
    if tau > w.rho:
        raise OutOfRadius(f"{tau} exceeds the radius of convergence {w.rho}")
    phi_tau = w.phi(tau)
    if not (math.isfinite(phi_tau) and phi_tau > 0):
        raise OutOfRadius(f"phi({tau}) = {phi_tau} is not finite and positive")
    return [wk * tau**k / phi_tau for k, wk in enumerate(w.weights)]


# --- the CLI config grammar --------------------------------------------------


def parse_family(spec: str) -> WeightFamily:
    """Parse a family config string; see FAMILY_GRAMMAR for the forms."""
    kind, sep, arg = spec.strip().partition(":")
    kind = kind.lower()
    if not sep or not arg:
        raise ValueError(f"bad family {spec!r}; expected one of: {FAMILY_GRAMMAR}")
    try:
        parts = [float(tok) for tok in arg.split(",")]
        if kind == "poisson" and len(parts) == 1:
            return Poisson(parts[0])
        if kind == "geometric" and len(parts) == 1:
            return Geometric(parts[0])
        if kind == "binary" and len(parts) == 2:
            return FullBinary(parts[0], parts[1])
        if kind == "powerlaw" and len(parts) in (1, 2):
            return PowerLaw(*parts)
        if kind == "factorial" and len(parts) == 1:
            return Factorial(parts[0])
        if kind == "explicit" and len(parts) >= 2:
            return Explicit(tuple(parts))
    except ValueError as exc:
        raise ValueError(f"bad family {spec!r}: {exc}; grammar: {FAMILY_GRAMMAR}") from None
    raise ValueError(f"bad family {spec!r}; expected one of: {FAMILY_GRAMMAR}")


def family_label(w: WeightFamily) -> str:
    """Canonical config string for a family (round-trips through parse_family)."""
    if isinstance(w, Poisson):
        return f"poisson:{_fmt(w.lam)}"
    if isinstance(w, Geometric):
        return f"geometric:{_fmt(w.p)}"
    if isinstance(w, FullBinary):
        return f"binary:{_fmt(w.w0)},{_fmt(w.w2)}"
    if isinstance(w, PowerLaw):
        if w.c == 1.0 / (2.0 * zeta(w.theta)):
            return f"powerlaw:{_fmt(w.theta)}"
        return f"powerlaw:{_fmt(w.theta)},{_fmt(w.c)}"
    if isinstance(w, Factorial):
        return f"factorial:{_fmt(w.alpha)}"
    if isinstance(w, Explicit):
        return "explicit:" + ",".join(_fmt(x) for x in w.weights)
    raise TypeError(f"unknown weight family {type(w).__name__}")
