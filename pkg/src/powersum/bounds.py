"""Reference bounds and baseline tuples for power-sum experiments.

Collects the classical yardsticks a constructed tuple is measured
against: the probabilistic upper bound sqrt(6 n log(m+1)), the
character-sum bound (h-1) sqrt(q), the factorial lower bound
(n! s!/(n-s)!)^(1/(2s)) valid for any points with |z_k| >= 1, and the
constant-free sqrt(nB) reference for ranges of length n^B (it carries an
unspecified implied constant, so it is reported, never asserted).
Baselines: exact roots of unity, whose power sums vanish identically
below the tuple size, and seeded random tuples swept against the
probabilistic bound.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .sweeps import AngleTuple, sweep_naive

#: Random angles are discretized to num / 2^32, reusing the exact
#: integer-angle sweep machinery at negligible discretization error.
RANDOM_ANGLE_DENOMINATOR = 1 << 32


def erdos_renyi_bound(n: int, m: int) -> float:
    """sqrt(6 n ln(m+1)): the probabilistic upper bound for the max of
    |S(nu)| over nu = 1..m.  Natural logarithm throughout."""
    if n < 1 or m < 1:
        raise ValueError("n and m must be positive")
    return math.sqrt(6.0 * n * math.log(m + 1))


def katz_bound(q: int, h: int) -> float:
    """(h-1) sqrt(q): the character-sum bound for the order-(q^h - 1)
    construction over GF(q^h)."""
    if q < 2 or h < 2:
        raise ValueError("need q >= 2 and h >= 2")
    return (h - 1) * math.sqrt(q)


def turan_lower(n: int, s: int) -> float:
    """(n! s! / (n-s)!)^(1/(2s)), the factorial lower bound on the sweep
    max over nu = 1..n^(2s) for any tuple with |z_k| >= 1.

    Evaluated in log space; s = 1 reduces to sqrt(n).
    """
    if not 1 <= s <= n:
        raise ValueError("need 1 <= s <= n")
    # ln(n!/(n-s)!) summed directly: no cancellation between large lgammas,
    # so s = 1 lands on sqrt(n) to machine precision
    log_falling = math.fsum(math.log(k) for k in range(n - s + 1, n + 1))
    log_val = log_falling + math.lgamma(s + 1)
    return math.exp(log_val / (2 * s))


def turan_constant(h: int) -> float:
    """C_h with C_{2s} = (s!)^(1/(2s)) and C_{2s+1} = C_{2s}."""
    if h < 2:
        raise ValueError("h must be at least 2")
    s = h // 2
    return math.exp(math.lgamma(s + 1) / (2 * s))


def montgomery_reference(n: int, b: float) -> float:
    """sqrt(n * B), the order of the general lower bound for ranges of
    length n^B.  Constant-free: report ratios against it, never assert."""
    if n < 1 or b < 1:
        raise ValueError("need n >= 1 and B >= 1")
    return math.sqrt(n * b)


def roots_of_unity_tuple(n: int) -> AngleTuple:
    """Angles k/n for k = 1..n; every power sum with nu not divisible by
    n vanishes, so the sweep max over 1..n-1 is exactly zero."""
    if n < 1:
        raise ValueError("n must be positive")
    return AngleTuple.from_exponents(list(range(1, n + 1)), n)


@dataclass
class BaselineStats:
    """Seeded random-tuple sweep statistics against the probabilistic bound."""

    n: int
    m: int
    seed: int
    trials: int
    bound: float
    per_trial_max: list[float]

    @property
    def fraction_within(self) -> float:
        return sum(1 for v in self.per_trial_max if v <= self.bound) / self.trials

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "seed": self.seed,
            "trials": self.trials,
            "bound": self.bound,
            "fraction_within": self.fraction_within,
            "per_trial_max": self.per_trial_max,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)


def random_tuple(n: int, rng: np.random.Generator) -> AngleTuple:
    """n uniform angles num/2^32 from the given generator."""
    nums = rng.integers(0, RANDOM_ANGLE_DENOMINATOR, size=n, dtype=np.int64)
    return AngleTuple(tuple((int(v), RANDOM_ANGLE_DENOMINATOR) for v in nums))


def random_unimodular_baseline(n: int, m: int, seed: int = 0,
                               trials: int = 1) -> BaselineStats:
    """Sweep ``trials`` independent random n-tuples over nu = 1..m.

    Deterministic: trial t draws from a generator seeded with seed + t,
    so results are independent of any parallel execution order.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    bound = erdos_renyi_bound(n, m)
    maxima = []
    for t in range(trials):
        rng = np.random.default_rng(seed + t)
        tup = random_tuple(n, rng)
        maxima.append(sweep_naive(tup, 1, m).max_abs)
    return BaselineStats(n=n, m=m, seed=seed, trials=trials,
                         bound=bound, per_trial_max=maxima)


@dataclass
class BoundReport:
    """One comparison row: a measured sweep max next to the yardsticks."""

    n: int
    m_or_range: str
    construction: str
    measured_max: Optional[float]
    katz: Optional[float]
    turan_lower: Optional[float]
    er_bound: Optional[float]
    mont_ref: Optional[float]

    CSV_HEADER = "n,m_or_range,construction,measured_max,katz,turan_lower,er_bound,mont_ref"

    def csv_row(self) -> str:
        def fmt(v):
            return "" if v is None else repr(float(v))
        return ",".join([
            str(self.n), self.m_or_range, self.construction,
            fmt(self.measured_max), fmt(self.katz), fmt(self.turan_lower),
            fmt(self.er_bound), fmt(self.mont_ref),
        ])

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "m_or_range": self.m_or_range,
            "construction": self.construction,
            "measured_max": self.measured_max,
            "katz": self.katz,
            "turan_lower": self.turan_lower,
            "er_bound": self.er_bound,
            "mont_ref": self.mont_ref,
        }
