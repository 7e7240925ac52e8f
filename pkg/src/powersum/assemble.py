"""Assembling n-tuples with certified small power sums for arbitrary n.

Two pipelines, both reducing to the prime-power construction:

* ``binary_compose`` writes n in binary and, for every set bit m >= 1,
  takes the Bose-Chowla tuple for q = 2^m inside GF(2^(m * ceil(N/m)))
  with N = h * (floor(log2 n) + 1).  Each block's valid range covers
  nu <= 2^N - 2 >= n^h, so the concatenation of blocks (plus a single
  z = 1 for the units bit) is an n-tuple whose sweep max is bounded by
  the explicit triangle-inequality sum the plan records as
  ``certified_bound``.

* ``prime_gap_construct`` picks the least prime p > n, builds the
  p-point construction, then searches for a (p - n)-subset whose own
  power sums stay small over the target range; dropping that subset
  leaves an n-tuple satisfying the exact triangle inequality
  final_max <= (h-1) sqrt(p) + trim_max.  The subset search realizes an
  existential statement, so the target (p-n)^(1/2+eps) is a goal the
  report scores against, not a guarantee.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import scipy.fft

from . import gf
from .bounds import katz_bound
from .errors import BudgetError
from .sidon import SidonSet, bose_chowla, unimodular_tuple
from .sweeps import AngleTuple, range_max_uniform, spectrum, sweep_naive

DEFAULT_TRIM_BUDGET = 500
DEFAULT_TRIM_EPSILON = 0.25


# ----------------------------------------------------------------------
# Binary-expansion composition
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class CompositionBlock:
    """One power-of-two block of the composition."""

    m: int                     # bit position; contributes 2^m entries
    q: int                     # 2^m
    h_block: int               # extension degree ceil(N/m); 0 for the m=0 bit
    modulus: int               # q^h_block - 1 (1 for the m=0 singleton)
    bound_term: float          # contribution to the certified bound
    sidon: Optional[SidonSet] = field(default=None, repr=False)

    def as_dict(self) -> dict:
        d = {
            "m": self.m,
            "q": self.q,
            "h_block": self.h_block,
            "modulus": self.modulus,
            "bound_term": self.bound_term,
        }
        if self.sidon is not None:
            d["sidon"] = self.sidon.as_dict()
        return d


@dataclass(frozen=True)
class CompositionPlan:
    n: int
    h: int
    top_bit: int               # largest m with 2^m <= n
    big_n: int                 # h * (top_bit + 1); block ranges cover 2^big_n - 2
    digits: tuple[int, ...]    # binary digits of n, least significant first
    blocks: tuple[CompositionBlock, ...]
    certified_bound: float

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "h": self.h,
            "top_bit": self.top_bit,
            "big_n": self.big_n,
            "digits": list(self.digits),
            "blocks": [b.as_dict() for b in self.blocks],
            "certified_bound": self.certified_bound,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)


def binary_compose(n: int, h: int,
                   budget: Optional[int] = None) -> tuple[AngleTuple, CompositionPlan]:
    """Compose an n-tuple from power-of-two blocks with a certified bound.

    The certified bound sums (ceil(N/m) - 1) * 2^(m/2) over the set bits
    m >= 1 plus 1 for the units bit; it provably dominates |S(nu)| for
    every nu = 1..2^N - 2, a range containing 1..n^h.  Raises a resource
    error naming the offending block if a field exceeds the table budget.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if h < 2:
        raise ValueError("h must be at least 2")
    digits = tuple((n >> m) & 1 for m in range(n.bit_length()))
    top_bit = n.bit_length() - 1
    big_n = h * (top_bit + 1)
    if n >= 2:
        assert n ** h <= 2 ** big_n - 2, "block range must cover the target range"

    blocks: list[CompositionBlock] = []
    parts: list[AngleTuple] = []
    bound = 0.0
    for m, bit in enumerate(digits):
        if not bit:
            continue
        if m == 0:
            # 2^0 = 1 is not a prime-power field size; a single z = 1
            # contributes exactly 1 to every power sum.
            blocks.append(CompositionBlock(m=0, q=1, h_block=0, modulus=1,
                                           bound_term=1.0))
            parts.append(AngleTuple(((0, 1),)))
            bound += 1.0
            continue
        q = 1 << m
        h_block = -(-big_n // m)  # ceil(N/m)
        assert q ** h_block - 2 >= 2 ** big_n - 2
        try:
            s = bose_chowla(q, h_block, budget=budget)
        except BudgetError as exc:
            raise BudgetError(
                f"block m={m} needs GF(2^{m * h_block}): {exc}"
            ) from exc
        term = (h_block - 1) * math.sqrt(q)
        blocks.append(CompositionBlock(m=m, q=q, h_block=h_block,
                                       modulus=s.modulus, bound_term=term,
                                       sidon=s))
        parts.append(unimodular_tuple(s))
        bound += term

    combined = AngleTuple.concat(*parts)
    assert len(combined) == n
    plan = CompositionPlan(n=n, h=h, top_bit=top_bit, big_n=big_n,
                           digits=digits, blocks=tuple(blocks),
                           certified_bound=bound)
    return combined, plan


# ----------------------------------------------------------------------
# Prime gaps
# ----------------------------------------------------------------------

def next_prime_gap(n: int) -> tuple[int, int]:
    """Smallest prime p > n and the gap p - n."""
    if n < 2:
        raise ValueError("n must be at least 2")
    p = n + 1
    while not gf.is_prime(p):
        p += 1
    return p, p - n


# ----------------------------------------------------------------------
# Subset trimming
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class TrimResult:
    indices: tuple[int, ...]
    achieved: float
    target: float
    nu_max: int
    evaluations: int

    @property
    def ratio(self) -> float:
        return self.achieved / self.target if self.target > 0 else math.inf

    def as_dict(self) -> dict:
        return {
            "indices": list(self.indices),
            "achieved": self.achieved,
            "target": self.target,
            "ratio": self.ratio,
            "nu_max": self.nu_max,
            "evaluations": self.evaluations,
        }


class _SubsetObjective:
    """Max |S(nu)| over 1..nu_max for index subsets of a fixed tuple.

    For a uniform denominator the subset spectrum comes from one fast
    transform per query; the search compares those transform maxima and
    only the winning subset is re-evaluated exactly.
    """

    def __init__(self, tup: AngleTuple, nu_max: int):
        self.tup = tup
        self.nu_max = nu_max
        self.m = tup.uniform_denominator
        self.calls = 0
        if self.m is not None:
            self._nums = np.array([num for num, _ in tup.entries], dtype=np.int64)
            self._hi = min(nu_max, self.m - 1)

    def rough(self, indices) -> float:
        self.calls += 1
        if len(indices) == 0:
            return 0.0
        if self.m is None:
            return sweep_naive(self._subset(indices), 1, self.nu_max).max_abs
        c = np.zeros(self.m, dtype=np.float64)
        np.add.at(c, self._nums[list(indices)], 1.0)
        mags = np.abs(scipy.fft.fft(c))
        peak = float(mags[1:self._hi + 1].max())
        if self.nu_max >= self.m:
            peak = max(peak, float(len(indices)))  # nu = M hits S(0) = subset size
        return peak

    def exact(self, indices) -> float:
        if len(indices) == 0:
            return 0.0
        if self.m is None:
            return sweep_naive(self._subset(indices), 1, self.nu_max).max_abs
        val, _ = range_max_uniform(self._subset(indices), 1, self._hi)
        if self.nu_max >= self.m:
            val = max(val, float(len(indices)))
        return val

    def _subset(self, indices) -> AngleTuple:
        return AngleTuple(tuple(self.tup.entries[i] for i in indices))


def trim_subset(tup: AngleTuple, m: int, nu_max: int,
                epsilon: float = DEFAULT_TRIM_EPSILON,
                budget: int = DEFAULT_TRIM_BUDGET,
                seed: int = 0) -> TrimResult:
    """Search for an m-subset whose own power sums stay small over
    nu = 1..nu_max.

    Seeded random subsets followed by greedy first-improvement single
    swaps on the best candidate; deterministic for a given (seed,
    budget).  The returned ``achieved`` is the subset's exact sweep max;
    ``target`` is m^(1/2 + epsilon), which the search aims for but
    cannot promise.
    """
    p = len(tup)
    if not 0 <= m <= p:
        raise ValueError(f"subset size {m} out of range for a {p}-tuple")
    if nu_max < 1:
        raise ValueError("nu_max must be at least 1")
    target = m ** (0.5 + epsilon) if m else 0.0
    if m == 0:
        return TrimResult((), 0.0, target, nu_max, 0)

    objective = _SubsetObjective(tup, nu_max)
    if m == p:
        full = tuple(range(p))
        return TrimResult(full, objective.exact(full), target, nu_max, 1)

    rng = np.random.default_rng(seed)
    best = tuple(sorted(int(i) for i in rng.choice(p, size=m, replace=False)))
    best_val = objective.rough(best)
    for _ in range(budget - 1):
        cand = tuple(sorted(int(i) for i in rng.choice(p, size=m, replace=False)))
        val = objective.rough(cand)
        if val < best_val:
            best, best_val = cand, val

    # Greedy descent: first strictly improving single swap, restart scan.
    improved = True
    while improved:
        improved = False
        inside = list(best)
        outside = [i for i in range(p) if i not in best]
        for i in inside:
            for j in outside:
                cand = tuple(sorted([k for k in best if k != i] + [j]))
                val = objective.rough(cand)
                if val < best_val:
                    best, best_val = cand, val
                    improved = True
                    break
            if improved:
                break

    return TrimResult(best, objective.exact(best), target, nu_max,
                      objective.calls)


# ----------------------------------------------------------------------
# Prime-gap + trimming pipeline
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class PipelineReport:
    n: int
    h: int
    p: int
    gap: int
    nu_max: int
    trimmed_indices: tuple[int, ...]
    achieved_trim_max: float
    trim_target: float
    full_max: float
    final_max: float
    katz: float
    reference: float           # (h-1) sqrt(n), the asymptotic target
    fast_path: bool

    @property
    def gap_ratio(self) -> float:
        """gap / p^0.525, informational only (the guarantee is asymptotic)."""
        return self.gap / self.p ** 0.525 if self.gap else 0.0

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "h": self.h,
            "p": self.p,
            "gap": self.gap,
            "gap_ratio": self.gap_ratio,
            "nu_max": self.nu_max,
            "trimmed_indices": list(self.trimmed_indices),
            "achieved_trim_max": self.achieved_trim_max,
            "trim_target": self.trim_target,
            "full_max": self.full_max,
            "final_max": self.final_max,
            "katz": self.katz,
            "reference": self.reference,
            "ratio_vs_sqrt_n": self.final_max / math.sqrt(self.n),
            "fast_path": self.fast_path,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)


def _is_prime_power(n: int) -> bool:
    try:
        gf.prime_power_decomposition(n)
        return True
    except ValueError:
        return False


def prime_gap_construct(n: int, h: int, seed: int = 0,
                        epsilon: float = DEFAULT_TRIM_EPSILON,
                        budget: int = DEFAULT_TRIM_BUDGET,
                        table_budget: Optional[int] = None
                        ) -> tuple[AngleTuple, PipelineReport]:
    """Build an n-tuple via the least prime p > n and subset trimming.

    Fast path: when n itself is a prime power the construction applies
    directly and no trimming is needed; the sweep then covers the
    construction's full valid range 1..n^h - 2 (one period, minus the
    trivial peak).  Otherwise the final n-tuple is the p-point tuple
    minus the trimmed subset, swept over 1..n^h, and the exact triangle
    inequality final_max <= (h-1) sqrt(p) + achieved_trim_max is checked
    before returning.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if h < 2:
        raise ValueError("h must be at least 2")

    if _is_prime_power(n):
        s = bose_chowla(n, h, budget=table_budget)
        tup = unimodular_tuple(s)
        nu_max = min(n ** h, s.modulus - 1)
        final_max, _ = range_max_uniform(tup, 1, nu_max)
        report = PipelineReport(
            n=n, h=h, p=n, gap=0, nu_max=nu_max,
            trimmed_indices=(), achieved_trim_max=0.0, trim_target=0.0,
            full_max=final_max, final_max=final_max,
            katz=katz_bound(n, h), reference=(h - 1) * math.sqrt(n),
            fast_path=True,
        )
        return tup, report

    p, gap = next_prime_gap(n)
    s = bose_chowla(p, h, budget=table_budget)
    full_tuple = unimodular_tuple(s)
    nu_max = n ** h
    assert nu_max <= s.modulus - 1  # p > n forces p^h - 2 >= n^h

    trim = trim_subset(full_tuple, p - n, nu_max,
                       epsilon=epsilon, budget=budget, seed=seed)
    keep = [i for i in range(p) if i not in set(trim.indices)]
    final_tuple = AngleTuple(tuple(full_tuple.entries[i] for i in keep))
    assert len(final_tuple) == n

    full_max, _ = range_max_uniform(full_tuple, 1, nu_max)
    final_max, _ = range_max_uniform(final_tuple, 1, nu_max)
    katz = katz_bound(p, h)
    if final_max > full_max + trim.achieved + 1e-9:
        raise AssertionError(
            f"triangle inequality violated: {final_max} > "
            f"{full_max} + {trim.achieved}"
        )
    report = PipelineReport(
        n=n, h=h, p=p, gap=gap, nu_max=nu_max,
        trimmed_indices=trim.indices, achieved_trim_max=trim.achieved,
        trim_target=trim.target, full_max=full_max, final_max=final_max,
        katz=katz, reference=(h - 1) * math.sqrt(n), fast_path=False,
    )
    return final_tuple, report
