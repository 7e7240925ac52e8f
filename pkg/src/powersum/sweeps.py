"""Power-sum evaluation S(nu) = sum_k z_k^nu and max-|S| sweeps.

Tuples of unit-circle points are stored as exact rational angles
num/den, meaning z_k = e(num_k/den_k) with e(x) = exp(2*pi*i*x).  Every
engine reduces nu * num modulo den in exact integer arithmetic before
any trigonometric call, so sweeps stay drift-free for arbitrarily large
nu.  Two independent engines cover uniform-denominator tuples:

* ``sweep_naive`` steps the reduced angles one nu at a time;
* ``sweep_dft`` reads all M values off a length-M discrete Fourier
  transform of the exponent multiplicity vector (S(nu) is exactly that
  transform), then re-evaluates the handful of near-maximal nu with the
  naive formula so both engines apply one tie-break rule to identical
  doubles.

``sweep_generic`` handles raw complex inputs (random baselines, points
with |z| >= 1) by iterated multiplication with per-step renormalization
of the unimodular entries; its drift contract is relative error within a
small constant times range * machine epsilon.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
import scipy.fft

from .errors import BudgetError

TWO_PI = 2.0 * math.pi

#: Default cap on (range length) * (tuple size) for naive sweeps.
DEFAULT_OP_BUDGET = 10 ** 9

#: Default cap on the transform length for the DFT engine.
DEFAULT_TRANSFORM_BUDGET = 1 << 22

#: Transform magnitudes within this absolute window of the observed
#: maximum are re-evaluated exactly before the final comparison.  Far
#: above the O(eps * sqrt(M)) rounding of the transform itself.
_DFT_CANDIDATE_WINDOW = 1e-6


@dataclass(frozen=True)
class AngleTuple:
    """An n-tuple of unit-circle points as normalized rational angles.

    entries[k] = (num, den) encodes z_k = e(num/den) with 0 <= num < den.
    Denominators are kept as given (6/8 is not reduced to 3/4) so that a
    shared denominator stays visible to the DFT engine.
    """

    entries: tuple[tuple[int, int], ...]

    def __post_init__(self):
        norm = []
        for num, den in self.entries:
            if den < 1:
                raise ValueError("denominators must be positive")
            norm.append((num % den, den))
        object.__setattr__(self, "entries", tuple(norm))

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def uniform_denominator(self) -> Optional[int]:
        """The shared denominator M, or None if denominators differ."""
        dens = {den for _, den in self.entries}
        return dens.pop() if len(dens) == 1 else None

    @classmethod
    def from_exponents(cls, exponents: Sequence[int], modulus: int) -> "AngleTuple":
        return cls(tuple((int(a), int(modulus)) for a in exponents))

    @classmethod
    def concat(cls, *tuples: "AngleTuple") -> "AngleTuple":
        return cls(tuple(e for t in tuples for e in t.entries))

    def as_dict(self) -> dict:
        return {"entries": [[num, den] for num, den in self.entries]}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "AngleTuple":
        return cls(tuple((int(n), int(d)) for n, d in data["entries"]))

    # cached numeric views -------------------------------------------------

    @property
    def _arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        nums = np.array([n for n, _ in self.entries], dtype=np.int64)
        dens = np.array([d for _, d in self.entries], dtype=np.int64)
        scale = TWO_PI / dens
        return nums, dens, scale


@dataclass
class SweepResult:
    nu_start: int
    nu_end: int
    max_abs: float
    argmax_nu: int
    method: str
    per_nu: Optional[np.ndarray] = field(default=None, repr=False)

    def as_dict(self) -> dict:
        return {
            "nu_start": self.nu_start,
            "nu_end": self.nu_end,
            "max_abs": self.max_abs,
            "argmax_nu": self.argmax_nu,
            "method": self.method,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)


# ----------------------------------------------------------------------
# Point evaluation
# ----------------------------------------------------------------------

def reduced_residues(tup: AngleTuple, nu: int) -> np.ndarray:
    """nu * num_k mod den_k for every entry, computed in exact integer
    arithmetic (Python ints, so no overflow at any nu)."""
    return np.array([(nu * num) % den for num, den in tup.entries], dtype=np.int64)


def _abs_from_residues(residues: np.ndarray, scale: np.ndarray) -> float:
    theta = residues.astype(np.float64) * scale
    return math.hypot(math.fsum(np.cos(theta)), math.fsum(np.sin(theta)))


def eval_power_sum(tup: AngleTuple, nu: int) -> complex:
    """S(nu) = sum_k e(nu * num_k / den_k), exactly-rounded real and
    imaginary parts via compensated summation."""
    if nu < 0:
        raise ValueError("nu must be nonnegative")
    _, _, scale = tup._arrays
    theta = reduced_residues(tup, nu).astype(np.float64) * scale
    return complex(math.fsum(np.cos(theta)), math.fsum(np.sin(theta)))


def abs_power_sum(tup: AngleTuple, nu: int) -> float:
    """|S(nu)| computed exactly as the sweep engines compute it."""
    _, _, scale = tup._arrays
    return _abs_from_residues(reduced_residues(tup, nu), scale)


# ----------------------------------------------------------------------
# Sweep engines
# ----------------------------------------------------------------------

def sweep_naive(tup: AngleTuple, nu_start: int, nu_end: int,
                keep_per_nu: bool = False,
                op_budget: int = DEFAULT_OP_BUDGET) -> SweepResult:
    """Evaluate every nu in [nu_start, nu_end] by exact integer angle
    stepping; ties in max |S| go to the smallest nu."""
    if nu_start > nu_end:
        raise ValueError("nu_start must not exceed nu_end")
    count = nu_end - nu_start + 1
    if count * max(len(tup), 1) > op_budget:
        raise BudgetError(
            f"naive sweep needs {count * max(len(tup), 1)} operations, "
            f"budget is {op_budget}"
        )
    nums, dens, scale = tup._arrays
    residues = reduced_residues(tup, nu_start)
    per = np.empty(count, dtype=np.float64) if keep_per_nu else None
    best_abs = -1.0
    best_nu = nu_start
    for i, nu in enumerate(range(nu_start, nu_end + 1)):
        a = _abs_from_residues(residues, scale)
        if per is not None:
            per[i] = a
        if a > best_abs:
            best_abs, best_nu = a, nu
        residues += nums
        residues %= dens
    return SweepResult(nu_start, nu_end, best_abs, best_nu, "naive", per)


def multiplicity_vector(tup: AngleTuple) -> np.ndarray:
    """Counts c_j of entries with angle j/M, for a uniform denominator M."""
    m = tup.uniform_denominator
    if m is None:
        raise ValueError("tuple has mixed denominators")
    c = np.zeros(m, dtype=np.float64)
    np.add.at(c, [num for num, _ in tup.entries], 1.0)
    return c


def spectrum(tup: AngleTuple,
             transform_budget: int = DEFAULT_TRANSFORM_BUDGET) -> np.ndarray:
    """All M magnitudes |S(nu)|, nu = 0..M-1, via one fast transform of
    the multiplicity vector.  Works for arbitrary (non power-of-two) M."""
    m = tup.uniform_denominator
    if m is None:
        raise ValueError("tuple has mixed denominators; use sweep_naive")
    if m > transform_budget:
        raise BudgetError(f"transform length {m} exceeds budget {transform_budget}")
    return np.abs(scipy.fft.fft(multiplicity_vector(tup)))


def _refine_max(tup: AngleTuple, mags: np.ndarray, lo: int, hi: int) -> tuple[float, int]:
    """Exact max and smallest argmax over nu in [lo, hi], given transform
    magnitudes for the whole period.  Near-maximal candidates are
    re-evaluated with the naive formula so the comparison uses the same
    doubles sweep_naive would produce."""
    window = mags[lo:hi + 1]
    rough = float(window.max())
    cand = np.nonzero(window >= rough - _DFT_CANDIDATE_WINDOW)[0] + lo
    _, _, scale = tup._arrays
    best_abs, best_nu = -1.0, lo
    for nu in cand:
        a = _abs_from_residues(reduced_residues(tup, int(nu)), scale)
        if a > best_abs:
            best_abs, best_nu = a, int(nu)
    return best_abs, best_nu


def sweep_dft(tup: AngleTuple, keep_per_nu: bool = False,
              transform_budget: int = DEFAULT_TRANSFORM_BUDGET) -> SweepResult:
    """Full-period sweep for a uniform-denominator tuple.

    Computes |S(nu)| for nu = 0..M-1 in O(M log M); the reported max and
    argmax cover nu = 1..M-2 (the nontrivial range; nu = M-1 mirrors
    nu = 1 by conjugation) with the same smallest-nu tie-break as
    sweep_naive.  Requires M >= 3.
    """
    m = tup.uniform_denominator
    if m is None:
        raise ValueError("tuple has mixed denominators; use sweep_naive")
    if m < 3:
        raise ValueError("DFT sweep needs a period of at least 3")
    mags = spectrum(tup, transform_budget)
    best_abs, best_nu = _refine_max(tup, mags, 1, m - 2)
    return SweepResult(0, m - 1, best_abs, best_nu, "dft",
                       mags if keep_per_nu else None)


def range_max_uniform(tup: AngleTuple, nu_start: int, nu_end: int,
                      transform_budget: int = DEFAULT_TRANSFORM_BUDGET) -> tuple[float, int]:
    """Exact (max |S|, smallest argmax) over an arbitrary sub-range of one
    period, DFT-accelerated.  Range must satisfy 0 <= nu_start <= nu_end <= M-1."""
    m = tup.uniform_denominator
    if m is None:
        raise ValueError("tuple has mixed denominators; use sweep_naive")
    if not 0 <= nu_start <= nu_end <= m - 1:
        raise ValueError("range must lie within one period")
    mags = spectrum(tup, transform_budget)
    return _refine_max(tup, mags, nu_start, nu_end)


def parseval_residual(tup: AngleTuple,
                      transform_budget: int = DEFAULT_TRANSFORM_BUDGET) -> float:
    """Relative defect |sum_nu |S(nu)|^2 - M*n| / (M*n).

    Orthogonality forces the sum over one full period to equal M*n when
    the n exponents are distinct, so this measures transform fidelity.
    """
    m = tup.uniform_denominator
    if m is None:
        raise ValueError("tuple has mixed denominators")
    nums = [num for num, _ in tup.entries]
    if len(set(nums)) != len(nums):
        raise ValueError("Parseval check requires distinct exponents")
    n = len(tup)
    if n == 0:
        return 0.0
    mags = spectrum(tup, transform_budget)
    total = float(np.sum(mags * mags))
    return abs(total - m * n) / (m * n)


def sweep_generic(points: Sequence[complex], nu_start: int, nu_end: int,
                  keep_per_nu: bool = False) -> SweepResult:
    """Sweep raw complex points (|z| >= 1 allowed) by iterated
    multiplication.

    Entries within 1e-12 of the unit circle are renormalized to |z| = 1
    after every step, which keeps the accumulated relative error within
    a small constant times (nu_end - nu_start) * machine epsilon; moduli
    strictly above 1 are left to grow as they must.
    """
    if nu_start > nu_end:
        raise ValueError("nu_start must not exceed nu_end")
    z = np.asarray(points, dtype=np.complex128)
    unimodular = np.abs(np.abs(z) - 1.0) <= 1e-12
    w = z ** nu_start
    w[unimodular] /= np.abs(w[unimodular])
    count = nu_end - nu_start + 1
    per = np.empty(count, dtype=np.float64) if keep_per_nu else None
    best_abs, best_nu = -1.0, nu_start
    for i, nu in enumerate(range(nu_start, nu_end + 1)):
        a = abs(w.sum())
        if per is not None:
            per[i] = a
        if a > best_abs:
            best_abs, best_nu = a, nu
        w *= z
        w[unimodular] /= np.abs(w[unimodular])
    return SweepResult(nu_start, nu_end, best_abs, best_nu, "generic", per)


def per_nu_csv_rows(result: SweepResult):
    """Yield "nu,abs" rows for external plotting; requires per_nu."""
    if result.per_nu is None:
        raise ValueError("sweep was run without keep_per_nu")
    start = result.nu_start
    for i, a in enumerate(result.per_nu):
        yield f"{start + i},{a!r}"
