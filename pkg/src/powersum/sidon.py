"""Bose-Chowla Sidon sets and the unimodular tuples they induce.

Inside E = GF(q^h) with primitive element omega, the q integers
a_k = log(omega + x_k), x_k ranging over the subfield GF(q), form a
B_h set modulo M = q^h - 1: no two distinct h-element multisets share a
sum.  Mapping a_k to the angle a_k / M puts q points on the unit circle
whose power sums S(nu) coincide with complete character sums over the
subfield, and those stay below (h-1) * sqrt(q) in absolute value for
every nu not divisible by M.

This module builds the sets, verifies the B_h property by exhaustive
enumeration (the check is independent of the construction), and
evaluates the character-sum side directly as an oracle for the
power-sum engines.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Optional, Sequence

import numpy as np

from . import gf
from .errors import BudgetError
from .sweeps import TWO_PI, AngleTuple

#: Exhaustive B_h verification enumerates binomial(q+h-1, h) multisets.
DEFAULT_BH_BUDGET = 10 ** 6


@dataclass(frozen=True)
class SidonSet:
    """A B_h exponent set modulo q^h - 1 with its field of origin."""

    q: int
    h: int
    modulus: int
    exponents: tuple[int, ...]
    field: gf.FieldParams

    def __post_init__(self):
        if len(set(self.exponents)) != len(self.exponents):
            raise ValueError("exponents must be pairwise distinct")

    def __len__(self) -> int:
        return len(self.exponents)

    def as_dict(self) -> dict:
        return {
            "q": self.q,
            "h": self.h,
            "M": self.modulus,
            "exponents": list(self.exponents),
            "field": self.field.as_dict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)


@dataclass(frozen=True)
class BhCheck:
    """Outcome of a B_h verification."""

    ok: bool
    probabilistic: bool = False
    #: On failure, two distinct h-multisets of exponents with equal sum.
    witness: Optional[tuple[tuple[int, ...], tuple[int, ...]]] = None

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "mode": "probabilistic" if self.probabilistic else "exhaustive",
            "witness": [list(w) for w in self.witness] if self.witness else None,
        }


@lru_cache(maxsize=None)
def _bose_chowla_cached(q: int, h: int, budget: Optional[int]) -> SidonSet:
    p, a = gf.prime_power_decomposition(q)
    ctx = gf.build_field(p, a * h, budget=budget)
    omega = ctx.omega
    exponents = sorted(
        ctx.discrete_log(ctx.add(omega, x)) for x in gf.subfield_elements(ctx, q)
    )
    return SidonSet(q=q, h=h, modulus=ctx.order,
                    exponents=tuple(exponents), field=ctx.params)


def bose_chowla(q: int, h: int, budget: Optional[int] = None) -> SidonSet:
    """The Bose-Chowla B_h set {log(omega + x) : x in GF(q)} mod q^h - 1.

    q must be a prime power and h >= 2.  omega + x is never zero because
    omega, generating all of GF(q^h)*, cannot lie in the subfield, so
    every log is defined.  Exponents are returned sorted ascending.
    """
    if h < 2:
        raise ValueError("h must be at least 2")
    return _bose_chowla_cached(int(q), int(h), budget)


def field_context(s: SidonSet) -> gf.FieldContext:
    """The (cached) field context a Sidon set was built from."""
    return gf.build_field(s.field.p, s.field.d, s.field.modulus)


def bh_collision(exponents: Sequence[int], h: int, modulus: int,
                 budget: int = DEFAULT_BH_BUDGET
                 ) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    """First pair of distinct h-multisets with equal sum mod modulus.

    Multisets are enumerated over the sorted exponent values in
    lexicographic order, so the reported witness is deterministic and
    minimal in that order.  Returns None when all sums are distinct.
    """
    values = sorted(int(a) for a in exponents)
    total = math.comb(len(values) + h - 1, h)
    if total > budget:
        raise BudgetError(
            f"B_h verification needs {total} multisets, budget is {budget}"
        )
    seen: dict[int, tuple[int, ...]] = {}
    for multiset in combinations_with_replacement(values, h):
        s = sum(multiset) % modulus
        if s in seen:
            return seen[s], multiset
        seen[s] = multiset
    return None


def verify_bh(s: SidonSet, budget: int = DEFAULT_BH_BUDGET,
              samples: Optional[int] = None, seed: int = 0) -> BhCheck:
    """Verify the B_h property of a Sidon set.

    Exhaustive by default.  When ``samples`` is given the check draws that
    many random multiset pairs instead (for sets beyond the enumeration
    budget) and a pass is only probabilistic.
    """
    if samples is not None:
        rng = np.random.default_rng(seed)
        values = sorted(s.exponents)
        for _ in range(samples):
            a = tuple(sorted(rng.choice(values, size=s.h, replace=True)))
            b = tuple(sorted(rng.choice(values, size=s.h, replace=True)))
            if a != b and sum(a) % s.modulus == sum(b) % s.modulus:
                return BhCheck(ok=False, probabilistic=True, witness=(a, b))
        return BhCheck(ok=True, probabilistic=True)
    witness = bh_collision(s.exponents, s.h, s.modulus, budget)
    if witness is None:
        return BhCheck(ok=True)
    return BhCheck(ok=False, witness=witness)


def unimodular_tuple(s: SidonSet) -> AngleTuple:
    """Angles a_k / M as an exact rational-angle tuple."""
    return AngleTuple.from_exponents(s.exponents, s.modulus)


def character_sum_direct(ctx: gf.FieldContext, q: int, nu: int) -> complex:
    """sum over x in GF(q) of chi^nu(omega + x), evaluated from the field.

    chi is the order-M multiplicative character chi(omega^n) = e(n/M)
    with chi(0) = 0.  This recomputes every log from the context, so it
    is an oracle independent of any stored exponent list.
    """
    if nu < 1:
        raise ValueError("nu must be at least 1")
    m = ctx.order
    thetas = []
    for x in gf.subfield_elements(ctx, q):
        y = ctx.add(ctx.omega, x)
        if y == 0:
            continue  # chi(0) = 0 contributes nothing
        thetas.append(TWO_PI * ((nu * ctx.discrete_log(y)) % m) / m)
    arr = np.array(thetas, dtype=np.float64)
    return complex(math.fsum(np.cos(arr)), math.fsum(np.sin(arr)))
