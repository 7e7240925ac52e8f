"""Exact arithmetic in GF(p^d) with full discrete-log tables.

Field elements are represented by their canonical integer encoding
sum(coeffs[i] * p**i), where coeffs are the coefficients of the residue
polynomial (coefficient of t^i at position i).  This gives a total order
on elements that every deterministic tie-break in the package relies on.

A :class:`FieldContext` is immutable once built: its log and exp tables
are numpy arrays flagged read-only, so concurrent reads are safe.  Table
construction is a single O(M) pass over the powers of the chosen
primitive element (M = p^d - 1), which doubles as the proof that the
element is primitive.  That keeps the module honest at desk scale
(M up to a few million) without any index-calculus machinery.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Optional, Sequence

import numpy as np

from .errors import BudgetError, ReducibleModulusError

#: Default cap on the multiplicative group order M = p^d - 1.  Two int64
#: tables (encoding -> exponent and exponent -> encoding) are kept per
#: context, so memory is roughly 16 bytes per element.
DEFAULT_TABLE_BUDGET = 1 << 22

_ORBIT_BLOCK = 4096

# Witnesses making Miller-Rabin deterministic for all n < 3.3e24, far
# beyond anything this package builds.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


# ----------------------------------------------------------------------
# Integer number theory helpers
# ----------------------------------------------------------------------

def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division; fine at desk scale."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    factors: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def prime_power_decomposition(q: int) -> tuple[int, int]:
    """Return (p, a) with q = p^a, or raise ValueError if q is not a prime power."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    factors = factorize(q)
    if len(factors) != 1:
        raise ValueError(f"{q} is not a prime power")
    ((p, a),) = factors.items()
    return p, a


# ----------------------------------------------------------------------
# Polynomials over GF(p): little-endian coefficient tuples, no trailing
# zeros (the zero polynomial is the empty tuple).
# ----------------------------------------------------------------------

def _poly_trim(c: list[int]) -> tuple[int, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_rem(f: Sequence[int], g: Sequence[int], p: int) -> tuple[int, ...]:
    """Remainder of f modulo a monic polynomial g."""
    e = len(g) - 1
    r = list(f)
    while len(r) - 1 >= e and r:
        lead = r[-1]
        if lead:
            off = len(r) - 1 - e
            for k in range(e):
                r[off + k] = (r[off + k] - lead * g[k]) % p
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return tuple(r)


def _poly_mulmod(a: Sequence[int], b: Sequence[int], modulus: Sequence[int], p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    res = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    return _poly_rem(res, modulus, p)


def _monic_polys(degree: int, p: int):
    """Yield all monic polynomials of the given degree in lexicographic
    order of their low-degree-first coefficient tuples."""
    for tail in product(range(p), repeat=degree):
        yield tail + (1,)


def irreducibility_witness(modulus: Sequence[int], p: int) -> Optional[tuple[int, ...]]:
    """Return a nontrivial monic factor of ``modulus`` over GF(p), or None.

    Trial division against every monic polynomial of degree up to
    deg(modulus)/2, ascending, so the witness has minimal degree.
    """
    d = len(modulus) - 1
    for e in range(1, d // 2 + 1):
        for g in _monic_polys(e, p):
            if not _poly_rem(modulus, g, p):
                return g
    return None


def smallest_irreducible(p: int, d: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree d over GF(p).

    Coefficient tuples are compared low-degree-first, matching the order
    :func:`_monic_polys` enumerates them in.
    """
    if d == 1:
        return (0, 1)  # t itself; every monic linear polynomial is irreducible
    for cand in _monic_polys(d, p):
        if irreducibility_witness(cand, p) is None:
            return cand
    raise AssertionError("unreachable: irreducibles exist for every degree")


# ----------------------------------------------------------------------
# Field contexts
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class FieldParams:
    """Shape of a realized field: characteristic, degree, modulus polynomial."""

    p: int
    d: int
    modulus: tuple[int, ...]

    def as_dict(self) -> dict:
        return {"p": self.p, "d": self.d, "modulus": list(self.modulus)}


class FieldContext:
    """A realized GF(p^d) with a primitive element and full log table.

    Elements are plain ints in [0, p^d): the canonical encodings.  All
    operations reduce modulo p and the modulus polynomial.  Do not
    construct directly; use :func:`build_field`.
    """

    def __init__(self, params: FieldParams, omega: int,
                 exp_table: np.ndarray, log_table: np.ndarray):
        self.params = params
        self.p = params.p
        self.d = params.d
        self.modulus = params.modulus
        self.size = params.p ** params.d
        self.order = self.size - 1
        self.omega = omega
        self.exp_table = exp_table
        self.log_table = log_table
        self._pp = tuple(params.p ** i for i in range(params.d))

    # -- encoding ------------------------------------------------------

    def encode(self, coeffs: Sequence[int]) -> int:
        return sum((c % self.p) * w for c, w in zip(coeffs, self._pp))

    def decode(self, x: int) -> tuple[int, ...]:
        if not 0 <= x < self.size:
            raise ValueError(f"encoding {x} out of range for GF({self.p}^{self.d})")
        out = []
        for _ in range(self.d):
            x, r = divmod(x, self.p)
            out.append(r)
        return tuple(out)

    def _poly(self, x: int) -> tuple[int, ...]:
        return _poly_trim(list(self.decode(x)))

    # -- arithmetic ----------------------------------------------------

    def add(self, x: int, y: int) -> int:
        a, b = self.decode(x), self.decode(y)
        return self.encode([(ai + bi) % self.p for ai, bi in zip(a, b)])

    def sub(self, x: int, y: int) -> int:
        a, b = self.decode(x), self.decode(y)
        return self.encode([(ai - bi) % self.p for ai, bi in zip(a, b)])

    def mul(self, x: int, y: int) -> int:
        prod = _poly_mulmod(self._poly(x), self._poly(y), self.modulus, self.p)
        return self.encode(prod + (0,) * (self.d - len(prod)))

    def pow(self, x: int, e: int) -> int:
        if e < 0:
            raise ValueError("negative exponents unsupported; use order - e")
        result, base = 1, x
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def discrete_log(self, x: int) -> int:
        if x == 0:
            raise ValueError("discrete log of zero is undefined")
        if not 0 < x < self.size:
            raise ValueError(f"encoding {x} out of range for GF({self.p}^{self.d})")
        return int(self.log_table[x])

    # -- serialization -------------------------------------------------

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "d": self.d,
            "modulus": list(self.modulus),
            "omega": self.omega,
            "order": self.order,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)

    def __repr__(self) -> str:
        return (f"FieldContext(GF({self.p}^{self.d}), modulus={self.modulus}, "
                f"omega={self.omega}, order={self.order})")


def context_from_dict(data: dict) -> FieldContext:
    """Rebuild a context from its dump; log tables are reconstructed."""
    ctx = build_field(int(data["p"]), int(data["d"]), tuple(int(c) for c in data["modulus"]))
    if data.get("omega") is not None and int(data["omega"]) != ctx.omega:
        raise ValueError(
            f"dump names omega={data['omega']} but deterministic rebuild chose {ctx.omega}"
        )
    return ctx


def _effective_table_budget(budget: Optional[int]) -> int:
    limit = DEFAULT_TABLE_BUDGET if budget is None else budget
    env = os.environ.get("POWERSUM_BUDGET_MB")
    if env:
        # two int64 tables of M entries each -> 16 bytes per element
        limit = min(limit, (int(env) << 20) // 16)
    return limit


def _mul_by_matrix(ctx_modulus: tuple[int, ...], p: int, d: int,
                   elem: tuple[int, ...]) -> np.ndarray:
    """Matrix of multiplication-by-elem on the coefficient space, columns
    indexed by the basis 1, t, ..., t^(d-1)."""
    cols = []
    cur = elem
    for _ in range(d):
        col = list(cur) + [0] * (d - len(cur))
        cols.append(col)
        # multiply by t, then reduce the single possible overflow term
        shifted = [0] + list(cur)
        cur = _poly_rem(shifted, ctx_modulus, p)
    return np.array(cols, dtype=np.int64).T


def _matpow_mod(a: np.ndarray, e: int, p: int) -> np.ndarray:
    result = np.eye(a.shape[0], dtype=np.int64)
    base = a % p
    while e:
        if e & 1:
            result = (result @ base) % p
        base = (base @ base) % p
        e >>= 1
    return result


def _build_tables(params: FieldParams, omega: int) -> tuple[np.ndarray, np.ndarray]:
    """Orbit of 1 under multiplication by omega, computed in numpy blocks.

    Returns (exp_table, log_table); raises if the orbit is shorter than
    the full group, which would mean omega is not primitive.
    """
    p, d = params.p, params.d
    size = p ** d
    order = size - 1
    omega_poly = _poly_trim([(omega // p ** i) % p for i in range(d)])
    a = _mul_by_matrix(params.modulus, p, d, omega_poly)
    pp = np.array([p ** i for i in range(d)], dtype=np.int64)

    block = min(_ORBIT_BLOCK, order)
    v = np.zeros((d, block), dtype=np.int64)
    v[0, 0] = 1
    for j in range(1, block):
        v[:, j] = (a @ v[:, j - 1]) % p
    a_block = _matpow_mod(a, block, p)

    exp_table = np.empty(order, dtype=np.int64)
    pos = 0
    while pos < order:
        take = min(block, order - pos)
        exp_table[pos:pos + take] = pp @ v[:, :take]
        pos += take
        if pos < order:
            v = (a_block @ v) % p

    log_table = np.full(size, -1, dtype=np.int64)
    log_table[exp_table] = np.arange(order, dtype=np.int64)
    if int((log_table[1:] >= 0).sum()) != order:
        raise AssertionError("orbit of omega does not cover the multiplicative group")
    exp_table.flags.writeable = False
    log_table.flags.writeable = False
    return exp_table, log_table


def _has_full_order(params: FieldParams, x_poly: tuple[int, ...],
                    order: int, prime_factors: Sequence[int]) -> bool:
    for r in prime_factors:
        acc: tuple[int, ...] = (1,)
        base = x_poly
        e = order // r
        while e:
            if e & 1:
                acc = _poly_mulmod(acc, base, params.modulus, params.p)
            base = _poly_mulmod(base, base, params.modulus, params.p)
            e >>= 1
        if acc == (1,):
            return False
    return True


@lru_cache(maxsize=None)
def _build_field_cached(p: int, d: int, modulus: Optional[tuple[int, ...]],
                        budget: Optional[int]) -> FieldContext:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if d < 1:
        raise ValueError("extension degree must be at least 1")
    order = p ** d - 1
    limit = _effective_table_budget(budget)
    if order > limit:
        raise BudgetError(
            f"group order {order} exceeds table budget {limit}; "
            "raise the budget or pick a smaller field"
        )

    if modulus is None:
        modulus = smallest_irreducible(p, d)
    else:
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != d + 1 or modulus[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {d}")
        witness = irreducibility_witness(modulus, p)
        if witness is not None:
            raise ReducibleModulusError(modulus, witness)
    params = FieldParams(p=p, d=d, modulus=modulus)

    prime_factors = sorted(factorize(order)) if order > 1 else []
    omega = None
    for enc in range(1, p ** d):
        coeffs = []
        x = enc
        for _ in range(d):
            x, r = divmod(x, p)
            coeffs.append(r)
        x_poly = _poly_trim(coeffs)
        if order == 1 or _has_full_order(params, x_poly, order, prime_factors):
            omega = enc
            break
    assert omega is not None

    exp_table, log_table = _build_tables(params, omega)
    return FieldContext(params, omega, exp_table, log_table)


def build_field(p: int, d: int, modulus: Optional[Sequence[int]] = None,
                budget: Optional[int] = None) -> FieldContext:
    """Realize GF(p^d) deterministically.

    When ``modulus`` is omitted, the lexicographically smallest monic
    irreducible of degree d is chosen (coefficients compared
    low-degree-first), and omega is the element of smallest canonical
    encoding whose multiplicative order is exactly p^d - 1.  Identical
    inputs always produce the identical context; results are cached.
    """
    mod_key = None if modulus is None else tuple(int(c) for c in modulus)
    return _build_field_cached(int(p), int(d), mod_key, budget)


# ----------------------------------------------------------------------
# Spec surface: free-function forms
# ----------------------------------------------------------------------

def fe_arith(ctx: FieldContext, op: str, x: int, y: int) -> int:
    """Dispatch a field operation by name: add, mul, or pow (y is the
    integer exponent for pow)."""
    if op == "add":
        return ctx.add(x, y)
    if op == "mul":
        return ctx.mul(x, y)
    if op == "pow":
        return ctx.pow(x, y)
    raise ValueError(f"unknown field operation {op!r}")


def discrete_log(ctx: FieldContext, x: int) -> int:
    """Exponent j in [0, M-1] with omega^j = x; log(omega) = 1."""
    return ctx.discrete_log(x)


def subfield_elements(ctx: FieldContext, q: int) -> list[int]:
    """The q elements of the subfield GF(q) inside the context's field.

    Requires q = p^a with a dividing d.  These are exactly the solutions
    of x^q = x: zero together with the unique multiplicative subgroup of
    order q - 1, generated by omega^(M / (q-1)).  Returned in canonical
    encoding order.
    """
    p_part, a = prime_power_decomposition(q)
    if p_part != ctx.p or ctx.d % a != 0:
        raise ValueError(
            f"GF({q}) is not a subfield of GF({ctx.p}^{ctx.d})"
        )
    step = ctx.order // (q - 1)
    members = {0} | {int(ctx.exp_table[(j * step) % ctx.order]) for j in range(q - 1)}
    return sorted(members)


def multiplicative_order(ctx: FieldContext, x: int) -> int:
    """Order of a nonzero element, from its discrete log."""
    j = ctx.discrete_log(x)
    if j == 0:
        return 1
    return ctx.order // math.gcd(j, ctx.order)
