"""Bose-Chowla sets, B_h verification, and the character-sum identity."""

import math
from itertools import combinations_with_replacement

import pytest

from powersum import gf
from powersum.errors import BudgetError
from powersum.sidon import (SidonSet, bh_collision, bose_chowla,
                            character_sum_direct, field_context,
                            unimodular_tuple, verify_bh)
from powersum.sweeps import AngleTuple, eval_power_sum


def brute_bh_ok(exponents, h, modulus):
    """Independent exhaustive check used as the oracle."""
    sums = [sum(ms) % modulus
            for ms in combinations_with_replacement(sorted(exponents), h)]
    return len(set(sums)) == len(sums)


# ----------------------------------------------------------------------
# bose_chowla
# ----------------------------------------------------------------------

def test_bose_chowla_22():
    s = bose_chowla(2, 2)
    assert s.exponents == (1, 2) and s.modulus == 3


def test_bose_chowla_32():
    # oracle: enumerate powers of omega in GF(9); see test_gf for the
    # field-level derivation
    s = bose_chowla(3, 2)
    assert s.exponents == (1, 6, 7) and s.modulus == 8


def test_bose_chowla_23():
    s = bose_chowla(2, 3)
    assert len(s.exponents) == 2 and s.modulus == 7
    assert brute_bh_ok(s.exponents, 3, 7)


def test_bose_chowla_rejects_non_prime_power():
    with pytest.raises(ValueError, match="not a prime power"):
        bose_chowla(6, 2)


def test_bose_chowla_rejects_h_below_two():
    with pytest.raises(ValueError):
        bose_chowla(3, 1)


def test_bose_chowla_budget():
    with pytest.raises(BudgetError):
        bose_chowla(2, 13, budget=100)


def test_bose_chowla_exponents_distinct_and_sorted():
    for q, h in [(4, 2), (5, 2), (8, 2), (9, 2), (3, 3), (4, 3)]:
        s = bose_chowla(q, h)
        assert len(set(s.exponents)) == q
        assert list(s.exponents) == sorted(s.exponents)


def test_bose_chowla_exponents_consistent_with_field():
    s = bose_chowla(5, 2)
    ctx = field_context(s)
    expected = sorted(ctx.discrete_log(ctx.add(ctx.omega, x))
                      for x in gf.subfield_elements(ctx, 5))
    assert list(s.exponents) == expected


# ----------------------------------------------------------------------
# verify_bh
# ----------------------------------------------------------------------

def test_verify_bh_accepts_12_mod_3():
    # pair sums of {1, 2} mod 3 are 2, 0, 1: all distinct
    s = bose_chowla(2, 2)
    assert verify_bh(s).ok


def test_verify_bh_accepts_167_mod_8():
    # pair sums 2, 7, 0, 4, 5, 6: distinct
    assert bh_collision((1, 6, 7), 2, 8) is None


def test_planted_collision_witness():
    witness = bh_collision((0, 1, 2), 2, 7)
    assert witness == ((0, 2), (1, 1))


def test_verify_bh_budget():
    s = bose_chowla(9, 2)
    with pytest.raises(BudgetError):
        verify_bh(s, budget=10)


def test_verify_bh_sampling_mode():
    s = bose_chowla(9, 2)
    check = verify_bh(s, samples=200, seed=1)
    assert check.ok and check.probabilistic
    assert check.as_dict()["mode"] == "probabilistic"


def test_verify_bh_matches_brute_oracle():
    for q, h in [(2, 2), (3, 2), (4, 2), (5, 2), (7, 2), (2, 3), (3, 3)]:
        s = bose_chowla(q, h)
        assert verify_bh(s).ok == brute_bh_ok(s.exponents, h, s.modulus)


def test_sidon_set_rejects_duplicates():
    with pytest.raises(ValueError):
        SidonSet(q=2, h=2, modulus=3, exponents=(1, 1),
                 field=gf.FieldParams(2, 2, (1, 1, 1)))


# ----------------------------------------------------------------------
# unimodular_tuple
# ----------------------------------------------------------------------

def test_tuple_direct_reading():
    assert unimodular_tuple(bose_chowla(2, 2)).entries == ((1, 3), (2, 3))
    assert unimodular_tuple(bose_chowla(3, 2)).entries == ((1, 8), (6, 8), (7, 8))


def test_tuple_empty_degenerate():
    empty = SidonSet(q=0, h=2, modulus=1, exponents=(),
                     field=gf.FieldParams(2, 1, (0, 1)))
    assert unimodular_tuple(empty) == AngleTuple(())


# ----------------------------------------------------------------------
# character_sum_direct
# ----------------------------------------------------------------------

def test_character_sum_gf4_primitive_cube_roots():
    ctx = field_context(bose_chowla(2, 2))
    val = character_sum_direct(ctx, 2, 1)
    assert val == pytest.approx(-1.0, abs=1e-12)


def test_character_sum_gf9_exact_trig():
    ctx = field_context(bose_chowla(3, 2))
    val = character_sum_direct(ctx, 3, 1)
    assert val == pytest.approx(complex(math.sqrt(2), -1.0), abs=1e-12)
    assert abs(val) == pytest.approx(math.sqrt(3), abs=1e-12)


def test_character_sum_trivial_character():
    # nu = 8 = M: every term is 1
    ctx = field_context(bose_chowla(3, 2))
    assert character_sum_direct(ctx, 3, 8) == pytest.approx(3.0, abs=1e-12)


def test_character_sum_matches_power_sum():
    for q, h in [(3, 2), (5, 2), (7, 2), (2, 3), (3, 3)]:
        s = bose_chowla(q, h)
        ctx = field_context(s)
        tup = unimodular_tuple(s)
        for nu in range(1, s.modulus):
            assert abs(character_sum_direct(ctx, q, nu)
                       - eval_power_sum(tup, nu)) <= 1e-9


def test_character_sum_respects_katz_bound():
    for q, h in [(3, 2), (4, 2), (5, 2), (3, 3)]:
        s = bose_chowla(q, h)
        ctx = field_context(s)
        bound = (h - 1) * math.sqrt(q)
        for nu in range(1, s.modulus - 1):
            assert abs(character_sum_direct(ctx, q, nu)) <= bound + 1e-6


# ----------------------------------------------------------------------
# Serialization
# ----------------------------------------------------------------------

def test_sidon_dump_shape():
    d = bose_chowla(3, 2).as_dict()
    assert set(d) == {"q", "h", "M", "exponents", "field"}
    assert d["exponents"] == [1, 6, 7]
    assert set(d["field"]) == {"p", "d", "modulus"}
