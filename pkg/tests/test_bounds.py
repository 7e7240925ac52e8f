"""Reference bounds, baselines, and report rows."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from powersum.bounds import (BaselineStats, BoundReport, erdos_renyi_bound,
                             katz_bound, montgomery_reference, random_tuple,
                             random_unimodular_baseline, roots_of_unity_tuple,
                             turan_constant, turan_lower)
from powersum.sweeps import eval_power_sum, sweep_naive

import numpy as np


# ----------------------------------------------------------------------
# Closed-form bounds
# ----------------------------------------------------------------------

def test_erdos_renyi_values():
    assert erdos_renyi_bound(10, 100) == pytest.approx(
        math.sqrt(60 * math.log(101)), abs=0)
    assert erdos_renyi_bound(1, 1) == pytest.approx(math.sqrt(6 * math.log(2)),
                                                    abs=1e-12)
    assert erdos_renyi_bound(1, 1) == pytest.approx(2.039, abs=1e-3)


@given(n=st.integers(1, 500), m=st.integers(1, 10 ** 6))
@settings(max_examples=50, deadline=None)
def test_erdos_renyi_monotone(n, m):
    assert erdos_renyi_bound(n + 1, m) >= erdos_renyi_bound(n, m)
    assert erdos_renyi_bound(n, m + 1) >= erdos_renyi_bound(n, m)


def test_katz_values():
    assert katz_bound(9, 2) == pytest.approx(3.0, abs=0)
    assert katz_bound(3, 2) == pytest.approx(math.sqrt(3), abs=0)
    assert katz_bound(4, 3) == pytest.approx(4.0, abs=0)
    with pytest.raises(ValueError):
        katz_bound(1, 2)


def test_turan_lower_values():
    assert turan_lower(4, 1) == pytest.approx(2.0, abs=1e-12)
    assert turan_lower(4, 2) == pytest.approx(24 ** 0.25, abs=1e-12)
    with pytest.raises(ValueError):
        turan_lower(4, 5)


def test_turan_lower_s1_is_sqrt_n():
    for n in [1, 2, 3, 10, 100, 1000, 12345]:
        assert abs(turan_lower(n, 1) - math.sqrt(n)) <= 1e-12 * math.sqrt(n)


def test_turan_constants():
    assert turan_constant(2) == pytest.approx(1.0, abs=1e-15)
    assert turan_constant(3) == turan_constant(2)
    assert turan_constant(4) == pytest.approx(2 ** 0.25, abs=1e-12)
    assert turan_constant(5) == turan_constant(4)


def test_montgomery_reference():
    assert montgomery_reference(100, 2) == pytest.approx(math.sqrt(200), abs=0)
    assert montgomery_reference(100, 3) == pytest.approx(math.sqrt(300), abs=0)
    assert montgomery_reference(101, 2) > montgomery_reference(100, 2)
    assert montgomery_reference(100, 2.5) > montgomery_reference(100, 2)


# ----------------------------------------------------------------------
# Roots of unity
# ----------------------------------------------------------------------

def test_roots_of_unity_vanishing_range():
    tup = roots_of_unity_tuple(4)
    assert sweep_naive(tup, 1, 3).max_abs <= 1e-10


def test_roots_of_unity_full_period_peak():
    tup = roots_of_unity_tuple(4)
    assert eval_power_sum(tup, 4) == pytest.approx(4.0, abs=1e-12)


def test_roots_of_unity_single():
    tup = roots_of_unity_tuple(1)
    assert tup.entries == ((0, 1),)


# ----------------------------------------------------------------------
# Random baseline
# ----------------------------------------------------------------------

def test_random_baseline_reproducible():
    a = random_unimodular_baseline(8, 64, seed=123, trials=3)
    b = random_unimodular_baseline(8, 64, seed=123, trials=3)
    assert a.per_trial_max == b.per_trial_max


def test_random_baseline_trivial_tuple():
    stats = random_unimodular_baseline(1, 1, seed=0, trials=5)
    assert all(v == pytest.approx(1.0, abs=1e-12) for v in stats.per_trial_max)


def test_random_baseline_small_run_within_bound():
    stats = random_unimodular_baseline(32, 128, seed=7, trials=5)
    assert stats.fraction_within == 1.0


def test_random_tuple_discretization():
    tup = random_tuple(6, np.random.default_rng(0))
    assert all(den == 1 << 32 for _, den in tup.entries)


# ----------------------------------------------------------------------
# Report rows
# ----------------------------------------------------------------------

def test_bound_report_csv():
    row = BoundReport(n=24, m_or_range="1:576", construction="pipeline",
                      measured_max=5.0, katz=math.sqrt(29),
                      turan_lower=math.sqrt(24), er_bound=10.0, mont_ref=None)
    text = row.csv_row()
    assert text.startswith("24,1:576,pipeline,5.0,")
    assert text.endswith(",")  # trailing empty mont_ref
    assert len(text.split(",")) == len(BoundReport.CSV_HEADER.split(","))
