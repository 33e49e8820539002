"""Exact progression densities and the shift minimum over Z."""

from fractions import Fraction
from math import lcm

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from ringsieve.errors import PeriodTooLarge, SearchSpaceTooLarge
from ringsieve.sieve import Progression, rogers_min_density, union_density


def test_progression_normalizes_shift():
    p = Progression(7, 3)
    assert p.shift == 1 and p.modulus == 3
    with pytest.raises(ValueError):
        Progression(0, 0)


def test_union_two_and_three():
    report = union_density([(0, 2), (0, 3)])
    assert report.density == Fraction(2, 3)
    assert report.period == 6 and report.residues == 4


def test_single_progression_any_shift():
    for a in range(7):
        assert union_density([(a, 7)]).density == Fraction(1, 7)


def test_partition_has_density_one():
    assert union_density([(0, 2), (1, 2)]).density == 1


def test_density_unaffected_by_common_shift():
    base = union_density([(0, 4), (1, 6), (3, 10)])
    for t in range(1, 12):
        moved = union_density([(0 + t, 4), (1 + t, 6), (3 + t, 10)])
        assert moved.density == base.density


def test_density_stable_under_period_multiples():
    # computing modulo any common multiple gives the same fraction
    report = union_density([(1, 4), (2, 6)])
    bigger = union_density([(1, 4), (2, 6), (0, 1)])  # (0,1) covers all: sanity
    assert bigger.density == 1
    doubled = union_density([(1, 4), (2, 6), (1, 24)])
    assert doubled.period == 24
    assert union_density([(1, 4), (2, 6)]).density == report.density


def test_density_matches_literal_counting():
    for progs in [[(0, 2), (0, 3)], [(1, 4), (3, 6)], [(0, 5), (2, 5), (4, 5)]]:
        assert union_density(progs).density == oracles.density_by_counting(progs)


def test_period_cap():
    with pytest.raises(PeriodTooLarge):
        union_density([(0, 1000003)], period_cap=10**6)


def test_min_density_two_three():
    report = rogers_min_density([2, 3])
    assert report.min_density == Fraction(2, 3)
    assert report.witness_shifts == (0, 0)


def test_min_density_singleton():
    assert rogers_min_density([9]).min_density == Fraction(1, 9)


def test_min_density_2_4_4():
    report = rogers_min_density([2, 4, 4])
    assert report.min_density == report.density
    # oracle: scan all 32 unpinned shift tuples
    assert report.min_density == oracles.min_density_all_shifts([2, 4, 4])


def test_min_density_matches_unpinned_oracle():
    for moduli in [(2, 3), (4, 6), (3, 5, 6), (2, 2, 3), (6, 10, 15), (12, 8)]:
        assert rogers_min_density(list(moduli)).min_density == (
            oracles.min_density_all_shifts(list(moduli))
        )


def test_min_density_tuple_cap():
    with pytest.raises(SearchSpaceTooLarge):
        rogers_min_density([2, 1000, 1000, 1000], tuple_cap=10**6)


def test_min_density_workers_identical():
    base = rogers_min_density([4, 6, 9], workers=1)
    par = rogers_min_density([4, 6, 9], workers=4)
    assert base == par


@given(
    st.lists(st.integers(1, 10), min_size=1, max_size=3),
    st.integers(0, 30),
)
@settings(max_examples=60, deadline=None)
def test_density_shift_invariance_property(moduli, t):
    progs = [(i, q) for i, q in enumerate(moduli)]
    moved = [(a + t, q) for a, q in progs]
    assert union_density(progs).density == union_density(moved).density


@given(st.lists(st.integers(1, 8), min_size=1, max_size=3))
@settings(max_examples=40, deadline=None)
def test_min_is_zero_shift_density_property(moduli):
    report = rogers_min_density(moduli)
    zero = union_density([(0, q) for q in moduli])
    assert report.min_density == zero.density
    assert report.min_density == oracles.min_density_all_shifts(moduli)
