"""Depth computation, certificates, and the side conditions."""

import math
import random

import pytest

from helpers import growth_sequence, oracle_qdepth, random_finite, random_sequence
from qdepth import (
    DomainError,
    FiniteSequence,
    GeometricSequence,
    PolynomialSequence,
    add,
    beta,
    depth_upper_bound,
    necessary_condition_holds,
    qdepth,
    qdepth_at_least,
    qdepth_value,
    sufficient_condition_holds,
)

WORKED = FiniteSequence(-2, [2, 4, 7, 3, 1])


def falling_factorial(d: int) -> FiniteSequence:
    return FiniteSequence(0, [math.factorial(d) // math.factorial(d - j) for j in range(d + 1)])


def test_qdepth_worked_example():
    g = WORKED.shifted(-3)
    result = qdepth(g)
    assert result.qdepth == 3
    assert result.upper_bound_used == 3
    assert result.accepted_table.entries == {1: 2, 2: 0, 3: 5}
    assert result.rejections == ()
    assert qdepth_value(WORKED) == 0


def test_qdepth_geometric_equals_ratio():
    for a in range(1, 6):
        for r in range(1, 13):
            assert qdepth_value(GeometricSequence(a, r)) == r


def test_qdepth_single_point_is_support_start():
    result = qdepth(FiniteSequence(5, [9]))
    assert result.qdepth == 5
    assert result.upper_bound_used == 5


def test_qdepth_of_linear_unit_tail():
    assert qdepth_value(PolynomialSequence([1, 1])) == 2


def test_qdepth_falling_factorial():
    for d in range(1, 7):
        assert qdepth_value(falling_factorial(d)) == d


def test_qdepth_matches_independent_scan():
    rng = random.Random(53)
    for _ in range(120):
        h = random_finite(rng, max_window=6, max_value=12)
        assert qdepth_value(h) == oracle_qdepth(h)
    for _ in range(40):
        h = random_sequence(rng)
        assert qdepth_value(h) == oracle_qdepth(h)


def test_result_certificates():
    rng = random.Random(59)
    for _ in range(120):
        h = random_sequence(rng)
        st = h.stats()
        result = qdepth(h)
        ub = depth_upper_bound(h)
        assert result.upper_bound_used == ub
        assert st.k0 <= result.qdepth <= ub
        assert result.accepted_table.first_negative is None
        assert all(v >= 0 for v in result.accepted_table.entries.values())
        assert sorted(r.d for r in result.rejections) == list(range(result.qdepth + 1, ub + 1))
        for r in result.rejections:
            assert r.beta < 0
            assert r.k <= r.d
            assert beta(h, r.k, r.d) == r.beta


def test_qdepth_at_least_examples():
    check = qdepth_at_least(PolynomialSequence([1, 0, 0, 15]), 16)
    assert not check.ok
    assert check.witness_k == 3
    assert check.witness_beta == -168
    assert qdepth_at_least(WORKED, -2).ok
    assert qdepth_at_least(WORKED.shifted(-3), 3).ok
    with pytest.raises(DomainError):
        qdepth_at_least(WORKED, -3)


def test_monotone_acceptance_below_depth():
    rng = random.Random(61)
    for _ in range(80):
        h = random_sequence(rng)
        st = h.stats()
        result = qdepth(h)
        d = result.qdepth
        for dp in range(st.k0, d + 1):
            assert qdepth_at_least(h, dp).ok
        dp = rng.randint(st.k0, d)
        for k in range(st.k0, dp + 1):
            assert beta(h, k, dp) >= beta(h, k, d) >= 0


def test_rejection_above_depth():
    rng = random.Random(67)
    for _ in range(80):
        h = random_sequence(rng)
        result = qdepth(h)
        for dp in range(result.qdepth + 1, result.upper_bound_used + 1):
            check = qdepth_at_least(h, dp)
            assert not check.ok
            assert check.witness_beta < 0


def test_necessary_condition_examples():
    assert not necessary_condition_holds(FiniteSequence(0, [1, 1, 1]), 2)
    rng = random.Random(71)
    for _ in range(60):
        h = random_sequence(rng)
        st = h.stats()
        assert necessary_condition_holds(h, st.k0)
        assert necessary_condition_holds(h, qdepth_value(h))


def test_sufficient_condition_examples():
    for r in range(1, 9):
        assert sufficient_condition_holds(GeometricSequence(1, r), r)
    for d in range(1, 8):
        assert sufficient_condition_holds(falling_factorial(d), d)
    assert not sufficient_condition_holds(FiniteSequence(0, [1, 1]), 2)


def test_implication_chain():
    rng = random.Random(73)
    hit_sufficient = 0
    for i in range(150):
        if i % 2:
            target = rng.randint(1, 6)
            h = growth_sequence(rng, target)
            d = max(h.stats().k0, target - rng.randint(0, 2))
        else:
            h = random_sequence(rng)
            d = h.stats().k0 + rng.randint(0, 6)
        at_least_d = qdepth_value(h) >= d
        if sufficient_condition_holds(h, d):
            hit_sufficient += 1
            assert at_least_d
        if at_least_d:
            assert necessary_condition_holds(h, d)
    assert hit_sufficient >= 30


def test_scale_law():
    rng = random.Random(79)
    for _ in range(60):
        h = random_sequence(rng)
        base = qdepth_value(h)
        for c in (1, 2, 3, 7, 100):
            assert qdepth_value(h.scaled(c)) == base


def test_sum_law():
    rng = random.Random(83)
    for _ in range(80):
        g = random_finite(rng)
        h = random_finite(rng)
        assert qdepth_value(add(g, h)) >= min(qdepth_value(g), qdepth_value(h))


def test_shift_law():
    rng = random.Random(89)
    for _ in range(60):
        h = random_sequence(rng)
        base = qdepth_value(h)
        for m in range(-5, 6):
            assert qdepth_value(h.shifted(m)) == base - m


def test_factorial_shift_law():
    for d in (3, 5):
        h = falling_factorial(d)
        for m in range(-3, 4):
            assert qdepth_value(h.shifted(m)) == d - m


def test_diagonal_entry_positive_for_monomial_tails():
    rng = random.Random(97)
    for _ in range(80):
        a = rng.randint(1, 12)
        b = rng.randint(1, 12)
        n = rng.randint(1, 4)
        h = PolynomialSequence([b] + [0] * (n - 1) + [a])
        ub = depth_upper_bound(h)
        for d in range(1, ub + 1):
            assert beta(h, d, d) > 0
