"""Shared generators and independent oracles for the test suite.

The oracles deliberately avoid the library code paths they check: binomial
coefficients come from an additive Pascal triangle, transform values from
a separate signed sum over explicit value dictionaries, and depth from a
scan that extends past the a-priori search window.
"""

import random

from qdepth import FiniteSequence, GeometricSequence, PolynomialSequence


def pascal_binomial(m: int, t: int) -> int:
    if t < 0 or t > m:
        return 0
    row = [1]
    for _ in range(m):
        row = [1] + [row[i] + row[i + 1] for i in range(len(row) - 1)] + [1]
    return row[t]


def values_dict(h, lo: int, hi: int) -> dict:
    return {j: h.value_at(j) for j in range(lo, hi + 1)}


def oracle_beta(values: dict, k: int, d: int) -> int:
    total = 0
    for j, v in values.items():
        if j <= k:
            total += (-1) ** (k - j) * pascal_binomial(d - j, k - j) * v
    return total


def oracle_qdepth(h, scan_past: int = 5) -> int:
    """Largest d with a fully non-negative table, scanned past the search cap."""
    st = h.stats()
    ub = st.k0 + st.c if st.kf is None else min(st.kf, st.k0 + st.c)
    vals = values_dict(h, st.k0, ub + scan_past)
    best = None
    for d in range(st.k0, ub + scan_past + 1):
        if all(oracle_beta(vals, k, d) >= 0 for k in range(st.k0, d + 1)):
            best = d
    return best


def random_finite(rng: random.Random, max_window: int = 8, max_value: int = 20,
                  offset_lo: int = -5, offset_hi: int = 5) -> FiniteSequence:
    width = rng.randint(1, max_window)
    values = [rng.randint(0, max_value) for _ in range(width)]
    if not any(values):
        values[rng.randrange(width)] = rng.randint(1, max_value)
    return FiniteSequence(rng.randint(offset_lo, offset_hi), values)


def random_polynomial(rng: random.Random, max_degree: int = 5, max_coeff: int = 20) -> PolynomialSequence:
    degree = rng.randint(1, max_degree)
    coeffs = [rng.randint(0, max_coeff) for _ in range(degree + 1)]
    coeffs[0] = rng.randint(1, max_coeff)
    coeffs[-1] = rng.randint(1, max_coeff)
    return PolynomialSequence(coeffs)


def random_geometric(rng: random.Random, max_scale: int = 9, max_ratio: int = 9) -> GeometricSequence:
    return GeometricSequence(rng.randint(1, max_scale), rng.randint(1, max_ratio))


def random_sequence(rng: random.Random):
    roll = rng.random()
    if roll < 0.6:
        return random_finite(rng)
    if roll < 0.8:
        return random_polynomial(rng, max_degree=3, max_coeff=9)
    return random_geometric(rng)


def growth_sequence(rng: random.Random, d: int) -> FiniteSequence:
    """A sequence satisfying the stepwise growth test at d, by construction."""
    k0 = rng.randint(-3, 3)
    values = [rng.randint(1, 5)]
    for k in range(k0 + 1, d + 1):
        floor = (d - k + 1) * values[-1]
        values.append(floor + rng.randint(0, 3))
    return FiniteSequence(k0, values)
