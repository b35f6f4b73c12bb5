"""Closed-form depth values and bounds for structured tails.

Covers geometric tails, the linear and quadratic families a*j^n + b for
n = 1 and n = 2, the general piecewise upper bound for those families with
its rational thresholds, and the 2^(n+1) cap for arbitrary polynomial
tails.  Everything is exact: thresholds are Fractions and the one
irrational boundary is compared by squaring, so pairs that sit exactly on
a threshold are classified correctly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .sequences import PolynomialSequence


@dataclass(frozen=True)
class PiecewisePrediction:
    """A predicted depth together with the interval of alpha that produced it.

    is_exact records whether the prediction is a proven equality rather
    than only an upper bound.
    """

    value: int
    branch: str
    is_exact: bool

    def to_json_dict(self) -> dict:
        return {"prediction": self.value, "branch": self.branch, "exact": self.is_exact}


def as_fraction(x) -> Fraction:
    """Coerce an int, Fraction or string like '22/3' to an exact Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError):
            raise DomainError(f"not an exact rational: {x!r}") from None
    raise DomainError(f"not an exact rational: {x!r}")


def monomial_plus_constant(a: int, b: int, degree: int) -> PolynomialSequence:
    """The tail a*j^degree + b as a polynomial sequence."""
    if degree < 1:
        raise DomainError(f"degree must be at least 1, got {degree}")
    return PolynomialSequence([b] + [0] * (degree - 1) + [a])


def geometric_qdepth(a: int, r: int) -> int:
    """Depth of the geometric tail a * r**j: always the ratio r."""
    if a < 1 or r < 1:
        raise DomainError("geometric tail needs positive scale and ratio")
    return r


def arithmetic_qdepth(a: int, b: int) -> PiecewisePrediction:
    """Exact depth of the linear tail a*j + b, as a function of alpha = a/b."""
    if a < 1 or b < 1:
        raise DomainError("linear tail needs positive a and b")
    alpha = Fraction(a, b)
    if alpha < 1:
        return PiecewisePrediction(1, "alpha in (0,1)", True)
    if alpha < 2:
        return PiecewisePrediction(2, "alpha in [1,2)", True)
    if alpha < 3:
        return PiecewisePrediction(3, "alpha in [2,3)", True)
    if alpha <= 4:
        return PiecewisePrediction(4, "alpha in [3,4]", True)
    return PiecewisePrediction(3, "alpha in (4,inf)", True)


def quadratic_qdepth(a: int, b: int) -> PiecewisePrediction:
    """Exact depth of the quadratic tail a*j^2 + b, as a function of alpha = a/b."""
    if a < 1 or b < 1:
        raise DomainError("quadratic tail needs positive a and b")
    alpha = Fraction(a, b)
    if alpha < 7:
        return PiecewisePrediction(int(alpha) + 1, "alpha in (0,7)", True)
    if alpha <= Fraction(22, 3):
        return PiecewisePrediction(8, "alpha in [7,22/3]", True)
    if alpha <= 8:
        return PiecewisePrediction(7, "alpha in (22/3,8]", True)
    if alpha <= 11:
        return PiecewisePrediction(6, "alpha in (8,11]", True)
    return PiecewisePrediction(5, "alpha in (11,inf)", True)


def lambda_threshold(n: int, m: int) -> Fraction:
    """The alpha at which the depth bound for a*j^n + b drops to 2^n + m - 1.

    Defined for 2 <= m <= 2^n; the subscript convention indexes the value
    as lambda_(2^n + 1 - m).  Thresholds grow strictly as m decreases.
    """
    if n < 1:
        raise DomainError(f"n must be at least 1, got {n}")
    if not 2 <= m <= 2**n:
        raise DomainError(f"m must lie in [2, {2**n}], got {m}")
    num = m * m + m * (2 ** (n + 1) - 3) + 4**n - 3 * 2**n + 4
    return Fraction(num, 2 * m - 2)


def compare_alpha1(alpha, n: int) -> int:
    """Compare alpha against 2^n + sqrt(4^n - 2^n + 2) - 1/2, exactly.

    Returns -1, 0 or 1.  Below this boundary the quadratic transform value
    at index 2 stays non-negative for every admissible d.  The comparison
    squares alpha + 1/2 - 2^n against 4^n - 2^n + 2 after a sign check, so
    no floating point is involved.
    """
    if n < 1:
        raise DomainError(f"n must be at least 1, got {n}")
    alpha = as_fraction(alpha)
    t = alpha + Fraction(1, 2) - 2**n
    if t <= 0:
        return -1
    radicand = 4**n - 2**n + 2
    tt = t * t
    if tt < radicand:
        return -1
    if tt == radicand:
        return 0
    return 1


def eq_bound(n: int, alpha) -> PiecewisePrediction:
    """Piecewise upper bound on the depth of a*j^n + b with alpha = a/b.

    Below 2^(n+1) - 1 the bound is floor(alpha) + 1; past that point it
    steps down from 2^(n+1) to 2^n + 1 at the rational thresholds given by
    lambda_threshold.  The bound is a proven equality when floor(alpha) + 1
    is at most 4, which is what is_exact reports.
    """
    if n < 1:
        raise DomainError(f"n must be at least 1, got {n}")
    alpha = as_fraction(alpha)
    if alpha <= 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    c = int(alpha) + 1
    exact = c <= 4
    top = 2 ** (n + 1) - 1
    if alpha < top:
        return PiecewisePrediction(c, f"alpha in (0,{top})", exact)
    prev = None
    for i in range(1, 2**n):
        lam = lambda_threshold(n, 2**n + 1 - i)
        if alpha <= lam:
            if i == 1:
                branch = f"alpha in [{top},{lam}]"
            else:
                branch = f"alpha in ({prev},{lam}]"
            return PiecewisePrediction(2 ** (n + 1) + 1 - i, branch, exact)
        prev = lam
    return PiecewisePrediction(2**n + 1, f"alpha in ({prev},inf)", exact)


def polynomial_upper_bound(degree: int) -> int:
    """Depth cap 2^(degree+1) for any polynomial tail with positive constant term."""
    if degree < 1:
        raise DomainError(f"degree must be at least 1, got {degree}")
    return 2 ** (degree + 1)
