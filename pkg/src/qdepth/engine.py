"""Exact computation of the depth invariant with full certificates.

The depth of a sequence h is the largest d such that every transform value
at d is non-negative.  It always lies between the support start k0 and
min(kf, k0 + c), so the search space is finite even for infinite tails.
The result carries the accepted table and, for every rejected candidate
above the answer, a witness entry that is negative.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .sequences import BetaTable, Sequence, beta, beta_rows, binomial, _first_negative


@dataclass(frozen=True)
class Rejection:
    """A candidate depth d ruled out by the negative value beta at index k."""

    d: int
    k: int
    beta: int


@dataclass(frozen=True)
class DepthCheck:
    """Outcome of testing one candidate depth.

    When ok is False, witness_k is the smallest index whose transform value
    is negative and witness_beta is that value.
    """

    ok: bool
    witness_k: int | None = None
    witness_beta: int | None = None


@dataclass(frozen=True)
class QDepthResult:
    qdepth: int
    accepted_table: BetaTable
    rejections: tuple[Rejection, ...]
    upper_bound_used: int

    def to_json_dict(self) -> dict:
        return {
            "qdepth": self.qdepth,
            "upper_bound": self.upper_bound_used,
            "rejections": [{"d": r.d, "k": r.k, "beta": str(r.beta)} for r in self.rejections],
            "table": {str(k): str(v) for k, v in self.accepted_table.entries.items()},
        }


def depth_upper_bound(h: Sequence) -> int:
    """min(kf, k0 + c), the a-priori cap on the depth."""
    st = h.stats()
    ub = st.k0 + st.c
    if st.kf is not None:
        ub = min(ub, st.kf)
    return ub


def qdepth(h: Sequence) -> QDepthResult:
    """Depth of h, searched downward from the a-priori cap.

    Candidates are scanned from min(kf, k0 + c) down to k0; the first one
    whose full table is non-negative is the answer, and monotonicity makes
    it independent of the search order.  Every rejected candidate above the
    answer contributes a (d, k, beta) witness.  The search never fails: the
    table at k0 is the single positive entry h(k0).
    """
    st = h.stats()
    ub = depth_upper_bound(h)
    rows = dict(beta_rows(h, ub))
    rejections = []
    for d in range(ub, st.k0 - 1, -1):
        row = rows[d]
        neg = _first_negative(row)
        if neg is None:
            table = BetaTable(d, row, None)
            return QDepthResult(d, table, tuple(rejections), ub)
        rejections.append(Rejection(d, neg, row[neg]))
    raise AssertionError("unreachable: the table at k0 is a single positive entry")


def qdepth_value(h: Sequence) -> int:
    return qdepth(h).qdepth


def qdepth_at_least(h: Sequence, d: int) -> DepthCheck:
    """Test one candidate depth directly, stopping at the first negative entry."""
    st = h.stats()
    if d < st.k0:
        raise DomainError(f"candidate depth {d} lies below the support start {st.k0}")
    for k in range(st.k0, d + 1):
        b = beta(h, k, d)
        if b < 0:
            return DepthCheck(False, k, b)
    return DepthCheck(True)


def necessary_condition_holds(h: Sequence, d: int) -> bool:
    """Binomial lower bound on the values, implied by depth >= d.

    Requires h(k) >= binomial(d - k0, k - k0) * h(k0) on [k0, d].
    """
    st = h.stats()
    if d < st.k0:
        raise DomainError(f"candidate depth {d} lies below the support start {st.k0}")
    return all(
        h.value_at(k) >= binomial(d - st.k0, k - st.k0) * st.h0 for k in range(st.k0, d + 1)
    )


def sufficient_condition_holds(h: Sequence, d: int) -> bool:
    """Stepwise growth test that forces depth >= d.

    Requires h(k) >= (d - k + 1) * h(k - 1) for every k in [k0 + 1, d].
    """
    st = h.stats()
    if d < st.k0:
        raise DomainError(f"candidate depth {d} lies below the support start {st.k0}")
    return all(
        h.value_at(k) >= (d - k + 1) * h.value_at(k - 1) for k in range(st.k0 + 1, d + 1)
    )
