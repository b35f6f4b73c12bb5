"""Subfamilies of the boolean lattice and their interval partitions.

Sets over a ground set [n] are bitmasks: bit i - 1 stands for element i.
The module computes level counts and the depth of a family, validates
interval partitions, searches exhaustively for the best partition depth on
small instances, and builds a family realizing a given sequence as level
counts together with a partition certifying that both depths coincide.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Mapping, Sequence as SequenceABC
from dataclasses import dataclass
from itertools import combinations

from . import engine
from .errors import DomainError, SchemaError
from .sequences import FiniteSequence, Sequence, binomial

MAX_GROUND_SIZE = 63
DEFAULT_BRUTEFORCE_CAP = 24

Interval = tuple[int, int]


def mask_from_elements(elements: Iterable[int], n: int) -> int:
    mask = 0
    for e in elements:
        if isinstance(e, bool) or not isinstance(e, int) or not 1 <= e <= n:
            raise DomainError(f"element {e!r} is outside the ground set [1, {n}]")
        mask |= 1 << (e - 1)
    return mask


def elements_from_mask(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _submasks(free: int) -> Iterable[int]:
    sub = free
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & free


def interval_members(bottom: int, top: int) -> Iterable[int]:
    """All sets between bottom and top, inclusive."""
    for sub in _submasks(top & ~bottom):
        yield bottom | sub


def intervals_disjoint(c1: int, d1: int, c2: int, d2: int) -> bool:
    """Two intervals meet exactly when the union of bottoms fits under both tops."""
    return (c1 | c2) & ~(d1 & d2) != 0


@dataclass(frozen=True)
class Poset:
    """A nonempty family of distinct subsets of [n], n at most 63."""

    n: int
    sets: frozenset

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int):
            raise DomainError(f"ground size must be an integer, got {self.n!r}")
        if not 1 <= self.n <= MAX_GROUND_SIZE:
            raise DomainError(f"ground size must lie in [1, {MAX_GROUND_SIZE}], got {self.n}")
        object.__setattr__(self, "sets", frozenset(self.sets))
        if not self.sets:
            raise DomainError("family must be nonempty")
        for mask in self.sets:
            if isinstance(mask, bool) or not isinstance(mask, int) or mask < 0:
                raise DomainError(f"set mask must be a non-negative integer, got {mask!r}")
            if mask >> self.n:
                raise DomainError(f"set {elements_from_mask(mask)} exceeds the ground set [1, {self.n}]")

    @classmethod
    def from_iterables(cls, n: int, families: Iterable[Iterable[int]]) -> "Poset":
        return cls(n, frozenset(mask_from_elements(f, n) for f in families))

    def level_counts(self) -> dict:
        counts: dict[int, int] = {}
        for mask in self.sets:
            k = mask.bit_count()
            counts[k] = counts.get(k, 0) + 1
        return dict(sorted(counts.items()))

    def level_sequence(self) -> FiniteSequence:
        counts = self.level_counts()
        lo = min(counts)
        hi = max(counts)
        return FiniteSequence(lo, [counts.get(k, 0) for k in range(lo, hi + 1)])

    def sorted_masks(self) -> list[int]:
        return sorted(self.sets, key=lambda m: (m.bit_count(), m))

    def __len__(self) -> int:
        return len(self.sets)

    def to_json_dict(self) -> dict:
        return {"n": self.n, "sets": [list(elements_from_mask(m)) for m in self.sorted_masks()]}


def level_counts(poset: Poset) -> dict:
    return poset.level_counts()


def poset_qdepth(poset: Poset) -> engine.QDepthResult:
    """Depth of the family, computed on its level-count sequence."""
    return engine.qdepth(poset.level_sequence())


@dataclass(frozen=True)
class IntervalPartition:
    """An ordered list of intervals meant to partition the target family."""

    target: Poset
    intervals: tuple

    def __post_init__(self):
        object.__setattr__(self, "intervals", tuple((int(c), int(d)) for c, d in self.intervals))

    @property
    def sdepth(self) -> int:
        return min(d.bit_count() for _, d in self.intervals)

    def to_json_dict(self) -> dict:
        return {
            "intervals": [
                {"C": list(elements_from_mask(c)), "D": list(elements_from_mask(d))}
                for c, d in self.intervals
            ]
        }


@dataclass(frozen=True)
class ValidationReport:
    """Verdict of validate_partition; reason names the first violated clause."""

    ok: bool
    sdepth: int | None = None
    reason: str | None = None

    def to_json_dict(self) -> dict:
        return {"valid": self.ok, "sdepth": self.sdepth, "reason": self.reason}


def _fmt(mask: int) -> str:
    return "{" + ",".join(str(e) for e in elements_from_mask(mask)) + "}"


def validate_partition(partition: IntervalPartition) -> ValidationReport:
    """Check that the intervals exactly partition the target family.

    Clauses, in order: each bottom lies under its top, every interval stays
    inside the family, intervals are pairwise disjoint, every family member
    is covered, and the interval sizes add up to the family size.
    """
    target = partition.target
    intervals = partition.intervals
    if not intervals:
        return ValidationReport(False, None, "no intervals given")

    for c, d in intervals:
        if c & ~d:
            return ValidationReport(False, None, f"bottom {_fmt(c)} is not contained in top {_fmt(d)}")
        if d >> target.n:
            return ValidationReport(False, None, f"top {_fmt(d)} exceeds the ground set [1, {target.n}]")

    size = len(target.sets)
    for c, d in intervals:
        span = 1 << (d.bit_count() - c.bit_count())
        if span > size:
            return ValidationReport(
                False, None,
                f"interval [{_fmt(c)},{_fmt(d)}] has {span} members but the family has only {size}",
            )
        for member in interval_members(c, d):
            if member not in target.sets:
                return ValidationReport(
                    False, None,
                    f"interval [{_fmt(c)},{_fmt(d)}] contains {_fmt(member)}, which is not in the family",
                )

    for i in range(len(intervals)):
        c1, d1 = intervals[i]
        for j in range(i + 1, len(intervals)):
            c2, d2 = intervals[j]
            if not intervals_disjoint(c1, d1, c2, d2):
                return ValidationReport(
                    False, None,
                    f"intervals [{_fmt(c1)},{_fmt(d1)}] and [{_fmt(c2)},{_fmt(d2)}] overlap",
                )

    for member in target.sets:
        if not any(c & ~member == 0 and member & ~d == 0 for c, d in intervals):
            return ValidationReport(False, None, f"family member {_fmt(member)} is not covered")

    total = sum(1 << (d.bit_count() - c.bit_count()) for c, d in intervals)
    if total != size:
        return ValidationReport(
            False, None, f"interval sizes sum to {total} but the family has {size} members"
        )

    return ValidationReport(True, partition.sdepth, None)


@dataclass(frozen=True)
class SdepthResult:
    sdepth: int
    partition: IntervalPartition


def sdepth_bruteforce(poset: Poset, cap: int = DEFAULT_BRUTEFORCE_CAP) -> SdepthResult:
    """Exact best partition depth, by exhaustive search on small families.

    Works on the family sorted by size: the smallest unassigned set must be
    the bottom of its interval, so the search assigns it every admissible
    top in turn.  A descending threshold on the top sizes bounds the search
    and memoization on the mask of unassigned sets prunes repeats.
    """
    masks = poset.sorted_masks()
    s = len(masks)
    if s > cap:
        raise DomainError(f"family has {s} members, exhaustive search is capped at {cap}")
    sizes = [m.bit_count() for m in masks]

    sup = [0] * s
    sub = [0] * s
    for i, a in enumerate(masks):
        for j, b in enumerate(masks):
            if a & ~b == 0:
                sup[i] |= 1 << j
                sub[j] |= 1 << i

    t_hi = min(max(sizes[j] for j in range(s) if sup[i] >> j & 1) for i in range(s))
    t_lo = sizes[0]
    full = (1 << s) - 1

    for t in range(t_hi, t_lo - 1, -1):
        sizemask = sum(1 << j for j in range(s) if sizes[j] >= t)
        cand = [sup[i] & sizemask for i in range(s)]
        memo: dict[int, list | None] = {}

        def cover(remaining: int) -> list | None:
            if remaining == 0:
                return []
            hit = memo.get(remaining, False)
            if hit is not False:
                return hit
            rem = remaining
            while rem:
                low = rem & -rem
                if cand[low.bit_length() - 1] & remaining == 0:
                    memo[remaining] = None
                    return None
                rem ^= low
            i = (remaining & -remaining).bit_length() - 1
            result = None
            tops = sorted(
                (j for j in range(s) if cand[i] >> j & 1 and remaining >> j & 1),
                key=lambda j: (-sizes[j], j),
            )
            for j in tops:
                avail = sup[i] & sub[j] & remaining
                if avail.bit_count() != 1 << (sizes[j] - sizes[i]):
                    continue
                rest = cover(remaining & ~avail)
                if rest is not None:
                    result = [(i, j)] + rest
                    break
            memo[remaining] = result
            return result

        found = cover(full)
        if found is not None:
            intervals = tuple((masks[i], masks[j]) for i, j in found)
            return SdepthResult(t, IntervalPartition(poset, intervals))

    raise AssertionError("unreachable: singleton intervals always cover the family")


def counting_identity_check(d: int, b, levels: Mapping[int, int]) -> bool:
    """Check that bottoms-by-size counts b reproduce the given level counts.

    b maps a bottom size j to a number of intervals with that bottom and a
    top of size d (a plain sequence is read as sizes 1..d).  Level k then
    receives binomial(d - j, k - j) sets from each of them; the check
    compares that total with levels for every k up to d.
    """
    if isinstance(b, SequenceABC) and not isinstance(b, Mapping):
        b_map = {j: count for j, count in enumerate(b, start=1)}
    else:
        b_map = dict(b)
    lo = min(list(b_map) + [k for k, v in levels.items() if v])
    for k in range(lo, d + 1):
        expected = sum(count * binomial(d - j, k - j) for j, count in b_map.items())
        if expected != levels.get(k, 0):
            return False
    return True


@dataclass(frozen=True)
class RealizationResult:
    """Family realizing a sequence window, plus the certifying partition.

    m is the shift applied to the input, depth the invariant of the shifted
    sequence, b its transform values at the accepted depth, and ground_size
    the realized ground set size N.
    """

    m: int
    depth: int
    ground_size: int
    b: tuple
    poset: Poset
    partition: IntervalPartition
    validation: ValidationReport

    def to_json_dict(self) -> dict:
        return {
            "m": self.m,
            "d": self.depth,
            "N": self.ground_size,
            "b": [str(v) for v in self.b],
            "poset": self.poset.to_json_dict(),
            "partition": self.partition.to_json_dict(),
            "sdepth": self.partition.sdepth,
            "valid": self.validation.ok,
        }


def _block_intervals(d: int, b: SequenceABC) -> tuple[list[Interval], int]:
    """One fresh block of d elements per interval; bottoms are block prefixes."""
    intervals = []
    base = 0
    for j in range(1, d + 1):
        for _ in range(b[j - 1]):
            top = ((1 << d) - 1) << base
            bottom = ((1 << j) - 1) << base
            intervals.append((bottom, top))
            base += d
    return intervals, base


def _run_mask(first: int, length: int) -> int:
    return ((1 << length) - 1) << (first - 1)


def _overlapping_intervals(d: int, b: SequenceABC) -> tuple[list[Interval], int]:
    """Compact layout that reuses ground elements between consecutive intervals.

    Group i (0-based) holds b[i] intervals with bottoms of size i + 1 and
    tops of size d, laid out from start positions that advance by
    d - i - 1.  This layout is not guaranteed to produce disjoint
    intervals; callers must check the validation verdict.
    """
    intervals = []
    top_end = 0
    for i in range(d):
        prefix = sum(b[t - 1] * (d - t) for t in range(1, i + 1))
        for j in range(1, b[i] + 1):
            start = prefix + (j - 1) * (d - i - 1) + 1
            intervals.append((_run_mask(start, i + 1), _run_mask(start, d)))
            top_end = max(top_end, start + d - 1)
    return intervals, top_end


def _fresh_level_singletons(counts: Mapping[int, int], base: int) -> tuple[list[Interval], int]:
    """Distinct sets of prescribed sizes over a pool of fresh elements.

    Returns them as one-set intervals plus the pool size used.  A single
    shared pool suffices because sets of different sizes never coincide.
    """
    wanted = {k: c for k, c in counts.items() if c}
    if not wanted:
        return [], 0
    pool_size = max(wanted)
    while any(math.comb(pool_size, k) < c for k, c in wanted.items()):
        pool_size += 1
    pool = range(base + 1, base + pool_size + 1)
    intervals = []
    for k in sorted(wanted):
        taken = 0
        for combo in combinations(pool, k):
            mask = 0
            for e in combo:
                mask |= 1 << (e - 1)
            intervals.append((mask, mask))
            taken += 1
            if taken == wanted[k]:
                break
    return intervals, pool_size


def realize(h: Sequence, layout: str = "blocks") -> RealizationResult:
    """Build a family whose level counts match h after shifting, with a
    partition whose depth equals the family depth.

    The input is shifted by m = k0 - 1 so the window starts at level 1.
    Levels 1..d are covered by intervals with tops of size d, b[j] of them
    with bottoms of size j; for finitely supported input, every level above
    d is filled with one-set intervals over fresh elements, so the whole
    support is realized.  The default block layout is disjoint by
    construction and its postconditions are enforced; the overlapping
    layout only reports its validation verdict.
    """
    if layout not in ("blocks", "overlapping"):
        raise ValueError(f"unknown layout {layout!r}")
    st = h.stats()
    m = st.k0 - 1
    g = h.shifted(m)
    result = engine.qdepth(g)
    d = result.qdepth
    b = tuple(result.accepted_table.entries[j] for j in range(1, d + 1))

    if layout == "blocks":
        intervals, used = _block_intervals(d, b)
    else:
        intervals, used = _overlapping_intervals(d, b)

    gst = g.stats()
    window_counts = {j: g.value_at(j) for j in range(1, d + 1)}
    if isinstance(g, FiniteSequence):
        upper_counts = {j: g.value_at(j) for j in range(d + 1, g.support_end + 1)}
        window_counts.update(upper_counts)
    else:
        upper_counts = {}
    singles, pool_size = _fresh_level_singletons(upper_counts, used)
    ground_size = used + pool_size
    if ground_size > MAX_GROUND_SIZE:
        raise DomainError(
            f"realization needs {ground_size} ground elements, beyond the {MAX_GROUND_SIZE} cap"
        )

    all_intervals = intervals + singles
    members = set()
    for c, dd in all_intervals:
        members.update(interval_members(c, dd))
    poset = Poset(ground_size, frozenset(members))
    partition = IntervalPartition(poset, all_intervals)
    report = validate_partition(partition)

    if layout == "blocks":
        if not report.ok:
            raise AssertionError(f"block realization failed validation: {report.reason}")
        if poset.level_counts() != {k: v for k, v in window_counts.items() if v}:
            raise AssertionError("block realization does not reproduce the level counts")
        if partition.sdepth != d:
            raise AssertionError("block realization partition depth differs from the sequence depth")
        if poset_qdepth(poset).qdepth != d:
            raise AssertionError("block realization family depth differs from the sequence depth")

    return RealizationResult(m, d, ground_size, b, poset, partition, report)


def poset_from_json_dict(obj) -> Poset:
    """Parse {"n": int, "sets": [[elements], ...]}."""
    if not isinstance(obj, dict):
        raise SchemaError("poset: expected a JSON object")
    if set(obj) != {"n", "sets"}:
        raise SchemaError('poset: expected exactly the keys "n" and "sets"')
    n = obj["n"]
    if isinstance(n, bool) or not isinstance(n, int):
        raise SchemaError("poset: n must be an integer")
    raw = obj["sets"]
    if not isinstance(raw, list) or not all(isinstance(s, list) for s in raw):
        raise SchemaError("poset: sets must be a list of element lists")
    try:
        return Poset.from_iterables(n, raw)
    except DomainError as e:
        raise SchemaError(f"invalid poset: {e}") from None


def partition_from_json_dict(obj, target: Poset) -> IntervalPartition:
    """Parse {"intervals": [{"C": [...], "D": [...]}, ...]} against a target family."""
    if not isinstance(obj, dict):
        raise SchemaError("partition: expected a JSON object")
    if set(obj) != {"intervals"}:
        raise SchemaError('partition: expected exactly the key "intervals"')
    raw = obj["intervals"]
    if not isinstance(raw, list):
        raise SchemaError("partition: intervals must be a list")
    pairs = []
    for i, item in enumerate(raw):
        if not isinstance(item, dict) or set(item) != {"C", "D"}:
            raise SchemaError(f'partition: interval {i} must have exactly the keys "C" and "D"')
        if not isinstance(item["C"], list) or not isinstance(item["D"], list):
            raise SchemaError(f"partition: interval {i} bounds must be element lists")
        try:
            pairs.append(
                (mask_from_elements(item["C"], target.n), mask_from_elements(item["D"], target.n))
            )
        except DomainError as e:
            raise SchemaError(f"invalid partition: {e}") from None
    return IntervalPartition(target, tuple(pairs))
