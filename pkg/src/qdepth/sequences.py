"""Non-negative integer sequences and their alternating binomial transform.

A sequence here is a function h from the integers to the non-negative
integers that vanishes far to the left and is not identically zero.  Three
representations are supported: finitely supported value lists, polynomial
tails and geometric tails.  Tails are evaluated lazily, so transform values
are exact with finite work even though the support is infinite.

All arithmetic is on Python ints, so nothing overflows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import DomainError, SchemaError


def binomial(m: int, t: int) -> int:
    """Binomial coefficient, 0 whenever t < 0 or t > m."""
    if t < 0 or t > m:
        return 0
    return math.comb(m, t)


@dataclass(frozen=True)
class SequenceStats:
    """Support markers of a sequence.

    k0 is the first index with a positive value, kf the last index of the
    initial positive run (None when the values never return to zero), and
    c = h(k0 + 1) // h(k0) is the growth quotient that bounds the depth.
    """

    k0: int
    kf: int | None
    h0: int
    h1: int
    c: int

    @property
    def k1(self) -> int:
        return self.k0 + 1


class Sequence:
    """Base class for all sequence kinds."""

    __slots__ = ()

    def value_at(self, j: int) -> int:
        raise NotImplementedError

    def __call__(self, j: int) -> int:
        return self.value_at(j)

    def stats(self) -> SequenceStats:
        raise NotImplementedError

    def shifted(self, m: int) -> "Sequence":
        """The sequence j -> self(m + j)."""
        raise NotImplementedError

    def scaled(self, c: int) -> "Sequence":
        """The sequence j -> c * self(j), for a positive integer c."""
        raise NotImplementedError

    def window(self, hi: int) -> "FiniteSequence":
        """Materialize the values on [k0, hi] as a finite sequence."""
        k0 = self.stats().k0
        if hi < k0:
            raise DomainError(f"window end {hi} lies before the support start {k0}")
        return FiniteSequence(k0, [self.value_at(j) for j in range(k0, hi + 1)])

    def to_json_dict(self) -> dict:
        raise NotImplementedError


def _checked_values(values: Iterable[int], what: str) -> list[int]:
    out = []
    for v in values:
        if isinstance(v, bool) or not isinstance(v, int):
            raise DomainError(f"{what} must be integers, got {v!r}")
        if v < 0:
            raise DomainError(f"{what} must be non-negative, got {v}")
        out.append(v)
    return out


def _positive_int(v: int, what: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int) or v < 1:
        raise DomainError(f"{what} must be a positive integer, got {v!r}")
    return v


class FiniteSequence(Sequence):
    """Finitely supported sequence: values[i] = h(offset + i), zero elsewhere.

    Stored values are trimmed so that the first and last entries are
    positive; equality is therefore structural.
    """

    __slots__ = ("offset", "values", "_stats")

    def __init__(self, offset: int, values: Iterable[int]):
        vals = _checked_values(values, "values")
        if not any(vals):
            raise DomainError("sequence must not be identically zero")
        lo = next(i for i, v in enumerate(vals) if v)
        hi = next(i for i in range(len(vals) - 1, -1, -1) if vals[i])
        object.__setattr__(self, "offset", offset + lo)
        object.__setattr__(self, "values", tuple(vals[lo : hi + 1]))
        object.__setattr__(self, "_stats", None)

    def __setattr__(self, name, value):
        raise AttributeError("FiniteSequence is immutable")

    @property
    def support_end(self) -> int:
        return self.offset + len(self.values) - 1

    def value_at(self, j: int) -> int:
        i = j - self.offset
        if 0 <= i < len(self.values):
            return self.values[i]
        return 0

    def stats(self) -> SequenceStats:
        if self._stats is None:
            k0 = self.offset
            h0 = self.values[0]
            h1 = self.value_at(k0 + 1)
            try:
                kf = self.offset + self.values.index(0) - 1
            except ValueError:
                kf = self.support_end
            object.__setattr__(self, "_stats", SequenceStats(k0, kf, h0, h1, h1 // h0))
        return self._stats

    def shifted(self, m: int) -> "FiniteSequence":
        return FiniteSequence(self.offset - m, self.values)

    def scaled(self, c: int) -> "FiniteSequence":
        _positive_int(c, "scale factor")
        return FiniteSequence(self.offset, [c * v for v in self.values])

    def __add__(self, other):
        if not isinstance(other, FiniteSequence):
            return NotImplemented
        lo = min(self.offset, other.offset)
        hi = max(self.support_end, other.support_end)
        return FiniteSequence(lo, [self.value_at(j) + other.value_at(j) for j in range(lo, hi + 1)])

    def __eq__(self, other):
        return (
            isinstance(other, FiniteSequence)
            and self.offset == other.offset
            and self.values == other.values
        )

    def __hash__(self):
        return hash((FiniteSequence, self.offset, self.values))

    def __repr__(self):
        return f"FiniteSequence(offset={self.offset}, values={list(self.values)})"

    def to_json_dict(self) -> dict:
        return {"kind": "finite", "offset": self.offset, "values": list(self.values)}


class PolynomialSequence(Sequence):
    """Polynomial tail: P(j) for j >= 0 and zero for j < 0, then shifted.

    Coefficients are non-negative with positive constant and leading terms.
    Shifting stores an offset applied at evaluation time instead of
    rewriting P(j + m), which would break the coefficient sign constraint.
    """

    __slots__ = ("coeffs", "shift", "_stats")

    def __init__(self, coeffs: Iterable[int], shift: int = 0):
        cs = _checked_values(coeffs, "coeffs")
        if not cs:
            raise DomainError("coeffs must be nonempty")
        if cs[0] < 1:
            raise DomainError("constant coefficient must be positive")
        if cs[-1] < 1:
            raise DomainError("leading coefficient must be positive")
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "shift", shift)
        object.__setattr__(self, "_stats", None)

    def __setattr__(self, name, value):
        raise AttributeError("PolynomialSequence is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def value_at(self, j: int) -> int:
        t = j + self.shift
        if t < 0:
            return 0
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * t + a
        return acc

    def stats(self) -> SequenceStats:
        if self._stats is None:
            h0 = self.coeffs[0]
            h1 = sum(self.coeffs)
            object.__setattr__(self, "_stats", SequenceStats(-self.shift, None, h0, h1, h1 // h0))
        return self._stats

    def shifted(self, m: int) -> "PolynomialSequence":
        return PolynomialSequence(self.coeffs, self.shift + m)

    def scaled(self, c: int) -> "PolynomialSequence":
        _positive_int(c, "scale factor")
        return PolynomialSequence([c * a for a in self.coeffs], self.shift)

    def __eq__(self, other):
        return (
            isinstance(other, PolynomialSequence)
            and self.coeffs == other.coeffs
            and self.shift == other.shift
        )

    def __hash__(self):
        return hash((PolynomialSequence, self.coeffs, self.shift))

    def __repr__(self):
        tail = f", shift={self.shift}" if self.shift else ""
        return f"PolynomialSequence(coeffs={list(self.coeffs)}{tail})"

    def to_json_dict(self) -> dict:
        out = {"kind": "polynomial", "coeffs": list(self.coeffs)}
        if self.shift:
            out["shift"] = self.shift
        return out


class GeometricSequence(Sequence):
    """Geometric tail: scale * ratio**j for j >= 0 and zero for j < 0, then shifted."""

    __slots__ = ("scale", "ratio", "shift", "_stats")

    def __init__(self, scale: int, ratio: int, shift: int = 0):
        object.__setattr__(self, "scale", _positive_int(scale, "scale"))
        object.__setattr__(self, "ratio", _positive_int(ratio, "ratio"))
        object.__setattr__(self, "shift", shift)
        object.__setattr__(self, "_stats", None)

    def __setattr__(self, name, value):
        raise AttributeError("GeometricSequence is immutable")

    def value_at(self, j: int) -> int:
        t = j + self.shift
        if t < 0:
            return 0
        return self.scale * self.ratio**t

    def stats(self) -> SequenceStats:
        if self._stats is None:
            st = SequenceStats(-self.shift, None, self.scale, self.scale * self.ratio, self.ratio)
            object.__setattr__(self, "_stats", st)
        return self._stats

    def shifted(self, m: int) -> "GeometricSequence":
        return GeometricSequence(self.scale, self.ratio, self.shift + m)

    def scaled(self, c: int) -> "GeometricSequence":
        _positive_int(c, "scale factor")
        return GeometricSequence(c * self.scale, self.ratio, self.shift)

    def __eq__(self, other):
        return (
            isinstance(other, GeometricSequence)
            and self.scale == other.scale
            and self.ratio == other.ratio
            and self.shift == other.shift
        )

    def __hash__(self):
        return hash((GeometricSequence, self.scale, self.ratio, self.shift))

    def __repr__(self):
        tail = f", shift={self.shift}" if self.shift else ""
        return f"GeometricSequence(scale={self.scale}, ratio={self.ratio}{tail})"

    def to_json_dict(self) -> dict:
        out = {"kind": "geometric", "scale": self.scale, "ratio": self.ratio}
        if self.shift:
            out["shift"] = self.shift
        return out


def add(g: Sequence, h: Sequence) -> FiniteSequence:
    """Pointwise sum of two finitely supported sequences."""
    if not isinstance(g, FiniteSequence) or not isinstance(h, FiniteSequence):
        raise DomainError(
            "pointwise sum is defined for finitely supported sequences; "
            "use window() to materialize a tail first"
        )
    return g + h


@dataclass(frozen=True, eq=True)
class BetaTable:
    """All transform values at one d, indexed by k on [k0, d].

    first_negative is the smallest k with a negative entry, or None when
    the whole table is non-negative.
    """

    d: int
    entries: dict
    first_negative: int | None

    def is_nonnegative(self) -> bool:
        return self.first_negative is None

    def to_json_dict(self) -> dict:
        return {
            "d": self.d,
            "entries": {str(k): str(v) for k, v in self.entries.items()},
            "first_negative": self.first_negative,
        }


def beta(h: Sequence, k: int, d: int) -> int:
    """The alternating binomial transform of h at (k, d).

    This is the signed sum over j of binomial(d - j, k - j) * h(j); terms
    below the support start vanish, so j runs over [k0, k].
    """
    if k > d:
        raise DomainError(f"transform requires k <= d, got k={k}, d={d}")
    k0 = h.stats().k0
    total = 0
    for j in range(k0, k + 1):
        term = binomial(d - j, k - j) * h.value_at(j)
        if (k - j) % 2:
            total -= term
        else:
            total += term
    return total


def beta_rows(h: Sequence, up_to: int) -> Iterator[tuple[int, dict]]:
    """Yield (d, row) for every d from k0 to up_to.

    Each row maps k on [k0, d] to the transform value.  Rows are built from
    the previous one by the first-difference recurrence
    row[d+1][k] = row[d][k] - row[d][k-1], with the two boundary entries
    row[d+1][k0] = h(k0) and row[d+1][d+1] = h(d+1) - row[d][d].
    """
    st = h.stats()
    if up_to < st.k0:
        raise DomainError(f"no rows exist below the support start {st.k0}")
    row = {st.k0: st.h0}
    yield st.k0, row
    for d in range(st.k0 + 1, up_to + 1):
        nxt = {st.k0: st.h0}
        for k in range(st.k0 + 1, d):
            nxt[k] = row[k] - row[k - 1]
        nxt[d] = h.value_at(d) - row[d - 1]
        row = nxt
        yield d, row


def _first_negative(row: dict) -> int | None:
    for k in sorted(row):
        if row[k] < 0:
            return k
    return None


def beta_table(h: Sequence, d: int, method: str = "direct") -> BetaTable:
    """Full transform table at d, for d at or beyond the support start.

    method selects between the direct signed sums and the first-difference
    recurrence; the two agree exactly on every input.
    """
    st = h.stats()
    if d < st.k0:
        raise DomainError(f"table at d={d} lies below the support start {st.k0}")
    if method == "direct":
        entries = {k: beta(h, k, d) for k in range(st.k0, d + 1)}
    elif method == "recurrence":
        entries = None
        for _, row in beta_rows(h, d):
            entries = row
    else:
        raise ValueError(f"unknown method {method!r}")
    return BetaTable(d, entries, _first_negative(entries))


def _schema_int(v, where: str) -> int:
    if isinstance(v, bool):
        raise SchemaError(f"{where}: expected an integer, got a boolean")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        try:
            return int(v, 10)
        except ValueError:
            raise SchemaError(f"{where}: not a decimal integer string: {v!r}") from None
    raise SchemaError(f"{where}: expected an integer or decimal string, got {type(v).__name__}")


def _schema_int_list(v, where: str) -> list[int]:
    if not isinstance(v, list):
        raise SchemaError(f"{where}: expected a list")
    return [_schema_int(x, f"{where}[{i}]") for i, x in enumerate(v)]


def _check_keys(obj: dict, allowed: set, where: str) -> None:
    extra = set(obj) - allowed
    if extra:
        raise SchemaError(f"{where}: unknown keys {sorted(extra)}")


def sequence_from_json_dict(obj) -> Sequence:
    """Parse a sequence from its JSON object form.

    Accepted shapes:
      {"kind": "finite", "offset": int, "values": [int, ...]}
      {"kind": "polynomial", "coeffs": [int, ...], "shift"?: int}
      {"kind": "geometric", "scale": int, "ratio": int, "shift"?: int}
    Integers may also be given as decimal strings.
    """
    if not isinstance(obj, dict):
        raise SchemaError("sequence: expected a JSON object")
    kind = obj.get("kind")
    try:
        if kind == "finite":
            _check_keys(obj, {"kind", "offset", "values"}, "finite sequence")
            if "offset" not in obj or "values" not in obj:
                raise SchemaError("finite sequence: requires offset and values")
            return FiniteSequence(
                _schema_int(obj["offset"], "offset"),
                _schema_int_list(obj["values"], "values"),
            )
        if kind == "polynomial":
            _check_keys(obj, {"kind", "coeffs", "shift"}, "polynomial sequence")
            if "coeffs" not in obj:
                raise SchemaError("polynomial sequence: requires coeffs")
            return PolynomialSequence(
                _schema_int_list(obj["coeffs"], "coeffs"),
                _schema_int(obj.get("shift", 0), "shift"),
            )
        if kind == "geometric":
            _check_keys(obj, {"kind", "scale", "ratio", "shift"}, "geometric sequence")
            if "scale" not in obj or "ratio" not in obj:
                raise SchemaError("geometric sequence: requires scale and ratio")
            return GeometricSequence(
                _schema_int(obj["scale"], "scale"),
                _schema_int(obj["ratio"], "ratio"),
                _schema_int(obj.get("shift", 0), "shift"),
            )
    except DomainError as e:
        raise SchemaError(f"invalid sequence: {e}") from None
    raise SchemaError(f"sequence: unknown kind {kind!r}")
