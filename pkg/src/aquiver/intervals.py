"""Extended-real intervals with endpoint openness, and multisets of them.

Endpoints are exact rationals or +/-infinity (represented by the float
infinities, which compare correctly against Fraction).  An interval is
nonempty by construction; a point interval has both endpoints equal, finite
and closed.  Infinite ends are always open.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import inf
from typing import Iterable, Iterator, Union

ExtReal = Union[Fraction, float]

NEG_INF: ExtReal = -inf
POS_INF: ExtReal = inf


def is_finite(x: ExtReal) -> bool:
    return x != NEG_INF and x != POS_INF


def parse_extreal(s: str) -> ExtReal:
    s = s.strip()
    if s in ("-inf", "-oo"):
        return NEG_INF
    if s in ("+inf", "inf", "+oo"):
        return POS_INF
    return Fraction(s)


def format_extreal(x: ExtReal) -> str:
    if x == NEG_INF:
        return "-inf"
    if x == POS_INF:
        return "+inf"
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Interval:
    lo: ExtReal
    hi: ExtReal
    lo_closed: bool
    hi_closed: bool

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval: lo={self.lo} > hi={self.hi}")
        if self.lo == self.hi:
            if not is_finite(self.lo):
                raise ValueError("degenerate infinite interval")
            if not (self.lo_closed and self.hi_closed):
                raise ValueError("a point interval must be closed on both sides")
        if self.lo == NEG_INF and self.lo_closed:
            raise ValueError("-inf endpoint must be open")
        if self.hi == POS_INF and self.hi_closed:
            raise ValueError("+inf endpoint must be open")

    @staticmethod
    def point(x) -> "Interval":
        return Interval(Fraction(x), Fraction(x), True, True)

    @staticmethod
    def make(lo, hi, lo_closed: bool, hi_closed: bool) -> "Interval":
        lo = lo if lo in (NEG_INF, POS_INF) else Fraction(lo)
        hi = hi if hi in (NEG_INF, POS_INF) else Fraction(hi)
        return Interval(lo, hi, lo_closed, hi_closed)

    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, x) -> bool:
        x = Fraction(x)
        if x < self.lo or x > self.hi:
            return False
        if x == self.lo and not self.lo_closed:
            return False
        if x == self.hi and not self.hi_closed:
            return False
        return True

    def sort_key(self):
        # lo ascending, closed-before-open at lo, hi ascending,
        # open-before-closed at hi: the canonical bar order.
        return (self.lo, not self.lo_closed, self.hi, self.hi_closed)

    def __str__(self):
        if self.is_point():
            return "{%s}" % format_extreal(self.lo)
        lb = "[" if self.lo_closed else "("
        rb = "]" if self.hi_closed else ")"
        return f"{lb}{format_extreal(self.lo)}, {format_extreal(self.hi)}{rb}"

    __repr__ = __str__

    def to_json(self) -> dict:
        return {
            "lo": format_extreal(self.lo),
            "lo_closed": self.lo_closed,
            "hi": format_extreal(self.hi),
            "hi_closed": self.hi_closed,
        }

    @staticmethod
    def from_json(obj: dict) -> "Interval":
        return Interval(
            parse_extreal(obj["lo"]),
            parse_extreal(obj["hi"]),
            bool(obj["lo_closed"]),
            bool(obj["hi_closed"]),
        )


def intersect(a: Interval, b: Interval) -> Interval | None:
    """Set intersection; None when empty."""
    if a.lo > b.lo or (a.lo == b.lo and (b.lo_closed or not a.lo_closed)):
        lo, lo_closed = a.lo, a.lo_closed
        if a.lo == b.lo:
            lo_closed = a.lo_closed and b.lo_closed
    else:
        lo, lo_closed = b.lo, b.lo_closed
    if a.hi < b.hi or (a.hi == b.hi and (b.hi_closed or not a.hi_closed)):
        hi, hi_closed = a.hi, a.hi_closed
        if a.hi == b.hi:
            hi_closed = a.hi_closed and b.hi_closed
    else:
        hi, hi_closed = b.hi, b.hi_closed
    if lo > hi:
        return None
    if lo == hi and not (lo_closed and hi_closed):
        return None
    return Interval(lo, hi, lo_closed, hi_closed)


def same_support_iso(a: Interval, b: Interval) -> bool:
    """Equality as point sets; this is the isomorphism test for the
    one-dimensional indecomposables supported on them."""
    return a == b


class BarMultiset:
    """A finite multiset of intervals with positive multiplicities.

    Canonical order is the interval sort key, so equal multisets always
    serialize identically.
    """

    def __init__(self, bars: Iterable[tuple[Interval, int]] = ()):
        counts: dict[Interval, int] = {}
        for iv, mult in bars:
            if mult < 0:
                raise ValueError("negative multiplicity")
            if mult == 0:
                continue
            counts[iv] = counts.get(iv, 0) + mult
        self._counts = counts

    @staticmethod
    def from_intervals(intervals: Iterable[Interval]) -> "BarMultiset":
        return BarMultiset((iv, 1) for iv in intervals)

    def items(self) -> list[tuple[Interval, int]]:
        return sorted(self._counts.items(), key=lambda kv: kv[0].sort_key())

    def intervals(self) -> list[Interval]:
        out = []
        for iv, m in self.items():
            out.extend([iv] * m)
        return out

    def count(self, iv: Interval) -> int:
        return self._counts.get(iv, 0)

    def total(self) -> int:
        return sum(self._counts.values())

    def union(self, other: "BarMultiset") -> "BarMultiset":
        return BarMultiset(list(self._counts.items()) + list(other._counts.items()))

    def __eq__(self, other):
        return isinstance(other, BarMultiset) and self._counts == other._counts

    def __len__(self):
        return len(self._counts)

    def __iter__(self) -> Iterator[tuple[Interval, int]]:
        return iter(self.items())

    def __bool__(self):
        return bool(self._counts)

    def __str__(self):
        if not self._counts:
            return "(empty)"
        return ", ".join(f"{iv} x{m}" if m > 1 else str(iv) for iv, m in self.items())

    __repr__ = __str__

    def to_json(self) -> list[dict]:
        out = []
        for iv, m in self.items():
            d = iv.to_json()
            d["mult"] = m
            out.append(d)
        return out

    @staticmethod
    def from_json(arr: list[dict]) -> "BarMultiset":
        return BarMultiset((Interval.from_json(d), int(d.get("mult", 1))) for d in arr)
