"""The real line with an alternating set of sinks and sources.

An orientation is a finite, strictly increasing list of critical points,
each marked ``sink`` or ``source``, with kinds alternating.  It induces a
partial order on the rationals: two points are comparable exactly when no
critical point lies strictly between them, and within such a stretch the
order runs toward the nearest sink.  With no critical points at all the
line carries one of exactly two orders, picked by ``empty_direction``
("descending" makes the order coincide with the usual <=).

All positions are exact rationals; irrational critical points are not
representable by design.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Optional

from .intervals import ExtReal, Interval, NEG_INF, POS_INF, format_extreal, is_finite

Kind = Literal["sink", "source"]

SINK: Kind = "sink"
SOURCE: Kind = "source"


@dataclass(frozen=True)
class Segment:
    """A maximal stretch between consecutive critical points (or infinity).

    ``increasing`` is True when x precedes y iff x <= y on the segment,
    i.e. when the sink end sits at ``lo``.
    """

    lo: ExtReal
    hi: ExtReal
    increasing: bool


@dataclass(frozen=True)
class Orientation:
    criticals: tuple[tuple[Fraction, Kind], ...]
    empty_direction: Literal["descending", "ascending"] = "descending"

    def __post_init__(self):
        pos = [p for p, _ in self.criticals]
        if any(b <= a for a, b in zip(pos, pos[1:])):
            raise ValueError("critical positions must be strictly increasing")
        kinds = [k for _, k in self.criticals]
        if any(k not in (SINK, SOURCE) for k in kinds):
            raise ValueError("kind must be 'sink' or 'source'")
        if any(a == b for a, b in zip(kinds, kinds[1:])):
            raise ValueError("sinks and sources must alternate")
        if self.empty_direction not in ("descending", "ascending"):
            raise ValueError("empty_direction must be 'descending' or 'ascending'")
        if self.criticals and self.empty_direction != "descending":
            # the field only means something without critical points;
            # normalize so equality is structural
            object.__setattr__(self, "empty_direction", "descending")

    @staticmethod
    def make(criticals, empty_direction="descending") -> "Orientation":
        return Orientation(tuple((Fraction(p), k) for p, k in criticals), empty_direction)

    @property
    def positions(self) -> list[Fraction]:
        return [p for p, _ in self.criticals]

    def kind_at(self, x) -> Optional[Kind]:
        x = Fraction(x)
        for p, k in self.criticals:
            if p == x:
                return k
        return None

    def is_critical(self, x) -> bool:
        return self.kind_at(x) is not None

    def __str__(self):
        if not self.criticals:
            return f"A_R(empty, {self.empty_direction})"
        inner = ", ".join(f"{format_extreal(p)}:{k}" for p, k in self.criticals)
        return f"A_R({inner})"


def increasing_at(o: Orientation, x) -> bool:
    """True when the order agrees with <= on the segment around non-critical x."""
    x = Fraction(x)
    if o.is_critical(x):
        raise ValueError("direction at a critical point depends on the side")
    return _increasing_interior(o, x)


def increasing_on_side(o: Orientation, c, side: Literal["left", "right"]) -> bool:
    """Segment direction immediately left/right of a grid point c."""
    c = Fraction(c)
    k = o.kind_at(c)
    if k is None:
        return _increasing_interior(o, c)
    if side == "left":
        return k == SOURCE  # source at the segment's right end
    return k == SINK  # sink at the segment's left end


def _increasing_interior(o: Orientation, x: Fraction) -> bool:
    pos = o.positions
    i = bisect_right(pos, x)
    if i > 0:
        return o.criticals[i - 1][1] == SINK
    if i < len(pos):
        return o.criticals[i][1] == SOURCE
    return o.empty_direction == "descending"


def leq(o: Orientation, x, y) -> bool:
    """The induced partial order: x precedes y."""
    x, y = Fraction(x), Fraction(y)
    if x == y:
        return True
    a, b = (x, y) if x < y else (y, x)
    pos = o.positions
    lo_i = bisect_right(pos, a)
    hi_i = bisect_left(pos, b)
    if lo_i < hi_i:
        return False  # a critical point lies strictly between
    inc = _increasing_interior(o, (a + b) / 2)
    return inc if x < y else not inc


def segment_index(o: Orientation, x) -> Segment:
    """The closed segment containing x.  At a critical point the segment on
    the right is reported; use segments_touching for both."""
    x = Fraction(x)
    pos = o.positions
    i = bisect_right(pos, x)
    lo: ExtReal = pos[i - 1] if i > 0 else NEG_INF
    hi: ExtReal = pos[i] if i < len(pos) else POS_INF
    if i > 0 and pos[i - 1] == x:
        lo = x
        hi = pos[i] if i < len(pos) else POS_INF
        inc = increasing_on_side(o, x, "right")
    else:
        inc = _increasing_interior(o, x)
    return Segment(lo, hi, inc)


def segments_touching(o: Orientation, x) -> list[Segment]:
    """Both segments when x is critical (left first), else the single one."""
    x = Fraction(x)
    if not o.is_critical(x):
        return [segment_index(o, x)]
    pos = o.positions
    i = pos.index(x)
    left = Segment(pos[i - 1] if i > 0 else NEG_INF, x, increasing_on_side(o, x, "left"))
    right = Segment(x, pos[i + 1] if i + 1 < len(pos) else POS_INF,
                    increasing_on_side(o, x, "right"))
    return [left, right]


def down_set(o: Orientation, a) -> Interval:
    """{x : x precedes a} as an interval, closed at finite ends."""
    a = Fraction(a)
    k = o.kind_at(a)
    if k == SINK:
        return Interval.point(a)
    if k == SOURCE:
        segs = segments_touching(o, a)
        lo, hi = segs[0].lo, segs[1].hi
        return Interval(lo, hi, is_finite(lo), is_finite(hi))
    seg = segment_index(o, a)
    if seg.increasing:
        return Interval(seg.lo, a, is_finite(seg.lo), True)
    return Interval(a, seg.hi, True, is_finite(seg.hi))


def up_set(o: Orientation, a) -> Interval:
    """{x : a precedes x}; the dual of down_set."""
    return down_set(reverse(o), a)


def down_set_limit(o: Orientation, end: ExtReal) -> Optional[Interval]:
    """Limit of down_set(a) as a runs to an infinite end; None when empty.

    Nonzero exactly when the end segment has its sink side at the infinite
    end, i.e. the down-sets grow without bound in that direction.
    """
    if end == NEG_INF:
        if o.criticals:
            seg = Segment(NEG_INF, o.positions[0], increasing_on_side(o, o.positions[0], "left"))
        else:
            seg = segment_index(o, 0)
        if seg.increasing:
            return None  # down_set shrinks to nothing toward -inf
        return Interval(NEG_INF, seg.hi, False, is_finite(seg.hi))
    if end == POS_INF:
        if o.criticals:
            seg = Segment(o.positions[-1], POS_INF, increasing_on_side(o, o.positions[-1], "right"))
        else:
            seg = segment_index(o, 0)
        if not seg.increasing:
            return None
        return Interval(seg.lo, POS_INF, is_finite(seg.lo), False)
    raise ValueError("end must be +inf or -inf")


def end_is_below(o: Orientation, end: ExtReal) -> bool:
    """True when points near the infinite end precede the rest of their
    segment (the end plays the sink role)."""
    return down_set_limit(o, end) is not None


def reverse(o: Orientation) -> Orientation:
    flipped = tuple((p, SOURCE if k == SINK else SINK) for p, k in o.criticals)
    direction = "ascending" if o.empty_direction == "descending" else "descending"
    return Orientation(flipped, direction)


def reparameterize(o: Orientation, o2: Orientation, x) -> Fraction:
    """The piecewise-linear order isomorphism sending the i-th critical of o
    to the i-th critical of o2, affine on segments and slope 1 on the
    unbounded tails."""
    if len(o.criticals) != len(o2.criticals):
        raise ValueError("incompatible orientations")
    if any(k1 != k2 for (_, k1), (_, k2) in zip(o.criticals, o2.criticals)):
        raise ValueError("incompatible orientations")
    if not o.criticals and o.empty_direction != o2.empty_direction:
        raise ValueError("incompatible orientations")
    x = Fraction(x)
    src = o.positions
    dst = o2.positions
    if not src:
        return x
    if x <= src[0]:
        return dst[0] + (x - src[0])
    if x >= src[-1]:
        return dst[-1] + (x - src[-1])
    i = bisect_right(src, x) - 1
    t = (x - src[i]) / (src[i + 1] - src[i])
    return dst[i] * (1 - t) + dst[i + 1] * t


def orientation_to_json(o: Orientation) -> dict:
    return {
        "criticals": [{"pos": format_extreal(p), "kind": k} for p, k in o.criticals],
        "empty_direction": o.empty_direction,
    }


def orientation_from_json(obj: dict) -> Orientation:
    crit = [(Fraction(c["pos"]), c["kind"]) for c in obj.get("criticals", [])]
    return Orientation.make(crit, obj.get("empty_direction", "descending"))
