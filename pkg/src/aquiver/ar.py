"""Almost-split sequences between interval summands.

Only the families proved to exist are constructed: for a<b strictly inside
one segment, 0 -> M[a,b) -> M[a,b] + M(a,b) -> M(a,b] -> 0 when the
segment order increases, and its mirror image when it decreases.  Point
summands at non-critical points provably admit no almost-split sequence
on either side; every other shape is reported as out of scope rather than
guessed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .decompose import decompose
from .homological import _hom_system, _reps_on_common_grid, hom_basis, refine_morphism
from .intervals import BarMultiset, Interval, is_finite
from .linalg import Matrix, QQ, rank, solve_linear_system
from .orientation import Orientation, segment_index
from .tamerep import RepMorphism, TameRep, from_bars

EXISTS = "exists"
PROVEN_NONEXISTENT = "proven_nonexistent"
OUT_OF_PAPER_SCOPE = "out_of_scope"


@dataclass
class ARSequence:
    left: Interval
    middle: list[Interval]
    right: Interval
    f: RepMorphism  # left -> middle sum, the [1;1] column
    g: RepMorphism  # middle sum -> right, the [1 -1] row


@dataclass
class ARAnswer:
    status: str
    sequence: Optional[ARSequence] = None


def _strictly_inside_segment(o: Orientation, a: Fraction, b: Fraction) -> Optional[bool]:
    """None unless [a,b] sits strictly inside one segment; else whether the
    order increases there."""
    for p, _ in o.criticals:
        if a <= p <= b:
            return None
    return segment_index(o, a).increasing


def _realize_sequence(o: Orientation, left: Interval, middle: list[Interval],
                      right: Interval, field) -> ARSequence:
    packs = _reps_on_common_grid(o, [[left], middle, [right]], field)
    (lrep, lslots), (mrep, mslots), (rrep, rslots) = packs
    one = field.one()
    f_pairs = {(0, 0): one, (0, 1): one}
    g_pairs = {(0, 0): one, (1, 0): field.neg(one)}
    f = _overlap_blocks(lrep, lslots, mrep, mslots, f_pairs, field)
    g = _overlap_blocks(mrep, mslots, rrep, rslots, g_pairs, field)
    return ARSequence(left, middle, right, f, g)


def _overlap_blocks(dom, dom_slots, cod, cod_slots, pairs, field):
    mats = []
    z = field.zero()
    for c in range(dom.ncells):
        rows = [[pairs.get((ci, ri), z) for ci in dom_slots[c]] for ri in cod_slots[c]]
        mats.append(Matrix(field, len(cod_slots[c]), len(dom_slots[c]), rows))
    return RepMorphism(dom, cod, mats)


def ar_ending_at(o: Orientation, w: Interval, field=QQ) -> ARAnswer:
    """The almost-split sequence with right end the summand on w, when the
    established patterns apply."""
    if w.is_point():
        a = Fraction(w.lo)
        if o.is_critical(a):
            return ARAnswer(OUT_OF_PAPER_SCOPE)
        return ARAnswer(PROVEN_NONEXISTENT)
    if not (is_finite(w.lo) and is_finite(w.hi)):
        return ARAnswer(OUT_OF_PAPER_SCOPE)
    a, b = Fraction(w.lo), Fraction(w.hi)
    inc = _strictly_inside_segment(o, a, b)
    if inc is None:
        return ARAnswer(OUT_OF_PAPER_SCOPE)
    closed = Interval(a, b, True, True)
    open_ = Interval(a, b, False, False)
    if inc and not w.lo_closed and w.hi_closed:
        left = Interval(a, b, True, False)
        seq = _realize_sequence(o, left, [closed, open_], w, field)
        return ARAnswer(EXISTS, seq)
    if not inc and w.lo_closed and not w.hi_closed:
        left = Interval(a, b, False, True)
        seq = _realize_sequence(o, left, [open_, closed], w, field)
        return ARAnswer(EXISTS, seq)
    return ARAnswer(OUT_OF_PAPER_SCOPE)


def ar_starting_at(o: Orientation, u: Interval, field=QQ) -> ARAnswer:
    """The almost-split sequence with left end the summand on u."""
    if u.is_point():
        a = Fraction(u.lo)
        if o.is_critical(a):
            return ARAnswer(OUT_OF_PAPER_SCOPE)
        return ARAnswer(PROVEN_NONEXISTENT)
    if not (is_finite(u.lo) and is_finite(u.hi)):
        return ARAnswer(OUT_OF_PAPER_SCOPE)
    a, b = Fraction(u.lo), Fraction(u.hi)
    inc = _strictly_inside_segment(o, a, b)
    if inc is None:
        return ARAnswer(OUT_OF_PAPER_SCOPE)
    if inc and u.lo_closed and not u.hi_closed:
        return ar_ending_at(o, Interval(a, b, False, True), field)
    if not inc and not u.lo_closed and u.hi_closed:
        return ar_ending_at(o, Interval(a, b, True, False), field)
    return ARAnswer(OUT_OF_PAPER_SCOPE)


# ---------------------------------------------------------------------------
# verification

def _exists_lift(g: RepMorphism, phi: RepMorphism) -> bool:
    """Is there h: phi.dom -> g.dom with g o h = phi?  All three live on one
    grid already."""
    x, m = phi.dom, g.dom
    field = x.field
    hom_sys, offsets = _hom_system(x, m)
    rows = hom_sys.copy_rows()
    rhs = [field.zero()] * len(rows)
    total = hom_sys.ncols
    for c in range(x.ncells):
        gc = g.mats[c]
        for r in range(g.cod.dims[c]):
            for s in range(x.dims[c]):
                row = [field.zero()] * total
                for t in range(m.dims[c]):
                    coef = gc.rows[r][t]
                    if coef != field.zero():
                        row[offsets[c] + t * x.dims[c] + s] = coef
                rows.append(row)
                rhs.append(phi.mats[c].rows[r][s])
    sol, _ = solve_linear_system(Matrix(field, len(rows), total, rows), rhs)
    return sol is not None


def _exists_colift(f: RepMorphism, psi: RepMorphism) -> bool:
    """Is there h: f.cod -> psi.cod with h o f = psi?"""
    m, y = f.cod, psi.cod
    field = m.field
    hom_sys, offsets = _hom_system(m, y)
    rows = hom_sys.copy_rows()
    rhs = [field.zero()] * len(rows)
    total = hom_sys.ncols
    for c in range(m.ncells):
        fc = f.mats[c]
        for r in range(y.dims[c]):
            for s in range(f.dom.dims[c]):
                row = [field.zero()] * total
                for t in range(m.dims[c]):
                    coef = fc.rows[t][s]
                    if coef != field.zero():
                        row[offsets[c] + r * m.dims[c] + t] = coef
                rows.append(row)
                rhs.append(psi.mats[c].rows[r][s])
    sol, _ = solve_linear_system(Matrix(field, len(rows), total, rows), rhs)
    return sol is not None


def _identity_morphism_on(v: TameRep) -> RepMorphism:
    return RepMorphism(v, v, [Matrix.identity(v.field, d) for d in v.dims],
                       validate=False)


def verify_almost_split(seq: ARSequence, probes: Sequence[Interval] = ()) -> bool:
    """Exactness, non-splitness, indecomposable ends, and (for every probe
    with a nonzero map to the right end or from the left end) a
    factorization through the middle."""
    f, g = seq.f, seq.g
    lrep, mrep, rrep = f.dom, f.cod, g.cod
    field = lrep.field
    # exactness, cellwise
    for c in range(lrep.ncells):
        fr = rank(f.mats[c])
        gr = rank(g.mats[c])
        if fr < lrep.dims[c]:
            return False
        if gr < rrep.dims[c]:
            return False
        if mrep.dims[c] - gr != fr:
            return False
    if not g.compose(f).is_zero():
        return False
    # not split
    if _exists_colift(f, _identity_morphism_on(lrep)):
        return False
    if _exists_lift(g, _identity_morphism_on(rrep)):
        return False
    # indecomposable ends
    if decompose(lrep).total() != 1 or decompose(rrep).total() != 1:
        return False
    # factorization of probe maps
    o = lrep.orientation
    for x_iv in probes:
        if x_iv != seq.right:
            xrep = from_bars(o, BarMultiset([(x_iv, 1)]), field)
            for phi in hom_basis(xrep, rrep):
                phi2, g2 = _align_probe(phi, g)
                if not _exists_lift(g2, phi2):
                    return False
        if x_iv != seq.left:
            yrep = from_bars(o, BarMultiset([(x_iv, 1)]), field)
            for psi in hom_basis(lrep, yrep):
                psi2, f2 = _align_probe(psi, f)
                if not _exists_colift(f2, psi2):
                    return False
    return True


def _align_probe(phi: RepMorphism, fg: RepMorphism):
    """Refine the probe morphism and the sequence map onto one grid."""
    pts = set(phi.dom.grid) | set(fg.dom.grid)
    return refine_morphism(phi, pts), refine_morphism(fg, pts)


def standard_probes(o: Orientation, seq: ARSequence, count: int = 50) -> list[Interval]:
    """A deterministic family of intervals around the sequence's segment."""
    a, b = Fraction(seq.right.lo), Fraction(seq.right.hi)
    seg = segment_index(o, a)
    lo_out = (Fraction(seg.lo) + a) / 2 if is_finite(seg.lo) else a - 1
    hi_out = (b + Fraction(seg.hi)) / 2 if is_finite(seg.hi) else b + 1
    mid = (a + b) / 2
    points = [lo_out, a, (3 * a + b) / 4, mid, b, hi_out]
    out: list[Interval] = []
    for lo in points:
        for hi in points:
            if lo > hi:
                continue
            if lo == hi:
                out.append(Interval.point(lo))
                continue
            for lc in (True, False):
                for hc in (True, False):
                    out.append(Interval(lo, hi, lc, hc))
    seen = set()
    uniq = []
    for iv in out:
        if iv not in seen:
            seen.add(iv)
            uniq.append(iv)
    uniq.sort(key=lambda iv: iv.sort_key())
    return uniq[:count]
