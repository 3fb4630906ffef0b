"""Hom and Ext spaces, projective/injective classification, image
filtrations, and minimal projective presentations.

Hom spaces are computed by discretizing to a common grid and solving the
commuting-square equations exactly; no closed-form endpoint rule is
assumed.  Presentations follow the generator/relation recipe for interval
summands: generators sit at interior sources and at the ends of the
interval, relations at interior sinks and at the overshoots of the
generators, realized with a fixed alternating +-1 scheme.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .decompose import InternalInvariantError, decompose
from .intervals import (BarMultiset, ExtReal, Interval, NEG_INF, POS_INF,
                        format_extreal, intersect, is_finite)
from .linalg import Matrix, QQ, kernel_basis, rank
from .orientation import (Orientation, Segment, down_set, down_set_limit,
                          reverse, segment_index, segments_touching, up_set)
from .tamerep import (DOWN, RepMorphism, TameRep, cell_of_point,
                      cell_representative, common_grid, cells_to_interval,
                      from_bars, kernel_rep, refine, rep_from_interval_list,
                      zero_rep)

POINT = "point"
OPEN_RIGHT = "open_right"   # the "x < a" half of the down-set at a
OPEN_LEFT = "open_left"     # the "x > a" half


@dataclass(frozen=True)
class ProjectiveLabel:
    form: str
    a: ExtReal

    def __post_init__(self):
        if self.form not in (POINT, OPEN_RIGHT, OPEN_LEFT):
            raise ValueError(f"bad form {self.form!r}")
        if not is_finite(self.a) and self.form != POINT:
            raise ValueError("half-open forms need a finite point")

    def __str__(self):
        s = format_extreal(self.a)
        if self.form == POINT:
            return f"P_{s}"
        if self.form == OPEN_RIGHT:
            return f"P_{s})"
        return f"P_({s}"


@dataclass(frozen=True)
class InjectiveLabel:
    form: str
    a: ExtReal

    def __str__(self):
        s = format_extreal(self.a)
        if self.form == POINT:
            return f"I_{s}"
        if self.form == OPEN_RIGHT:
            return f"I_{s})"
        return f"I_({s}"


def realize_projective(o: Orientation, label: ProjectiveLabel) -> Optional[Interval]:
    """Support of the labelled projective; None when the label denotes the
    zero representation (e.g. a half-open form at a sink)."""
    if not is_finite(label.a):
        return down_set_limit(o, label.a)
    ds = down_set(o, label.a)
    if label.form == POINT:
        return ds
    if label.form == OPEN_RIGHT:
        if ds.lo < label.a:
            return Interval(ds.lo, Fraction(label.a), ds.lo_closed, False)
        return None
    if ds.hi > label.a:
        return Interval(Fraction(label.a), ds.hi, False, ds.hi_closed)
    return None


def realize_injective(o: Orientation, label: InjectiveLabel) -> Optional[Interval]:
    return realize_projective(reverse(o), ProjectiveLabel(label.form, label.a))


def classify_projective(o: Orientation, iv: Interval) -> Optional[ProjectiveLabel]:
    """The projective label whose support equals the interval, or None."""
    cands: list[ProjectiveLabel] = []
    for p, kind in o.criticals:
        if kind == "source" and iv.contains(p):
            cands.append(ProjectiveLabel(POINT, p))
    if is_finite(iv.hi) and iv.hi_closed:
        cands.append(ProjectiveLabel(POINT, iv.hi))
    if is_finite(iv.lo) and iv.lo_closed:
        cands.append(ProjectiveLabel(POINT, iv.lo))
    if iv.lo == NEG_INF:
        cands.append(ProjectiveLabel(POINT, NEG_INF))
    if iv.hi == POS_INF:
        cands.append(ProjectiveLabel(POINT, POS_INF))
    if is_finite(iv.hi) and not iv.hi_closed:
        cands.append(ProjectiveLabel(OPEN_RIGHT, iv.hi))
    if is_finite(iv.lo) and not iv.lo_closed:
        cands.append(ProjectiveLabel(OPEN_LEFT, iv.lo))
    for label in cands:
        if realize_projective(o, label) == iv:
            return label
    return None


def classify_injective(o: Orientation, iv: Interval) -> Optional[InjectiveLabel]:
    p = classify_projective(reverse(o), iv)
    if p is None:
        return None
    return InjectiveLabel(p.form, p.a)


# ---------------------------------------------------------------------------
# Hom spaces

def _hom_system(v: TameRep, w: TameRep) -> tuple[Matrix, list[int]]:
    """Constraint matrix of the commuting-square equations; unknowns are the
    entries of the cellwise matrices dom(x) -> cod(x), cell by cell."""
    field = v.field
    offsets = []
    total = 0
    for c in range(v.ncells):
        offsets.append(total)
        total += w.dims[c] * v.dims[c]
    rows = []
    z = field.zero()
    for j in range(len(v.maps)):
        d = v.dirs[j]
        src, tgt = (j + 1, j) if d == DOWN else (j, j + 1)
        vm, wm = v.maps[j], w.maps[j]
        for rr in range(w.dims[tgt]):
            for cc in range(v.dims[src]):
                row = [z] * total
                # (f_tgt @ vm)[rr][cc]
                for s in range(v.dims[tgt]):
                    coef = vm.rows[s][cc]
                    if coef != z:
                        row[offsets[tgt] + rr * v.dims[tgt] + s] = field.add(
                            row[offsets[tgt] + rr * v.dims[tgt] + s], coef)
                # -(wm @ f_src)[rr][cc]
                for s in range(w.dims[src]):
                    coef = wm.rows[rr][s]
                    if coef != z:
                        idx = offsets[src] + s * v.dims[src] + cc
                        row[idx] = field.sub(row[idx], coef)
                rows.append(row)
    return Matrix(field, len(rows), total, rows), offsets


def hom_basis(v: TameRep, w: TameRep) -> list[RepMorphism]:
    """A basis of the space of morphisms v -> w (inputs are refined to a
    common grid first)."""
    v, w = common_grid(v, w)
    system, offsets = _hom_system(v, w)
    ker = kernel_basis(system)
    out = []
    for col in ker.columns():
        mats = []
        for c in range(v.ncells):
            nr, nc = w.dims[c], v.dims[c]
            base = offsets[c]
            mats.append(Matrix(v.field, nr, nc,
                               [[col[base + r * nc + s] for s in range(nc)]
                                for r in range(nr)]))
        out.append(RepMorphism(v, w, mats, validate=False))
    return out


def hom_space_dim(v: TameRep, w: TameRep) -> int:
    if v.orientation != w.orientation:
        raise ValueError("orientation mismatch")
    v, w = common_grid(v, w)
    system, _ = _hom_system(v, w)
    return system.ncols - rank(system)


def hom_dim(o: Orientation, i_iv: Interval, j_iv: Interval, field=QQ) -> int:
    v = from_bars(o, BarMultiset([(i_iv, 1)]), field)
    w = from_bars(o, BarMultiset([(j_iv, 1)]), field)
    d = hom_space_dim(v, w)
    if d > 1:
        raise InternalInvariantError(
            f"Hom dimension {d} > 1 between interval summands {i_iv}, {j_iv}")
    return d


# ---------------------------------------------------------------------------
# projectivity of representations

def is_projective_rep(v: TameRep) -> bool:
    """Every interval summand classifies as a projective."""
    return all(classify_projective(v.orientation, iv) is not None
               for iv, _ in decompose(v))


def injective_composites_criterion(v: TameRep) -> bool:
    """Direct test for representations supported in a single segment: every
    composite map into the segment's sink end must be injective.  An
    infinite sink end is read off the unbounded grid cell, which carries
    the colimit of a tame representation."""
    nz = [i for i, d in enumerate(v.dims) if d > 0]
    if not nz:
        return True
    hull = cells_to_interval(v.grid, nz[0], nz[-1])
    for p, _ in v.orientation.criticals:
        if hull.lo < p < hull.hi:
            raise ValueError("support spans more than one segment")
    seg = _segment_of_hull(v.orientation, hull)
    if seg.increasing:
        target = cell_of_point(v.grid, seg.lo) if is_finite(seg.lo) else 0
        cells = list(range(target, nz[-1] + 1))
        order = cells  # sink end at the left
    else:
        target = (cell_of_point(v.grid, seg.hi) if is_finite(seg.hi)
                  else v.ncells - 1)
        order = list(reversed(range(nz[0], target + 1)))
    comp = Matrix.identity(v.field, v.dims[target])
    for idx in range(1, len(order)):
        c, prev = order[idx], order[idx - 1]
        j = min(c, prev)
        if (v.dirs[j] == DOWN) != (c > prev):
            raise ValueError("junction map points away from the sink end")
        comp = comp.matmul(v.maps[j])
        if rank(comp) < v.dims[c]:
            return False
    return True


def _segment_of_hull(o: Orientation, hull: Interval) -> Segment:
    probe = None
    if is_finite(hull.lo) and is_finite(hull.hi) and hull.lo != hull.hi:
        probe = (Fraction(hull.lo) + Fraction(hull.hi)) / 2
    elif is_finite(hull.lo):
        probe = Fraction(hull.lo) + (1 if hull.hi == POS_INF else 0)
    elif is_finite(hull.hi):
        probe = Fraction(hull.hi) - 1
    else:
        probe = Fraction(0)
    if o.is_critical(probe):
        segs = segments_touching(o, probe)
        return segs[1] if hull.hi > probe else segs[0]
    return segment_index(o, probe)


# ---------------------------------------------------------------------------
# image filtration

@dataclass(frozen=True)
class FiltrationReport:
    entries: tuple[tuple[int, Interval], ...]

    def dims(self) -> list[int]:
        return [d for d, _ in self.entries]


def image_filtration(v: TameRep, seg: Segment, b) -> FiltrationReport:
    """Distinct images inside the space at the order-minimal point b of the
    support, paired with the interval of points that still reach them."""
    b = Fraction(b)
    nz = [i for i, d in enumerate(v.dims) if d > 0]
    if not nz:
        return FiltrationReport(())
    if nz[-1] - nz[0] + 1 != len(nz):
        raise ValueError("support must be connected")
    hull = cells_to_interval(v.grid, nz[0], nz[-1])
    if not (seg.lo <= hull.lo and hull.hi <= seg.hi):
        raise ValueError("support leaves the given segment")
    if b not in v.grid:
        raise ValueError("b must be a grid point")
    bc = cell_of_point(v.grid, b)
    target = nz[0] if seg.increasing else nz[-1]
    if bc != target or v.dims[bc] == 0:
        raise ValueError("b is not the order-minimal point of the support")
    order = list(range(nz[0], nz[-1] + 1))
    if not seg.increasing:
        order = list(reversed(order))
    comp = Matrix.identity(v.field, v.dims[target])
    dims_out = [v.dims[target]]
    for idx in range(1, len(order)):
        c, prev = order[idx], order[idx - 1]
        j = min(c, prev)
        comp = comp.matmul(v.maps[j])
        dims_out.append(rank(comp))
    entries = []
    seen = set()
    for idx, d in enumerate(dims_out):
        if d in seen:
            continue
        seen.add(d)
        last = max(i for i, dd in enumerate(dims_out) if dd >= d)
        lo_cell = min(order[0], order[last])
        hi_cell = max(order[0], order[last])
        entries.append((d, cells_to_interval(v.grid, lo_cell, hi_cell)))
    return FiltrationReport(tuple(entries))


# ---------------------------------------------------------------------------
# minimal projective presentations

@dataclass
class ProjPresentation:
    p1: list[ProjectiveLabel]
    p0: list[ProjectiveLabel]
    realized: RepMorphism  # injective, cokernel is the presented summand

    def p1_supports(self) -> list[Interval]:
        return [s for s in (realize_projective(self.realized.dom.orientation, l)
                            for l in self.p1)]

    def p0_supports(self) -> list[Interval]:
        return [s for s in (realize_projective(self.realized.dom.orientation, l)
                            for l in self.p0)]


def _label_position(label: ProjectiveLabel):
    if label.a == NEG_INF:
        return (NEG_INF, 0)
    if label.a == POS_INF:
        return (POS_INF, 0)
    side = {OPEN_RIGHT: -1, POINT: 0, OPEN_LEFT: 1}[label.form]
    return (Fraction(label.a), side)


def _presentation_labels(o: Orientation, iv: Interval) -> tuple[list, list]:
    """Generator (P0) and relation (P1) labels for a non-projective interval
    summand."""
    p0: list[ProjectiveLabel] = []
    p1: list[ProjectiveLabel] = []

    def keep(lst, label):
        if realize_projective(o, label) is not None:
            lst.append(label)

    if iv.is_point():
        a = Fraction(iv.lo)
        p0.append(ProjectiveLabel(POINT, a))
        keep(p1, ProjectiveLabel(OPEN_RIGHT, a))
        keep(p1, ProjectiveLabel(OPEN_LEFT, a))
        return p1, p0

    for p, kind in o.criticals:
        if iv.lo < p < iv.hi:
            if kind == "source":
                p0.append(ProjectiveLabel(POINT, p))
            else:
                p1.append(ProjectiveLabel(POINT, p))

    def overlaps(label) -> bool:
        sup = realize_projective(o, label)
        return sup is not None and intersect(sup, iv) is not None

    a = iv.lo
    if a == NEG_INF:
        keep(p0, ProjectiveLabel(POINT, NEG_INF))
    elif not iv.lo_closed:
        if overlaps(ProjectiveLabel(OPEN_LEFT, a)):
            p0.append(ProjectiveLabel(OPEN_LEFT, a))
        if intersect(up_set(o, a), iv) is not None:
            p1.append(ProjectiveLabel(POINT, a))
    else:
        if overlaps(ProjectiveLabel(OPEN_LEFT, a)) or overlaps(ProjectiveLabel(OPEN_RIGHT, a)):
            p0.append(ProjectiveLabel(POINT, a))
        keep(p1, ProjectiveLabel(OPEN_RIGHT, a))

    b = iv.hi
    if b == POS_INF:
        keep(p0, ProjectiveLabel(POINT, POS_INF))
    elif not iv.hi_closed:
        if overlaps(ProjectiveLabel(OPEN_RIGHT, b)):
            p0.append(ProjectiveLabel(OPEN_RIGHT, b))
        if intersect(up_set(o, b), iv) is not None:
            p1.append(ProjectiveLabel(POINT, b))
    else:
        if overlaps(ProjectiveLabel(OPEN_LEFT, b)) or overlaps(ProjectiveLabel(OPEN_RIGHT, b)):
            p0.append(ProjectiveLabel(POINT, b))
        keep(p1, ProjectiveLabel(OPEN_LEFT, b))

    return p1, p0


def _reps_on_common_grid(o: Orientation, groups: Sequence[Sequence[Interval]], field):
    pts: set[Fraction] = set()
    lo_h: ExtReal = POS_INF
    hi_h: ExtReal = NEG_INF
    for ivs in groups:
        for s in ivs:
            lo_h = min(lo_h, s.lo)
            hi_h = max(hi_h, s.hi)
            for e in (s.lo, s.hi):
                if is_finite(e):
                    pts.add(Fraction(e))
    for p, _ in o.criticals:
        if lo_h <= p <= hi_h:
            pts.add(p)
    return [rep_from_interval_list(o, list(ivs), field, extra_points=pts)
            for ivs in groups]


def _overlap_morphism_matrix(o, dom_pack, cod_pack, pairs, field):
    """Block matrices of the summand-wise truncation maps with the given
    coefficients; pairs maps (dom summand index, cod summand index) to a
    scalar."""
    (dom, dom_slots), (cod, cod_slots) = dom_pack, cod_pack
    mats = []
    z = field.zero()
    for c in range(dom.ncells):
        rows = []
        for r_iv in cod_slots[c]:
            row = []
            for c_iv in dom_slots[c]:
                row.append(pairs.get((c_iv, r_iv), z))
            rows.append(row)
        mats.append(Matrix(field, len(cod_slots[c]), len(dom_slots[c]), rows))
    return RepMorphism(dom, cod, mats)


def proj_presentation(o: Orientation, iv: Interval, field=QQ) -> ProjPresentation:
    """Minimal projective presentation of the interval summand supported on
    iv: an injective map between sums of projectives whose cokernel is it."""
    label = classify_projective(o, iv)
    if label is not None:
        (cod, _), = _reps_on_common_grid(o, [[iv]], field)
        dom = zero_rep(o, field, cod.grid)
        mats = [Matrix.zero(field, cod.dims[c], 0) for c in range(cod.ncells)]
        realized = RepMorphism(dom, cod, mats, validate=False)
        return ProjPresentation([], [label], realized)
    p1, p0 = _presentation_labels(o, iv)
    p1_sup = [realize_projective(o, l) for l in p1]
    p0_sup = [realize_projective(o, l) for l in p0]
    dom_pack, cod_pack = _reps_on_common_grid(o, [p1_sup, p0_sup], field)
    chain = sorted(
        [(lab, _label_position(lab), 1, i) for i, lab in enumerate(p1)]
        + [(lab, _label_position(lab), 0, i) for i, lab in enumerate(p0)],
        key=lambda t: t[1])
    pairs = {}
    one = field.one()
    for pos, (lab, _, which, i) in enumerate(chain):
        if which != 1:
            continue
        for left in range(pos - 1, -1, -1):
            if chain[left][2] == 0:
                pairs[(i, chain[left][3])] = one
                break
        for right in range(pos + 1, len(chain)):
            if chain[right][2] == 0:
                pairs[(i, chain[right][3])] = field.neg(one)
                break
    realized = _overlap_morphism_matrix(o, dom_pack, cod_pack, pairs, field)
    for c in range(realized.dom.ncells):
        if rank(realized.mats[c]) < realized.dom.dims[c]:
            raise InternalInvariantError("presentation map is not injective cellwise")
    return ProjPresentation(p1, p0, realized)


def _flatten_morphism(f: RepMorphism) -> list:
    out = []
    for m in f.mats:
        for row in m.rows:
            out.extend(row)
    return out


def refine_morphism(f: RepMorphism, points) -> RepMorphism:
    dom = refine(f.dom, points)
    cod = refine(f.cod, points)
    mats = []
    for c in range(dom.ncells):
        rep_pt = cell_representative(dom.grid, c)
        mats.append(f.mats[cell_of_point(f.dom.grid, rep_pt)])
    return RepMorphism(dom, cod, mats, validate=False)


def ext_dim(o: Orientation, v_iv: Interval, w_iv: Interval, field=QQ) -> int:
    """dim Ext^1 between the interval summands, via the presentation of the
    first argument."""
    pres = proj_presentation(o, v_iv, field)
    wrep = from_bars(o, BarMultiset([(w_iv, 1)]), field)
    pts = set(wrep.grid) | set(pres.realized.dom.grid)
    inc = refine_morphism(pres.realized, pts)
    w2 = refine(wrep, inc.dom.grid)
    h1 = hom_space_dim(inc.dom, w2)
    basis0 = hom_basis(inc.cod, w2)
    stacked = [_flatten_morphism(phi.compose(inc)) for phi in basis0]
    r = rank(Matrix.from_rows(field, stacked)) if stacked else 0
    ext = h1 - r
    if ext not in (0, 1):
        raise InternalInvariantError(f"Ext dimension {ext} outside {{0,1}}")
    return ext


def kernel_of_projective_map(f: RepMorphism) -> TameRep:
    """Kernel of a morphism between sums of projectives; the category is
    hereditary, so the kernel must classify projective again."""
    if not f.commutes():
        raise ValueError("non-commuting squares: not a morphism")
    k, _ = kernel_rep(f)
    if not is_projective_rep(k):
        raise InternalInvariantError("kernel of a map between projectives "
                                     "failed to classify projective")
    return k


# ---------------------------------------------------------------------------
# the projectives table

_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def _symbolic_interval(iv: Interval, t0: Fraction, letter: str) -> str:
    lo_s = letter if iv.lo == t0 else format_extreal(iv.lo)
    hi_s = letter if iv.hi == t0 else format_extreal(iv.hi)
    if iv.is_point():
        return "{%s}" % lo_s
    lb = "[" if iv.lo_closed else "("
    rb = "]" if iv.hi_closed else ")"
    return f"{lb}{lo_s}, {hi_s}{rb}"


def _symbolic_label(label: ProjectiveLabel, t0: Fraction, letter: str) -> str:
    s = letter if label.a == t0 else format_extreal(label.a)
    if label.form == POINT:
        return f"P_{s}"
    if label.form == OPEN_RIGHT:
        return f"P_{s})"
    return f"P_({s}"


def projectives_table(o: Orientation, window: Optional[tuple] = None) -> list[tuple[str, str, object]]:
    """All indecomposable projective forms: one row per critical-point label
    and one symbolic row per family over each open segment.  Returns
    (support string, label string, sort proxy interval) rows, sorted by the
    canonical interval order."""
    rows = []

    def in_window(x) -> bool:
        if window is None:
            return True
        lo, hi = window
        return lo <= x <= hi

    for end in (NEG_INF, POS_INF):
        sup = down_set_limit(o, end)
        if sup is not None:
            lab = ProjectiveLabel(POINT, end)
            rows.append((str(sup), str(lab), sup))
    for p, _ in o.criticals:
        if not in_window(p):
            continue
        for form in (POINT, OPEN_RIGHT, OPEN_LEFT):
            lab = ProjectiveLabel(form, p)
            sup = realize_projective(o, lab)
            if sup is not None:
                rows.append((str(sup), str(lab), sup))
    pos = o.positions
    bounds: list[tuple[ExtReal, ExtReal]] = []
    if pos:
        bounds.append((NEG_INF, pos[0]))
        for x, y in zip(pos, pos[1:]):
            bounds.append((x, y))
        bounds.append((pos[-1], POS_INF))
    else:
        bounds.append((NEG_INF, POS_INF))
    for si, (lo, hi) in enumerate(bounds):
        letter = _LETTERS[si % len(_LETTERS)]
        if is_finite(lo) and is_finite(hi):
            t0 = (Fraction(lo) + Fraction(hi)) / 2
        elif is_finite(lo):
            t0 = Fraction(lo) + 1
        elif is_finite(hi):
            t0 = Fraction(hi) - 1
        else:
            t0 = Fraction(0)
        if not in_window(t0):
            continue
        for form in (POINT, OPEN_RIGHT, OPEN_LEFT):
            lab = ProjectiveLabel(form, t0)
            sup = realize_projective(o, lab)
            if sup is not None:
                rows.append((_symbolic_interval(sup, t0, letter),
                             _symbolic_label(lab, t0, letter), sup))
    rows.sort(key=lambda r: r[2].sort_key())
    return rows
