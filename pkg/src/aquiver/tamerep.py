"""Tame representations: constant on the open cells of a finite grid.

A grid c_1 < ... < c_m cuts the line into 2m+1 cells
(-inf,c_1), {c_1}, (c_1,c_2), ..., {c_m}, (c_m,+inf).  A representation
stores one dimension per cell and one exact matrix per junction between
adjacent cells; the junction direction is forced by the orientation
("down" points toward the lower cell index).  Transition maps inside a
cell are identities, so the whole object is a finite zigzag of vector
spaces.
"""

from __future__ import annotations

import random
from bisect import bisect_right
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .intervals import (BarMultiset, ExtReal, Interval, NEG_INF, POS_INF,
                        is_finite)
from .linalg import (Matrix, QQ, SpanTracker, column_space_basis, invert,
                     kernel_basis, random_invertible, solve_matrix)
from .orientation import Orientation, increasing_on_side, reverse

DOWN = "down"
UP = "up"


# ---------------------------------------------------------------------------
# cell geometry

def num_cells(grid: Sequence[Fraction]) -> int:
    return 2 * len(grid) + 1


def cell_of_point(grid: Sequence[Fraction], x) -> int:
    x = Fraction(x)
    i = bisect_right(grid, x)
    if i > 0 and grid[i - 1] == x:
        return 2 * i - 1
    return 2 * i


def cell_extent(grid: Sequence[Fraction], idx: int) -> Interval:
    m = len(grid)
    if idx % 2 == 1:
        return Interval.point(grid[(idx - 1) // 2])
    lo: ExtReal = grid[idx // 2 - 1] if idx > 0 else NEG_INF
    hi: ExtReal = grid[idx // 2] if idx < 2 * m else POS_INF
    return Interval(lo, hi, False, False)


def cell_representative(grid: Sequence[Fraction], idx: int) -> Fraction:
    m = len(grid)
    if idx % 2 == 1:
        return grid[(idx - 1) // 2]
    if m == 0:
        return Fraction(0)
    if idx == 0:
        return grid[0] - 1
    if idx == 2 * m:
        return grid[-1] + 1
    return (grid[idx // 2 - 1] + grid[idx // 2]) / 2


def interval_to_cells(grid: Sequence[Fraction], iv: Interval) -> tuple[int, int]:
    """Inclusive cell index range of an interval whose finite endpoints are
    grid points."""
    m = len(grid)
    if iv.lo == NEG_INF:
        c_lo = 0
    else:
        g = bisect_right(grid, iv.lo) - 1
        if g < 0 or grid[g] != iv.lo:
            raise ValueError(f"endpoint {iv.lo} not on the grid")
        c_lo = 2 * g + 1 if iv.lo_closed else 2 * g + 2
    if iv.hi == POS_INF:
        c_hi = 2 * m
    else:
        g = bisect_right(grid, iv.hi) - 1
        if g < 0 or grid[g] != iv.hi:
            raise ValueError(f"endpoint {iv.hi} not on the grid")
        c_hi = 2 * g + 1 if iv.hi_closed else 2 * g
    if c_lo > c_hi:
        raise ValueError(f"interval {iv} spans no cell")
    return c_lo, c_hi


def cells_to_interval(grid: Sequence[Fraction], b: int, d: int) -> Interval:
    m = len(grid)
    if b == 0:
        lo, lo_closed = NEG_INF, False
    elif b % 2 == 1:
        lo, lo_closed = grid[(b - 1) // 2], True
    else:
        lo, lo_closed = grid[b // 2 - 1], False
    if d == 2 * m:
        hi, hi_closed = POS_INF, False
    elif d % 2 == 1:
        hi, hi_closed = grid[(d - 1) // 2], True
    else:
        hi, hi_closed = grid[d // 2], False
    return Interval(lo, hi, lo_closed, hi_closed)


def junction_dir(o: Orientation, grid: Sequence[Fraction], j: int) -> str:
    """Direction of the junction between cells j and j+1: "down" when the
    order increases there (maps run toward smaller reals)."""
    c = grid[j // 2]
    side = "left" if j % 2 == 0 else "right"
    return DOWN if increasing_on_side(o, c, side) else UP


# ---------------------------------------------------------------------------
# the representation type

class TameRep:
    __slots__ = ("orientation", "field", "grid", "dims", "maps", "dirs")

    def __init__(self, orientation: Orientation, field, grid, dims, maps, dirs,
                 validate: bool = True):
        self.orientation = orientation
        self.field = field
        self.grid = tuple(Fraction(g) for g in grid)
        self.dims = tuple(int(d) for d in dims)
        self.maps = tuple(maps)
        self.dirs = tuple(dirs)
        if validate:
            self._validate()

    def _validate(self):
        g = self.grid
        if any(b <= a for a, b in zip(g, g[1:])):
            raise ValueError("grid must be strictly increasing")
        if len(self.dims) != num_cells(g):
            raise ValueError("dims length must be 2m+1")
        if any(d < 0 for d in self.dims):
            raise ValueError("negative dimension")
        if len(self.maps) != 2 * len(g) or len(self.dirs) != 2 * len(g):
            raise ValueError("need 2m junction maps")
        if g:
            for p, _ in self.orientation.criticals:
                if g[0] <= p <= g[-1] and p not in g:
                    raise ValueError(f"critical point {p} inside the hull is missing from the grid")
        for j, (mat, d) in enumerate(zip(self.maps, self.dirs)):
            want = junction_dir(self.orientation, g, j)
            if d != want:
                raise ValueError(f"junction {j} direction {d!r} contradicts the orientation ({want!r})")
            lo, hi = self.dims[j], self.dims[j + 1]
            shape = (lo, hi) if d == DOWN else (hi, lo)
            if (mat.nrows, mat.ncols) != shape:
                raise ValueError(f"junction {j} matrix shape {(mat.nrows, mat.ncols)} != {shape}")
            if mat.field != self.field:
                raise ValueError("matrix field mismatch")

    @property
    def ncells(self) -> int:
        return len(self.dims)

    def dim_at(self, x) -> int:
        return self.dims[cell_of_point(self.grid, x)]

    def is_zero(self) -> bool:
        return all(d == 0 for d in self.dims)

    def total_dim(self) -> int:
        return sum(self.dims)

    def support_hull(self) -> Optional[Interval]:
        nz = [i for i, d in enumerate(self.dims) if d > 0]
        if not nz:
            return None
        return cells_to_interval(self.grid, nz[0], nz[-1])

    def __eq__(self, other):
        return (isinstance(other, TameRep)
                and self.orientation == other.orientation
                and self.field == other.field
                and self.grid == other.grid
                and self.dims == other.dims
                and self.maps == other.maps)

    def __repr__(self):
        return f"TameRep(grid={[str(g) for g in self.grid]}, dims={self.dims})"


def zero_rep(o: Orientation, field=QQ, grid: Sequence = ()) -> TameRep:
    grid = sorted(Fraction(g) for g in grid)
    grid = _close_under_criticals(o, grid)
    dims = [0] * num_cells(grid)
    maps, dirs = [], []
    for j in range(2 * len(grid)):
        d = junction_dir(o, grid, j)
        maps.append(Matrix.zero(field, 0, 0))
        dirs.append(d)
    return TameRep(o, field, grid, dims, maps, dirs)


def _close_under_criticals(o: Orientation, grid: list[Fraction]) -> list[Fraction]:
    if not grid:
        return grid
    extra = [p for p, _ in o.criticals if grid[0] <= p <= grid[-1] and p not in grid]
    if extra:
        grid = sorted(set(grid) | set(extra))
    return grid


def rep_from_interval_list(o: Orientation, ivs: Sequence[Interval], field=QQ,
                           extra_points: Iterable = ()) -> tuple[TameRep, list[list[int]]]:
    """Direct sum of the one-dimensional representations supported on the
    given intervals, with identity transitions.  Returns the representation
    and, per cell, the list of interval indices occupying its slots."""
    pts = set(Fraction(p) for p in extra_points)
    for iv in ivs:
        for e in (iv.lo, iv.hi):
            if is_finite(e):
                pts.add(Fraction(e))
    if ivs or pts:
        lo_h = min([iv.lo for iv in ivs] + list(pts), default=POS_INF)
        hi_h = max([iv.hi for iv in ivs] + list(pts), default=NEG_INF)
        for p, _ in o.criticals:
            if lo_h <= p <= hi_h:
                pts.add(p)
    grid = sorted(pts)
    grid = _close_under_criticals(o, grid)
    n = num_cells(grid)
    ranges = [interval_to_cells(grid, iv) for iv in ivs]
    slots: list[list[int]] = [[] for _ in range(n)]
    for idx, (a, b) in enumerate(ranges):
        for c in range(a, b + 1):
            slots[c].append(idx)
    dims = [len(s) for s in slots]
    one, zero = field.one(), field.zero()
    maps, dirs = [], []
    for j in range(2 * len(grid)):
        d = junction_dir(o, grid, j)
        src, tgt = (j + 1, j) if d == DOWN else (j, j + 1)
        rows = []
        for r_iv in slots[tgt]:
            rows.append([one if c_iv == r_iv else zero for c_iv in slots[src]])
        maps.append(Matrix(field, dims[tgt], dims[src], rows))
        dirs.append(d)
    return TameRep(o, field, grid, dims, maps, dirs), slots


def from_bars(o: Orientation, bars: BarMultiset, field=QQ) -> TameRep:
    """The canonical representation of a barcode: one slot per bar copy, in
    canonical bar order."""
    rep, _ = rep_from_interval_list(o, bars.intervals(), field)
    return rep


def refine(v: TameRep, points: Iterable) -> TameRep:
    """Insert grid points (plus any critical points pulled into the hull);
    the representation is unchanged as a representation."""
    pts = sorted(set(v.grid) | {Fraction(p) for p in points})
    pts = _close_under_criticals(v.orientation, pts)
    if tuple(pts) == v.grid:
        return v
    o, field = v.orientation, v.field
    old_grid = v.grid
    dims = []
    for c in range(num_cells(pts)):
        rep_pt = cell_representative(pts, c)
        dims.append(v.dims[cell_of_point(old_grid, rep_pt)])
    maps, dirs = [], []
    for j in range(2 * len(pts)):
        p = pts[j // 2]
        side_left = j % 2 == 0
        d = junction_dir(o, pts, j)
        if p in old_grid:
            og = old_grid.index(p)
            old_j = 2 * og + (0 if side_left else 1)
            maps.append(v.maps[old_j])
        else:
            k = v.dims[cell_of_point(old_grid, p)]
            maps.append(Matrix.identity(field, k))
        dirs.append(d)
    return TameRep(o, field, pts, dims, maps, dirs)


def common_grid(a: TameRep, b: TameRep) -> tuple[TameRep, TameRep]:
    if a.orientation != b.orientation:
        raise ValueError("orientation mismatch")
    if a.field != b.field:
        raise ValueError("field mismatch")
    pts = set(a.grid) | set(b.grid)
    return refine(a, pts), refine(b, pts)


def direct_sum(a: TameRep, b: TameRep) -> TameRep:
    a, b = common_grid(a, b)
    field = a.field
    dims = [da + db for da, db in zip(a.dims, b.dims)]
    maps = []
    for j in range(len(a.maps)):
        ma, mb = a.maps[j], b.maps[j]
        z = field.zero()
        rows = []
        for r in range(ma.nrows):
            rows.append(list(ma.rows[r]) + [z] * mb.ncols)
        for r in range(mb.nrows):
            rows.append([z] * ma.ncols + list(mb.rows[r]))
        maps.append(Matrix(field, ma.nrows + mb.nrows, ma.ncols + mb.ncols, rows))
    return TameRep(a.orientation, field, a.grid, dims, maps, a.dirs)


def dual(v: TameRep) -> TameRep:
    """Same spaces over the reversed orientation; every map is transposed and
    flips direction."""
    o2 = reverse(v.orientation)
    maps = [m.transpose() for m in v.maps]
    dirs = [UP if d == DOWN else DOWN for d in v.dirs]
    return TameRep(o2, v.field, v.grid, v.dims, maps, dirs)


def restrict(v: TameRep, j_iv: Interval) -> TameRep:
    """Zero outside the interval, unchanged inside; maps crossing the
    boundary become zero."""
    pts = [e for e in (j_iv.lo, j_iv.hi) if is_finite(e)]
    w = refine(v, pts)
    keep = []
    for c in range(w.ncells):
        ext = cell_extent(w.grid, c)
        if ext.is_point():
            keep.append(j_iv.contains(ext.lo))
        else:
            inside = j_iv.lo <= ext.lo and ext.hi <= j_iv.hi
            keep.append(inside)
    dims = [d if k else 0 for d, k in zip(w.dims, keep)]
    maps = []
    for j in range(len(w.maps)):
        d = w.dirs[j]
        src, tgt = (j + 1, j) if d == DOWN else (j, j + 1)
        if keep[src] and keep[tgt]:
            maps.append(w.maps[j])
        else:
            maps.append(Matrix.zero(w.field, dims[tgt], dims[src]))
    return TameRep(w.orientation, w.field, w.grid, dims, maps, w.dirs)


def conjugate(v: TameRep, cell_mats: Sequence[Matrix]) -> TameRep:
    """Change basis at every cell by the given invertible matrices; the
    result is isomorphic to the input."""
    if len(cell_mats) != v.ncells:
        raise ValueError("need one matrix per cell")
    invs = [invert(g) for g in cell_mats]
    maps = []
    for j in range(len(v.maps)):
        d = v.dirs[j]
        src, tgt = (j + 1, j) if d == DOWN else (j, j + 1)
        maps.append(cell_mats[tgt].matmul(v.maps[j]).matmul(invs[src]))
    return TameRep(v.orientation, v.field, v.grid, v.dims, maps, v.dirs)


def scramble(v: TameRep, seed: int) -> TameRep:
    """Seeded random change of basis at every cell: a reproducible isomorphic
    copy with no distinguished slot structure left."""
    rng = random.Random(seed)
    mats = [random_invertible(v.field, d, rng) for d in v.dims]
    return conjugate(v, mats)


# ---------------------------------------------------------------------------
# morphisms

class RepMorphism:
    """A cellwise family of matrices dom(x) -> cod(x) commuting with the
    junction maps.  dom and cod must live on the same grid."""

    __slots__ = ("dom", "cod", "mats")

    def __init__(self, dom: TameRep, cod: TameRep, mats: Sequence[Matrix],
                 validate: bool = True):
        if dom.grid != cod.grid or dom.orientation != cod.orientation or dom.field != cod.field:
            raise ValueError("morphism endpoints must share grid, orientation and field")
        if len(mats) != dom.ncells:
            raise ValueError("need one matrix per cell")
        for c, m in enumerate(mats):
            if (m.nrows, m.ncols) != (cod.dims[c], dom.dims[c]):
                raise ValueError(f"cell {c}: matrix shape {(m.nrows, m.ncols)} != "
                                 f"{(cod.dims[c], dom.dims[c])}")
        self.dom = dom
        self.cod = cod
        self.mats = list(mats)
        if validate and not self.commutes():
            raise ValueError("non-commuting squares: not a morphism")

    def commutes(self) -> bool:
        for j in range(len(self.dom.maps)):
            d = self.dom.dirs[j]
            src, tgt = (j + 1, j) if d == DOWN else (j, j + 1)
            lhs = self.mats[tgt].matmul(self.dom.maps[j])
            rhs = self.cod.maps[j].matmul(self.mats[src])
            if lhs != rhs:
                return False
        return True

    def compose(self, other: "RepMorphism") -> "RepMorphism":
        """self after other."""
        if other.cod is not self.dom and other.cod != self.dom:
            raise ValueError("composition mismatch")
        mats = [a.matmul(b) for a, b in zip(self.mats, other.mats)]
        return RepMorphism(other.dom, self.cod, mats, validate=False)

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.mats)

    def power(self, n: int) -> "RepMorphism":
        if self.dom != self.cod:
            raise ValueError("power needs an endomorphism")
        out = identity_morphism(self.dom)
        for _ in range(n):
            out = self.compose(out)
        return out


def identity_morphism(v: TameRep) -> RepMorphism:
    return RepMorphism(v, v, [Matrix.identity(v.field, d) for d in v.dims], validate=False)


def zero_morphism(dom: TameRep, cod: TameRep) -> RepMorphism:
    mats = [Matrix.zero(dom.field, cod.dims[c], dom.dims[c]) for c in range(dom.ncells)]
    return RepMorphism(dom, cod, mats, validate=False)


def _subrep_from_embeddings(parent: TameRep, embeds: list[Matrix]) -> TameRep:
    """Build the representation carried by cellwise subspaces (columns of
    embeds) that are closed under the junction maps."""
    field = parent.field
    dims = [e.ncols for e in embeds]
    maps = []
    for j in range(len(parent.maps)):
        d = parent.dirs[j]
        src, tgt = (j + 1, j) if d == DOWN else (j, j + 1)
        pushed = parent.maps[j].matmul(embeds[src])
        x = solve_matrix(embeds[tgt], pushed)
        if x is None:
            raise ValueError("subspaces are not closed under the maps")
        maps.append(x)
    return TameRep(parent.orientation, field, parent.grid, dims, maps, parent.dirs)


def kernel_rep(f: RepMorphism) -> tuple[TameRep, list[Matrix]]:
    embeds = [kernel_basis(m) for m in f.mats]
    return _subrep_from_embeddings(f.dom, embeds), embeds


def image_rep(f: RepMorphism) -> tuple[TameRep, list[Matrix]]:
    embeds = [column_space_basis(m) for m in f.mats]
    return _subrep_from_embeddings(f.cod, embeds), embeds


def cokernel_rep(f: RepMorphism) -> tuple[TameRep, list[Matrix]]:
    """Quotient of cod by the image; returns the quotient representation and
    the cellwise projection matrices."""
    field = f.dom.field
    cod = f.cod
    projs = []
    dims = []
    for c in range(cod.ncells):
        d = cod.dims[c]
        im = column_space_basis(f.mats[c])
        cols = im.columns()
        basis = list(cols)
        tr = SpanTracker(field)
        for col in cols:
            tr.try_add(col)
        unit_idx = []
        for i in range(d):
            e = [field.one() if k == i else field.zero() for k in range(d)]
            if tr.try_add(e):
                basis.append(e)
                unit_idx.append(i)
        b_mat = Matrix.from_columns(field, d, basis)
        inv_b = invert(b_mat) if d else Matrix(field, 0, 0, [])
        q = len(unit_idx)
        proj = Matrix(field, q, d, inv_b.rows[im.ncols:]) if d else Matrix(field, 0, 0, [])
        projs.append(proj)
        dims.append(q)
    maps = []
    for j in range(len(cod.maps)):
        d = cod.dirs[j]
        src, tgt = (j + 1, j) if d == DOWN else (j, j + 1)
        # induced map on quotients: lift, push through, project
        proj_src = projs[src]
        # lift: pseudo-inverse via solving proj_src * L = I on the chosen complement
        if proj_src.nrows:
            lift = solve_matrix(proj_src, Matrix.identity(field, proj_src.nrows))
            if lift is None:
                raise AssertionError("projection is onto by construction")
        else:
            lift = Matrix.zero(field, cod.dims[src], 0)
        maps.append(projs[tgt].matmul(cod.maps[j]).matmul(lift))
    return TameRep(cod.orientation, field, cod.grid, dims, maps, cod.dirs), projs
