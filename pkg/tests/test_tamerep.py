import random
from fractions import Fraction

import pytest

from conftest import random_bars, random_orientation
from aquiver.decompose import decompose, iso
from aquiver.intervals import BarMultiset, Interval, NEG_INF, POS_INF
from aquiver.linalg import Matrix, PrimeField, QQ
from aquiver.orientation import Orientation
from aquiver.tamerep import (RepMorphism, TameRep, cell_of_point, conjugate,
                             cokernel_rep, direct_sum, dual, from_bars,
                             image_rep, kernel_rep, refine, restrict,
                             scramble, zero_rep)

EMPTY_DESC = Orientation.make([], "descending")
ZIGZAG = Orientation.make([(0, "sink"), (1, "source")])


def bars(*specs):
    return BarMultiset((iv, m) for iv, m in specs)


def test_from_bars_single_closed_bar():
    v = from_bars(EMPTY_DESC, bars((Interval.make(0, 1, True, True), 1)))
    assert v.grid == (0, 1)
    assert v.dims == (0, 1, 1, 1, 0)
    assert v.dirs == ("down",) * 4
    inner = [m for m in v.maps if m.nrows == 1 and m.ncols == 1]
    assert all(m.rows[0][0] == 1 for m in inner)


def test_from_bars_empty():
    v = from_bars(EMPTY_DESC, BarMultiset())
    assert v.grid == () and v.dims == (0,)
    assert v.is_zero()


def test_from_bars_overlap_count():
    v = from_bars(EMPTY_DESC, bars((Interval.make(0, 2, True, False), 1),
                                   (Interval.make(1, 3, True, False), 1)))
    assert v.dim_at(Fraction(3, 2)) == 2
    assert v.dim_at(Fraction(1, 2)) == 1
    assert v.dim_at(3) == 0


def test_grid_includes_criticals_in_hull():
    v = from_bars(ZIGZAG, bars((Interval.make(-1, 2, True, True), 1)))
    assert Fraction(0) in v.grid and Fraction(1) in v.grid


def test_validation_rejects_missing_critical():
    with pytest.raises(ValueError, match="missing from the grid"):
        TameRep(ZIGZAG, QQ, [Fraction(-1), Fraction(2)], [0, 1, 1, 1, 0],
                [Matrix.zero(QQ, 0, 1), Matrix.zero(QQ, 1, 1),
                 Matrix.zero(QQ, 1, 1), Matrix.zero(QQ, 0, 1)],
                ["up", "down", "down", "down"])


def test_validation_rejects_wrong_direction():
    with pytest.raises(ValueError, match="direction"):
        TameRep(EMPTY_DESC, QQ, [Fraction(0)], [1, 1, 1],
                [Matrix.identity(QQ, 1), Matrix.identity(QQ, 1)], ["up", "down"])


def test_dim_at_zero_rep():
    z = zero_rep(EMPTY_DESC)
    for x in (-3, 0, 10):
        assert z.dim_at(x) == 0


def test_refine_preserves_decomposition():
    b = bars((Interval.make(0, 2, True, False), 2), (Interval.point(1), 1))
    v = from_bars(EMPTY_DESC, b)
    w = refine(v, [Fraction(1, 2), Fraction(5)])
    assert Fraction(1, 2) in w.grid and Fraction(5) in w.grid
    assert decompose(w) == b


def test_restrict_examples():
    b = bars((Interval.make(0, 2, True, False), 1))
    v = from_bars(EMPTY_DESC, b)
    assert decompose(restrict(v, Interval(NEG_INF, POS_INF, False, False))) == b
    r = restrict(v, Interval.make(1, 3, True, False))
    assert decompose(r) == bars((Interval.make(1, 2, True, False), 1))
    far = restrict(v, Interval.make(10, 11, True, True))
    assert far.is_zero()


def test_restrict_respects_openness():
    v = from_bars(EMPTY_DESC, bars((Interval.make(0, 2, True, True), 1)))
    r = restrict(v, Interval.make(0, 1, False, False))
    assert decompose(r) == bars((Interval.make(0, 1, False, False), 1))


def test_direct_sum():
    b1 = bars((Interval.make(0, 1, True, True), 1))
    b2 = bars((Interval.make(Fraction(1, 2), 2, True, False), 2))
    v1, v2 = from_bars(EMPTY_DESC, b1), from_bars(EMPTY_DESC, b2)
    s = direct_sum(v1, v2)
    for x in (0, Fraction(1, 2), 1, Fraction(3, 2)):
        assert s.dim_at(x) == v1.dim_at(x) + v2.dim_at(x)
    assert decompose(s) == b1.union(b2)
    z = zero_rep(EMPTY_DESC)
    assert decompose(direct_sum(v1, z)) == b1


def test_direct_sum_orientation_mismatch():
    with pytest.raises(ValueError, match="orientation"):
        direct_sum(zero_rep(EMPTY_DESC), zero_rep(ZIGZAG))


def test_dual_involution_and_supports():
    rng = random.Random(31)
    for _ in range(25):
        o = random_orientation(rng)
        b = random_bars(rng, max_bars=5)
        v = from_bars(o, b)
        d = dual(v)
        assert d.orientation != v.orientation or not o.criticals or True
        assert decompose(d) == b
        dd = dual(d)
        assert dd == v
        assert iso(dd, v)
    assert dual(zero_rep(EMPTY_DESC)).is_zero()


def test_dual_preserves_dims():
    v = from_bars(ZIGZAG, bars((Interval.make(-1, 2, True, False), 3)))
    d = dual(v)
    for x in (-1, 0, Fraction(1, 2), 1, Fraction(3, 2), 2):
        assert d.dim_at(x) == v.dim_at(x)


def test_conjugate_identity_fixes_rep():
    v = from_bars(EMPTY_DESC, bars((Interval.make(0, 2, True, False), 2)))
    mats = [Matrix.identity(QQ, d) for d in v.dims]
    assert conjugate(v, mats) == v


def test_scramble_deterministic_and_isomorphic():
    b = bars((Interval.make(0, 2, True, False), 2), (Interval.point(1), 1))
    v = from_bars(EMPTY_DESC, b)
    s1 = scramble(v, 99)
    s2 = scramble(v, 99)
    assert s1 == s2
    assert s1.dims == v.dims
    assert decompose(s1) == b
    assert scramble(zero_rep(EMPTY_DESC), 1).is_zero()


def test_scramble_over_prime_field():
    F5 = PrimeField(5)
    b = bars((Interval.make(0, 1, True, True), 2))
    v = from_bars(EMPTY_DESC, b, F5)
    assert decompose(scramble(v, 3)) == b


def test_morphism_validation():
    v = from_bars(EMPTY_DESC, bars((Interval.make(0, 1, True, True), 1)))
    good = RepMorphism(v, v, [Matrix.identity(QQ, d) for d in v.dims])
    assert good.commutes()
    mats = [Matrix.identity(QQ, d) for d in v.dims]
    c = cell_of_point(v.grid, Fraction(1, 2))
    mats[c] = Matrix.zero(QQ, 1, 1)
    with pytest.raises(ValueError, match="non-commuting"):
        RepMorphism(v, v, mats)


def _overlap_map(v, w):
    """Identity-on-overlap morphism between single-bar representations,
    assuming the overlap sits on the order-correct side."""
    v2 = refine(v, w.grid)
    w2 = refine(w, v.grid)
    mats = []
    for c in range(v2.ncells):
        if w2.dims[c] and v2.dims[c]:
            mats.append(Matrix.identity(QQ, 1))
        else:
            mats.append(Matrix.zero(QQ, w2.dims[c], v2.dims[c]))
    return RepMorphism(v2, w2, mats)


def test_kernel_image_cokernel():
    # over the descending line the maps run downward, so the long bar
    # surjects onto its lower-closed tail [1,2]
    v = from_bars(EMPTY_DESC, bars((Interval.make(0, 2, True, True), 1)))
    w = from_bars(EMPTY_DESC, bars((Interval.make(1, 2, True, True), 1)))
    f = _overlap_map(v, w)
    k, _ = kernel_rep(f)
    assert decompose(k) == bars((Interval.make(0, 1, True, False), 1))
    im, _ = image_rep(f)
    assert decompose(im) == bars((Interval.make(1, 2, True, True), 1))
    coker, _ = cokernel_rep(f)
    assert coker.is_zero()


def test_cokernel_of_inclusion():
    # [0,1] is downward closed inside [0,2], so inclusion is a morphism
    v = from_bars(EMPTY_DESC, bars((Interval.make(0, 1, True, True), 1)))
    w = from_bars(EMPTY_DESC, bars((Interval.make(0, 2, True, True), 1)))
    f = _overlap_map(v, w)
    coker, _ = cokernel_rep(f)
    assert decompose(coker) == bars((Interval.make(1, 2, False, True), 1))


def test_json_roundtrip_tame():
    from aquiver.jsonio import tame_from_json, tame_to_json
    b = bars((Interval.make(0, 2, True, False), 2), (Interval.point(1), 1))
    v = scramble(from_bars(EMPTY_DESC, b), 5)
    j = tame_to_json(v)
    v2 = tame_from_json(EMPTY_DESC, j, QQ)
    assert v2 == v
