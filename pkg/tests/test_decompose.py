import random
from fractions import Fraction

import pytest

from conftest import random_bars, random_orientation
from oracle import enumerate_f2_instances, oracle_decompose
from aquiver.decompose import (InternalInvariantError, decompose,
                               indecomposable_direct, is_indecomposable, iso,
                               multiplicity)
from aquiver.intervals import BarMultiset, Interval
from aquiver.linalg import Matrix, PrimeField, QQ
from aquiver.orientation import Orientation
from aquiver.tamerep import TameRep, direct_sum, dual, from_bars, scramble, zero_rep

EMPTY_DESC = Orientation.make([], "descending")
F5 = PrimeField(5)


def bars(*specs):
    return BarMultiset(specs)


def test_zero_rep_decomposes_empty():
    assert decompose(zero_rep(EMPTY_DESC)) == BarMultiset()


def test_canonical_roundtrip(rng):
    for _ in range(40):
        o = random_orientation(rng)
        b = random_bars(rng)
        assert decompose(from_bars(o, b)) == b


def test_scramble_roundtrip(rng):
    for i in range(40):
        o = random_orientation(rng)
        b = random_bars(rng)
        v = scramble(from_bars(o, b), 5000 + i)
        assert decompose(v) == b


def test_field_independence(rng):
    for i in range(15):
        o = random_orientation(rng)
        b = random_bars(rng, max_bars=5)
        got_q = decompose(scramble(from_bars(o, b, QQ), i))
        got_5 = decompose(scramble(from_bars(o, b, F5), i))
        assert got_q == got_5 == b


def test_zero_middle_map_splits_into_two_bars():
    # dims (1,1,1) with a zero map on one junction: connected support but
    # not indecomposable
    o = EMPTY_DESC
    grid = [Fraction(0)]
    maps = [Matrix.zero(QQ, 1, 1), Matrix.identity(QQ, 1)]
    v = TameRep(o, QQ, grid, [1, 1, 1], maps, ["down", "down"])
    got = decompose(v)
    assert got.total() == 2
    assert not is_indecomposable(v)


def test_is_indecomposable_examples():
    v = from_bars(EMPTY_DESC, bars((Interval.make(0, 1, True, True), 1)))
    assert is_indecomposable(v)
    w = from_bars(EMPTY_DESC, bars((Interval.make(0, 1, True, True), 1),
                                   (Interval.make(2, 3, True, True), 1)))
    assert not is_indecomposable(w)
    assert not is_indecomposable(zero_rep(EMPTY_DESC))


def test_direct_criterion_matches(rng):
    for _ in range(30):
        o = random_orientation(rng)
        b = random_bars(rng, max_bars=3, max_mult=2)
        v = scramble(from_bars(o, b), 17)
        assert is_indecomposable(v) == (b.total() == 1)
        assert indecomposable_direct(from_bars(o, b)) == (b.total() == 1)


def test_multiplicity():
    iv = Interval.make(0, 1, True, True)
    v = from_bars(EMPTY_DESC, bars((iv, 3)))
    assert multiplicity(v, iv) == 3
    assert multiplicity(v, Interval.make(0, 2, True, True)) == 0


def test_multiplicity_scramble_invariant(rng):
    for i in range(10):
        o = random_orientation(rng)
        b = random_bars(rng, max_bars=4)
        v = from_bars(o, b)
        s = scramble(v, 31 + i)
        for iv, m in b:
            assert multiplicity(s, iv) == m


def test_iso():
    b1 = bars((Interval.make(0, 1, True, False), 1))
    b2 = bars((Interval.make(0, 1, True, True), 1))
    v1 = from_bars(EMPTY_DESC, b1)
    v2 = from_bars(EMPTY_DESC, b2)
    assert iso(v1, scramble(v1, 4))
    assert not iso(v1, v2)
    a = from_bars(EMPTY_DESC, b1)
    b = from_bars(EMPTY_DESC, b2)
    assert iso(direct_sum(a, b), direct_sum(b, a))
    with pytest.raises(ValueError, match="orientation"):
        iso(v1, zero_rep(Orientation.make([(0, "sink")])))


def test_decompose_additive_over_direct_sum(rng):
    for _ in range(10):
        o = random_orientation(rng)
        b1, b2 = random_bars(rng, max_bars=4), random_bars(rng, max_bars=4)
        v = direct_sum(scramble(from_bars(o, b1), 1), scramble(from_bars(o, b2), 2))
        assert decompose(v) == b1.union(b2)


def test_duality(rng):
    for i in range(20):
        o = random_orientation(rng)
        b = random_bars(rng, max_bars=5)
        v = scramble(from_bars(o, b), 400 + i)
        assert decompose(dual(v)) == b
        assert iso(dual(dual(v)), v)


def test_oracle_parity_sample():
    count = 0
    for v in enumerate_f2_instances(600):
        assert decompose(v) == oracle_decompose(v)
        count += 1
    assert count == 600


def test_conservation_of_dimension(rng):
    for _ in range(20):
        o = random_orientation(rng)
        b = random_bars(rng)
        v = scramble(from_bars(o, b), 8)
        got = decompose(v)
        for c in range(v.ncells):
            from aquiver.tamerep import cell_representative
            x = cell_representative(v.grid, c)
            covering = sum(m for iv, m in got if iv.contains(x))
            assert covering == v.dims[c]
