import math

import numpy as np
import pytest

from src.lattice.index_map import ABSENT, build_lattice
from src.models.errors import ConfigurationError, LatticeIndexError
from src.models.schema import LatticeSpec


@pytest.mark.parametrize("L, M", [(2, 27), (4, 125), (6, 343)])
def test_point_count(L, M):
    assert build_lattice({"L": L}).M == M


def test_zero_triple_has_zero_wavenumber(lattice2):
    j = lattice2.index_of((0, 0, 0))
    assert j == lattice2.zero_index
    assert np.array_equal(lattice2.wavenumber_of(j), np.zeros(3))
    assert [tuple(t) for t in lattice2.triples].count((0, 0, 0)) == 1


def test_ordering_is_lexicographic_l1_slowest(lattice2):
    assert lattice2.triple_of(0) == (-1, -1, -1)
    assert lattice2.triple_of(1) == (-1, -1, 0)
    assert lattice2.triple_of(3) == (-1, 0, -1)
    assert lattice2.triple_of(9) == (0, -1, -1)
    assert lattice2.triple_of(26) == (1, 1, 1)
    for j in range(lattice2.M):
        assert lattice2.index_of(lattice2.triple_of(j)) == j


@pytest.mark.parametrize(
    "triple, expected",
    [((1, 0, 0), (math.pi, 0, 0)), ((0, 0, 0), (0, 0, 0)), ((-1, 1, -1), (-math.pi, math.pi, -math.pi))],
)
def test_wavenumber_of(lattice2, triple, expected):
    assert np.allclose(lattice2.wavenumber_of(lattice2.index_of(triple)), expected, atol=0)


def test_default_spacing_and_override():
    assert build_lattice({"L": 4}).spec.dkappa == pytest.approx(math.pi / 2)
    assert build_lattice({"L": 4, "dkappa": 1.0}).spec.dkappa == 1.0
    assert LatticeSpec(L=2, dkappa=None).dkappa == pytest.approx(math.pi)


def test_shift_index_examples(lattice2):
    idx = lattice2.index_of
    for j in range(lattice2.M):
        assert lattice2.shift_index(j, j) == lattice2.zero_index
    assert lattice2.shift_index(idx((1, 0, 0)), idx((-1, 0, 0))) is None
    assert lattice2.shift_index(idx((1, 1, 0)), idx((0, 1, 0))) == idx((1, 0, 0))
    assert lattice2.shift_table[idx((1, 0, 0)), idx((-1, 0, 0))] == ABSENT


def test_negation(lattice2):
    idx = lattice2.index_of
    assert lattice2.negation_index(lattice2.zero_index) == lattice2.zero_index
    assert lattice2.negation_index(idx((1, 0, 0))) == idx((-1, 0, 0))
    assert lattice2.negation_index(idx((-1, 0, 0))) == idx((1, 0, 0))
    for j in range(lattice2.M):
        assert lattice2.negation_index(lattice2.negation_index(j)) == j


@pytest.mark.parametrize("L", [2, 4])
def test_shift_table_commutes_with_negation(L):
    lattice = build_lattice({"L": L})
    neg = lattice.negation
    table = lattice.shift_table
    mirrored = table[np.ix_(neg, neg)]
    present = table != ABSENT
    assert np.array_equal(mirrored != ABSENT, present)
    assert np.array_equal(mirrored[present], neg[table[present]])


def test_shift_pair_count(lattice2):
    # per axis, pairs (a, b) in {-1,0,1}^2 with |a - b| <= 1: 7
    assert lattice2.shift_pair_count() == 7**3


def test_squared_norm_counts(lattice2):
    assert lattice2.squared_norm_counts() == {0: 1, 1: 6, 2: 12, 3: 8}


def test_kappa_sq_even_under_negation():
    lattice = build_lattice({"L": 4, "dkappa": 0.7})
    assert np.array_equal(lattice.kappa_sq[lattice.negation], lattice.kappa_sq)


def test_arrays_are_read_only(lattice2):
    with pytest.raises(ValueError):
        lattice2.triples[0, 0] = 5


@pytest.mark.parametrize(
    "spec",
    [{"L": 3}, {"L": 0}, {"L": 2, "nu": 0.0}, {"L": 2, "nu": -1.0}, {"L": 2, "dkappa": -1.0}],
)
def test_invalid_specs_rejected(spec):
    with pytest.raises(ConfigurationError):
        build_lattice(spec)


def test_out_of_range_index(lattice2):
    with pytest.raises(LatticeIndexError):
        lattice2.wavenumber_of(27)
    with pytest.raises(LatticeIndexError):
        lattice2.triple_of(-1)
    with pytest.raises(LatticeIndexError):
        lattice2.index_of((2, 0, 0))


def test_compatibility(lattice2):
    assert lattice2.is_compatible(build_lattice({"L": 2, "nu": 0.1}))
    assert not lattice2.is_compatible(build_lattice({"L": 2, "nu": 0.2}))
