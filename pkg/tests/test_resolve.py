from itertools import permutations
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from hyperconifold.resolve import (
    EnumerationBoundError,
    check_resolution,
    crepant_resolution,
    enumerate_crepant_resolutions,
    euler_number,
    interior_points,
)


def test_interior_points():
    assert len(interior_points((3, 1))) == 2
    assert len(interior_points((5, 2))) == 4
    assert interior_points((1, 0)) == []


def test_crepant_resolution_examples():
    r = crepant_resolution((5, 2))
    assert euler_number(r) == 10 and not check_resolution(r)
    assert euler_number(crepant_resolution((10, 3), [9, 1, 5, 2, 8, 3, 7, 4, 6])) == 20
    with pytest.raises(ValueError, match="no interior points"):
        crepant_resolution((1, 0))
    with pytest.raises(ValueError, match="permutation"):
        crepant_resolution((3, 1), [1, 1])


def test_enumeration_counts():
    assert len(enumerate_crepant_resolutions((3, 1))) == 2
    assert len(enumerate_crepant_resolutions((1, 0))) == 2
    # regression value from the exhaustive search
    assert len(enumerate_crepant_resolutions((2, 1))) == 1
    assert len(enumerate_crepant_resolutions((5, 2))) == 10
    with pytest.raises(EnumerationBoundError, match="bound 6"):
        enumerate_crepant_resolutions((7, 2))


def test_small_resolutions_of_conifold():
    for r in enumerate_crepant_resolutions((1, 0)):
        assert euler_number(r) == 2 and r.fan.is_smooth()


def test_enumerated_resolutions_are_unimodular_and_complete():
    for nk in [(2, 1), (3, 1), (4, 1), (5, 1), (5, 2), (6, 1)]:
        res = enumerate_crepant_resolutions(nk)
        for r in res:
            assert not check_resolution(r)
            assert len(r.triangles) == 2 * nk[0]
        keys = [r.key() for r in res]
        assert keys == sorted(set(keys))


@pytest.mark.parametrize("nk", [(2, 1), (3, 1), (4, 1), (5, 1), (5, 2), (6, 1)])
def test_every_star_order_lands_in_enumeration(nk):
    keys = {r.key() for r in enumerate_crepant_resolutions(nk)}
    for perm in permutations(range(1, nk[0])):
        assert crepant_resolution(nk, perm).key() in keys


def test_star_resolution_is_first_for_c31():
    res = enumerate_crepant_resolutions((3, 1))
    assert [r.built_by_star_sequence for r in res] == [True, False]


@st.composite
def class_and_order(draw):
    n = draw(st.integers(2, 14))
    k = draw(st.integers(1, n - 1).filter(lambda k: gcd(k, n) == 1))
    order = draw(st.permutations(list(range(1, n))))
    return (n, k), order


@settings(max_examples=40, deadline=None)
@given(class_and_order())
def test_any_star_order_resolves(args):
    nk, order = args
    r = crepant_resolution(nk, order)
    assert not check_resolution(r)
    assert len(r.fan.rays) == 4 + nk[0] - 1
