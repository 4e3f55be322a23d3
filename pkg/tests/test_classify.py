from math import gcd

import pytest
from hypothesis import given, strategies as st

from hyperconifold.classify import (
    action_matrix,
    canonical_form,
    diagram_of,
    exceptional_scan,
    identify_from_matrix,
    lens_equivalent,
    validate_weights,
    verify_matrix_action,
)

EXAMPLE_51 = [[0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1], [1, 1, 1, 1]]


def test_canonical_form_examples():
    c = canonical_form(5, 3)
    assert (c.n, c.k, c.orbit) == (5, 2, (2, 3))
    c = canonical_form(8, 5)
    assert (c.n, c.k, c.orbit) == (8, 3, (3, 5))
    assert canonical_form(8, 1).orbit == (1, 7)
    assert canonical_form(1, 0).label == "conifold"
    with pytest.raises(ValueError, match="relatively prime"):
        canonical_form(6, 2)


@st.composite
def coprime_pairs(draw):
    n = draw(st.integers(2, 200))
    k = draw(st.integers(1, n - 1).filter(lambda k: gcd(k, n) == 1))
    return n, k


@given(coprime_pairs())
def test_orbit_symmetries(nk):
    n, k = nk
    c = canonical_form(n, k)
    assert canonical_form(n, n - k) == c
    assert canonical_form(n, pow(k, -1, n)) == c
    assert c.k == min(c.orbit)


def test_lens_equivalent():
    assert lens_equivalent(7, 2, 3)
    assert not lens_equivalent(7, 1, 2)
    assert lens_equivalent(11, 4, 4)


def test_validate_weights():
    assert validate_weights(5, (1, 2, 3, 4)) == canonical_form(5, 2)
    assert validate_weights(4, (1, 2, 2, 3)) is None
    assert validate_weights(6, (1, 2, 3, 5)) is None


def test_diagram_of():
    d = diagram_of(5, 2)
    assert sorted(d.polygon_vertices) == [(0, 0), (1, 0), (2, 5), (3, 5)]
    assert len(d.interior_points) == 4
    assert len(diagram_of(3, 1).interior_points) == 2
    assert sorted(diagram_of(1, 0).polygon_vertices) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_identify_example_matrix():
    c, n, exps = identify_from_matrix(EXAMPLE_51)
    assert (c.n, c.k, n, exps) == (10, 3, 10, [1, 3, 7, 9])
    with pytest.raises(ValueError, match="trivial action"):
        identify_from_matrix([[int(i == j) for j in range(4)] for i in range(4)])


@pytest.mark.parametrize("n", range(2, 13))
def test_action_matrix_round_trip(n):
    for k in range(1, n):
        if gcd(n, k) == 1:
            c, order, _ = identify_from_matrix(action_matrix(n, k))
            assert order == n and c == canonical_form(n, k)


def test_verify_matrix_action():
    assert all(verify_matrix_action(n, k) for n in range(2, 21) for k in range(1, n) if gcd(n, k) == 1)


def test_exceptional_scan():
    found = exceptional_scan(20)
    assert len(found) == 1
    r = found[0]
    assert r.action.describe() == "(y1, y2, y3, y4) -> (i y1, y3, -y2, i y4)"
    assert r.order == 4
    assert r.p_phase * 2 == 1 and r.omega_phase == 0
    with pytest.raises(ValueError):
        exceptional_scan(1)
