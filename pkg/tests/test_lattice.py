from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hyperconifold.lattice import (
    UnimodularMap,
    complete_to_basis,
    det,
    det3,
    height_normalizer,
    is_primitive,
    nullspace,
    primitive_of,
    solve_rational,
    squaring_shear,
)


def test_det3_examples():
    assert det3((1, 0, 0), (1, 1, 0), (1, 0, 1)) == 1
    assert det3((1, 0, 0), (1, 1, 0), (1, 2, 5)) == 5
    assert det3((1, 0, 0), (1, 0, 0), (1, 1, 1)) == 0


def test_primitive_of():
    assert primitive_of((2, 4, 6)) == (1, 2, 3)
    assert primitive_of((1, 3, 7)) == (1, 3, 7)
    assert primitive_of((0, -3, 3)) == (0, -1, 1)
    with pytest.raises(ValueError, match="zero vector has no primitive"):
        primitive_of((0, 0, 0))


def test_bareiss_matches_cofactor():
    A = [[2, -1, 0, 3], [1, 1, 4, 0], [0, 5, -2, 1], [3, 0, 1, 1]]
    # cofactor expansion along the first row
    def cof(M):
        if len(M) == 1:
            return M[0][0]
        return sum((-1) ** j * M[0][j] * cof([r[:j] + r[j + 1:] for r in M[1:]]) for j in range(len(M)))

    assert det(A) == cof(A)


def test_solve_and_nullspace():
    assert solve_rational([[2, 1], [1, 3]], [3, 5]) == (Fraction(4, 5), Fraction(7, 5))
    ns = nullspace([[1, 1, 1]])
    assert len(ns) == 2
    assert all(sum(v) == 0 for v in ns)


def test_unimodular_map_rejects_non_unimodular():
    with pytest.raises(ValueError):
        UnimodularMap(((2, 0), (0, 1)))


@given(st.lists(st.integers(-30, 30), min_size=3, max_size=3).filter(lambda v: any(v)))
def test_complete_to_basis_sends_primitive_to_e1(v):
    p = primitive_of(v)
    U = complete_to_basis(p)
    assert U(p) == (1, 0, 0)
    assert U.inverse()((1, 0, 0)) == p


def test_height_normalizer():
    rays = [(1, 0, 0), (1, 1, 0), (1, 2, 5), (1, 3, 5)]
    A = height_normalizer(rays)
    assert all(A(r)[0] == 1 for r in rays)
    with pytest.raises(ValueError, match="crepant-compatible"):
        height_normalizer([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)])


def _aspect(pts):
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    w, h = max(xs) - min(xs), max(ys) - min(ys)
    return Fraction(max(w, h), min(w, h))


def test_squaring_shear_examples():
    square = [(0, 0), (1, 0), (0, 1), (1, 1)]
    assert squaring_shear(square).matrix == ((1, 0), (0, 1))
    c52 = [(0, 0), (1, 0), (2, 5), (3, 5)]
    U = squaring_shear(c52)
    img = [U(p) for p in c52]
    # the lattice width of this parallelogram is 3, so the width cannot drop
    # below 3; the shear instead squares the box up
    assert _aspect(img) == 1 < _aspect(c52)
    with pytest.raises(ValueError, match="degenerate diagram"):
        squaring_shear([(0, 0), (1, 1), (2, 2)])


def test_is_primitive():
    assert is_primitive((1, 2, 5))
    assert not is_primitive((2, 4, 0))
