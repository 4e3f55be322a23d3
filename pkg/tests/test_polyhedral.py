from fractions import Fraction

from hypothesis import given, settings, strategies as st

from hyperconifold.polyhedral import extreme_rays, fourier_motzkin_feasible, same_closed_cone, strict_feasible


def test_feasible_with_witness():
    A = [[-2, 1], [1, -2]]
    res = strict_feasible(A)
    assert res.feasible
    assert all(sum(a * t for a, t in zip(row, res.witness)) > 0 for row in A)
    assert extreme_rays(A) == [(-2, -1), (-1, -2)]


def test_empty_with_certificate():
    A = [[-1, 0], [0, -1], [1, 1]]
    res = strict_feasible(A)
    assert not res.feasible
    y = res.certificate
    assert all(v >= 0 for v in y) and any(y)
    assert all(sum(y[j] * A[j][i] for j in range(3)) == 0 for i in range(2))


def test_degenerate_inputs():
    assert strict_feasible([], 2).feasible
    assert not strict_feasible([[0]], 1).feasible
    assert not strict_feasible([()], 0).feasible


def test_same_closed_cone_redundant_rows():
    A = [[-2, 1], [1, -2], [-3, 0], [-1, -1]]
    assert same_closed_cone(A, [[-2, 1], [1, -2]])
    assert not same_closed_cone([[1, 0], [0, 1]], [[-2, 1], [1, -2]])


rows = st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=1, max_size=6)


@settings(max_examples=200)
@given(rows)
def test_simplex_agrees_with_fourier_motzkin(A):
    res = strict_feasible(A, 3)
    assert res.feasible == fourier_motzkin_feasible(A)
    if res.feasible:
        assert all(sum(a * t for a, t in zip(r, res.witness)) > 0 for r in A)
    else:
        assert all(isinstance(v, Fraction) and v >= 0 for v in res.certificate)
