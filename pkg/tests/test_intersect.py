from math import gcd

import pytest

from hyperconifold.classify import canonical_form
from hyperconifold.intersect import (
    adjunction_check,
    compact_walls,
    curve_pairings,
    exceptional_surfaces,
    local_ample_cone,
    projective_resolutions,
    triple_intersections,
    triple_intersections_oracle,
    wall_relation,
    walls,
)
from hyperconifold.polyhedral import same_closed_cone
from hyperconifold.resolve import crepant_resolution, enumerate_crepant_resolutions


@pytest.fixture(scope="module")
def c31():
    return enumerate_crepant_resolutions((3, 1))


def test_wall_relation_identity_and_noncompact_error(c31):
    for r in c31:
        for w in compact_walls(r):
            a, b = wall_relation(r, w)
            total = [sum(c * v[i] for v, c in curve_pairings(r, w).items()) for i in range(3)]
            assert total == [0, 0, 0]
        boundary = next(w for w in walls(r) if not w.compact)
        with pytest.raises(ValueError, match="non-compact"):
            wall_relation(r, boundary)


def test_c31_ample_cones(c31):
    proj, nonproj = (local_ample_cone(r) for r in c31)
    assert not proj.is_empty
    assert same_closed_cone(proj.inequalities, [[-2, 1], [1, -2]])
    assert all(t < 0 for t in proj.witness)
    assert nonproj.is_empty
    rows = set(map(tuple, nonproj.inequalities))
    assert (-3, 0) in rows and (0, -3) in rows and (1, 1) in rows


def test_zero_curve_pairs_minus_two(c31):
    r = c31[0]
    surfaces = {s.center_ray: s for s in exceptional_surfaces(r)}
    seen = set()
    for w in compact_walls(r):
        for center, other in (w.generators, w.generators[::-1]):
            s = surfaces.get(center)
            if s is not None:
                c2 = s.self_intersections[s.neighbors.index(other)]
                seen.add((c2, curve_pairings(r, w)[center]))
    assert (0, -2) in seen and (-1, -1) in seen


def test_c31_surfaces(c31):
    s1 = exceptional_surfaces(c31[0])
    assert [s.label for s in s1] == ["F1", "F1"]
    # the two F1's are glued along the curve joining their centres
    assert s1[1].center_ray in s1[0].neighbors
    s2 = exceptional_surfaces(c31[1])
    assert [s.label for s in s2] == ["P2", "P2"]
    assert s2[1].center_ray not in s2[0].neighbors


def test_c21_surface_regression():
    (r,) = enumerate_crepant_resolutions((2, 1))
    (s,) = exceptional_surfaces(r)
    assert s.self_intersections == (0, 0, 0, 0) and s.label == "F0"


def test_conifold_has_no_local_ample_divisors():
    for r in enumerate_crepant_resolutions((1, 0)):
        cone = local_ample_cone(r)
        assert cone.no_local_ample_divisors and cone.is_empty
    assert projective_resolutions((1, 0)) == []


def test_projective_resolutions():
    assert len(projective_resolutions((3, 1))) == 1
    star = crepant_resolution((5, 2)).key()
    assert star in {r.key() for r in projective_resolutions((5, 2))}


def test_triple_intersections_c31(c31):
    t = triple_intersections(c31[1])
    assert t[0, 0, 0] == 9 and t[1, 1, 1] == 9
    assert t[0, 0, 1] == t[0, 1, 1] == 0
    t = triple_intersections(c31[0])
    assert t[0, 0, 0] == 8 and t.is_symmetric()
    assert t == triple_intersections_oracle(c31[0])


def test_cycle_sum_constraint():
    # sum of self-intersections = 12 - 3 * length for a smooth complete toric surface
    for n in range(2, 12):
        for k in range(1, n):
            if gcd(n, k) == 1 and canonical_form(n, k).k == k:
                for s in exceptional_surfaces(crepant_resolution((n, k))):
                    assert sum(s.self_intersections) == 12 - 3 * len(s.self_intersections)


def test_star_resolutions_adjunction_and_oracle():
    for n in range(2, 12):
        for k in range(1, n):
            if gcd(n, k) == 1:
                r = crepant_resolution(canonical_form(n, k))
                assert adjunction_check(r)
                assert triple_intersections(r) == triple_intersections_oracle(r)
