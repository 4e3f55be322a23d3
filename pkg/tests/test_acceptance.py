"""Acceptance criteria 1-10, each timed against its runtime limit.

Run directly (``python3 tests/test_acceptance.py``) or under pytest; either
way one PASS/FAIL line is printed per criterion.
"""

from __future__ import annotations

import random
import time
from itertools import permutations
from math import gcd

import pytest

from hyperconifold.classify import (
    canonical_form,
    exceptional_scan,
    identify_from_matrix,
    verify_matrix_action,
)
from hyperconifold.fan import verify_parametrizations
from hyperconifold.groups import FiniteGroup, cyclic_group, identify_group, normal_closure, quotient_group
from hyperconifold.intersect import (
    adjunction_check,
    exceptional_surfaces,
    local_ample_cone,
    triple_intersections,
    triple_intersections_oracle,
)
from hyperconifold.mirror import independent_node_search, mirror_nodes, mirror_polynomial
from hyperconifold.polyhedral import same_closed_cone
from hyperconifold.resolve import check_resolution, crepant_resolution, enumerate_crepant_resolutions
from hyperconifold.transition import HodgeData, transition_report

RESULTS: dict[int, str] = {}


def pairs(n_max: int, n_min: int = 1):
    for n in range(n_min, n_max + 1):
        for k in range(n):
            if gcd(n, k) == 1:
                yield n, k


def classes(n_max: int, n_min: int = 1):
    return sorted({canonical_form(n, k) for n, k in pairs(n_max, n_min)}, key=lambda c: (c.n, c.k))


def criterion_1():
    for n, k in pairs(30, 2):
        c = canonical_form(n, k)
        assert canonical_form(n, n - k) == c, (n, k)
        assert canonical_form(n, pow(k, -1, n)) == c, (n, k)
    assert canonical_form(5, 1) != canonical_form(5, 2)
    assert canonical_form(8, 1) != canonical_form(8, 3)
    return "orbit invariance for n <= 30; C51 != C52, C81 != C83"


def criterion_2():
    count = 0
    for n, k in pairs(20, 2):
        r = crepant_resolution(canonical_form(n, k))
        problems = check_resolution(r)
        assert not problems, (n, k, problems)
        assert len(r.fan.maximal_cones) == 2 * n
        assert r.fan.is_smooth() and all(ray[0] == 1 for ray in r.fan.rays)
        assert len(r.fan.rays) - 4 == n - 1 == len(r.history)
        count += 1
    # n = 1 has no star sequence; its crepant resolutions are the two small ones
    for r in enumerate_crepant_resolutions((1, 0)):
        assert len(r.fan.maximal_cones) == 2 and r.fan.is_smooth() and len(r.fan.rays) == 4
    return f"{count} (n, k) pairs with 2 <= n <= 20, plus the two small resolutions of the conifold"


def criterion_3():
    res = enumerate_crepant_resolutions((3, 1))
    assert len(res) == 2
    first, second = (local_ample_cone(r) for r in res)
    assert not first.is_empty
    assert same_closed_cone(first.inequalities, [[-2, 1], [1, -2]])
    assert second.is_empty
    s1 = exceptional_surfaces(res[0])
    assert [s.label for s in s1] == ["F1", "F1"] and s1[1].center_ray in s1[0].neighbors
    s2 = exceptional_surfaces(res[1])
    assert [s.label for s in s2] == ["P2", "P2"] and s2[1].center_ray not in s2[0].neighbors
    return "2 resolutions; cone {-2t1+t2>0, t1-2t2>0} vs empty; F1+F1 glued, P2+P2 disjoint"


def _star_orders(n: int, rng: random.Random):
    """Every order for n <= 5; ascending plus one seeded random order above that."""
    heights = list(range(1, n))
    if n <= 5:
        return list(permutations(heights))
    shuffled = heights[:]
    rng.shuffle(shuffled)
    return [heights, shuffled]


def criterion_4():
    rng = random.Random(20240601)
    count = 0
    for c in classes(20, 2):
        for order in _star_orders(c.n, rng):
            cone = local_ample_cone(crepant_resolution(c, order))
            assert not cone.is_empty, (c, order)
            assert all(t < 0 for t in cone.witness), (c, order, cone.witness)
            assert cone.contains(cone.witness)
            count += 1
    return f"{count} star resolutions over {len(classes(20, 2))} classes, exact witnesses all negative"


def criterion_5():
    count = 0
    for n, k in pairs(12):
        g = mirror_polynomial((n, k))
        nodes = mirror_nodes(g)
        assert len(nodes) == n, (n, k)
        for nd in nodes:
            assert nd.exact_vanishing and abs(nd.hessian_det) > 1e-6, (n, k)
        if n <= 6:
            found = independent_node_search(g, 32 if n <= 4 else 64)
            assert len(found) == len(nodes), (n, k, len(found))
        count += 1
    return f"{count} (n, k) pairs with n <= 12; oracle agrees for n <= 6"


def criterion_6():
    r = transition_report((5, 2), HodgeData(1, 21), cyclic_group(5), [1])
    assert (r.after.h11, r.after.h21, r.pi1_after) == (5, 20, "trivial")
    z = FiniteGroup.from_presentation(["g10", "g2"], ["g10^10", "g2^2", "g10 g2 = g2 g10"])
    r = transition_report((10, 3), HodgeData(1, 3), z, [z.evaluate("g10")])
    assert (r.after.h11, r.after.h21, r.pi1_after) == (10, 2, "Z2")
    d = FiniteGroup.from_presentation(["g3", "g4"], ["g3^3", "g4^4", "g4^-1 g3 g4 = g3^2"])
    r = transition_report((4, 1), HodgeData(1, 4), d, [d.evaluate("g4")])
    assert (r.after.h11, r.after.h21, r.pi1_after) == (4, 3, "trivial")
    s3 = quotient_group(d, normal_closure(d, [d.evaluate("g4^2")]))
    assert identify_group(s3) == "S3"
    return "(5,20) trivial; (10,2) Z2; (4,3) trivial; Dic3/<g4^2> = S3"


def criterion_7():
    M = [[0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1], [1, 1, 1, 1]]
    c, n, exps = identify_from_matrix(M)
    assert (c.n, c.k) == (10, 3) and n == 10 and set(exps) == {1, 3, 7, 9}
    return "order 10, exponents {1,3,7,9}, C_{10,3}"


def criterion_8():
    count = 0
    for c in classes(4):
        for r in enumerate_crepant_resolutions(c):
            assert triple_intersections(r) == triple_intersections_oracle(r), c
            assert triple_intersections(r).is_symmetric()
            assert adjunction_check(r), c
            count += 1
    return f"{count} enumerated resolutions with n <= 4"


def criterion_9():
    found = exceptional_scan(20)
    assert len(found) == 1
    r = found[0]
    assert r.action.describe() == "(y1, y2, y3, y4) -> (i y1, y3, -y2, i y4)"
    assert r.order == 4
    # phases as fractions of a full turn: 1/2 is -1, 0 is +1
    assert r.p_phase == 0.5 and r.omega_phase == 0
    return "one Z4 class (i y1, y3, -y2, i y4), p -> -p, Omega invariant"


def criterion_10():
    count = 0
    for n, k in pairs(20, 2):
        assert verify_matrix_action(n, k), (n, k)
        count += 1
    assert verify_parametrizations()
    return f"{count} (n, k) pairs; parametrization identities hold"


CRITERIA = [
    (1, "classification suite", criterion_1, 1.0),
    (2, "resolution suite", criterion_2, 5.0),
    (3, "C_{3,1} example", criterion_3, 1.0),
    (4, "projectivity of star resolutions", criterion_4, 10.0),
    (5, "mirror nodes", criterion_5, 30.0),
    (6, "Hodge numbers and fundamental groups", criterion_6, 1.0),
    (7, "matrix identification", criterion_7, 1.0),
    (8, "intersection oracle and adjunction", criterion_8, 5.0),
    (9, "exceptional action scan", criterion_9, 1.0),
    (10, "matrix action and parametrizations", criterion_10, 1.0),
]


def run_criterion(num, title, func, limit):
    t0 = time.perf_counter()
    try:
        detail = func()
        ok, err = True, ""
    except AssertionError as e:
        detail, ok, err = "", False, f"assertion failed {e!r}"
    dt = time.perf_counter() - t0
    if ok and dt >= limit:
        ok, err = False, f"runtime {dt:.2f}s over limit"
    line = f"criterion {num:2d} {'PASS' if ok else 'FAIL'}  {title}  ({dt:.2f}s / {limit:g}s)  {detail or err}"
    RESULTS[num] = line
    print(line)
    return ok, line


@pytest.mark.parametrize("num,title,func,limit", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(num, title, func, limit):
    ok, line = run_criterion(num, title, func, limit)
    assert ok, line


if __name__ == "__main__":
    import sys

    results = [run_criterion(*c)[0] for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
