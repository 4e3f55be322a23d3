"""Crepant resolutions of ``C_{n,k}``.

Two routes: a sequence of star subdivisions at the interior lattice points
(always projective), and exhaustive enumeration of unimodular
triangulations of the toric diagram for small ``n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterator, Sequence

from .classify import HyperconifoldClass, canonical_form, diagram_of
from .fan import Fan, Point, convex_hull, hyperconifold_fan, smoothness
from .lattice import Vec, det2, sub

DEFAULT_ENUM_BOUND = 6


class EnumerationBoundError(ValueError):
    """Raised when exhaustive enumeration is requested above its size bound."""


@dataclass(frozen=True)
class Resolution:
    base: HyperconifoldClass
    fan: Fan
    history: tuple[Vec, ...] = ()
    built_by_star_sequence: bool = False

    @property
    def triangles(self) -> tuple[tuple[Point, Point, Point], ...]:
        return self.fan.height_one_slice().triangles

    @property
    def interior_rays(self) -> list[Vec]:
        return interior_points(self.base)

    def key(self) -> tuple:
        return self.triangles


def _as_class(c) -> HyperconifoldClass:
    if isinstance(c, HyperconifoldClass):
        return c
    n, k = c
    return canonical_form(n, k)


def interior_points(c) -> list[Vec]:
    """The ``n - 1`` points ``(1, l, m)``, ``0 < m < n``, inside the cone of ``C_{n,k}``."""
    c = _as_class(c)
    n, k = c.n, c.k
    return [(1, m * k // n + 1, m) for m in range(1, n)]


def crepant_resolution(c, order: Sequence[int] | None = None) -> Resolution:
    """Resolve ``C_{n,k}`` by star subdivisions at its interior points.

    ``order`` is a permutation of ``1..n-1`` naming the interior points by
    their height ``m``; the default is ascending.
    """
    c = _as_class(c)
    pts = interior_points(c)
    if not pts:
        raise ValueError("no interior points; use enumerate for small resolutions")
    if order is None:
        order = list(range(1, c.n))
    order = list(order)
    if sorted(order) != list(range(1, c.n)):
        raise ValueError(f"order must be a permutation of 1..{c.n - 1}")
    fan = hyperconifold_fan(c.n, c.k)
    history = []
    for m in order:
        v = pts[m - 1]
        fan = fan.star_subdivision(v)
        history.append(v)
    return Resolution(c, fan, tuple(history), True)


def euler_number(r: Resolution) -> int:
    """Number of three-dimensional cones."""
    return len(r.fan.maximal_cones)


def check_resolution(r: Resolution) -> list[str]:
    """Violated invariants of ``r`` (empty when it is a smooth crepant resolution)."""
    problems = []
    ok, why = smoothness(r.fan)
    if not ok:
        problems.append(why)
    if any(ray[0] != 1 for ray in r.fan.rays):
        problems.append("ray off the height-one hyperplane")
    if len(r.fan.maximal_cones) != 2 * r.base.n:
        problems.append(f"{len(r.fan.maximal_cones)} cones, expected {2 * r.base.n}")
    expected = {(1,) + p for p, _ in diagram_of(r.base.n, r.base.k).lattice_points}
    if set(r.fan.rays) != expected:
        problems.append("rays differ from the lattice points of the diagram")
    return problems


# -- triangulation enumeration ---------------------------------------------


def _ccw(a, b, c) -> int:
    return det2(sub(b, a), sub(c, a))


def _interiors_overlap(T: Sequence[Point], U: Sequence[Point]) -> bool:
    for poly in (T, U):
        for i in range(3):
            a, b = poly[i], poly[(i + 1) % 3]
            normal = (b[1] - a[1], a[0] - b[0])
            pt = [normal[0] * p[0] + normal[1] * p[1] for p in T]
            pu = [normal[0] * p[0] + normal[1] * p[1] for p in U]
            if max(pt) <= min(pu) or max(pu) <= min(pt):
                return False
    return True


def unimodular_triangulations(points: Sequence[Point]) -> Iterator[tuple[tuple[Point, Point, Point], ...]]:
    """All triangulations of ``conv(points)`` into lattice triangles of area 1/2.

    Every point is used, since a unimodular triangle contains no lattice
    point besides its vertices. The front of the partial triangulation is a
    set of directed edges that still need a triangle on their left; the
    smallest such edge is always filled next, so each triangulation is
    produced once.
    """
    pts = sorted(set(tuple(p) for p in points))
    hull = convex_hull(pts)
    boundary: list[tuple[Point, Point]] = []
    for i in range(len(hull)):
        a, b = hull[i], hull[(i + 1) % len(hull)]
        on = sorted(
            (p for p in pts if _ccw(a, b, p) == 0 and min(a, b) <= p <= max(a, b)),
            key=lambda p: (p[0] - a[0]) ** 2 + (p[1] - a[1]) ** 2,
        )
        boundary += list(zip(on, on[1:]))
    apex: dict[tuple[Point, Point], list[Point]] = {}
    for a, b, c in combinations(pts, 3):
        d = _ccw(a, b, c)
        if abs(d) != 1:
            continue
        tri = (a, b, c) if d > 0 else (a, c, b)
        for i in range(3):
            e = (tri[i], tri[(i + 1) % 3])
            apex.setdefault(e, []).append(tri[(i + 2) % 3])

    def search(pending: frozenset, placed: list):
        if not pending:
            yield tuple(sorted(tuple(sorted(t)) for t in placed))
            return
        e = min(pending)
        a, b = e
        for c in sorted(apex.get(e, ())):
            tri = (a, b, c)
            if any(_interiors_overlap(tri, t) for t in placed):
                continue
            nxt = set(pending)
            nxt.discard(e)
            for edge in ((b, c), (c, a)):
                if edge in nxt:
                    nxt.discard(edge)
                else:
                    nxt.add((edge[1], edge[0]))
            placed.append(tri)
            yield from search(frozenset(nxt), placed)
            placed.pop()

    yield from search(frozenset(boundary), [])


def _star_reachable(c: HyperconifoldClass) -> dict[tuple, tuple[Vec, ...]]:
    """Triangulations reachable by star sequences, with one history each."""
    out: dict[tuple, tuple[Vec, ...]] = {}
    for perm in permutations(range(1, c.n)):
        r = crepant_resolution(c, perm)
        out.setdefault(r.key(), r.history)
    return out


def enumerate_crepant_resolutions(c, bound: int = DEFAULT_ENUM_BOUND) -> list[Resolution]:
    """Every smooth crepant toric resolution of ``C_{n,k}``, ordered by triangle list."""
    c = _as_class(c)
    if c.n > bound:
        raise EnumerationBoundError(f"n = {c.n} exceeds the enumeration bound {bound}")
    pts = [p for p, _ in diagram_of(c.n, c.k).lattice_points]
    tris = sorted(set(unimodular_triangulations(pts)))
    star = _star_reachable(c) if c.n >= 2 else {}
    out = []
    for t in tris:
        fan = Fan.from_triangles(t)
        hist = star.get(fan.height_one_slice().triangles)
        out.append(Resolution(c, fan, hist or (), hist is not None))
    return out
