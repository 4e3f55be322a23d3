"""Cones, fans, toric diagrams and star subdivisions.

Fans here are three dimensional and Calabi-Yau: every ray generator sits on
the hyperplane ``x_0 = 1``. A fan is stored by its maximal cones only; the
unsubdivided hyperconifold is a single four-generator cone over a
parallelogram, every other cone is simplicial.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .lattice import Vec, det2, det3, dot, cross, is_primitive, sub

Point = tuple[int, int]


@dataclass(frozen=True)
class Cone:
    """A strongly convex rational cone given by primitive generators."""

    generators: tuple[Vec, ...]

    def __post_init__(self):
        gens = tuple(tuple(int(x) for x in g) for g in self.generators)
        if not 1 <= len(gens) <= 4:
            raise ValueError("cones carry between one and four generators")
        if len(set(gens)) != len(gens):
            raise ValueError("repeated generator")
        for g in gens:
            if not is_primitive(g):
                raise ValueError(f"generator {g} is not primitive")
        object.__setattr__(self, "generators", gens)
        if self.is_simplicial and len(gens) == 3 and det3(*gens) == 0:
            raise ValueError("generators are linearly dependent")

    @property
    def dim(self) -> int:
        return min(len(self.generators), 3)

    @property
    def is_simplicial(self) -> bool:
        return len(self.generators) <= 3

    @property
    def key(self) -> tuple[Vec, ...]:
        return tuple(sorted(self.generators))

    def facets(self) -> list[tuple[tuple[Vec, Vec], Vec]]:
        """Two-dimensional faces with their inward normals.

        Each entry is ``((a, b), normal)`` with ``normal . x >= 0`` on the
        cone and ``normal . a = normal . b = 0``.
        """
        if self.dim != 3:
            raise ValueError("facets are computed for full-dimensional cones only")
        out = []
        gens = self.generators
        for a, b in combinations(gens, 2):
            nrm = cross(a, b)
            signs = {(dot(nrm, g) > 0) - (dot(nrm, g) < 0) for g in gens if g not in (a, b)}
            if signs == {1}:
                out.append(((a, b), nrm))
            elif signs == {-1}:
                out.append(((a, b), tuple(-x for x in nrm)))
        return out

    def contains(self, v: Sequence[int]) -> bool:
        return all(dot(nrm, v) >= 0 for _, nrm in self.facets())

    def in_relative_interior(self, v: Sequence[int]) -> bool:
        return all(dot(nrm, v) > 0 for _, nrm in self.facets())

    def carrier(self, v: Sequence[int]) -> tuple[Vec, ...]:
        """Generators of the smallest face of this cone containing ``v``."""
        tight = [nrm for _, nrm in self.facets() if dot(nrm, v) == 0]
        return tuple(g for g in self.generators if all(dot(nrm, g) == 0 for nrm in tight))


def multiplicity(c: Cone) -> int:
    """``|det|`` of the generator matrix; 1 exactly when the cone is smooth."""
    if not c.is_simplicial or len(c.generators) != 3:
        raise ValueError("multiplicity defined for full-dimensional cones only")
    return abs(det3(*c.generators))


@dataclass(frozen=True)
class ToricDiagram:
    """Height-one slice of a Calabi-Yau fan.

    ``lattice_points`` maps each lattice point of the polygon to one of
    ``"vertex"``, ``"boundary"`` or ``"interior"``. ``triangles`` is empty
    unless the fan is simplicial.
    """

    polygon_vertices: tuple[Point, ...]
    lattice_points: tuple[tuple[Point, str], ...]
    triangles: tuple[tuple[Point, Point, Point], ...] = ()

    @property
    def interior_points(self) -> list[Point]:
        return [p for p, flag in self.lattice_points if flag == "interior"]

    @property
    def edges(self) -> list[tuple[Point, Point]]:
        seen = set()
        for t in self.triangles:
            for a, b in combinations(sorted(t), 2):
                seen.add((a, b))
        return sorted(seen)

    def twice_area(self) -> int:
        return twice_polygon_area(self.polygon_vertices)


def twice_polygon_area(poly: Sequence[Sequence[int]]) -> int:
    n = len(poly)
    return abs(sum(det2(poly[i], poly[(i + 1) % n]) for i in range(n)))


def convex_hull(points: Iterable[Sequence]) -> list[tuple]:
    """Counter-clockwise hull vertices, collinear points dropped."""
    pts = sorted(set(tuple(p) for p in points))
    if len(pts) <= 2:
        return pts

    def turn(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list = []
    for p in pts:
        while len(lower) >= 2 and turn(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and turn(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def polygon_lattice_points(vertices: Sequence[Point]) -> tuple[tuple[Point, str], ...]:
    poly = convex_hull(vertices)
    vset = set(poly)
    xs = [p[0] for p in poly]
    ys = [p[1] for p in poly]
    out = []
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            sides = [
                det2(sub(poly[(i + 1) % len(poly)], poly[i]), sub((x, y), poly[i]))
                for i in range(len(poly))
            ]
            if min(sides) < 0:
                continue
            if (x, y) in vset:
                flag = "vertex"
            elif 0 in sides:
                flag = "boundary"
            else:
                flag = "interior"
            out.append(((x, y), flag))
    return tuple(out)


def _point_in_convex(p, poly) -> bool:
    if len(poly) == 1:
        return tuple(p) == tuple(poly[0])
    if len(poly) == 2:
        a, b = poly
        if det2(sub(b, a), sub(p, a)) != 0:
            return False
        return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    n = len(poly)
    return all(det2(sub(poly[(i + 1) % n], poly[i]), sub(p, poly[i])) >= 0 for i in range(n))


def _segment_intersections(a, b, c, d) -> list[tuple[Fraction, Fraction]]:
    r = sub(b, a)
    s = sub(d, c)
    denom = det2(r, s)
    qp = sub(c, a)
    if denom == 0:
        return []
    t = Fraction(det2(qp, s), denom)
    u = Fraction(det2(qp, r), denom)
    if 0 <= t <= 1 and 0 <= u <= 1:
        return [(a[0] + t * r[0], a[1] + t * r[1])]
    return []


def _meet_properly(P: Sequence[Point], Q: Sequence[Point]) -> bool:
    """Do two convex lattice polygons meet in a common face (or not at all)?"""
    P = convex_hull(P)
    Q = convex_hull(Q)
    cand = [tuple(Fraction(x) for x in p) for p in P if _point_in_convex(p, Q)]
    cand += [tuple(Fraction(x) for x in q) for q in Q if _point_in_convex(q, P)]
    for i in range(len(P)):
        for j in range(len(Q)):
            cand += _segment_intersections(P[i], P[(i + 1) % len(P)], Q[j], Q[(j + 1) % len(Q)])
    common = {tuple(Fraction(x) for x in p) for p in set(P) & set(Q)}
    pts = set(cand)
    if not pts:
        return not common
    hull = convex_hull(pts)
    if len(hull) >= 3 and twice_polygon_area(hull) != 0:
        return False
    return pts == common


@dataclass(frozen=True)
class Fan:
    """A complete-in-its-support fan stored by maximal cones."""

    maximal_cones: tuple[Cone, ...]

    def __post_init__(self):
        cones = tuple(c if isinstance(c, Cone) else Cone(tuple(c)) for c in self.maximal_cones)
        object.__setattr__(self, "maximal_cones", cones)

    @classmethod
    def from_triangles(cls, triangles: Iterable[Sequence[Point]]) -> "Fan":
        return cls(tuple(Cone(tuple((1,) + tuple(p) for p in t)) for t in triangles))

    @property
    def rays(self) -> list[Vec]:
        return sorted({g for c in self.maximal_cones for g in c.generators})

    @property
    def is_simplicial(self) -> bool:
        return all(c.is_simplicial for c in self.maximal_cones)

    def key(self) -> tuple:
        return tuple(sorted(c.key for c in self.maximal_cones))

    def contains(self, v: Sequence[int]) -> bool:
        return any(c.contains(v) for c in self.maximal_cones)

    def star_subdivision(self, v: Sequence[int]) -> "Fan":
        """Star subdivision at the primitive lattice vector ``v``.

        Cones missing ``v`` are kept. Each maximal cone containing ``v`` is
        replaced by the joins of ``v`` with its facets that miss ``v``.
        """
        v = tuple(int(x) for x in v)
        if not is_primitive(v):
            raise ValueError("subdivision center must be primitive")
        if v in self.rays:
            return self
        if not self.contains(v):
            raise ValueError(f"{v} lies outside the support of the fan")
        new: list[Cone] = []
        for c in self.maximal_cones:
            if not c.contains(v):
                new.append(c)
                continue
            for (a, b), nrm in c.facets():
                if dot(nrm, v) > 0:
                    new.append(Cone((v, a, b)))
        return Fan(tuple(new))

    def walls(self) -> dict[tuple[Vec, Vec], list[Cone]]:
        """Two-dimensional faces of simplicial maximal cones with their cofaces."""
        out: dict[tuple[Vec, Vec], list[Cone]] = {}
        for c in self.maximal_cones:
            if not c.is_simplicial:
                raise ValueError("non-simplicial")
            for a, b in combinations(c.key, 2):
                out.setdefault((a, b), []).append(c)
        return out

    def is_smooth(self) -> bool:
        return smoothness(self)[0]

    def has_proper_intersections(self) -> bool:
        """Brute-force check that maximal cones pairwise meet in common faces."""
        slices = [[tuple(g[1:]) for g in c.generators] for c in self.maximal_cones]
        for c in self.maximal_cones:
            if any(g[0] != 1 for g in c.generators):
                raise ValueError("fan is not crepant-compatible")
        for i in range(len(slices)):
            for j in range(i + 1, len(slices)):
                if not _meet_properly(slices[i], slices[j]):
                    return False
        return True

    def height_one_slice(self) -> ToricDiagram:
        return height_one_slice(self)


def smoothness(f: Fan) -> tuple[bool, str]:
    """``(is_smooth, reason)``."""
    for c in f.maximal_cones:
        if not c.is_simplicial:
            return False, "non-simplicial"
    for c in f.maximal_cones:
        if multiplicity(c) != 1:
            return False, f"cone {c.key} has multiplicity {multiplicity(c)}"
    return True, "smooth"


def is_smooth(f: Fan) -> bool:
    return smoothness(f)[0]


def star_subdivision(f: Fan, v: Sequence[int]) -> Fan:
    return f.star_subdivision(v)


def height_one_slice(f: Fan) -> ToricDiagram:
    rays = f.rays
    if any(r[0] != 1 for r in rays):
        raise ValueError("fan is not crepant-compatible")
    pts = [(r[1], r[2]) for r in rays]
    poly = tuple(convex_hull(pts))
    tris: tuple = ()
    if f.is_simplicial:
        tris = tuple(
            sorted(tuple(sorted((g[1], g[2]) for g in c.generators)) for c in f.maximal_cones)
        )
    return ToricDiagram(poly, polygon_lattice_points(poly), tris)


def hyperconifold_fan(n: int, k: int) -> Fan:
    """The single cone over the parallelogram (0,0), (1,0), (k,n), (k+1,n)."""
    return Fan((Cone(((1, 0, 0), (1, 1, 0), (1, k, n), (1, k + 1, n))),))


def _monomial_product(*exps: dict) -> dict:
    out: Counter = Counter()
    for e in exps:
        out.update(e)
    return {k: v for k, v in out.items() if v != 0}


def verify_parametrizations() -> bool:
    """Check the toric and homogeneous substitutions kill ``y1 y4 - y2 y3``.

    Monomials are exponent dictionaries, so the identities are checked
    exactly: both terms of the conifold equation must become the same
    monomial, and the ``C*`` rescaling of homogeneous coordinates must act
    trivially on every ``y_i``.
    """
    toric = {
        "y1": {"t1": 1, "t3": -1},
        "y2": {"t2": 1},
        "y3": {"t1": 1, "t2": -1},
        "y4": {"t3": 1},
    }
    homog = {
        "y1": {"z1": 1, "z3": 1},
        "y2": {"z1": 1, "z4": 1},
        "y3": {"z2": 1, "z3": 1},
        "y4": {"z2": 1, "z4": 1},
    }
    for sub_ in (toric, homog):
        if _monomial_product(sub_["y1"], sub_["y4"]) != _monomial_product(sub_["y2"], sub_["y3"]):
            return False
    weight = {"z1": 1, "z2": 1, "z3": -1, "z4": -1}
    for mono in homog.values():
        if sum(weight[z] * e for z, e in mono.items()) != 0:
            return False
    return True
