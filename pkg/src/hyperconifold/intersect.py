"""Intersection theory on smooth crepant resolutions of ``C_{n,k}``.

Compact torus-invariant curves correspond to walls (2D cones) whose slice
edge is interior to the toric diagram. For such a wall spanned by ``w1, w2``
with opposite rays ``u, u'`` in the two adjacent cones there is a unique
relation ``u + u' + a w1 + b w2 = 0``, and the curve pairs with the toric
divisors as ``D_u = D_u' = 1``, ``D_w1 = a``, ``D_w2 = b``, zero otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, cmp_to_key
from itertools import combinations, permutations, product
from typing import Sequence

from .lattice import Vec, add, complete_to_basis, det2, scale, sub
from .polyhedral import StrictFeasibility, extreme_rays, strict_feasible
from .resolve import DEFAULT_ENUM_BOUND, Resolution, _as_class, enumerate_crepant_resolutions


@dataclass(frozen=True)
class Wall:
    generators: tuple[Vec, Vec]
    opposite: tuple[Vec, ...]

    @property
    def compact(self) -> bool:
        return len(self.opposite) == 2


def walls(r: Resolution) -> list[Wall]:
    out = []
    for (a, b), cones in sorted(r.fan.walls().items()):
        opp = tuple(sorted(next(g for g in c.generators if g not in (a, b)) for c in cones))
        out.append(Wall((a, b), opp))
    return out


def compact_walls(r: Resolution) -> list[Wall]:
    return [w for w in walls(r) if w.compact]


def wall_relation(r: Resolution, w: Wall) -> tuple[int, int]:
    """Integers ``(a, b)`` with ``u + u' + a w1 + b w2 = 0``."""
    if not w.compact:
        raise ValueError("curve is non-compact; no pairing table")
    u, u2 = w.opposite
    w1, w2 = w.generators
    target = tuple(-x for x in add(u, u2))
    # two coordinates with an invertible 2x2 minor determine (a, b)
    for i, j in combinations(range(3), 2):
        d = w1[i] * w2[j] - w1[j] * w2[i]
        if d:
            a_num = target[i] * w2[j] - target[j] * w2[i]
            b_num = w1[i] * target[j] - w1[j] * target[i]
            if a_num % d or b_num % d:
                raise ValueError("wall relation is not integral; fan is not smooth")
            a, b = a_num // d, b_num // d
            if add(scale(a, w1), scale(b, w2)) != target:
                raise ValueError("opposite rays do not satisfy a wall relation")
            return a, b
    raise ValueError("degenerate wall")


def curve_pairings(r: Resolution, w: Wall) -> dict[Vec, int]:
    """``D_rho . C_w`` for every ray ``rho`` with a nonzero pairing."""
    a, b = wall_relation(r, w)
    out: dict[Vec, int] = {}
    for ray, val in ((w.opposite[0], 1), (w.opposite[1], 1), (w.generators[0], a), (w.generators[1], b)):
        out[ray] = out.get(ray, 0) + val
    return out


def exceptional_rays(r: Resolution) -> list[Vec]:
    """Rays of the exceptional divisors, i.e. diagram points strictly inside."""
    interior = set(r.fan.height_one_slice().interior_points)
    return sorted((ray for ray in r.fan.rays if (ray[1], ray[2]) in interior), key=lambda v: (v[2], v[1]))


# -- local ample cone --------------------------------------------------------


@dataclass(frozen=True)
class ConeDescription:
    """Open cone ``{t : A t > 0}`` in exceptional-divisor coefficient space.

    ``inequalities[i]`` holds the pairings ``E_alpha . C`` of the compact
    curve ``curves[i]`` with the exceptional divisors, in the order of
    ``rays``.
    """

    variables: tuple[str, ...]
    rays: tuple[Vec, ...]
    inequalities: tuple[tuple[int, ...], ...]
    curves: tuple[tuple[Vec, Vec], ...] = ()

    @cached_property
    def feasibility(self) -> StrictFeasibility:
        return strict_feasible(self.inequalities, len(self.variables))

    @property
    def no_local_ample_divisors(self) -> bool:
        return not self.variables

    @property
    def is_empty(self) -> bool:
        return not self.feasibility.feasible

    @property
    def witness(self):
        return self.feasibility.witness

    def contains(self, t: Sequence) -> bool:
        return all(sum(c * x for c, x in zip(row, t)) > 0 for row in self.inequalities)

    def closure_rays(self) -> list[tuple[int, ...]]:
        if not self.variables or self.is_empty:
            return []
        return extreme_rays(self.inequalities)

    def describe(self) -> list[str]:
        out = []
        for row in self.inequalities:
            terms = []
            for c, v in zip(row, self.variables):
                if c:
                    terms.append(f"{c:+d}*{v}" if abs(c) != 1 else f"{'+' if c > 0 else '-'}{v}")
            lhs = " ".join(terms).lstrip("+") if terms else "0"
            out.append(f"{lhs} > 0")
        return out


def local_ample_cone(r: Resolution) -> ConeDescription:
    """One strict inequality ``sum_alpha t_alpha E_alpha . C > 0`` per compact curve."""
    ex = exceptional_rays(r)
    rows, curves = [], []
    for w in compact_walls(r):
        pair = curve_pairings(r, w)
        rows.append(tuple(pair.get(e, 0) for e in ex))
        curves.append(w.generators)
    names = tuple(f"t{i + 1}" for i in range(len(ex)))
    return ConeDescription(names, tuple(ex), tuple(rows), tuple(curves))


def is_projective(r: Resolution) -> bool:
    return not local_ample_cone(r).is_empty


def projective_resolutions(c, bound: int = DEFAULT_ENUM_BOUND) -> list[Resolution]:
    return [r for r in enumerate_crepant_resolutions(_as_class(c), bound) if is_projective(r)]


# -- exceptional surfaces ------------------------------------------------------


def _half(d: tuple[int, int]) -> int:
    return 0 if d[1] > 0 or (d[1] == 0 and d[0] > 0) else 1


def _cyclic_neighbors(r: Resolution, center: Vec) -> list[Vec]:
    nbrs = {g for c in r.fan.maximal_cones if center in c.generators for g in c.generators if g != center}
    c2 = (center[1], center[2])
    dirs = {v: sub((v[1], v[2]), c2) for v in nbrs}

    def cmp(p, q):
        a, b = dirs[p], dirs[q]
        ha, hb = _half(a), _half(b)
        if ha != hb:
            return ha - hb
        cr = det2(a, b)
        return -1 if cr > 0 else (1 if cr < 0 else 0)

    return sorted(nbrs, key=cmp_to_key(cmp))


@dataclass(frozen=True)
class ExceptionalSurface:
    center_ray: Vec
    neighbors: tuple[Vec, ...]
    self_intersections: tuple[int, ...]

    @property
    def boundary_cycle(self) -> tuple[tuple[Vec, int], ...]:
        return tuple(zip(self.neighbors, self.self_intersections))

    @property
    def label(self) -> str:
        cyc = self.self_intersections
        if cyc == (1, 1, 1):
            return "P2"
        if len(cyc) == 4:
            for a in range(0, max(abs(x) for x in cyc) + 1):
                if _dihedral_equal(cyc, (0, a, 0, -a)):
                    return f"F{a}"
        return f"smooth toric surface, cycle {cyc}"

    @property
    def k_squared(self) -> int:
        """``K_S^2 = sum C_i^2 + 2 * (number of boundary curves)``."""
        return sum(self.self_intersections) + 2 * len(self.self_intersections)


def _dihedral_equal(a: Sequence[int], b: Sequence[int]) -> bool:
    n = len(a)
    if n != len(b):
        return False
    a = tuple(a)
    for seq in (tuple(b), tuple(reversed(b))):
        for s in range(n):
            if seq[s:] + seq[:s] == a:
                return True
    return False


def exceptional_surfaces(r: Resolution) -> list[ExceptionalSurface]:
    """Star construction: each exceptional divisor as a smooth complete toric surface.

    Neighbouring rays are projected to ``N / Z w`` and the self-intersection
    of the curve for neighbour ``j`` is ``-b_j`` where
    ``u_{j-1} + u_{j+1} = b_j u_j`` in the quotient lattice.
    """
    out = []
    for w in exceptional_rays(r):
        nbrs = _cyclic_neighbors(r, w)
        U = complete_to_basis(w)
        proj = [U(v)[1:] for v in nbrs]
        m = len(proj)
        selfs = []
        for j in range(m):
            s = add(proj[j - 1], proj[(j + 1) % m])
            uj = proj[j]
            if det2(s, uj) != 0:
                raise ValueError("star fan is not complete and smooth")
            b = s[0] // uj[0] if uj[0] else s[1] // uj[1]
            if scale(b, uj) != s:
                raise ValueError("star fan relation is not integral")
            selfs.append(-b)
        out.append(ExceptionalSurface(w, tuple(nbrs), tuple(selfs)))
    return out


def adjunction_check(r: Resolution) -> bool:
    """``E_S . C = -2 - C^2`` for every compact curve inside an exceptional surface.

    ``C^2`` comes from the surface's star fan and ``E_S . C`` from the 3D
    wall relation, so the two sides are computed independently.
    """
    surfaces = {s.center_ray: s for s in exceptional_surfaces(r)}
    for w in compact_walls(r):
        pair = curve_pairings(r, w)
        for center, other in (w.generators, tuple(reversed(w.generators))):
            s = surfaces.get(center)
            if s is None:
                continue
            c2 = s.self_intersections[s.neighbors.index(other)]
            if pair[center] != -2 - c2:
                return False
    return True


# -- triple intersections --------------------------------------------------------


@dataclass(frozen=True)
class IntersectionTensor:
    """Symmetric ``d[a][b][c] = E_a . E_b . E_c`` over the exceptional divisors."""

    rays: tuple[Vec, ...]
    d: tuple[tuple[tuple[int, ...], ...], ...]

    def __getitem__(self, idx: tuple[int, int, int]) -> int:
        a, b, c = idx
        return self.d[a][b][c]

    @property
    def size(self) -> int:
        return len(self.rays)

    def is_symmetric(self) -> bool:
        n = self.size
        return all(
            len({self.d[p[0]][p[1]][p[2]] for p in permutations(idx)}) == 1
            for idx in product(range(n), repeat=3)
        )

    def as_lists(self) -> list:
        return [[list(row) for row in plane] for plane in self.d]


def _build_tensor(rays: list[Vec], entry) -> IntersectionTensor:
    n = len(rays)
    d = tuple(
        tuple(tuple(entry(*sorted((a, b, c))) for c in range(n)) for b in range(n)) for a in range(n)
    )
    return IntersectionTensor(tuple(rays), d)


def triple_intersections(r: Resolution) -> IntersectionTensor:
    """Triple intersections of exceptional divisors.

    Distinct triples count the cones spanned by the three rays. For
    ``E_a^2 E_b`` the restriction ``E_a|E_a = K`` pairs with the curve
    ``E_a . E_b`` through the wall relation, and ``E_a^3 = K^2`` of the
    surface ``E_a``.
    """
    rays = exceptional_rays(r)
    cones = {c.key for c in r.fan.maximal_cones}
    surfaces = {s.center_ray: s for s in exceptional_surfaces(r)}
    pair = {w.generators: curve_pairings(r, w) for w in compact_walls(r)}

    def wall_pair(x: Vec, y: Vec):
        return pair.get(tuple(sorted((x, y))))

    def entry(a, b, c):
        ra, rb, rc = rays[a], rays[b], rays[c]
        if a != b and b != c:
            return int(tuple(sorted((ra, rb, rc))) in cones)
        if a == b == c:
            return surfaces[ra].k_squared
        # exactly two equal: E_x^2 E_y
        x, y = (ra, rc) if a == b else (rc, ra)
        p = wall_pair(x, y)
        return 0 if p is None else p[x]

    return _build_tensor(rays, entry)


def triple_intersections_oracle(r: Resolution) -> IntersectionTensor:
    """Independent route: curve classes of pairwise products, then pair with divisors.

    ``E_b . E_c`` is the curve of wall ``(b, c)`` for ``b != c`` (zero when
    not adjacent) and ``-(sum of the boundary curves of E_b)`` for ``b = c``.
    Every ordering of each index triple gives an equation for the same
    symmetric unknown; all of them must agree.
    """
    rays = exceptional_rays(r)
    pairings = {w.generators: curve_pairings(r, w) for w in compact_walls(r)}

    def curve_class(b: Vec, c: Vec) -> dict[tuple, int]:
        if b != c:
            key = tuple(sorted((b, c)))
            return {key: 1} if key in pairings else {}
        return {key: -1 for key in pairings if b in key}

    equations: dict[tuple[int, int, int], set[int]] = {}
    n = len(rays)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                cls = curve_class(rays[b], rays[c])
                val = sum(m * pairings[k].get(rays[a], 0) for k, m in cls.items())
                equations.setdefault(tuple(sorted((a, b, c))), set()).add(val)
    for idx, vals in equations.items():
        if len(vals) != 1:
            raise ValueError(f"inconsistent system for d{idx}: {sorted(vals)}")
    return _build_tensor(rays, lambda a, b, c: next(iter(equations[(a, b, c)])))
