"""Exact feasibility of homogeneous strict inequality systems ``A t > 0``.

The main route is a phase-one simplex over the rationals applied to the
Gordan alternative: either some ``y >= 0``, ``y != 0`` has ``A^T y = 0``
(the open cone is empty) or the phase-one duals give ``t`` with ``A t > 0``.
Both outcomes come with a certificate that is re-checked in exact
arithmetic. Fourier-Motzkin elimination is kept as an independent check for
small systems.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Sequence

from .lattice import dot, integer_direction, nullspace, primitive_of


def _phase_one(M: list[list[Fraction]], b: list[Fraction]):
    """Find ``x >= 0`` with ``M x = b`` or a Farkas vector ``z``.

    Returns ``(x, None)`` on success and ``(None, z)`` otherwise, where
    ``z^T M >= 0`` and ``z^T b < 0``. Bland's rule keeps it finite.
    """
    m = len(M)
    ncols = len(M[0]) if m else 0
    signs = [1 if bi >= 0 else -1 for bi in b]
    T = [
        [signs[i] * M[i][j] for j in range(ncols)]
        + [Fraction(int(i == r)) for r in range(m)]
        + [signs[i] * b[i]]
        for i in range(m)
    ]
    width = ncols + m
    basis = [ncols + i for i in range(m)]
    cost = [Fraction(0)] * ncols + [Fraction(1)] * m
    red = [cost[j] - sum(T[i][j] for i in range(m)) for j in range(width)]
    while True:
        enter = next((j for j in range(width) if red[j] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:  # unbounded cannot happen: objective is bounded below by 0
            raise RuntimeError("phase one became unbounded")
        r = best[1]
        piv = T[r][enter]
        T[r] = [x / piv if x else x for x in T[r]]
        nz = [j for j, y in enumerate(T[r]) if y]
        for i in range(m):
            if i != r and T[i][enter] != 0:
                f = T[i][enter]
                row = T[i]
                for j in nz:
                    row[j] -= f * T[r][j]
        f = red[enter]
        for j in nz:
            if j < width:
                red[j] -= f * T[r][j]
        basis[r] = enter
    value = sum(T[i][-1] for i in range(m) if basis[i] >= ncols)
    if value == 0:
        x = [Fraction(0)] * ncols
        for i in range(m):
            if basis[i] < ncols:
                x[basis[i]] = T[i][-1]
        return x, None
    y_tilde = [1 - red[ncols + i] for i in range(m)]
    z = [-signs[i] * y_tilde[i] for i in range(m)]
    return None, z


@dataclass(frozen=True)
class StrictFeasibility:
    """Outcome of deciding ``A t > 0``; exactly one of the fields is set."""

    witness: tuple[Fraction, ...] | None
    certificate: tuple[Fraction, ...] | None

    @property
    def feasible(self) -> bool:
        return self.witness is not None


def strict_feasible(A: Sequence[Sequence[int]], nvars: int | None = None) -> StrictFeasibility:
    """Decide whether the open cone ``{t : A t > 0}`` is nonempty."""
    rows = [[Fraction(x) for x in r] for r in A]
    d = nvars if nvars is not None else (len(rows[0]) if rows else 0)
    if not rows:
        return StrictFeasibility(tuple(Fraction(0) for _ in range(d)), None)
    if d == 0:
        cert = tuple(Fraction(int(i == 0)) for i in range(len(rows)))
        return StrictFeasibility(None, cert)
    # repeated rows are redundant; solve on the distinct ones and map back
    distinct: list[list[Fraction]] = []
    first: dict[tuple, int] = {}
    for r in rows:
        first.setdefault(tuple(r), len(distinct))
        if len(first) > len(distinct):
            distinct.append(r)
    m = len(rows)
    md = len(distinct)
    # columns are the rows of A; last equation normalises sum(y) = 1
    M = [[distinct[j][i] for j in range(md)] for i in range(d)] + [[Fraction(1)] * md]
    b = [Fraction(0)] * d + [Fraction(1)]
    y, z = _phase_one(M, b)
    if y is not None:
        placed = set()
        cert_list = []
        for r in rows:
            j = first[tuple(r)]
            cert_list.append(y[j] if j not in placed else Fraction(0))
            placed.add(j)
        cert = tuple(cert_list)
        if any(v < 0 for v in cert) or any(
            sum(cert[j] * rows[j][i] for j in range(m)) != 0 for i in range(d)
        ):
            raise RuntimeError("emptiness certificate failed verification")
        return StrictFeasibility(None, cert)
    t = tuple(z[:d])
    scale = 1
    for v in t:
        scale = scale * v.denominator // gcd(scale, v.denominator)
    t = tuple(v * scale for v in t)
    if not all(dot(r, t) > 0 for r in rows):
        raise RuntimeError("feasibility witness failed verification")
    g = 0
    for v in t:
        g = gcd(g, int(v))
    return StrictFeasibility(tuple(Fraction(int(v) // g) for v in t), None)


def fourier_motzkin_feasible(A: Sequence[Sequence[int]]) -> bool:
    """``A t > 0`` solvable? Plain Fourier-Motzkin; exponential, small systems only."""
    rows = {tuple(primitive_of(r)) if any(r) else tuple(r) for r in A}
    if not rows:
        return True
    d = len(next(iter(rows)))
    for k in range(d):
        if any(not any(r) for r in rows):
            return False
        pos = [r for r in rows if r[k] > 0]
        neg = [r for r in rows if r[k] < 0]
        new = {r for r in rows if r[k] == 0}
        for p in pos:
            for q in neg:
                c = tuple(-q[k] * x + p[k] * y for x, y in zip(p, q))
                new.add(tuple(primitive_of(c)) if any(c) else c)
        rows = new
    return not rows


def extreme_rays(A: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed closed cone ``{t : A t >= 0}``."""
    rows = [tuple(r) for r in A]
    d = len(rows[0])
    rays = set()
    if d == 1:
        for s in (1, -1):
            if all(r[0] * s >= 0 for r in rows):
                rays.add((s,))
        return sorted(rays)
    for combo in combinations(rows, d - 1):
        ns = nullspace(list(combo))
        if len(ns) != 1:
            continue
        v = integer_direction(ns[0])
        for cand in (v, tuple(-x for x in v)):
            if all(dot(r, cand) >= 0 for r in rows):
                rays.add(cand)
    return sorted(rays)


def same_closed_cone(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> bool:
    """Double inclusion of extreme-ray generators of ``{A t >= 0}`` and ``{B t >= 0}``."""
    ra, rb = extreme_rays(A), extreme_rays(B)
    if not ra or not rb:
        return ra == rb
    return all(all(dot(r, v) >= 0 for r in B) for v in ra) and all(
        all(dot(r, v) >= 0 for r in A) for v in rb
    )
