"""Exact integer linear algebra on Z^2 and Z^3.

Everything here works with plain Python ints, so there is no overflow and
no rounding. Vectors are tuples of ints; matrices are tuples of row tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

Vec = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]


def vec(*coords: int) -> Vec:
    return tuple(int(c) for c in coords)


def add(a: Sequence[int], b: Sequence[int]) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence[int], b: Sequence[int]) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def scale(c: int, a: Sequence[int]) -> Vec:
    return tuple(c * x for x in a)


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def cross(a: Sequence[int], b: Sequence[int]) -> Vec:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def det2(a: Sequence[int], b: Sequence[int]) -> int:
    return a[0] * b[1] - a[1] * b[0]


def det3(a: Sequence[int], b: Sequence[int], c: Sequence[int]) -> int:
    """Determinant of the 3x3 matrix with rows ``a``, ``b``, ``c``."""
    return dot(a, cross(b, c))


def content(v: Iterable[int]) -> int:
    return reduce(gcd, (abs(int(x)) for x in v), 0)


def primitive_of(v: Sequence[int]) -> Vec:
    """Divide ``v`` by the gcd of its coordinates (signs are kept)."""
    g = content(v)
    if g == 0:
        raise ValueError("zero vector has no primitive")
    return tuple(int(x) // g for x in v)


def is_primitive(v: Sequence[int]) -> bool:
    return content(v) == 1


def mat_mul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    cols = list(zip(*B))
    return tuple(tuple(dot(row, col) for col in cols) for row in A)


def mat_vec(A: Sequence[Sequence[int]], v: Sequence[int]) -> Vec:
    return tuple(dot(row, v) for row in A)


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def det(A: Sequence[Sequence]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    M = [list(row) for row in A]
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for r in range(k + 1, n):
                if M[r][k] != 0:
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def solve_rational(A: Sequence[Sequence], b: Sequence) -> tuple[Fraction, ...] | None:
    """Solve the square system ``A x = b`` over Q; ``None`` if singular."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(A, b)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            return None
        M[c], M[piv] = M[piv], M[c]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c] / M[c][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return tuple(M[i][n] / M[i][i] for i in range(n))


def nullspace(A: Sequence[Sequence]) -> list[tuple[Fraction, ...]]:
    """Basis of the rational null space of ``A`` (rows are equations)."""
    if not A:
        return []
    ncols = len(A[0])
    M = [[Fraction(x) for x in row] for row in A]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        p = M[r][c]
        M[r] = [x / p for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -M[i][fc]
        basis.append(tuple(v))
    return basis


def integer_direction(v: Sequence[Fraction]) -> Vec:
    """Scale a rational vector to the primitive integer vector on its ray."""
    den = reduce(lambda a, b: a * b // gcd(a, b), (Fraction(x).denominator for x in v), 1)
    return primitive_of([int(Fraction(x) * den) for x in v])


@dataclass(frozen=True)
class UnimodularMap:
    """Integer matrix with determinant +1 or -1."""

    matrix: Matrix

    def __post_init__(self):
        m = tuple(tuple(int(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        if abs(det(m)) != 1:
            raise ValueError("matrix is not unimodular")

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def __call__(self, v: Sequence[int]) -> Vec:
        return mat_vec(self.matrix, v)

    def compose(self, other: "UnimodularMap") -> "UnimodularMap":
        return UnimodularMap(mat_mul(self.matrix, other.matrix))

    def inverse(self) -> "UnimodularMap":
        n = self.dim
        d = det(self.matrix)
        inv = []
        for i in range(n):
            row = []
            for j in range(n):
                minor = [
                    [self.matrix[r][c] for c in range(n) if c != i]
                    for r in range(n)
                    if r != j
                ]
                row.append((-1) ** (i + j) * det(minor) * d)
            inv.append(tuple(row))
        return UnimodularMap(tuple(inv))


def complete_to_basis(v: Sequence[int]) -> UnimodularMap:
    """Unimodular ``U`` with ``U v = e_1``.

    Requires ``v`` primitive. The remaining rows of ``U`` project ``Z^n``
    onto ``Z^n / Z v``.
    """
    if not is_primitive(v):
        raise ValueError("vector must be primitive")
    n = len(v)
    # row operations on [v | I] until v becomes e_1
    rows = [[int(v[i])] + [int(i == j) for j in range(n)] for i in range(n)]
    while True:
        nz = [i for i in range(n) if rows[i][0] != 0]
        if len(nz) == 1:
            break
        p = min(nz, key=lambda i: abs(rows[i][0]))
        for i in nz:
            if i != p:
                q = rows[i][0] // rows[p][0]
                rows[i] = [x - q * y for x, y in zip(rows[i], rows[p])]
    p = nz[0]
    rows[0], rows[p] = rows[p], rows[0]
    if rows[0][0] < 0:
        rows[0] = [-x for x in rows[0]]
    return UnimodularMap(tuple(tuple(r[1:]) for r in rows))


def height_normalizer(rays: Sequence[Sequence[int]]) -> UnimodularMap:
    """Unimodular map sending every ray to first coordinate 1.

    Raises ``ValueError`` when the rays do not lie on a common lattice
    hyperplane at integral height one.
    """
    rays = [tuple(r) for r in rays]
    if len(rays) < 3:
        raise ValueError("need at least three rays to fix a hyperplane")
    basis = None
    for i in range(len(rays)):
        for j in range(i + 1, len(rays)):
            for k in range(j + 1, len(rays)):
                if det3(rays[i], rays[j], rays[k]) != 0:
                    basis = (rays[i], rays[j], rays[k])
                    break
            if basis:
                break
        if basis:
            break
    if basis is None:
        raise ValueError("rays span less than three dimensions")
    m = solve_rational(basis, (1, 1, 1))
    if any(x.denominator != 1 for x in m) or any(dot(m, r) != 1 for r in rays):
        raise ValueError("fan is not crepant-compatible")
    m = tuple(int(x) for x in m)
    # W m = e1 implies the first row of (W^T)^{-1} is m
    W = complete_to_basis(m)
    Wt = UnimodularMap(tuple(zip(*W.matrix)))
    A = Wt.inverse()
    assert A.matrix[0] == m
    return A


def _aspect(points: Sequence[Sequence[int]]) -> Fraction:
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    w, h = max(xs) - min(xs), max(ys) - min(ys)
    return Fraction(max(w, h), min(w, h))


def squaring_shear(points: Sequence[Sequence[int]]) -> UnimodularMap:
    """A 2D shear making the bounding box of ``points`` as square as possible.

    Horizontal shears ``(x, y) -> (x + s y, y)`` and vertical shears
    ``(x, y) -> (x, y + s x)`` with ``|s|`` up to the diagram height are
    tried; ties go to the smallest ``|s|``, then negative ``s``, then
    horizontal. Presentation only.
    """
    pts = [tuple(p) for p in points]
    if len(pts) < 3 or all(det2(sub(p, pts[0]), sub(q, pts[0])) == 0 for p in pts for q in pts):
        raise ValueError("degenerate diagram")
    bound = max(p[1] for p in pts) - min(p[1] for p in pts)
    bound = max(bound, max(p[0] for p in pts) - min(p[0] for p in pts), 1)
    best = None
    for s in range(-bound, bound + 1):
        for kind, M in ((0, ((1, s), (0, 1))), (1, ((1, 0), (s, 1)))):
            img = [mat_vec(M, p) for p in pts]
            xs = {p[0] for p in img}
            ys = {p[1] for p in img}
            if len(xs) < 2 or len(ys) < 2:
                continue
            key = (_aspect(img), abs(s), s, kind)
            if best is None or key < best[0]:
                best = (key, M)
    return UnimodularMap(best[1])
