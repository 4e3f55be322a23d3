"""Local mirror of ``C_{n,k}`` and its nodes.

The mirror is ``F = uv - f(x, y)`` with ``f`` the sum of the four vertex
monomials of the toric diagram, which factors as
``f = (1 + x)(1 + x^k y^n)``. Its singular points are ordinary double
points at ``u = v = 0``, ``x = -1``, ``y^n = (-1)^(k+1)``.

Points ``y`` are held exactly as ``exp(pi i j / n)``, an index ``j`` mod
``2n``, so vanishing of any polynomial whose ``y``-exponents differ by
multiples of ``n`` can be decided over the integers.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .classify import HyperconifoldClass, canonical_form, diagram_of
from .fan import convex_hull

Poly = Mapping[tuple[int, int], int]


def poly_mul(p: Poly, q: Poly) -> dict[tuple[int, int], int]:
    out: dict[tuple[int, int], int] = {}
    for (a, b), c in p.items():
        for (a2, b2), c2 in q.items():
            key = (a + a2, b + b2)
            out[key] = out.get(key, 0) + c * c2
    return {e: c for e, c in out.items() if c}


def poly_diff(p: Poly, var: int) -> dict[tuple[int, int], int]:
    """Partial derivative in ``x`` (``var = 0``) or ``y`` (``var = 1``)."""
    out = {}
    for e, c in p.items():
        if e[var]:
            e2 = (e[0] - 1, e[1]) if var == 0 else (e[0], e[1] - 1)
            out[e2] = c * e[var]
    return out


def poly_eval(p: Poly, x: complex, y: complex) -> complex:
    return sum(c * x ** a * y ** b for (a, b), c in p.items())


@dataclass(frozen=True)
class MirrorGeometry:
    n: int
    k: int
    f1: dict = field(hash=False)
    f2: dict = field(hash=False)
    laurent_f: dict = field(hash=False)

    def newton_polygon(self) -> list[tuple[int, int]]:
        return convex_hull(self.laurent_f.keys())

    def describe(self) -> str:
        return poly_str(self.laurent_f)


def poly_str(p: Poly) -> str:
    terms = []
    for (a, b), c in sorted(p.items(), key=lambda t: (t[0][1], t[0][0])):
        mono = "*".join(s for s in (_power("x", a), _power("y", b)) if s) or "1"
        terms.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(terms)


def _power(v: str, e: int) -> str:
    return "" if e == 0 else (v if e == 1 else f"{v}^{e}")


def mirror_polynomial(c) -> MirrorGeometry:
    """``f = 1 + x + x^k y^n + x^(k+1) y^n`` together with its two factors.

    A class uses its normal form; a raw ``(n, k)`` pair is validated but
    kept as given, since different ``k`` in one orbit give different
    (equivalent) polynomials.
    """
    if isinstance(c, HyperconifoldClass):
        n, k = c.n, c.k
    else:
        n, k = c
        canonical_form(n, k)
        k %= n
    f1 = {(0, 0): 1, (1, 0): 1}
    f2 = {(0, 0): 1, (k, n): 1}
    f = {(0, 0): 1, (1, 0): 1, (k, n): 1, (k + 1, n): 1}
    if poly_mul(f1, f2) != f:
        raise RuntimeError("vertex polynomial does not factor as (1+x)(1+x^k y^n)")
    g = MirrorGeometry(n, k, f1, f2, f)
    if sorted(g.newton_polygon()) != sorted(diagram_of(n, k).polygon_vertices):
        raise RuntimeError("Newton polygon differs from the toric diagram")
    return g


# -- exact evaluation at (x, y) = (-1, exp(pi i j / n)) -----------------------


def _vanishes_exactly(p: Poly, n: int, j: int) -> bool:
    """Is ``p(-1, zeta^j) = 0`` with ``zeta = exp(pi i / n)``?

    Each monomial lands on a power of ``zeta`` mod ``2n``; powers ``e`` and
    ``e + n`` are identified up to sign. A zero reduced form proves
    vanishing; anything else is reported as not verified.
    """
    acc: dict[int, int] = {}
    for (a, b), c in p.items():
        e = (j * b) % (2 * n)
        sign = -1 if a % 2 else 1
        if e >= n:
            e, sign = e - n, -sign
        acc[e] = acc.get(e, 0) + sign * c
    return not any(acc.values())


def _monomial_partial(p: Poly) -> bool:
    """Some partial derivative of ``p`` is a single nonzero monomial, so
    ``p = dp = 0`` has no solution on the torus."""
    return any(len(poly_diff(p, v)) == 1 for v in (0, 1))


@dataclass(frozen=True)
class NodeCertificate:
    root_index: int  # y = exp(pi i root_index / n)
    y_power: int  # exact value of y^n, +1 or -1
    point: tuple[complex, complex, complex, complex]
    hessian_det: complex
    exact_vanishing: bool
    nondegenerate: bool

    @property
    def y(self) -> complex:
        return self.point[3]


HESSIAN_TOL = 1e-9


def _hessian(g: MirrorGeometry, x: complex, y: complex) -> np.ndarray:
    f = g.laurent_f
    fx, fy = poly_diff(f, 0), poly_diff(f, 1)
    fxx, fxy, fyy = poly_diff(fx, 0), poly_diff(fx, 1), poly_diff(fy, 1)
    # coordinates (u, v, x, y) of F = uv - f; normalised to unit max coefficient
    scale = max(1, max(abs(c) for c in f.values()))
    H = np.zeros((4, 4), dtype=complex)
    H[0, 1] = H[1, 0] = 1
    H[2, 2] = -poly_eval(fxx, x, y)
    H[2, 3] = H[3, 2] = -poly_eval(fxy, x, y)
    H[3, 3] = -poly_eval(fyy, x, y)
    return H / scale


def mirror_nodes(g: MirrorGeometry) -> list[NodeCertificate]:
    """The ``n`` singular points of ``uv = f``, each with a Hessian certificate.

    ``F = dF = 0`` forces ``u = v = 0`` and ``f = df = 0``. Neither factor is
    singular on its own (checked below), so the points are ``f1 = f2 = 0``.
    """
    n, k = g.n, g.k
    if not (_monomial_partial(g.f1) and _monomial_partial(g.f2)):
        raise RuntimeError("a factor of f has singular points of its own")
    e = (k + 1) % 2
    f = g.laurent_f
    derivs = (g.f1, g.f2, f, poly_diff(f, 0), poly_diff(f, 1))
    out = []
    for i in range(n):
        j = 2 * i + e
        y = cmath.exp(1j * math.pi * j / n)
        exact = all(_vanishes_exactly(p, n, j) for p in derivs)
        d = complex(np.linalg.det(_hessian(g, -1, y)))
        out.append(NodeCertificate(j, (-1) ** (k + 1), (0j, 0j, -1 + 0j, y), d, exact, abs(d) > HESSIAN_TOL))
    return out


def independent_node_search(
    g: MirrorGeometry, grid: int = 32, tol: float = 1e-6, iterations: int = 80
) -> list[tuple[complex, complex, complex, complex]]:
    """Numeric oracle: damped Newton on ``df = 0`` from a ``grid x grid`` set of starts.

    Solutions with ``|f| < tol`` away from the coordinate axes are
    clustered at distance ``tol``. ``u = v = 0`` is forced by ``dF/du = v``
    and ``dF/dv = u``.
    """
    if grid < 16:
        raise ValueError("grid must be at least 16")
    f = g.laurent_f
    fx, fy = poly_diff(f, 0), poly_diff(f, 1)
    fxx, fxy, fyy = poly_diff(fx, 0), poly_diff(fx, 1), poly_diff(fy, 1)

    def ev(p, X, Y):
        out = np.zeros_like(X)
        for (a, b), c in p.items():
            out = out + c * X ** a * Y ** b
        return out

    th = 2 * np.pi * (np.arange(grid) + 0.37) / grid
    radii = 0.6 + 0.8 * ((np.arange(grid) * 0.618) % 1.0)
    X0 = (radii * np.exp(1j * th))[:, None] * np.ones(grid)[None, :]
    Y0 = np.ones(grid)[:, None] * (radii[::-1] * np.exp(1j * (th + 0.11)))[None, :]
    X, Y = X0.ravel(), Y0.ravel()
    with np.errstate(all="ignore"):
        for _ in range(iterations):
            a, b = ev(fx, X, Y), ev(fy, X, Y)
            h11, h12, h22 = ev(fxx, X, Y), ev(fxy, X, Y), ev(fyy, X, Y)
            det = h11 * h22 - h12 * h12
            dx = (h22 * a - h12 * b) / det
            dy = (h11 * b - h12 * a) / det
            step = np.maximum(1.0, np.sqrt(np.abs(dx) ** 2 + np.abs(dy) ** 2) / 0.5)
            X, Y = X - dx / step, Y - dy / step
        ok = (
            np.isfinite(X)
            & np.isfinite(Y)
            & (np.abs(X) > 1e-8)
            & (np.abs(Y) > 1e-8)
            & (np.abs(ev(fx, X, Y)) < tol)
            & (np.abs(ev(fy, X, Y)) < tol)
            & (np.abs(ev(f, X, Y)) < tol)
        )
    clusters: list[tuple[complex, complex]] = []
    for x, y in zip(X[ok], Y[ok]):
        if not any(abs(x - cx) < tol and abs(y - cy) < tol for cx, cy in clusters):
            clusters.append((complex(x), complex(y)))
    return [(0j, 0j, x, y) for x, y in sorted(clusters, key=lambda p: (round(cmath.phase(p[1]), 9), p[0].real))]


def node_count(c: HyperconifoldClass | tuple[int, int]) -> int:
    return len(mirror_nodes(mirror_polynomial(c)))
