"""Classification of cyclic hyperconifold singularities.

A hyperconifold ``C_{n,k}`` is the conifold ``y1 y4 = y2 y3`` divided by
``(y1, y2, y3, y4) -> (z y1, z^k y2, z^-k y3, z^-1 y4)`` with ``z`` a
primitive n-th root of unity and ``gcd(k, n) = 1``. Phases are tracked as
integer exponents, so every check here is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

import numpy as np

from .fan import ToricDiagram, height_one_slice, hyperconifold_fan
from .lattice import det, identity, mat_mul


@dataclass(frozen=True)
class HyperconifoldClass:
    """``C_{n,k}`` in normal form: ``k`` is the least element of its orbit."""

    n: int
    k: int
    orbit: tuple[int, ...]

    @property
    def is_conifold(self) -> bool:
        return self.n == 1

    @property
    def lens_space(self) -> str:
        return f"L({self.n},{self.k})"

    @property
    def label(self) -> str:
        return "conifold" if self.is_conifold else f"C_{{{self.n},{self.k}}}"

    def __str__(self) -> str:
        return self.label


def _orbit(n: int, k: int) -> tuple[int, ...]:
    if n == 1:
        return (0,)
    kinv = pow(k, -1, n)
    return tuple(sorted({k % n, (-k) % n, kinv, (-kinv) % n}))


def canonical_form(n: int, k: int) -> HyperconifoldClass:
    """Normal form of ``C_{n,k}`` under ``k -> +-k^(+-1) mod n``."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    if n == 1:
        return HyperconifoldClass(1, 0, (0,))
    if gcd(k, n) != 1:
        raise ValueError("k must be relatively prime to n")
    orb = _orbit(n, k)
    return HyperconifoldClass(n, orb[0], orb)


def lens_equivalent(n: int, k: int, k2: int) -> bool:
    """``L(n,k) = L(n,k2)``, equivalently ``C_{n,k} = C_{n,k2}``."""
    return canonical_form(n, k2).k in canonical_form(n, k).orbit


def validate_weights(n: int, weights: Sequence[int]) -> HyperconifoldClass | None:
    """Class of the diagonal action with phase exponents ``weights``, if any.

    The action must preserve ``p = y1 y4 - y2 y3`` and every weight must be a
    unit mod ``n`` so that the origin is the only fixed point. Invariance of
    the holomorphic three-form then follows from invariance of ``p``.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    a = [int(w) % n for w in weights]
    if len(a) != 4:
        raise ValueError("exactly four weights are required")
    if n == 1:
        return canonical_form(1, 0)
    if (a[0] + a[3]) % n or (a[1] + a[2]) % n:
        return None
    if any(gcd(x, n) != 1 for x in a):
        return None
    # pass to the generator acting on y1 with exponent 1
    inv = pow(a[0], -1, n)
    return canonical_form(n, a[1] * inv % n)


def normal_form_weights(n: int, k: int) -> tuple[int, int, int, int]:
    return (1 % n, k % n, (-k) % n, (-1) % n)


def diagram_of(n: int, k: int) -> ToricDiagram:
    if n < 1 or not (0 <= k < max(n, 1)) or (n == 1 and k != 0) or (n > 1 and gcd(k, n) != 1):
        raise ValueError(f"invalid hyperconifold parameters (n={n}, k={k})")
    return height_one_slice(hyperconifold_fan(n, k))


def verify_matrix_action(n: int, k: int) -> bool:
    """Left/right diagonal multiplication of ``W = [[y1, y2], [y3, y4]]``.

    ``diag(z, z^-k) W diag(1, z^(k-1))`` must multiply ``y1..y4`` by
    ``z, z^k, z^-k, z^-1``; the induced action on the ``S^2`` factor,
    ``diag(1, z^(1-k))``, must be trivial exactly when ``k = 1 mod n``.
    """
    left = (1, -k)
    right = (0, k - 1)
    got = [(left[i] + right[j]) % n for i in range(2) for j in range(2)]
    if got != [x % n for x in (1, k, -k, -1)]:
        return False
    # det W picks up z^(1-k) z^(k-1)
    if (left[0] + left[1] + right[0] + right[1]) % n != (1 - k + k - 1) % n:
        return False
    sphere_trivial = (1 - k) % n == 0
    return sphere_trivial == (k % n == 1 % n)


# -- identification from a linearised action --------------------------------


def _poly_mul(p: list[int], q: list[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def _poly_divmod(p: list[int], q: list[int]) -> tuple[list[int], list[int]]:
    """Division by a monic integer polynomial; coefficients lowest degree first."""
    p = list(p)
    dq = len(q) - 1
    if len(p) - 1 < dq:
        return [0], p
    quot = [0] * (len(p) - dq)
    for i in range(len(p) - 1, dq - 1, -1):
        c = p[i]
        quot[i - dq] = c
        if c:
            for j in range(dq + 1):
                p[i - dq + j] -= c * q[j]
    rem = p[:dq] or [0]
    return quot, rem


def cyclotomic(d: int) -> list[int]:
    """Integer coefficients of the d-th cyclotomic polynomial, lowest first."""
    num = [-1] + [0] * (d - 1) + [1]
    for e in range(1, d):
        if d % e == 0:
            num, rem = _poly_divmod(num, cyclotomic(e))
            assert not any(rem)
    return num


def characteristic_polynomial(M: Sequence[Sequence[int]]) -> list[int]:
    """``det(x I - M)`` via Faddeev-LeVerrier, lowest degree first."""
    n = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    coeffs = [Fraction(1)]
    Mk = [[Fraction(0)] * n for _ in range(n)]
    c = Fraction(1)
    for k in range(1, n + 1):
        Mk = [
            [sum(A[i][t] * Mk[t][j] for t in range(n)) + (c if i == j else 0) for j in range(n)]
            for i in range(n)
        ]
        AM = [[sum(A[i][t] * Mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        c = -sum(AM[i][i] for i in range(n)) / k
        coeffs.append(c)
    # coeffs[k] multiplies x^(n-k)
    out = [int(x) for x in reversed(coeffs)]
    assert all(x.denominator == 1 for x in coeffs)
    return out


def matrix_order(M: Sequence[Sequence[int]], bound: int = 1000) -> int:
    n = len(M)
    I = identity(n)
    P = tuple(tuple(int(x) for x in row) for row in M)
    cur = P
    for order in range(1, bound + 1):
        if cur == I:
            return order
        cur = mat_mul(cur, P)
    raise ValueError(f"matrix has infinite order or order above the bound {bound}")


def eigenvalue_exponents(M: Sequence[Sequence[int]], bound: int = 1000) -> tuple[int, list[int]]:
    """Order ``n`` of ``M`` and the exponents ``a`` of its eigenvalues ``e^(2 pi i a/n)``.

    The characteristic polynomial is factored exactly into cyclotomic
    polynomials; eigenvalues of an integer matrix come in full Galois orbits,
    so each factor ``Phi_d`` contributes every exponent of order ``d``.
    """
    n = matrix_order(M, bound)
    chi = characteristic_polynomial(M)
    exps: list[int] = []
    rest = chi
    for d in range(1, n + 1):
        if n % d:
            continue
        phi = cyclotomic(d)
        while len(rest) > 1:
            q, r = _poly_divmod(rest, phi)
            if any(r):
                break
            rest = q
            exps += [j * (n // d) for j in range(d) if gcd(j, d) == 1]
    if rest != [1]:
        raise ValueError("eigenvalues are not roots of unity")
    # exactness re-check: product of the claimed factors is the char poly
    prod = [1]
    for d in range(1, n + 1):
        if n % d == 0:
            mult = sum(1 for a in exps if n // gcd(a, n) == d) // max(1, _phi(d))
            for _ in range(mult):
                prod = _poly_mul(prod, cyclotomic(d))
    if prod != chi:
        raise ValueError("cyclotomic factorisation failed verification")
    return n, sorted(exps)


def _phi(d: int) -> int:
    return sum(1 for j in range(1, d + 1) if gcd(j, d) == 1)


def _eigen_exponents_numeric(M, bound: int, tol: float = 1e-9) -> tuple[int, list[int]]:
    A = np.asarray(M, dtype=complex)
    I = np.eye(len(A))
    P = A.copy()
    n = None
    for order in range(1, bound + 1):
        if np.allclose(P, I, atol=tol):
            n = order
            break
        P = P @ A
    if n is None:
        raise ValueError(f"matrix has infinite order or order above the bound {bound}")
    vals = np.linalg.eigvals(A)
    exps = []
    for lam in vals:
        if abs(abs(lam) - 1) > 1e-7:
            raise ValueError("eigenvalues are not roots of unity")
        a = np.angle(lam) * n / (2 * np.pi)
        r = round(a)
        if abs(a - r) > 1e-6:
            raise ValueError("eigenvalues are not n-th roots of unity")
        exps.append(r % n)
    # re-verify: the claimed spectrum reproduces the characteristic polynomial
    claimed = np.poly([np.exp(2j * np.pi * a / n) for a in exps])
    if not np.allclose(claimed, np.poly(A), atol=1e-7):
        raise ValueError("eigenvalue exponents failed verification")
    return n, sorted(exps)


def classify_exponents(n: int, exps: Sequence[int]) -> HyperconifoldClass:
    """Pair four exponents into ``a + a' = 0 mod n`` and normalise."""
    if n == 1:
        raise ValueError("trivial action: order 1, no hyperconifold quotient")
    exps = [e % n for e in exps]
    if any(gcd(e, n) != 1 for e in exps):
        raise ValueError(f"exponents {exps} are not all units mod {n}: origin is not an isolated fixed point")
    for j in range(1, 4):
        rest = [exps[i] for i in range(1, 4) if i != j]
        if (exps[0] + exps[j]) % n == 0 and (rest[0] + rest[1]) % n == 0:
            cls = validate_weights(n, (exps[0], rest[0], rest[1], exps[j]))
            if cls is not None:
                return cls
    raise ValueError(f"exponents {exps} cannot be paired to preserve p")


def identify_from_matrix(M, bound: int = 1000) -> tuple[HyperconifoldClass, int, list[int]]:
    """Hyperconifold class of a linearised 4x4 group action.

    Integer matrices go through exact cyclotomic factorisation; any other
    entries fall back to numerical eigenvalues followed by re-verification.
    Returns ``(class, order, exponents)``.
    """
    rows = [list(r) for r in M]
    if len(rows) != 4 or any(len(r) != 4 for r in rows):
        raise ValueError("expected a 4x4 matrix")
    if all(isinstance(x, (int, np.integer)) for r in rows for x in r):
        if det(rows) == 0:
            raise ValueError("matrix is singular")
        n, exps = eigenvalue_exponents(rows, bound)
    else:
        n, exps = _eigen_exponents_numeric(rows, bound)
    if n == 1:
        raise ValueError("trivial action: order 1, no hyperconifold quotient")
    return classify_exponents(n, exps), n, exps


def _companion(poly: list[int]) -> list[list[int]]:
    d = len(poly) - 1
    C = [[0] * d for _ in range(d)]
    for i in range(1, d):
        C[i][i - 1] = 1
    for i in range(d):
        C[i][d - 1] = -poly[i]
    return C


def action_matrix(n: int, k: int) -> list[list]:
    """A 4x4 matrix whose spectrum is ``z, z^k, z^-k, z^-1``.

    When the spectrum is a union of Galois orbits the result is integral: a
    block sum of cyclotomic companion matrices. Otherwise it is the complex
    diagonal matrix conjugated by a fixed unimodular integer matrix.
    """
    remaining = sorted(a % n for a in normal_form_weights(n, k))
    blocks = []
    while remaining:
        a = remaining[0]
        d = n // gcd(a, n)
        orbit = [j * (n // d) for j in range(d) if gcd(j, d) == 1]
        if any(remaining.count(b) < 1 for b in orbit):
            break
        for b in orbit:
            remaining.remove(b)
        blocks.append(_companion(cyclotomic(d)))
    if not remaining:
        M = [[0] * 4 for _ in range(4)]
        off = 0
        for B in blocks:
            for i, row in enumerate(B):
                for j, x in enumerate(row):
                    M[off + i][off + j] = x
            off += len(B)
        return M
    roots = [np.exp(2j * np.pi * a / n) for a in normal_form_weights(n, k)]
    U = np.array([[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1], [0, 0, 0, 1]], dtype=complex)
    return (U @ np.diag(roots) @ np.linalg.inv(U)).tolist()


# -- the exchange-type (exceptional) actions ---------------------------------


@dataclass(frozen=True)
class ExchangeAction:
    """``(y1,y2,y3,y4) -> (h y1, h^k y3, h^(n-k) y2, h^(n-1) y4)``, ``h = e^(i pi/n)``.

    Phases are stored as exponents of ``h``, i.e. modulo ``2n``. ``perm[i]``
    is the coordinate whose value lands in slot ``i``.
    """

    n: int
    k: int

    @property
    def modulus(self) -> int:
        return 2 * self.n

    @property
    def perm(self) -> tuple[int, int, int, int]:
        return (0, 2, 1, 3)

    @property
    def phases(self) -> tuple[int, int, int, int]:
        n, k = self.n, self.k
        return (1 % (2 * n), k % (2 * n), (n - k) % (2 * n), (n - 1) % (2 * n))

    def as_monomial(self) -> "MonomialMap":
        return MonomialMap(self.perm, self.phases, self.modulus)

    def describe(self) -> str:
        return self.as_monomial().describe()


@dataclass(frozen=True)
class MonomialMap:
    """``y_i -> w^phase[i] * y_perm[i]`` with ``w = e^(2 pi i / modulus)``."""

    perm: tuple[int, ...]
    phases: tuple[int, ...]
    modulus: int

    def __mul__(self, other: "MonomialMap") -> "MonomialMap":
        # (self * other) = apply other first, then self
        # self: slot i <- w^a_i y_{p(i)}; other then substitutes y_j <- w^b_j y_{q(j)}
        perm = tuple(other.perm[self.perm[i]] for i in range(4))
        phases = tuple((self.phases[i] + other.phases[self.perm[i]]) % self.modulus for i in range(4))
        return MonomialMap(perm, phases, self.modulus)

    def is_identity(self) -> bool:
        return self.perm == (0, 1, 2, 3) and not any(self.phases)

    def power(self, m: int) -> "MonomialMap":
        out = MonomialMap((0, 1, 2, 3), (0, 0, 0, 0), self.modulus)
        for _ in range(m):
            out = out * self
        return out

    def order(self) -> int:
        cur, m = self, 1
        while not cur.is_identity():
            cur = cur * self
            m += 1
        return m

    def perm_sign(self) -> int:
        p = list(self.perm)
        sign = 1
        for i in range(4):
            while p[i] != i:
                j = p[i]
                p[i], p[j] = p[j], p[i]
                sign = -sign
        return sign

    def fixed_vectors(self) -> list[dict[int, int]]:
        """Basis of the fixed subspace: one vector per cycle with trivial phase.

        Each vector is ``{coordinate: phase exponent}`` with entries of unit
        modulus on the cycle's coordinates.
        """
        seen: set[int] = set()
        out = []
        for start in range(4):
            if start in seen:
                continue
            cycle = [start]
            while self.perm[cycle[-1]] != start:
                cycle.append(self.perm[cycle[-1]])
            seen.update(cycle)
            if sum(self.phases[i] for i in cycle) % self.modulus:
                continue
            # v_{perm(i)} = v_i - phase_i along the cycle
            vec = {start: 0}
            for i in cycle[:-1]:
                vec[self.perm[i]] = (vec[i] - self.phases[i]) % self.modulus
            out.append(vec)
        return out

    def fixes_curve_on_conifold(self) -> bool:
        """Does this map fix a point of ``p = 0`` other than the origin?"""
        basis = self.fixed_vectors()
        if len(basis) >= 2:
            return True  # a quadric in two or more variables has nontrivial zeros
        if not basis:
            return False
        v = basis[0]
        terms = []
        for (i, j), sign in (((0, 3), 1), ((1, 2), -1)):
            if i in v and j in v:
                terms.append(((v[i] + v[j]) % self.modulus, sign))
        if not terms:
            return True
        if len(terms) == 2:
            (e1, s1), (e2, s2) = terms
            return e1 == e2 and s1 + s2 == 0
        return False

    def p_phase(self) -> int | None:
        """Exponent ``c`` with ``p -> w^c p``, or ``None`` if ``p`` is not an eigenvector."""
        # image of y1 y4 and y2 y3 as (phase, unordered pair)
        def image(i, j):
            return ((self.phases[i] + self.phases[j]) % self.modulus, frozenset((self.perm[i], self.perm[j])))

        a = image(0, 3)
        b = image(1, 2)
        if a[1] == frozenset((0, 3)) and b[1] == frozenset((1, 2)) and a[0] == b[0]:
            return a[0]
        if a[1] == frozenset((1, 2)) and b[1] == frozenset((0, 3)) and a[0] == b[0]:
            # y1 y4 - y2 y3 -> w^c (y2 y3 - y1 y4)
            return (a[0] + self.modulus // 2) % self.modulus
        return None

    def omega_phase(self) -> int | None:
        """Phase exponent of ``dy1 dy2 dy3 dy4 / p``."""
        pp = self.p_phase()
        if pp is None:
            return None
        num = sum(self.phases) % self.modulus
        if self.perm_sign() < 0:
            num = (num + self.modulus // 2) % self.modulus
        return (num - pp) % self.modulus

    def describe(self) -> str:
        names = []
        for i in range(4):
            frac = Fraction(self.phases[i], self.modulus)
            coef = {Fraction(0): "", Fraction(1, 2): "-", Fraction(1, 4): "i ", Fraction(3, 4): "-i "}.get(
                frac, f"exp(2 pi i {frac}) "
            )
            names.append(f"{coef}y{self.perm[i] + 1}")
        return "(y1, y2, y3, y4) -> (" + ", ".join(names) + ")"


def phase_label(turns: Fraction) -> str:
    """``exp(2 pi i * turns)`` as ``1``, ``-1``, ``i``, ``-i`` or an explicit exponential."""
    return {Fraction(0): "1", Fraction(1, 2): "-1", Fraction(1, 4): "i", Fraction(3, 4): "-i"}.get(
        turns % 1, f"exp(2 pi i {turns})"
    )


@dataclass(frozen=True)
class ExceptionalResult:
    action: ExchangeAction
    order: int
    p_phase: Fraction
    omega_phase: Fraction
    class_key: tuple


def _exchange_class_key(g: MonomialMap) -> tuple:
    """Invariant of ``<g>`` under diagonal conjugation preserving ``p`` and ``y2 <-> y3``.

    Such conjugations leave the phases on ``y1`` and ``y4`` and the product
    of the two off-diagonal phases unchanged; minimise over the generators
    of the cyclic group that still exchange ``y2`` and ``y3``.
    """
    order = g.order()
    best = None
    for j in range(1, order):
        if gcd(j, order) != 1:
            continue
        h = g.power(j)
        if h.perm != (0, 2, 1, 3):
            continue
        key = (
            Fraction(h.phases[0], h.modulus),
            Fraction(h.phases[3], h.modulus),
            Fraction((h.phases[1] + h.phases[2]) % h.modulus, h.modulus),
        )
        best = key if best is None or key < best else best
    return (order,) + best


def exceptional_scan(n_max: int) -> list[ExceptionalResult]:
    """All exchange-type hyperconifold actions up to ``n_max``, one per class.

    A candidate survives when no nontrivial power fixes a point of the
    conifold away from the origin and the holomorphic three-form is
    invariant. Output is ordered by ``(n, k)`` of the first representative.
    """
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    found: dict[tuple, ExceptionalResult] = {}
    for n in range(1, n_max + 1):
        for k in range(n):
            act = ExchangeAction(n, k)
            g = act.as_monomial()
            order = g.order()
            if any(g.power(j).fixes_curve_on_conifold() for j in range(1, order)):
                continue
            om = g.omega_phase()
            if om is None or om != 0:
                continue
            key = _exchange_class_key(g)
            if key not in found:
                found[key] = ExceptionalResult(
                    act, order, Fraction(g.p_phase(), g.modulus), Fraction(om, g.modulus), key
                )
    return list(found.values())
