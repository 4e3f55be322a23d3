"""Small finite groups as Cayley tables.

Groups come from a table, from permutation generators, or from a finite
presentation through bounded Todd-Coxeter coset enumeration. Products are
written left to right: ``a * b`` means "first ``a``, then ``b``" when
elements act on the right, which is the convention of coset enumeration.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping, Sequence

DEFAULT_COSET_LIMIT = 100_000


class CosetLimitError(RuntimeError):
    """Coset enumeration exceeded its ceiling."""


@dataclass(frozen=True)
class FiniteGroup:
    table: tuple[tuple[int, ...], ...]
    generators: Mapping[str, int] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        n = len(self.table)
        if n == 0:
            raise ValueError("empty Cayley table")
        full = set(range(n))
        for row in self.table:
            if len(row) != n or set(row) != full:
                raise ValueError("Cayley table is not a Latin square")
        for j in range(n):
            if {self.table[i][j] for i in range(n)} != full:
                raise ValueError("Cayley table is not a Latin square")
        e = next((i for i in range(n) if self.table[i] == tuple(range(n))), None)
        if e is None or any(self.table[i][e] != i for i in range(n)):
            raise ValueError("Cayley table has no identity")
        object.__setattr__(self, "_e", e)
        if n <= 64:
            t = self.table
            for a, b, c in product(range(n), repeat=3):
                if t[t[a][b]][c] != t[a][t[b][c]]:
                    raise ValueError("Cayley table is not associative")
        for name, g in self.generators.items():
            if not 0 <= g < n:
                raise ValueError(f"generator {name} is not an element")

    # -- construction ------------------------------------------------------

    @classmethod
    def from_cayley(cls, table: Sequence[Sequence[int]], one_based: bool = True, generators=None):
        off = 1 if one_based else 0
        t = tuple(tuple(int(x) - off for x in row) for row in table)
        gens = {k: int(v) - off for k, v in (generators or {}).items()}
        return cls(t, gens)

    @classmethod
    def from_permutations(cls, perms: Sequence[Sequence[int]], names: Sequence[str] | None = None,
                          one_based: bool = True, limit: int = 100_000):
        """Group generated by permutations given as image lists; ``p * q`` applies ``p`` first."""
        off = 1 if one_based else 0
        gens = [tuple(int(x) - off for x in p) for p in perms]
        if not gens:
            return trivial_group()
        deg = len(gens[0])
        if any(sorted(g) != list(range(deg)) for g in gens):
            raise ValueError("generator is not a permutation")
        ident = tuple(range(deg))
        elems = [ident]
        index = {ident: 0}
        i = 0
        while i < len(elems):
            p = elems[i]
            for g in gens:
                q = tuple(g[x] for x in p)
                if q not in index:
                    if len(elems) >= limit:
                        raise CosetLimitError(f"permutation group exceeds {limit} elements")
                    index[q] = len(elems)
                    elems.append(q)
            i += 1
        table = tuple(tuple(index[tuple(b[x] for x in a)] for b in elems) for a in elems)
        names = names or [f"g{i + 1}" for i in range(len(gens))]
        return cls(table, {nm: index[g] for nm, g in zip(names, gens)})

    @classmethod
    def from_presentation(cls, generators: Sequence[str], relators: Iterable[str],
                          limit: int = DEFAULT_COSET_LIMIT):
        gens = list(generators)
        rels = [parse_word(r, gens) for r in relators]
        perms = todd_coxeter(len(gens), rels, limit)
        return cls.from_permutations(perms, gens, one_based=False)

    # -- basic queries -------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def identity(self) -> int:
        return self._e

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.table[a].index(self._e)

    def power(self, a: int, m: int) -> int:
        if m < 0:
            a, m = self.inv(a), -m
        out = self._e
        for _ in range(m):
            out = self.table[out][a]
        return out

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self._e:
            x = self.table[x][a]
            k += 1
        return k

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def conjugate(self, x: int, h: int) -> int:
        """``h x h^-1``."""
        return self.mul(self.mul(h, x), self.inv(h))

    def check_element(self, a: int) -> int:
        if not isinstance(a, int) or not 0 <= a < self.order:
            raise ValueError(f"invalid element index {a}")
        return a

    def evaluate(self, word: str) -> int:
        """Element named by a word in the generator names, e.g. ``"g4^-1 g3 g4"``."""
        names = list(self.generators)
        out = self._e
        for idx in parse_word(word, names):
            g = self.generators[names[idx // 2]]
            out = self.mul(out, g if idx % 2 == 0 else self.inv(g))
        return out

    def subgroup(self, elements: Iterable[int]) -> frozenset[int]:
        """Subgroup generated by ``elements``."""
        gens = [self.check_element(a) for a in elements]
        out = {self._e}
        frontier = [self._e]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.mul(x, g)
                if y not in out:
                    out.add(y)
                    frontier.append(y)
        return frozenset(out)

    def is_normal(self, sub: Iterable[int]) -> bool:
        s = set(sub)
        return all(self.conjugate(x, h) in s for x in s for h in range(self.order))

    def order_histogram(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(Counter(self.element_order(a) for a in range(self.order)).items()))


# -- words and coset enumeration ----------------------------------------------------

_TOKEN = re.compile(r"([A-Za-z_][A-Za-z_0-9]*)(?:\^(-?\d+))?")


def parse_word(word: str, names: Sequence[str]) -> list[int]:
    """Letters as column indices ``2*i`` (generator) and ``2*i + 1`` (inverse).

    Tokens are separated by spaces or ``*``; ``lhs = rhs`` means
    ``lhs rhs^-1``. The empty word and ``e`` / ``1`` are the identity.
    """
    if "=" in word:
        lhs, rhs = word.split("=", 1)
        return parse_word(lhs, names) + invert_word(parse_word(rhs, names))
    out: list[int] = []
    for tok in re.split(r"[\s*]+", word.strip()):
        if tok in ("", "e", "1"):
            continue
        m = _TOKEN.fullmatch(tok)
        if not m or m.group(1) not in names:
            raise ValueError(f"bad token {tok!r} in word {word!r}")
        i = names.index(m.group(1))
        p = int(m.group(2)) if m.group(2) else 1
        out += [2 * i + (p < 0)] * abs(p)
    return out


def invert_word(w: Sequence[int]) -> list[int]:
    return [x ^ 1 for x in reversed(w)]


def todd_coxeter(ngens: int, relators: Sequence[Sequence[int]], limit: int = DEFAULT_COSET_LIMIT):
    """Right-regular permutations of the group ``<gens | relators>`` (HLT strategy).

    Raises :class:`CosetLimitError` if more than ``limit`` cosets are defined.
    """
    cols = 2 * ngens
    table: list[list[int | None]] = [[None] * cols]
    parent = [0]

    def rep(c: int) -> int:
        root = c
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    def define(c: int, x: int) -> None:
        if len(table) >= limit:
            raise CosetLimitError(f"coset enumeration exceeded {limit} cosets")
        d = len(table)
        table.append([None] * cols)
        parent.append(d)
        table[c][x] = d
        table[d][x ^ 1] = c

    def merge(a: int, b: int, queue: list[int]) -> None:
        a, b = rep(a), rep(b)
        if a != b:
            lo, hi = min(a, b), max(a, b)
            parent[hi] = lo
            queue.append(hi)

    def coincidence(a: int, b: int) -> None:
        queue: list[int] = []
        merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            for x in range(cols):
                f = table[e][x]
                if f is None:
                    continue
                table[f][x ^ 1] = None
                e1, f1 = rep(e), rep(f)
                if table[e1][x] is not None:
                    merge(f1, table[e1][x], queue)
                elif table[f1][x ^ 1] is not None:
                    merge(e1, table[f1][x ^ 1], queue)
                else:
                    table[e1][x] = f1
                    table[f1][x ^ 1] = e1

    def scan_and_fill(c: int, w: Sequence[int]) -> None:
        f = b = c
        i, j = 0, len(w) - 1
        while True:
            while i <= j and table[f][w[i]] is not None:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i and table[b][w[j] ^ 1] is not None:
                b = table[b][w[j] ^ 1]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][w[i]] = b
                table[b][w[i] ^ 1] = f
                return
            define(f, w[i])

    c = 0
    while c < len(table):
        for w in relators:
            if parent[c] != c:
                break
            scan_and_fill(c, w)
        if parent[c] == c:
            for x in range(cols):
                if table[c][x] is None:
                    define(c, x)
        c += 1
    live = [i for i in range(len(table)) if parent[i] == i]
    index = {c: i for i, c in enumerate(live)}
    return [[index[rep(table[c][2 * g])] for c in live] for g in range(ngens)]


# -- derived constructions -----------------------------------------------------------


def trivial_group() -> FiniteGroup:
    return FiniteGroup(((0,),))


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)), {"g": 1 % n})


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    m = H.order
    table = tuple(
        tuple(G.mul(a // m, b // m) * m + H.mul(a % m, b % m) for b in range(G.order * m))
        for a in range(G.order * m)
    )
    gens = {f"{k}_1": g * m + H.identity for k, g in G.generators.items()}
    gens.update({f"{k}_2": G.identity * m + h for k, h in H.generators.items()})
    return FiniteGroup(table, gens)


def normal_closure(G: FiniteGroup, seeds: Iterable[int]) -> frozenset[int]:
    """Smallest normal subgroup containing ``seeds``."""
    seeds = [G.check_element(s) for s in seeds]
    if not seeds:
        raise ValueError("normal closure needs at least one seed")
    conj = {G.conjugate(s, h) for s in seeds for h in range(G.order)}
    return G.subgroup(conj)


def quotient_group(G: FiniteGroup, N: Iterable[int]) -> FiniteGroup:
    """``G / N`` as a coset table; ``N`` must be a normal subgroup."""
    N = frozenset(N)
    if G.subgroup(N) != N:
        raise ValueError("not a subgroup")
    if not G.is_normal(N):
        raise ValueError("subgroup is not normal")
    coset_of: dict[int, int] = {}
    reps: list[int] = []
    for a in range(G.order):
        if a in coset_of:
            continue
        idx = len(reps)
        reps.append(a)
        for x in N:
            coset_of[G.mul(a, x)] = idx
    m = len(reps)
    members = [[a for a in range(G.order) if coset_of[a] == i] for i in range(m)]
    table = []
    for i in range(m):
        row = []
        for j in range(m):
            images = {coset_of[G.mul(a, b)] for a in members[i] for b in members[j]}
            if len(images) != 1:
                raise RuntimeError("coset product is not well defined")
            row.append(images.pop())
        table.append(tuple(row))
    gens = {k: coset_of[g] for k, g in G.generators.items()}
    return FiniteGroup(tuple(table), gens)


# -- identification ----------------------------------------------------------------


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def abelian_invariants(G: FiniteGroup) -> tuple[int, ...]:
    """Invariant factors ``d1 | d2 | ...`` of an abelian group (empty when trivial)."""
    if not G.is_abelian():
        raise ValueError("group is not abelian")
    orders = [G.element_order(a) for a in range(G.order)]
    per_prime: list[list[int]] = []
    for p, a in _factor(G.order).items():
        # log_p #{x : x^(p^i) = 1} grows by the number of cyclic p-factors of order >= p^i
        logs = [0]
        while logs[-1] < a:
            i = len(logs)
            logs.append(_log(sum(1 for o in orders if p ** i % o == 0), p))
        ge = [logs[i] - logs[i - 1] for i in range(1, len(logs))] + [0]
        parts = []
        for i in range(len(ge) - 1):
            parts += [p ** (i + 1)] * (ge[i] - ge[i + 1])
        per_prime.append(sorted(parts, reverse=True))
    width = max((len(x) for x in per_prime), default=0)
    factors = []
    for i in range(width):
        d = 1
        for parts in per_prime:
            if i < len(parts):
                d *= parts[i]
        factors.append(d)
    return tuple(sorted(factors))


def _log(x: int, p: int) -> int:
    k = 0
    while x > 1:
        if x % p:
            raise ValueError("not a prime power")
        x //= p
        k += 1
    return k


def _abelian_label(inv: Sequence[int]) -> str:
    if not inv:
        return "trivial"
    return "x".join(f"Z{d}" for d in sorted(inv, reverse=True))


def _dihedral(n: int) -> FiniteGroup:
    return FiniteGroup.from_presentation(["r", "s"], [f"r^{n}", "s^2", "s r s r"])


def _dicyclic(n: int) -> FiniteGroup:
    return FiniteGroup.from_presentation(["a", "x"], [f"a^{2 * n}", f"x^2 a^-{n}", "x^-1 a x a"])


def _semidirect_cyclic(n: int, m: int, r: int) -> FiniteGroup:
    """``Z_n : Z_m`` with ``b^-1 a b = a^r``."""
    return FiniteGroup.from_presentation(["a", "b"], [f"a^{n}", f"b^{m}", f"b^-1 a b a^-{r}"])


def _s(n: int) -> FiniteGroup:
    return FiniteGroup.from_permutations([[2, 1] + list(range(3, n + 1)), list(range(2, n + 1)) + [1]])


def _a4() -> FiniteGroup:
    return FiniteGroup.from_permutations([[2, 3, 1, 4], [1, 3, 4, 2]])


def _z(n: int) -> FiniteGroup:
    return cyclic_group(n)


_P = FiniteGroup.from_presentation
_NONABELIAN = {
    6: [("S3", lambda: _s(3))],
    8: [("D4", lambda: _dihedral(4)), ("Q8", lambda: _dicyclic(2))],
    10: [("D5", lambda: _dihedral(5))],
    12: [("A4", _a4), ("D6", lambda: _dihedral(6)), ("Dic3", lambda: _dicyclic(3))],
    14: [("D7", lambda: _dihedral(7))],
    16: [
        ("D8", lambda: _dihedral(8)),
        ("Q16", lambda: _dicyclic(4)),
        ("SD16", lambda: _semidirect_cyclic(8, 2, 3)),
        ("M16", lambda: _semidirect_cyclic(8, 2, 5)),
        ("Z4:Z4", lambda: _semidirect_cyclic(4, 4, 3)),
        ("Z2xD4", lambda: direct_product(_z(2), _dihedral(4))),
        ("Z2xQ8", lambda: direct_product(_z(2), _dicyclic(2))),
        ("Pauli", lambda: _P(["a", "x", "y"], ["a^4", "x^2", "y^2", "a x a^-1 x^-1", "a y a^-1 y^-1", "x y x y a^-2"])),
        ("(Z4xZ2):Z2", lambda: _P(["a", "b", "c"], ["a^4", "b^2", "c^2", "a b a^-1 b^-1", "b c b c", "c a c a^-1 b^-1"])),
    ],
    18: [
        ("D9", lambda: _dihedral(9)),
        ("Z3xS3", lambda: direct_product(_z(3), _s(3))),
        ("(Z3xZ3):Z2", lambda: _P(["a", "b", "s"], ["a^3", "b^3", "s^2", "a b a^-1 b^-1", "s a s a", "s b s b"])),
    ],
    20: [
        ("D10", lambda: _dihedral(10)),
        ("Dic5", lambda: _dicyclic(5)),
        ("F20", lambda: _semidirect_cyclic(5, 4, 2)),
    ],
    21: [("Z7:Z3", lambda: _semidirect_cyclic(7, 3, 2))],
    22: [("D11", lambda: _dihedral(11))],
    24: [
        ("Z3:Z8", lambda: _semidirect_cyclic(3, 8, 2)),
        ("SL(2,3)", lambda: _P(["s", "t"], ["s t s t s^-3", "s^3 t^-3"])),
        ("Dic6", lambda: _dicyclic(6)),
        ("Z4xS3", lambda: direct_product(_z(4), _s(3))),
        ("D12", lambda: _dihedral(12)),
        ("Z2xDic3", lambda: direct_product(_z(2), _dicyclic(3))),
        ("Z3:D4", lambda: _P(["a", "r", "s"], ["a^3", "r^4", "s^2", "s r s r", "r^-1 a r a", "s a s a^-1"])),
        ("Z3xD4", lambda: direct_product(_z(3), _dihedral(4))),
        ("Z3xQ8", lambda: direct_product(_z(3), _dicyclic(2))),
        ("S4", lambda: _s(4)),
        ("Z2xA4", lambda: direct_product(_z(2), _a4())),
        ("Z2xZ2xS3", lambda: direct_product(_z(2), direct_product(_z(2), _s(3)))),
    ],
}


@lru_cache(maxsize=None)
def nonabelian_catalogue(order: int) -> tuple[tuple[str, FiniteGroup], ...]:
    """Every nonabelian group of ``order`` (``order <= 24``), built from presentations."""
    return tuple((name, make()) for name, make in _NONABELIAN.get(order, []))


def signature(G: FiniteGroup) -> tuple:
    return (G.order, G.order_histogram(), abelian_invariants(G) if G.is_abelian() else None)


def identify_group(G: FiniteGroup) -> str:
    """A name when the signature is unambiguous, otherwise the signature itself."""
    if G.is_abelian():
        return _abelian_label(abelian_invariants(G))
    sig = signature(G)
    if G.order <= 24:
        hits = [name for name, H in nonabelian_catalogue(G.order) if signature(H) == sig]
        if len(hits) == 1 and sum(signature(H) == sig for _, H in nonabelian_catalogue(G.order)) == 1:
            return hits[0]
    hist = ", ".join(f"{o}:{c}" for o, c in G.order_histogram())
    return f"order-{G.order} group, order histogram ({hist})"
