"""Topological data across a hyperconifold transition.

Smoothing a ``Z_n``-hyperconifold costs one complex-structure modulus and
resolving it adds ``n - 1`` exceptional divisors, so ``h11`` rises by
``n - 1``, ``h21`` drops by one and the Euler number rises by ``2n``. The
fundamental group ``G`` of the smooth quotient becomes ``G / N`` with ``N``
the normal closure of the elements fixing the singular point upstairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .classify import HyperconifoldClass
from .groups import FiniteGroup, identify_group, normal_closure, quotient_group
from .intersect import IntersectionTensor, triple_intersections
from .resolve import Resolution, _as_class, crepant_resolution, enumerate_crepant_resolutions


class DomainError(ValueError):
    """Input is well formed but violates a mathematical precondition."""


@dataclass(frozen=True)
class HodgeData:
    h11: int
    h21: int

    def __post_init__(self):
        if self.h11 < 0 or self.h21 < 0:
            raise ValueError("Hodge numbers must be nonnegative")

    @property
    def chi(self) -> int:
        return 2 * (self.h11 - self.h21)


def hodge_after(before: HodgeData, n: int) -> HodgeData:
    if n < 1:
        raise ValueError("n must be positive")
    if before.h21 == 0:
        raise DomainError("no modulus available to form the singularity")
    return HodgeData(before.h11 + n - 1, before.h21 - 1)


SYMBOLIC_STATEMENTS = (
    "d^_ijk = d_ijk for pulled-back ambient divisors i, j, k",
    "d^_ija = 0 for exceptional a",
    "d^_iab = 0 for exceptional a, b",
)


@dataclass(frozen=True)
class TransitionReport:
    cls: HyperconifoldClass
    before: HodgeData
    after: HodgeData
    group_before: FiniteGroup
    normal_subgroup: frozenset[int]
    group_after: FiniteGroup
    resolution: Resolution
    tensor: IntersectionTensor
    statements: tuple[str, ...] = SYMBOLIC_STATEMENTS

    @property
    def euler_change(self) -> int:
        return self.after.chi - self.before.chi

    @property
    def pi1_before(self) -> str:
        return identify_group(self.group_before)

    @property
    def pi1_after(self) -> str:
        return identify_group(self.group_after)


def default_resolution(c) -> Resolution:
    c = _as_class(c)
    if c.n == 1:
        return enumerate_crepant_resolutions(c)[0]
    return crepant_resolution(c)


def transition_report(
    c,
    before: HodgeData,
    group: FiniteGroup,
    seeds: Iterable[int],
    resolution: Resolution | None = None,
) -> TransitionReport:
    c = _as_class(c)
    if resolution is None:
        resolution = default_resolution(c)
    elif resolution.base != c:
        raise ValueError("resolution does not belong to the given class")
    after = hodge_after(before, c.n)
    N = normal_closure(group, seeds)
    Q = quotient_group(group, N)
    if Q.order * len(N) != group.order:
        raise RuntimeError("quotient order violates Lagrange")
    return TransitionReport(c, before, after, group, N, Q, resolution, triple_intersections(resolution))
