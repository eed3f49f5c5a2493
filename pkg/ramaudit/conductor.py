from __future__ import annotations

import logging
import typing as t
from dataclasses import dataclass
from fractions import Fraction

from .exceptions import DomainError, InconsistentDataError
from .filtration import FixedDimProfile, RamFiltration, u_max, wild_sum
from .radical import RationalLike, format_rational, parse_rational

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReductionData:
    """Local reduction type of an abelian variety of dimension g at p.

    u and t are the unipotent and toric ranks, delta the wild part of the
    conductor exponent.
    """

    u: int
    t: int
    delta: Fraction
    g: int
    declared_conductor: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, 'delta', parse_rational(self.delta))
        if self.g < 1:
            raise DomainError(f'Dimension must be positive, got {self.g!r}')
        if self.u < 0 or self.t < 0 or self.delta < 0:
            raise DomainError('u, t and delta must be non-negative')
        if self.u + self.t > self.g:
            raise InconsistentDataError(
                f'u + t = {self.u + self.t} exceeds g = {self.g}'
            )
        declared = self.declared_conductor
        if declared is not None and declared != self.conductor_exponent:
            raise InconsistentDataError(
                f'Declared conductor exponent {declared} differs from '
                f'2u + t + delta = {format_rational(self.conductor_exponent)}'
            )

    @property
    def conductor_exponent(self) -> Fraction:
        return 2 * self.u + self.t + self.delta

    @property
    def is_semistable(self) -> bool:
        return self.u == 0


def serre_delta(F: RamFiltration, P: FixedDimProfile) -> Fraction:
    """Wild conductor exponent of the ell-torsion with the given profile."""
    return wild_sum(F, P)


def conductor_exponent(d: ReductionData) -> Fraction:
    return d.conductor_exponent


class CaseConstraints(t.NamedTuple):
    u_positive: bool = False
    delta_zero: bool = False
    bounded_by_dimension: bool = False
    allow_rational_delta: bool = False


class CaseEnumeration(t.NamedTuple):
    """Integral cases only.

    rational_delta_admissible echoes the constraint: when set, delta may
    also take non-integral values that no listed case covers, so the list
    is not exhaustive.
    """

    cases: list[ReductionData]
    rational_delta_admissible: bool


def enumerate_cases(
    c: int, g: int, constraints: CaseConstraints = CaseConstraints()
) -> CaseEnumeration:
    """Every integral (u, t, delta) with 2u + t + delta = c, in lex order.

    Without bounded_by_dimension a case with u + t > g is still listed and
    carries the smallest dimension u + t that admits it.
    """
    if c < 0 or g < 1:
        raise DomainError(f'Need c >= 0 and g >= 1, got c={c!r}, g={g!r}')
    cases = []
    for u in range(c // 2 + 1):
        for t_rank in range(c - 2 * u + 1):
            delta = c - 2 * u - t_rank
            if constraints.u_positive and u == 0:
                continue
            if constraints.delta_zero and delta:
                continue
            if constraints.bounded_by_dimension and u + t_rank > g:
                continue
            cases.append(
                ReductionData(u, t_rank, Fraction(delta), max(g, u + t_rank))
            )
    logger.debug('%d cases with c=%d, g=%d', len(cases), c, g)
    return CaseEnumeration(cases, constraints.allow_rational_delta)


def wild_mass_level_bound(
    filtration: RamFiltration | None,
    min_codim: int,
    delta: RationalLike,
) -> Fraction:
    """Bound delta / min_codim on u_max, each wild step having that codim."""
    delta = parse_rational(delta)
    if min_codim < 1:
        raise DomainError(f'Codimension must be >= 1, got {min_codim!r}')
    if delta < 0:
        raise DomainError(f'delta must be non-negative, got {delta}')
    bound = delta / min_codim
    if filtration is not None:
        level = u_max(filtration)
        if level > bound:
            raise InconsistentDataError(
                f'u_max = {format_rational(level)} exceeds delta/codim = '
                f'{format_rational(bound)}'
            )
    return bound


def mestre_check(N: int, g: int) -> bool:
    """Whether the conductor N still allows a g-dimensional variety over Z."""
    if N < 1 or g < 1:
        raise DomainError(f'Need N >= 1 and g >= 1, got N={N!r}, g={g!r}')
    return N > 10**g
