from __future__ import annotations

import collections.abc as c
import logging
import math
import typing as t
from dataclasses import dataclass
from fractions import Fraction

from .exceptions import DomainError, InconsistentDataError, InvariantViolation
from .radical import RationalLike, parse_rational

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RamFiltration:
    """Orders of the lower-numbering ramification groups G_0 >= G_1 >= ...

    Beyond the listed indices the groups are trivial.
    """

    orders: tuple[int, ...]
    total_group_order: int | None = None
    allow_trivial: bool = False

    def __post_init__(self) -> None:
        orders = tuple(self.orders)
        if not orders:
            raise DomainError('A filtration needs at least the order of G_0')
        if any(isinstance(g, bool) or g < 1 for g in orders):
            raise DomainError(f'Orders must be positive integers: {orders!r}')
        for current, following in zip(orders, orders[1:]):
            if current % following:
                raise InconsistentDataError(
                    f'Orders must form a divisibility chain: {orders!r}'
                )
        total = self.total_group_order
        if total is None:
            total = orders[0]
        if total % orders[0]:
            raise InconsistentDataError(
                f'#G_0 = {orders[0]} does not divide the group order {total}'
            )
        if total == 1 and not self.allow_trivial:
            raise DomainError('The trivial extension has no filtration')
        object.__setattr__(self, 'orders', orders)
        object.__setattr__(self, 'total_group_order', total)

    @classmethod
    def trivial(cls) -> t.Self:
        return cls((1,), 1, allow_trivial=True)

    @classmethod
    def tame(cls, e: int, total_group_order: int | None = None) -> t.Self:
        return cls((e,), total_group_order)

    @property
    def e(self) -> int:
        return self.orders[0]

    @property
    def is_unramified(self) -> bool:
        return self.orders[0] == 1

    def order(self, i: int) -> int:
        """#G_i with the convention G_{-1} = the whole group."""
        if i < 0:
            assert self.total_group_order is not None
            return self.total_group_order
        return self.orders[i] if i < len(self.orders) else 1


def _check_lower_bound(value: Fraction, name: str) -> None:
    if value < -1:
        raise DomainError(f'{name} must be >= -1, got {value}')


def herbrand_phi(F: RamFiltration, u: RationalLike) -> Fraction:
    u = parse_rational(u)
    _check_lower_bound(u, 'u')
    if u <= 0:
        return u
    k = math.ceil(u)
    head = sum(F.order(j) for j in range(1, k))
    return (head + (u - (k - 1)) * F.order(k)) / Fraction(F.e)


def herbrand_psi(F: RamFiltration, v: RationalLike) -> Fraction:
    v = parse_rational(v)
    _check_lower_bound(v, 'v')
    if v <= 0:
        return v
    reached = Fraction(0)
    for k in range(1, len(F.orders)):
        slope = Fraction(F.order(k), F.e)
        if reached + slope >= v:
            return (k - 1) + (v - reached) / slope
        reached += slope
    last = max(len(F.orders) - 1, 0)
    return last + (v - reached) * F.e


def i_max(F: RamFiltration) -> int:
    if F.is_unramified:
        return -1
    return max(i for i, g in enumerate(F.orders) if g > 1)


def u_max(F: RamFiltration) -> Fraction:
    return herbrand_phi(F, i_max(F))


def is_level(F: RamFiltration, i: RationalLike) -> bool:
    """Whether the extension is ramified of level i, that is u_max <= i."""
    i = parse_rational(i)
    _check_lower_bound(i, 'level')
    return u_max(F) <= i


def different_valuation(F: RamFiltration) -> Fraction:
    if F.is_unramified:
        logger.info('Unramified filtration %s: the different is trivial', F)
        return Fraction(0)
    e, i, u = F.e, i_max(F), u_max(F)
    from_level = u + 1 - Fraction(i + 1, e)
    from_orders = Fraction(sum(g - 1 for g in F.orders), e)
    if from_level != from_orders:
        raise InvariantViolation(
            f'Different of {F.orders!r}: {from_level} != {from_orders}'
        )
    return from_orders


def discriminant_valuation(F: RamFiltration, f: int) -> Fraction:
    if f < 1:
        raise DomainError(f'Residue degree must be positive, got {f!r}')
    return Fraction(f * sum(g - 1 for g in F.orders))


def level_bound_check(F: RamFiltration, f: int, i: RationalLike) -> bool:
    """True when F is of level i, after checking v(disc) < e*f*(i+1)."""
    i = parse_rational(i)
    if i < 0:
        raise DomainError(f'The discriminant bound needs i >= 0, got {i}')
    if not is_level(F, i):
        return False
    valuation = discriminant_valuation(F, f)
    bound = F.e * f * (i + 1)
    if not valuation < bound:
        raise InvariantViolation(
            f'Level {i} filtration {F.orders!r} has discriminant '
            f'{valuation} >= {bound}'
        )
    return True


@dataclass(frozen=True)
class FixedDimProfile:
    """Dimensions of the subspaces V^{G_i} fixed by the ramification groups."""

    dim_V: int
    fixed_dims: tuple[int, ...]

    def __post_init__(self) -> None:
        dims = tuple(self.fixed_dims)
        if self.dim_V < 1:
            raise DomainError(f'dim V must be positive, got {self.dim_V!r}')
        if not dims:
            raise DomainError('A profile needs at least d_0')
        bounded = [0, *dims, self.dim_V]
        if any(a > b for a, b in zip(bounded, bounded[1:])):
            raise InconsistentDataError(
                f'Fixed dimensions must increase within [0, {self.dim_V}]: '
                f'{dims!r}'
            )
        object.__setattr__(self, 'fixed_dims', dims)

    @classmethod
    def for_character(cls, F: RamFiltration) -> t.Self:
        """Profile of a one-dimensional character with filtration F."""
        return cls(1, tuple(0 if g > 1 else 1 for g in F.orders))

    def codim(self, i: int) -> int:
        return self.dim_V - self.fixed_dims[i]


def check_profile(F: RamFiltration, P: FixedDimProfile) -> None:
    if len(F.orders) != len(P.fixed_dims):
        raise InconsistentDataError(
            f'Profile {P.fixed_dims!r} does not match filtration {F.orders!r}'
        )
    for g, d in zip(F.orders, P.fixed_dims):
        if g == 1 and d != P.dim_V:
            raise InconsistentDataError(
                f'Trivial group must fix all of V, got {P.fixed_dims!r}'
            )


def wild_sum(F: RamFiltration, P: FixedDimProfile) -> Fraction:
    check_profile(F, P)
    total = Fraction(0)
    for i in range(1, len(F.orders)):
        total += Fraction(F.order(i), F.e) * P.codim(i)
    return total


def artin_exponent(F: RamFiltration, P: FixedDimProfile) -> Fraction:
    return P.codim(0) + wild_sum(F, P)


def herbrand_transitivity_check(
    F_LK: RamFiltration,
    F_LF: RamFiltration,
    F_FK: RamFiltration,
    samples: c.Iterable[RationalLike],
) -> bool:
    """Whether phi_{L/K} = phi_{F/K} o phi_{L/F} at every sample point."""
    for sample in samples:
        u = parse_rational(sample)
        direct = herbrand_phi(F_LK, u)
        composed = herbrand_phi(F_FK, herbrand_phi(F_LF, u))
        if direct != composed:
            logger.debug('phi mismatch at %s: %s != %s', u, direct, composed)
            return False
    return True


class LevelRule(t.NamedTuple):
    level: Fraction
    tame_hypothesis: Fraction

    def __str__(self) -> str:
        return (
            f'level {self.level} given L/F of level {self.tame_hypothesis}'
        )


def tame_compose_level(i: RationalLike) -> LevelRule:
    """A tame extension of a level-i extension is again of level i."""
    i = parse_rational(i)
    _check_lower_bound(i, 'level')
    return LevelRule(i, min(i, Fraction(0)))


def tower_level(F_top: RamFiltration, base_tame_e: int) -> Fraction:
    """Level over the bottom field of a tower whose lower step is tame."""
    if base_tame_e < 1:
        raise DomainError(f'Ramification index must be positive: {base_tame_e}')
    if base_tame_e == 1:
        return u_max(F_top)
    return herbrand_phi(RamFiltration.tame(base_tame_e), u_max(F_top))
