from __future__ import annotations

import logging
import math
import typing as t
from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from pathlib import Path

import mpmath
from sympy import factorint, isprime

from .bounds import finiteness_threshold, fontaine_bound
from .enums import Asset, Mode, Ordering, RepCase
from .exceptions import (
    DomainError,
    InconsistentDataError,
    TableRegressionError,
    ThresholdExceeded,
)
from .radical import (
    FactoredRadical,
    RationalLike,
    format_rational,
    parse_rational,
    radical_approx,
    radical_cmp,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NewformRecord:
    label: str
    p: int
    n: int
    dim: int
    nebentypus_conductor_exponent: int
    case: RepCase
    a_chi: int = 0
    a_eps_chi: int = 0
    table_u: Fraction | None = None

    def __post_init__(self) -> None:
        if not isprime(self.p):
            raise DomainError(f'{self.label}: p = {self.p!r} is not prime')
        if self.n < 1 or self.dim < 1:
            raise DomainError(f'{self.label}: n and dim must be positive')
        exponents = (
            self.nebentypus_conductor_exponent,
            self.a_chi,
            self.a_eps_chi,
        )
        if min(exponents) < 0:
            raise DomainError(f'{self.label}: conductor exponents are >= 0')

    @property
    def level(self) -> int:
        return self.p**self.n

    @property
    def ell(self) -> int:
        return auxiliary_prime(self.p)


def auxiliary_prime(p: int) -> int:
    """The torsion prime used at p: 3 when p = 2, otherwise 2."""
    return 3 if p == 2 else 2


def newform_level_of_ram(r: NewformRecord) -> Fraction:
    if r.n < 2:
        raise DomainError(f'{r.label}: level exponent must be >= 2, got {r.n}')
    match r.case:
        case RepCase.IRREDUCIBLE:
            return Fraction(r.n, 2) - 1
        case RepCase.DECOMPOSABLE:
            if r.a_chi + r.a_eps_chi != r.n:
                raise InconsistentDataError(
                    f'{r.label}: a(chi) + a(eps chi) = '
                    f'{r.a_chi + r.a_eps_chi} but n = {r.n}'
                )
            return Fraction(r.n - min(r.a_chi, r.a_eps_chi) - 1)
        case RepCase.SPECIAL:
            return Fraction(max(r.a_chi - 1, 0))
    raise DomainError(f'Unknown local type {r.case!r}')


def level_exponent_bound(i: RationalLike | None, ramified: bool = True) -> int:
    """Largest level exponent n allowed by n <= 2(i+1)."""
    if not ramified:
        return 2
    if i is None:
        raise DomainError('A ramified bound needs a level')
    i = parse_rational(i)
    if i < 0:
        raise DomainError(f'Ramified level must be >= 0, got {i}')
    return math.floor(2 * (i + 1))


def _level_bound(p: int, ell: int, n: int) -> FactoredRadical:
    return fontaine_bound(
        FactoredRadical.one(), p, Fraction(n, 2) - 1, ell
    ).value


class LevelCutoff(t.NamedTuple):
    ell: int
    n_max: int
    admissible_level: Fraction
    first_excluded_level: Fraction
    cutoff: str

    def __str__(self) -> str:
        return (
            f'ell={self.ell} i<{self.cutoff} '
            f'[{format_rational(self.admissible_level)}, '
            f'{format_rational(self.first_excluded_level)}) '
            f'n_max={self.n_max}'
        )


def max_level_exponent(p: int, threshold: int | None = None) -> LevelCutoff:
    """Largest n with ell^(1+1/(ell-1)) * p^(n/2) below the GRH threshold."""
    if not isprime(p):
        raise DomainError(f'{p!r} is not prime')
    threshold = threshold or finiteness_threshold(Mode.GRH)
    ell = auxiliary_prime(p)
    n = 1
    while (
        radical_cmp(_level_bound(p, ell, n + 1), threshold) is Ordering.LESS
    ):
        n += 1
    if n < 2:
        raise ThresholdExceeded(
            f'p = {p}: the bound {_level_bound(p, ell, 2)} is not below '
            f'{threshold} even at level exponent 2'
        )
    with mpmath.workdps(30):
        local = mpmath.power(ell, 1 + mpmath.mpf(1) / (ell - 1))
        cutoff = mpmath.log(mpmath.mpf(threshold) / local, p) - 1
        display = mpmath.nstr(cutoff, 4, strip_zeros=False)
    return LevelCutoff(
        ell, n, Fraction(n, 2) - 1, Fraction(n + 1, 2) - 1, display
    )


def _parse_row(line: str) -> NewformRecord:
    label, level, dim, nebentypus, rep, u, min_a = line.split()
    ((p, n),) = factorint(int(level)).items()
    if nebentypus == '1':
        a_eps = 0
    else:
        ((q, a_eps),) = factorint(int(nebentypus)).items()
        if q != p:
            raise InconsistentDataError(
                f'{label}: nebentypus conductor {nebentypus} is not a power '
                f'of {p}'
            )
    case = RepCase(rep)
    a_chi = a_eps_chi = 0
    if case is RepCase.DECOMPOSABLE:
        a_chi = int(min_a)
        a_eps_chi = n - a_chi
    elif case is RepCase.SPECIAL:
        a_chi = int(min_a)
    return NewformRecord(
        label, p, n, int(dim), a_eps, case, a_chi, a_eps_chi, parse_rational(u)
    )


@cache
def load_newform_table(path: Path | None = None) -> tuple[NewformRecord, ...]:
    path = path or Asset.NEWFORM_TABLE.value
    records = []
    for number, line in enumerate(
        path.read_text(encoding='UTF-8').splitlines(), start=1
    ):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        try:
            records.append(_parse_row(line))
        except ValueError as e:
            raise InconsistentDataError(
                f'{path.name} line {number}: {line!r} ({e})'
            ) from e
    return tuple(records)


def classify_table(
    records: t.Iterable[NewformRecord] | None = None,
) -> list[tuple[str, Fraction]]:
    """Recomputes u for every row and compares it with the tabulated value."""
    result = []
    for record in records if records is not None else load_newform_table():
        u = newform_level_of_ram(record)
        if record.table_u is not None and u != record.table_u:
            raise TableRegressionError(
                f'{record.label}: computed u = {u}, table says {record.table_u}'
            )
        result.append((record.label, u))
    return result


def newform_bound(record: NewformRecord) -> FactoredRadical:
    """ell^(1+1/(ell-1)) * p^(u+1) for the record's level of ramification."""
    u = newform_level_of_ram(record)
    return fontaine_bound(FactoredRadical.one(), record.p, u, record.ell).value


# Fontaine bounds below the finiteness threshold but at or above this value
# only yield degree caps far beyond the published root-discriminant tables;
# the largest bound a worked newform needs is 3^(3/2) * 2^(5/2) ~ 29.39.
DEGREE_CAP_CEILING = 30


class Exclusion(t.NamedTuple):
    label: str
    reason: str
    below_threshold: bool = False

    def __str__(self) -> str:
        return f'{self.label}: {self.reason}'


def _exclusion(record: NewformRecord, mode: Mode) -> Exclusion | None:
    bound = newform_bound(record)
    threshold = finiteness_threshold(mode)
    approx = radical_approx(bound)
    if radical_cmp(bound, threshold) is not Ordering.LESS:
        return Exclusion(
            record.label, f'bound {approx} is not below {threshold}'
        )
    if radical_cmp(bound, DEGREE_CAP_CEILING) is not Ordering.LESS:
        return Exclusion(
            record.label,
            f'bound {approx} is below {threshold} but not below the '
            f'degree-cap ceiling {DEGREE_CAP_CEILING}',
            below_threshold=True,
        )
    return None


def surviving_newforms(
    mode: Mode = Mode.GRH,
    records: t.Iterable[NewformRecord] | None = None,
) -> list[str]:
    """Labels whose bound is below both the threshold and the ceiling."""
    survivors = []
    for record in records if records is not None else load_newform_table():
        if _exclusion(record, mode) is None:
            survivors.append(record.label)
    return survivors


def excluded_newforms(
    mode: Mode = Mode.GRH,
    records: t.Iterable[NewformRecord] | None = None,
) -> list[Exclusion]:
    result = []
    for record in records if records is not None else load_newform_table():
        exclusion = _exclusion(record, mode)
        if exclusion is not None:
            logger.debug('Excluded %s', exclusion)
            result.append(exclusion)
    return result
