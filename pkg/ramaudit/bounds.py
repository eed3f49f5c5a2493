from __future__ import annotations

import collections.abc as c
import logging
import typing as t
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from sympy import isprime

from .enums import Asset, Mode, Ordering
from .exceptions import (
    DomainError,
    InconsistentDataError,
    UnnormalizedLabelError,
)
from .radical import (
    FactoredRadical,
    RationalLike,
    normalize_ideal_labels,
    parse_rational,
    radical_cmp,
)

logger = logging.getLogger(__name__)

FINITENESS_THRESHOLD = {Mode.UNCONDITIONAL: 22, Mode.GRH: 42}


def finiteness_threshold(mode: Mode) -> int:
    """Root discriminant below which the maximal extension must be finite."""
    return FINITENESS_THRESHOLD[mode]


class Bound(t.NamedTuple):
    value: FactoredRadical
    strict: bool = True

    def __str__(self) -> str:
        return f'{"<" if self.strict else "<="} {self.value}'


class OdlyzkoRow(t.NamedTuple):
    degree: int
    bound: Fraction


@dataclass(frozen=True)
class OdlyzkoTable:
    mode: Mode
    rows: tuple[OdlyzkoRow, ...]

    def __post_init__(self) -> None:
        if not self.rows:
            raise InconsistentDataError(f'No rows for mode {self.mode.value}')
        for previous, row in zip(self.rows, self.rows[1:]):
            if row.degree <= previous.degree:
                raise InconsistentDataError(
                    f'{self.mode.value}: degrees must increase strictly, '
                    f'{previous.degree} then {row.degree}'
                )
            if row.bound < previous.bound:
                raise InconsistentDataError(
                    f'{self.mode.value}: B({row.degree}) < B({previous.degree})'
                )

    def __iter__(self) -> c.Iterator[OdlyzkoRow]:
        return iter(self.rows)


@dataclass(frozen=True)
class OdlyzkoTables(c.Mapping):
    tables: c.Mapping[Mode, OdlyzkoTable]
    source: Path | None = None

    def __post_init__(self) -> None:
        missing = [mode.value for mode in Mode if mode not in self.tables]
        if missing:
            raise InconsistentDataError(f'Odlyzko data lacks modes {missing}')

    def __getitem__(self, mode: Mode) -> OdlyzkoTable:
        return self.tables[mode]

    def __iter__(self) -> c.Iterator[Mode]:
        return iter(self.tables)

    def __len__(self) -> int:
        return len(self.tables)

    @staticmethod
    def parse_rows(text: str) -> dict[Mode, list[OdlyzkoRow]]:
        rows: dict[Mode, list[OdlyzkoRow]] = {}
        for number, line in enumerate(text.splitlines(), start=1):
            line = line.split('#', 1)[0].strip()
            if not line:
                continue
            try:
                mode, degree, numerator, denominator = line.split()
                row = OdlyzkoRow(
                    int(degree), Fraction(int(numerator), int(denominator))
                )
                rows.setdefault(Mode(mode.lower()), []).append(row)
            except (ValueError, ZeroDivisionError) as e:
                raise InconsistentDataError(
                    f'Odlyzko table line {number}: {line!r} ({e})'
                ) from e
        return rows

    @classmethod
    def from_file(cls, path: Path | str | None = None) -> t.Self:
        path = Path(path) if path is not None else Asset.ODLYZKO_TABLE.value
        rows = cls.parse_rows(path.read_text(encoding='UTF-8'))
        tables = {
            mode: OdlyzkoTable(mode, tuple(r)) for mode, r in rows.items()
        }
        logger.debug('Loaded Odlyzko rows from %s', path)
        return cls(tables, path)


def root_discriminant(disc: FactoredRadical, degree: int) -> FactoredRadical:
    return disc.root(degree)


def extend_root_disc(
    delta_K: FactoredRadical,
    rel_disc_norm: FactoredRadical,
    degree_L: int,
) -> FactoredRadical:
    """delta_L = delta_K * N(disc(L/K))^(1/[L:Q])."""
    if not rel_disc_norm.is_normalized:
        raise UnnormalizedLabelError(
            f'Relative discriminant {rel_disc_norm} still carries ideal labels'
        )
    return delta_K * rel_disc_norm.root(degree_L)


def _check_prime(p: int, name: str) -> None:
    if not isprime(p):
        raise DomainError(f'{name} = {p!r} is not prime')


def fontaine_bound(
    delta_K: FactoredRadical, p: int, i: RationalLike, ell: int
) -> Bound:
    """Strict bound delta_K * p^(1+i) * ell^(1+1/(ell-1)) on delta_L."""
    _check_prime(p, 'p')
    _check_prime(ell, 'ell')
    if p == ell:
        raise DomainError(f'p and ell must differ, both are {p}')
    i = parse_rational(i)
    if i < -1:
        raise DomainError(f'Level must be >= -1, got {i}')
    local = FactoredRadical({p: 1 + i, ell: 1 + Fraction(1, ell - 1)})
    return Bound(delta_K * local)


def fontaine_local_cap(ell: int, n: int, e: int) -> Fraction:
    """Level of ramification of a finite flat ell^n-torsion group scheme."""
    _check_prime(ell, 'ell')
    if n < 1 or e < 1:
        raise DomainError(f'n and e must be positive, got {n!r}, {e!r}')
    return e * (n + Fraction(1, ell - 1)) - 1


def odlyzko_max_degree(
    delta: FactoredRadical | Bound,
    mode: Mode,
    tables: OdlyzkoTables,
) -> int | None:
    """Smallest tabulated degree excluded by the root discriminant bound.

    Returns None when no tabulated B(n) reaches the bound.
    """
    if isinstance(delta, Bound):
        value, strict = delta.value, delta.strict
    else:
        value, strict = delta, True
    for row in tables[mode]:
        ordering = radical_cmp(value, row.bound)
        if ordering is Ordering.LESS or (
            strict and ordering is Ordering.EQUAL
        ):
            logger.debug('%s: B(%d) = %s excludes %s', mode, *row, value)
            return row.degree
    return None


@dataclass(frozen=True)
class CharacterConductorMultiset:
    """Characters of an abelian extension grouped by conductor."""

    entries: tuple[tuple[FactoredRadical, int], ...]
    degree: int | None = None

    def __post_init__(self) -> None:
        entries = tuple(self.entries)
        for conductor, multiplicity in entries:
            if multiplicity < 1:
                raise InconsistentDataError(
                    f'Multiplicity of {conductor} must be positive, '
                    f'got {multiplicity!r}'
                )
        if self.degree is not None and self.count != self.degree:
            raise InconsistentDataError(
                f'{self.count} characters for an extension of degree '
                f'{self.degree}'
            )
        object.__setattr__(self, 'entries', entries)

    @property
    def count(self) -> int:
        return sum(multiplicity for _, multiplicity in self.entries)


def conductor_discriminant(
    chars: CharacterConductorMultiset,
) -> FactoredRadical:
    result = FactoredRadical.one()
    for conductor, multiplicity in chars.entries:
        result *= conductor**multiplicity
    return result


def local_root_disc_increment(
    f: int, g: int, deg_K: int, disc_exponent: RationalLike, e_local: int
) -> Fraction:
    """Exponent of p gained in the root discriminant over K.

    Every prime of K above p has residue degree f; g of them ramify in
    local extensions of index e_local and discriminant exponent
    disc_exponent.
    """
    if min(f, g, deg_K, e_local) < 1:
        raise DomainError('f, g, deg_K and e_local must be positive')
    if f * g > deg_K:
        raise DomainError(f'f*g = {f * g} exceeds [K:Q] = {deg_K}')
    return Fraction(f * g, deg_K) * parse_rational(disc_exponent) / e_local


def tame_root_disc_increment(
    f: int, g: int, deg_K: int, e_prime: int | None = None
) -> Fraction:
    """(f*g/deg_K)(1 - 1/e'); e_prime None takes the supremum f*g/deg_K."""
    if e_prime is None:
        if f * g > deg_K or min(f, g, deg_K) < 1:
            raise DomainError(f'Invalid tame data f={f}, g={g}, [K:Q]={deg_K}')
        return Fraction(f * g, deg_K)
    return local_root_disc_increment(f, g, deg_K, e_prime - 1, e_prime)


def character_root_disc(
    delta_K: FactoredRadical,
    chars: CharacterConductorMultiset,
    degree_L: int,
) -> FactoredRadical:
    """Root discriminant of the abelian extension described by chars."""
    rel_disc = normalize_ideal_labels(conductor_discriminant(chars))
    return extend_root_disc(delta_K, rel_disc, degree_L)
