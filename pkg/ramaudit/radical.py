from __future__ import annotations

import collections.abc as c
import logging
import math
import re
import typing as t
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType

import mpmath
from sympy import isprime

from .enums import Ordering
from .exceptions import (
    DomainError,
    LabelConflictError,
    MissingResidueDataError,
    UnnormalizedLabelError,
)

logger = logging.getLogger(__name__)

Rational = Fraction
RationalLike = t.Union[Fraction, int, str]

_RATIONAL = re.compile(r'\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?')
_MAX_DIGITS = 50


def parse_rational(value: RationalLike) -> Fraction:
    """Parses ``'num/den'`` strings and integers into a reduced Fraction."""
    if isinstance(value, bool):
        raise DomainError(f'Expected a rational, got {value!r}')
    if isinstance(value, (Fraction, int)):
        return Fraction(value)
    if not isinstance(value, str):
        raise DomainError(f'Expected a rational, got {value!r}')
    match = _RATIONAL.fullmatch(value)
    if match is None:
        raise DomainError(f'Failed to parse rational from {value!r}')
    numerator, denominator = match.groups()
    if denominator is not None and int(denominator) == 0:
        raise DomainError(f'Zero denominator in {value!r}')
    return Fraction(int(numerator), int(denominator or 1))


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f'{value.numerator}/{value.denominator}'


class IdealLabel(t.NamedTuple):
    """An opaque prime-ideal name with its residue characteristic and degree."""

    name: str
    p: int | None = None
    f: int | None = None

    def __str__(self) -> str:
        return self.name

    @classmethod
    def from_value(cls, name: str, p: int, f: int) -> t.Self:
        if not name or name.isdigit():
            raise DomainError(f'Ideal label name must not be numeric: {name!r}')
        if not isprime(p):
            raise DomainError(f'Residue characteristic {p!r} is not prime')
        if f < 1:
            raise DomainError(f'Residue degree must be positive, got {f!r}')
        return cls(name, p, f)


Label = t.Union[int, IdealLabel]


def label_name(label: Label) -> str:
    return label.name if isinstance(label, IdealLabel) else str(label)


def _sort_key(label: Label) -> tuple[int, int, str]:
    if isinstance(label, IdealLabel):
        return (1, label.p or 0, label.name)
    return (0, label, '')


def _check_label(label: Label) -> Label:
    if isinstance(label, IdealLabel):
        return label
    if isinstance(label, bool) or not isinstance(label, int):
        raise DomainError(f'Unsupported prime label {label!r}')
    if not isprime(label):
        raise DomainError(f'Label {label!r} is not a rational prime')
    return label


def _check_names(labels: c.Iterable[Label]) -> None:
    seen: dict[str, Label] = {}
    for label in labels:
        name = label_name(label)
        other = seen.setdefault(name, label)
        if other != label:
            raise LabelConflictError(
                f'Label name {name!r} used for both {other!r} and {label!r}'
            )


@dataclass(frozen=True, eq=False)
class FactoredRadical(c.Mapping):
    """A finite product of prime labels raised to exact rational exponents."""

    factors: c.Mapping[Label, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        cleaned: dict[Label, Fraction] = {}
        for label, exponent in self.factors.items():
            label = _check_label(label)
            exponent = parse_rational(exponent)
            if exponent:
                cleaned[label] = exponent
        _check_names(cleaned)
        ordered = dict(sorted(cleaned.items(), key=lambda x: _sort_key(x[0])))
        object.__setattr__(self, 'factors', MappingProxyType(ordered))

    def __getitem__(self, label: Label) -> Fraction:
        return self.factors[label]

    def __iter__(self) -> c.Iterator[Label]:
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FactoredRadical):
            return dict(self.factors) == dict(other.factors)
        if isinstance(other, (int, Fraction)):
            return not self.factors and other == 1
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.factors.items()))

    def __mul__(self, other: FactoredRadical) -> FactoredRadical:
        return radical_mul(self, other)

    def __pow__(self, exponent: RationalLike) -> FactoredRadical:
        k = parse_rational(exponent)
        return FactoredRadical({p: e * k for p, e in self.factors.items()})

    def __str__(self) -> str:
        if not self.factors:
            return '1'
        parts = []
        for label, exponent in self.factors.items():
            if exponent == 1:
                parts.append(label_name(label))
            elif exponent.denominator == 1:
                parts.append(f'{label_name(label)}^{exponent.numerator}')
            else:
                parts.append(
                    f'{label_name(label)}^({format_rational(exponent)})'
                )
        return '*'.join(parts)

    @classmethod
    def one(cls) -> t.Self:
        return cls()

    @classmethod
    def parse(
        cls,
        text: str,
        labels: c.Mapping[str, IdealLabel] | None = None,
    ) -> t.Self:
        """Parses ``'2:5/2,3:3/2'``; non-numeric names resolve via labels."""
        factors: dict[Label, Fraction] = {}
        text = text.strip()
        if text in ('', '1'):
            return cls()
        for item in text.split(','):
            name, sep, exponent = item.partition(':')
            if not sep:
                raise DomainError(f'Expected label:exponent, got {item!r}')
            label = resolve_label(name.strip(), labels)
            factors[label] = factors.get(label, Fraction(0)) + parse_rational(
                exponent
            )
        return cls(factors)

    @property
    def is_normalized(self) -> bool:
        return not any(isinstance(label, IdealLabel) for label in self)

    def exponent(self, label: Label) -> Fraction:
        return self.factors.get(label, Fraction(0))

    def root(self, n: int) -> FactoredRadical:
        return radical_root(self, n)


def resolve_label(
    name: str, labels: c.Mapping[str, IdealLabel] | None = None
) -> Label:
    if name.isdigit():
        return _check_label(int(name))
    if labels is None or name not in labels:
        raise MissingResidueDataError(f'Unregistered ideal label {name!r}')
    return labels[name]


def radical_mul(a: FactoredRadical, b: FactoredRadical) -> FactoredRadical:
    factors = dict(a.factors)
    for label, exponent in b.factors.items():
        factors[label] = factors.get(label, Fraction(0)) + exponent
    return FactoredRadical(factors)


def radical_root(a: FactoredRadical, n: int) -> FactoredRadical:
    if n < 1:
        raise DomainError(f'Root index must be positive, got {n!r}')
    return FactoredRadical({p: e / n for p, e in a.factors.items()})


def _require_normalized(a: FactoredRadical) -> None:
    if not a.is_normalized:
        ideals = [label for label in a if isinstance(label, IdealLabel)]
        raise UnnormalizedLabelError(
            f'Ideal labels must be normalized first: {ideals!r}'
        )


def _integer_power(a: FactoredRadical, power: int) -> Fraction:
    numerator = denominator = 1
    for label, exponent in a.factors.items():
        assert isinstance(label, int)
        k = exponent * power
        assert k.denominator == 1
        if k > 0:
            numerator *= label ** int(k)
        else:
            denominator *= label ** int(-k)
    return Fraction(numerator, denominator)


def radical_cmp(
    a: FactoredRadical, bound: RationalLike | FactoredRadical
) -> Ordering:
    """Compares a radical with a positive rational or another radical exactly.

    Both sides are raised to the lcm of the exponent denominators, so the
    comparison happens between integers.
    """
    _require_normalized(a)
    if isinstance(bound, FactoredRadical):
        _require_normalized(bound)
        return radical_cmp(a * bound ** -1, 1)
    bound = parse_rational(bound)
    if bound < 0:
        raise DomainError(f'Bound must be non-negative, got {bound!r}')
    if bound == 0:
        if any(exponent < 0 for exponent in a.factors.values()):
            raise DomainError('Negative exponents cannot be compared with 0')
        return Ordering.GREATER
    power = math.lcm(1, *(e.denominator for e in a.factors.values()))
    logger.debug('Comparing %s with %s at power %d', a, bound, power)
    lhs = _integer_power(a, power)
    rhs = bound**power
    if lhs < rhs:
        return Ordering.LESS
    if lhs > rhs:
        return Ordering.GREATER
    return Ordering.EQUAL


def compare_exponents(
    a: FactoredRadical, b: FactoredRadical
) -> dict[Label, Ordering]:
    """Per-label comparison of the exponents of two radicals."""
    result = {}
    for label in sorted(set(a) | set(b), key=_sort_key):
        diff = a.exponent(label) - b.exponent(label)
        result[label] = Ordering((diff > 0) - (diff < 0))
    return result


class Approximation(t.NamedTuple):
    text: str
    radius: Fraction

    def __str__(self) -> str:
        return self.text


def radical_approx(a: FactoredRadical, digits: int = 4) -> Approximation:
    """Decimal display of a radical, for reports only."""
    if not 1 <= digits <= _MAX_DIGITS:
        raise DomainError(f'digits must lie in 1..{_MAX_DIGITS}, got {digits}')
    _require_normalized(a)
    with mpmath.workdps(digits + 20):
        value = mpmath.mpf(1)
        for label, exponent in a.factors.items():
            value *= mpmath.power(
                label, mpmath.mpf(exponent.numerator) / exponent.denominator
            )
        text = mpmath.nstr(value, digits, strip_zeros=False)
        magnitude = int(mpmath.floor(mpmath.log10(value)))
    radius = Fraction(1, 2) * Fraction(10) ** (magnitude - digits + 1)
    return Approximation(text, radius)


def normalize_ideal_labels(a: FactoredRadical) -> FactoredRadical:
    """Replaces every ideal label of residue data (p, f) by p^f."""
    factors: dict[Label, Fraction] = {}
    for label, exponent in a.factors.items():
        if isinstance(label, IdealLabel):
            if label.p is None or label.f is None:
                raise MissingResidueDataError(
                    f'Ideal label {label.name!r} carries no residue data'
                )
            prime, exponent = label.p, exponent * label.f
        else:
            prime = label
        factors[prime] = factors.get(prime, Fraction(0)) + exponent
    return FactoredRadical(factors)
