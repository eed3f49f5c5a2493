from __future__ import annotations

import random
from fractions import Fraction

import mpmath
import pytest
from sympy import primerange

from ramaudit.enums import Ordering
from ramaudit.exceptions import (
    DomainError,
    LabelConflictError,
    MissingResidueDataError,
    UnnormalizedLabelError,
)
from ramaudit.radical import (
    FactoredRadical,
    IdealLabel,
    compare_exponents,
    normalize_ideal_labels,
    parse_rational,
    radical_approx,
    radical_cmp,
    radical_mul,
    radical_root,
)

PI2 = IdealLabel.from_value('pi2', 2, 2)
PI3 = IdealLabel.from_value('pi3', 3, 1)
# divisors of 96, so every comparison clears at most the 96th power
DENOMINATORS = (1, 2, 3, 4, 6, 8, 12, 16, 24, 32, 48, 96)


def R(text: str) -> FactoredRadical:
    return FactoredRadical.parse(text)


@pytest.mark.parametrize(
    'value, expected',
    [
        ('245/96', Fraction(245, 96)),
        ('4/2', Fraction(2)),
        (' -3 / 6 ', Fraction(-1, 2)),
        (7, Fraction(7)),
    ],
)
def test_parse_rational(value, expected):
    assert parse_rational(value) == expected


@pytest.mark.parametrize('value', ['1/0', 'x', '1.5', True, None])
def test_parse_rational_rejects(value):
    with pytest.raises(DomainError):
        parse_rational(value)


def test_r_over_m_root_disc_product():
    delta_M = R('2:16/12,3:14/12')
    increment = R('2:117/96,3:12/96')
    assert radical_mul(delta_M, increment) == R('2:245/96,3:124/96')


def test_mul_identity_and_exponent_sum():
    x = R('2:5/2,3:3/2')
    assert x * FactoredRadical.one() == x
    assert R('2:1/2') * R('2:1/2') == R('2:1')


def test_zero_exponents_are_dropped():
    assert R('2:1/2') * R('2:-1/2') == FactoredRadical.one()
    assert len(R('2:0,3:1')) == 1


@pytest.mark.parametrize(
    'disc, n, expected',
    [
        ('2:32,3:14', 16, '2:2,3:7/8'),
        ('2:12,7:10', 12, '2:1,7:5/6'),
        ('1', 5, '1'),
    ],
)
def test_radical_root(disc, n, expected):
    assert radical_root(R(disc), n) == R(expected)


def test_root_of_zero_index():
    with pytest.raises(DomainError):
        radical_root(R('2:1'), 0)


def test_label_conflict():
    other = IdealLabel('pi2', 3, 1)
    with pytest.raises(LabelConflictError):
        FactoredRadical({PI2: 1, other: 1})


def test_rejects_composite_labels():
    with pytest.raises(DomainError):
        FactoredRadical({4: 1})


@pytest.mark.parametrize(
    'radical, bound, expected',
    [
        ('3:3/2,2:5/2', 42, Ordering.LESS),
        ('1', 1, Ordering.EQUAL),
        ('2:1/2', '1', Ordering.GREATER),
        ('2:2,7:1', 28, Ordering.EQUAL),
        ('2:2,3:3/2', '2079/100', Ordering.LESS),
    ],
)
def test_radical_cmp(radical, bound, expected):
    assert radical_cmp(R(radical), bound) is expected


def test_radical_cmp_against_radical():
    assert radical_cmp(R('2:245/96'), R('2:5/2')) is Ordering.GREATER


def test_zero_bound_with_negative_exponent():
    with pytest.raises(DomainError):
        radical_cmp(R('2:-1'), 0)


def test_cmp_needs_normalized_labels():
    with pytest.raises(UnnormalizedLabelError):
        radical_cmp(FactoredRadical({PI2: 1}), 2)


def test_compare_exponents_locates_the_excess():
    per_prime = compare_exponents(R('2:245/96,3:124/96'), R('2:5/2,3:3/2'))
    assert per_prime == {2: Ordering.GREATER, 3: Ordering.LESS}


@pytest.mark.parametrize(
    'radical, text',
    [('3:3/2,2:5/2', '29.39'), ('2:2,3:3/2', '20.78'), ('1', '1.000')],
)
def test_radical_approx(radical, text):
    assert radical_approx(R(radical)).text == text


def test_radical_approx_digits():
    with pytest.raises(DomainError):
        radical_approx(R('2:1'), 51)


def test_normalize_ideal_labels():
    assert normalize_ideal_labels(FactoredRadical({PI2: 117})) == R('2:234')
    assert normalize_ideal_labels(FactoredRadical({PI3: 12})) == R('3:12')
    assert normalize_ideal_labels(FactoredRadical({PI2: 0})) == 1


def test_normalize_needs_residue_data():
    with pytest.raises(MissingResidueDataError):
        normalize_ideal_labels(FactoredRadical({IdealLabel('q'): 1}))


def test_parse_resolves_registered_labels():
    value = FactoredRadical.parse('pi2:8,3:1', {'pi2': PI2})
    assert value.exponent(PI2) == 8
    assert str(value) == '3*pi2^8'
    with pytest.raises(MissingResidueDataError):
        FactoredRadical.parse('pi7:1')


def _random_radical(rng: random.Random) -> FactoredRadical:
    primes = list(primerange(2, 100))
    factors = {
        p: Fraction(rng.randint(-100, 200), rng.choice(DENOMINATORS))
        for p in rng.sample(primes, rng.randint(1, 3))
    }
    return FactoredRadical(factors)


def _decimal(a: FactoredRadical) -> mpmath.mpf:
    value = mpmath.mpf(1)
    for p, e in a.items():
        value *= mpmath.power(p, mpmath.mpf(e.numerator) / e.denominator)
    return value


def test_cmp_agrees_with_high_precision(rng):
    with mpmath.workdps(200):
        for _ in range(300):
            a = _random_radical(rng)
            bound = Fraction(rng.randint(1, 10**4), rng.randint(1, 100))
            value = _decimal(a)
            target = mpmath.mpf(bound.numerator) / bound.denominator
            expected = Ordering((value > target) - (value < target))
            assert radical_cmp(a, bound) is expected


def test_cmp_is_a_total_order(rng):
    samples = [_random_radical(rng) for _ in range(40)]
    for a in samples:
        for b in samples:
            forward, backward = radical_cmp(a, b), radical_cmp(b, a)
            assert forward.value == -backward.value
            assert (forward is Ordering.EQUAL) == (a == b)


def test_square_then_root(rng):
    for _ in range(200):
        a = _random_radical(rng)
        assert radical_root(radical_mul(a, a), 2) == a
