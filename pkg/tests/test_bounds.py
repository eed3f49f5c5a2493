from __future__ import annotations

from fractions import Fraction

import pytest

from ramaudit.bounds import (
    Bound,
    CharacterConductorMultiset,
    OdlyzkoTables,
    character_root_disc,
    conductor_discriminant,
    extend_root_disc,
    finiteness_threshold,
    fontaine_bound,
    fontaine_local_cap,
    local_root_disc_increment,
    odlyzko_max_degree,
    root_discriminant,
    tame_root_disc_increment,
)
from ramaudit.enums import Mode
from ramaudit.exceptions import (
    DomainError,
    InconsistentDataError,
    UnnormalizedLabelError,
)
from ramaudit.radical import FactoredRadical, IdealLabel, compare_exponents

P2 = IdealLabel.from_value('P2', 2, 2)
P3 = IdealLabel.from_value('P3', 3, 2)


def R(text: str) -> FactoredRadical:
    return FactoredRadical.parse(text)


def r_over_m() -> CharacterConductorMultiset:
    return CharacterConductorMultiset(
        (
            (FactoredRadical({P2: 7, P3: 1}), 3),
            (FactoredRadical({P2: 8}), 3),
            (FactoredRadical({P2: 8, P3: 1}), 9),
            (FactoredRadical.one(), 1),
        ),
        degree=16,
    )


@pytest.mark.parametrize(
    'disc, degree, expected',
    [
        ('2:32,3:14', 16, '2:2,3:7/8'),
        ('3:62,2:100', 48, '2:100/48,3:62/48'),
        ('1', 7, '1'),
    ],
)
def test_root_discriminant(disc, degree, expected):
    assert root_discriminant(R(disc), degree) == R(expected)


def test_extend_root_disc():
    delta_M = R('2:16/12,3:14/12')
    assert extend_root_disc(delta_M, R('2:234,3:24'), 192) == R(
        '2:245/96,3:124/96'
    )
    assert extend_root_disc(delta_M, FactoredRadical.one(), 5) == delta_M
    with pytest.raises(UnnormalizedLabelError):
        extend_root_disc(delta_M, FactoredRadical({P2: 1}), 2)


@pytest.mark.parametrize(
    'p, i, ell, expected',
    [
        (2, '3/2', 3, '2:5/2,3:3/2'),
        (3, '1/2', 2, '2:2,3:3/2'),
        (7, 0, 2, '2:2,7:1'),
    ],
)
def test_fontaine_bound(p, i, ell, expected):
    bound = fontaine_bound(FactoredRadical.one(), p, i, ell)
    assert bound == Bound(R(expected), strict=True)


def test_fontaine_bound_domain():
    with pytest.raises(DomainError):
        fontaine_bound(FactoredRadical.one(), 3, 1, 3)
    with pytest.raises(DomainError):
        fontaine_bound(FactoredRadical.one(), 2, -2, 3)
    with pytest.raises(DomainError):
        fontaine_bound(FactoredRadical.one(), 4, 1, 3)


def test_fontaine_bound_increases():
    base = R('2:1,7:5/6')
    for p, ell in ((2, 3), (3, 2), (7, 2)):
        previous = fontaine_bound(base, p, -1, ell).value
        for i in (0, Fraction(1, 2), 1, Fraction(3, 2)):
            current = fontaine_bound(base, p, i, ell).value
            assert compare_exponents(current, previous)[p].value == 1
            previous = current


@pytest.mark.parametrize(
    'ell, n, e, expected',
    [(3, 1, 1, Fraction(1, 2)), (2, 1, 1, 1), (2, 2, 1, 2), (3, 1, 2, 2)],
)
def test_fontaine_local_cap(ell, n, e, expected):
    assert fontaine_local_cap(ell, n, e) == expected


@pytest.mark.parametrize(
    'delta, mode, cap',
    [
        ('2:5/2,3:3/2', Mode.GRH, 1200),
        ('2:2,3:3/2', Mode.UNCONDITIONAL, 900),
        ('2:102/48,3:64/48', Mode.GRH, 96),
        ('2:2,7:1', Mode.GRH, 700),
    ],
)
def test_odlyzko_checkpoints(tables, delta, mode, cap):
    assert odlyzko_max_degree(R(delta), mode, tables) == cap


def test_odlyzko_strictness(tables):
    # exactly B(24) = 1108/100 = 277/25 under GRH
    row = FactoredRadical({277: 1, 5: -2})
    assert odlyzko_max_degree(Bound(row, True), Mode.GRH, tables) == 24
    assert odlyzko_max_degree(Bound(row, False), Mode.GRH, tables) == 32


def test_odlyzko_beyond_the_table(tables):
    assert odlyzko_max_degree(R('2:6'), Mode.GRH, tables) is None


def test_odlyzko_monotone(tables):
    deltas = [R(f'2:{k}/12') for k in range(1, 60)]
    caps = [odlyzko_max_degree(d, Mode.GRH, tables) for d in deltas]
    known = [c for c in caps if c is not None]
    assert known == sorted(known)
    assert caps[-1] is None or caps[-1] == known[-1]


def test_table_rows_are_checked(tmp_path):
    path = tmp_path / 'table.txt'
    path.write_text('grh 1 100 100\ngrh 2 90 100\n', encoding='UTF-8')
    with pytest.raises(InconsistentDataError):
        OdlyzkoTables.from_file(path)
    path.write_text('grh one 1 1\n', encoding='UTF-8')
    with pytest.raises(InconsistentDataError, match='line 1'):
        OdlyzkoTables.from_file(path)


def test_finiteness_threshold():
    assert finiteness_threshold(Mode.UNCONDITIONAL) == 22
    assert finiteness_threshold(Mode.GRH) == 42


def test_conductor_discriminant():
    assert conductor_discriminant(r_over_m()) == FactoredRadical(
        {P2: 117, P3: 12}
    )
    trivial = CharacterConductorMultiset(((FactoredRadical.one(), 5),))
    assert conductor_discriminant(trivial) == 1
    c = FactoredRadical({P2: 10, P3: 1})
    pair = CharacterConductorMultiset(((c, 2),))
    assert conductor_discriminant(pair) == c**2


def test_multiset_degree_must_match():
    with pytest.raises(InconsistentDataError):
        CharacterConductorMultiset(((FactoredRadical.one(), 3),), degree=4)
    with pytest.raises(InconsistentDataError):
        CharacterConductorMultiset(((FactoredRadical.one(), 0),))


def test_r_over_m_exceeds_local_bound():
    delta_M = R('2:16/12,3:14/12')
    delta_R = character_root_disc(delta_M, r_over_m(), 16 * 12)
    assert delta_R == R('2:245/96,3:124/96')
    excess = compare_exponents(delta_R, R('2:5/2,3:3/2'))
    assert excess[2].value == 1


@pytest.mark.parametrize(
    'f, g, deg_K, e, expected',
    [
        (2, 1, 48, None, Fraction(2, 48)),
        (1, 1, 12, 1, 0),
        (1, 1, 12, 2, Fraction(1, 24)),
        (1, 1, 1, 30, Fraction(29, 30)),
    ],
)
def test_tame_root_disc_increment(f, g, deg_K, e, expected):
    assert tame_root_disc_increment(f, g, deg_K, e) == expected


def test_tame_increment_domain():
    with pytest.raises(DomainError):
        tame_root_disc_increment(3, 2, 4)


def test_local_increment_at_two():
    # inertia of order 4 and discriminant exponent 6 over Q(zeta_28)
    assert local_root_disc_increment(3, 2, 12, 6, 4) == Fraction(3, 4)
    tame = tame_root_disc_increment(2, 1, 16, 8)
    assert local_root_disc_increment(2, 1, 16, 7, 8) == tame
