from __future__ import annotations

import random

import pytest

from ramaudit.exceptions import (
    DomainError,
    IncompleteEnumerationError,
    InconsistentDataError,
)
from ramaudit.modrep import (
    S3_RELATIONS,
    ConjugacyClass,
    FiniteGroup,
    MatrixModule,
    SolvableCaps,
    conjugacy_data,
    degree_partition_check,
    embeddings_in_GL2,
    fact_sheet,
    fixed_space_dim,
    has_normal_subgroup,
    is_isomorphic,
    is_semisimple,
    is_semisimple_f2s3,
    normal_subgroup_orders,
    preset,
    quotient_isomorphic,
    sigma_decomposition_holds,
    solvable_subgroup_caps,
)
from ramaudit.modrep import linalg

SIGMA = ((0, 1), (1, 1))
SWAP = ((0, 1), (1, 0))
ONE = ((1, 0), (0, 1))


def f2s3_module(s, t) -> MatrixModule:
    return MatrixModule(2, len(s), {'s': s, 't': t}, S3_RELATIONS)


@pytest.mark.parametrize(
    'name, order',
    [
        ('C1', 1),
        ('C3', 3),
        ('S3', 6),
        ('D4', 8),
        ('D5', 10),
        ('A4', 12),
        ('A5', 60),
        ('SH16', 16),
        ('GL2_F2', 6),
        ('GL2_F3', 48),
    ],
)
def test_preset_orders(name, order):
    assert preset(name).order == order


def test_unknown_preset():
    with pytest.raises(DomainError, match='SH32'):
        preset('SH32')


def test_group_axioms_are_checked():
    with pytest.raises(InconsistentDataError, match='inverses'):
        FiniteGroup('bad', ('a', 'b'), ((0, 1), (1, 1)), (1,))
    with pytest.raises(InconsistentDataError, match='closed'):
        FiniteGroup('bad', ('a', 'b'), ((0, 1), (1, 2)), (1,))


@pytest.mark.parametrize(
    'name, expected',
    [
        ('SH16', [(1, 1), (1, 2), (4, 2), (2, 4), (4, 4), (2, 8), (2, 8)]),
        ('C3', [(1, 1), (1, 3), (1, 3)]),
        ('S3', [(1, 1), (3, 2), (2, 3)]),
    ],
)
def test_conjugacy_data(name, expected):
    assert conjugacy_data(preset(name)) == [
        ConjugacyClass(*x) for x in expected
    ]


@pytest.mark.parametrize(
    'name, char, expected',
    [
        ('SH16', 3, [1, 1, 1, 1, 2, 2, 2]),
        ('S3', 2, [1, 2]),
        ('C3', 2, [1, 2]),
    ],
)
def test_degree_partition(name, char, expected):
    assert degree_partition_check(preset(name), char) == expected


def test_sh16_degrees_square_sum():
    degrees = degree_partition_check(preset('SH16'), 3)
    assert sum(d * d for d in degrees) == 16


def test_degree_partition_beyond_dimension_two():
    with pytest.raises(IncompleteEnumerationError, match='A5'):
        degree_partition_check(preset('A5'), 2)


def test_sh16_in_gl2_f3():
    embeddings = embeddings_in_GL2(preset('SH16'), 3)
    assert embeddings
    for embedding in embeddings:
        assert embedding.traces[8] <= {1, -1}
    assert embeddings_in_GL2(preset('SH16'), 2) == []


def test_order_eight_traces_in_gl2_f3():
    G = preset('GL2_F3')
    traces = {
        linalg.symmetric_residue(linalg.trace(G.elements[x], 3), 3)
        for x in range(G.order)
        if G.element_order(x) == 8
    }
    assert traces == {1, -1}


def test_c3_in_gl2_f2():
    (embedding,) = embeddings_in_GL2(preset('C3'), 2)
    assert embedding.traces[3] == {1}
    with pytest.raises(DomainError):
        embeddings_in_GL2(preset('C3'), 5)


def test_quotients():
    SH16 = preset('SH16')
    assert quotient_isomorphic(SH16, [(4, 0)], preset('D4'))
    assert not quotient_isomorphic(SH16, [(4, 0)], preset('SH16'))
    assert quotient_isomorphic(SH16, [(1, 0), (0, 1)], preset('C1'))
    assert quotient_isomorphic(preset('S3'), [], preset('S3'))


def test_quotient_by_non_normal_subgroup():
    S3 = preset('S3')
    x = next(i for i in range(S3.order) if S3.element_order(i) == 2)
    with pytest.raises(InconsistentDataError, match='not normal'):
        quotient_isomorphic(S3, [S3.elements[x]], preset('C3'))


def test_gl2_f2_is_s3():
    assert is_isomorphic(preset('GL2_F2'), preset('S3'))
    assert not is_isomorphic(preset('C3'), preset('S3'))
    assert not is_isomorphic(preset('D4'), preset('SH16'))


@pytest.mark.parametrize(
    'name, caps',
    [('A5', (12, 5)), ('S3', (6, 3)), ('C3', (3, 3)), ('A4', (12, 3))],
)
def test_solvable_subgroup_caps(name, caps):
    assert solvable_subgroup_caps(preset(name)) == SolvableCaps(*caps)


@pytest.mark.parametrize(
    'name, order, cyclic, expected',
    [
        ('S3', 2, False, False),
        ('D5', 2, False, False),
        ('A4', 4, True, False),
        ('A4', 4, False, True),
        ('S3', 3, True, True),
        ('A5', 5, False, False),
    ],
)
def test_has_normal_subgroup(name, order, cyclic, expected):
    assert has_normal_subgroup(preset(name), order, cyclic) is expected


def test_normal_subgroup_orders():
    assert normal_subgroup_orders(preset('A5')) == [1, 60]
    assert normal_subgroup_orders(preset('A4')) == [1, 4, 12]


def test_dual_number_module_is_not_semisimple():
    # tau acts as multiplication by 1 + eps on F_2[eps]/eps^2
    M = f2s3_module(ONE, ((1, 0), (1, 1)))
    assert not is_semisimple_f2s3(M)
    assert sigma_decomposition_holds(M)


def test_irreducible_of_dimension_two():
    M = f2s3_module(SIGMA, SWAP)
    assert is_semisimple_f2s3(M)
    assert sigma_decomposition_holds(M)


def test_trivial_and_sum_modules():
    assert is_semisimple_f2s3(f2s3_module(((1,),), ((1,),)))
    s = linalg.direct_sum(SIGMA, ONE)
    t = linalg.direct_sum(SWAP, ONE)
    M = f2s3_module(s, t)
    assert is_semisimple(M)
    assert sigma_decomposition_holds(M)


def test_relations_are_checked():
    M = MatrixModule(2, 2, {'s': SIGMA, 't': ONE})
    with pytest.raises(InconsistentDataError, match='tst'):
        is_semisimple_f2s3(M)
    with pytest.raises(InconsistentDataError, match='tst'):
        f2s3_module(SIGMA, ONE)


def test_module_validation():
    with pytest.raises(DomainError):
        MatrixModule(5, 1, {'s': ((1,),)})
    with pytest.raises(InconsistentDataError, match='singular'):
        MatrixModule(2, 2, {'s': ((1, 1), (1, 1))})


@pytest.mark.parametrize(
    'generators, dim, expected, trivial',
    [
        ([SIGMA], 2, 0, False),
        ([linalg.direct_sum(SIGMA, ONE)], 4, 2, False),
        ([ONE], 2, 2, True),
    ],
)
def test_fixed_space_dim(generators, dim, expected, trivial):
    fixed = fixed_space_dim(generators, dim)
    assert fixed.dim == expected
    assert fixed.codim == dim - expected
    assert fixed.acts_trivially is trivial
    assert fixed.fixed_vectors == 2**expected


def test_fixed_space_needs_a_3_group():
    with pytest.raises(DomainError, match='3-group'):
        fixed_space_dim([SWAP], 2)
    with pytest.raises(DomainError):
        fixed_space_dim([((1,),)], 1)


def _random_invertible(rng: random.Random, n: int) -> linalg.Matrix:
    while True:
        a = linalg.matrix(
            [[rng.randint(0, 1) for _ in range(n)] for _ in range(n)], 2
        )
        if linalg.is_invertible(a, 2):
            return a


def _block_diagonal(blocks: list[linalg.Matrix]) -> linalg.Matrix:
    result = blocks[0]
    for block in blocks[1:]:
        result = linalg.direct_sum(result, block)
    return result


def _three_part(a: linalg.Matrix) -> linalg.Matrix:
    order = linalg.matrix_order(a, 2)
    while order % 3 == 0:
        order //= 3
    return linalg.mat_pow(a, order, 2)


def _sylow_word(rng: random.Random, d: int) -> linalg.Matrix:
    """Random element of C3 wr C3 (d = 3) or of C3^d (d < 3) in GL_2d(F_2)."""
    n = 2 * d
    letters = [
        _block_diagonal([SIGMA if i == j else ONE for j in range(d)])
        for i in range(d)
    ]
    if d == 3:
        # cyclic shift of the three blocks
        letters.append(
            tuple(
                tuple(int(j == (i - 2) % n) for j in range(n))
                for i in range(n)
            )
        )
    word = linalg.identity(n)
    for _ in range(rng.randint(1, 6)):
        word = linalg.mat_mul(word, rng.choice(letters), 2)
    return word


def _conjugate(
    a: linalg.Matrix, P: linalg.Matrix, P_inverse: linalg.Matrix
) -> linalg.Matrix:
    return linalg.mat_mul(linalg.mat_mul(P, a, 2), P_inverse, 2)


def _fixed_vector_count(generators: list[linalg.Matrix], n: int) -> int:
    count = 0
    for v in linalg.all_vectors(n, 2):
        if all(
            tuple(sum(x * y for x, y in zip(row, v)) % 2 for row in g) == v
            for g in generators
        ):
            count += 1
    return count


def _random_3_elements(rng: random.Random, d: int) -> list[linalg.Matrix]:
    n = 2 * d
    if rng.random() < 0.5:
        elements: list[linalg.Matrix] = []
        target = rng.randint(1, 2)
        while len(elements) < target:
            a = _three_part(_random_invertible(rng, n))
            if a != linalg.identity(n):
                elements.append(a)
        return elements
    P = _random_invertible(rng, n)
    P_inverse = linalg.inverse(P, 2)
    return [
        _conjugate(_sylow_word(rng, d), P, P_inverse)
        for _ in range(rng.randint(1, 2))
    ]


def test_random_3_groups(rng):
    checked = non_abelian = 0
    while checked < 500:
        d = rng.randint(1, 3)
        generators = _random_3_elements(rng, d)
        try:
            fixed = fixed_space_dim(generators, 2 * d)
        except DomainError as e:
            assert '3-group' in str(e)
            continue
        checked += 1
        if len(generators) == 2:
            a, b = generators
            non_abelian += linalg.mat_mul(a, b, 2) != linalg.mat_mul(b, a, 2)
        count = _fixed_vector_count(generators, 2 * d)
        assert fixed.fixed_vectors == count == 2**fixed.dim
        assert count % 3 == 1
        assert fixed.acts_trivially is (fixed.dim == 2 * d)
        if not fixed.acts_trivially:
            assert fixed.dim % 2 == 0
            assert fixed.dim < 2 * d
    assert non_abelian > 0


def test_row_reduce_and_nullspace():
    assert linalg.row_reduce([(1, 1), (1, 1)], 2) == ((1, 1),)
    assert linalg.row_reduce([(2, 1), (1, 2)], 3) == ((1, 2),)
    assert linalg.row_reduce([], 3) == ()
    assert linalg.nullspace(((1, 1), (1, 1)), 2) == [(1, 1)]
    assert linalg.nullspace((), 2, width=2) == [(1, 0), (0, 1)]
    assert linalg.rank(((1, 2), (2, 1)), 3) == 1
    assert linalg.rank(((1, 2), (2, 1)), 5) == 2


def test_inverse_and_order():
    assert linalg.mat_mul(linalg.inverse(SIGMA, 2), SIGMA, 2) == ONE
    a = linalg.matrix([[1, 1], [0, 1]], 3)
    assert linalg.inverse(a, 3) == ((1, 2), (0, 1))
    assert linalg.matrix_order(a, 3) == 3
    assert linalg.mat_pow(SIGMA, 3, 2) == ONE
    assert linalg.linear_combination([1, 1], [SIGMA, ONE], 2, 2) == (
        (1, 1),
        (1, 0),
    )


@pytest.mark.parametrize(
    'name, solvable', [('A4', True), ('S3', True), ('A5', False)]
)
def test_is_solvable(name, solvable):
    assert preset(name).is_solvable() is solvable


def test_permutation_group_matches_table():
    G = preset('SH16')
    assert G.permutation_group.order() == G.order
    for x in range(G.order):
        for y in range(G.order):
            assert (
                G.permutations[x] * G.permutations[y]
                == G.permutations[G.mul(x, y)]
            )
    assert len(G.subgroup_generated([G.identity])) == 1


def test_normality_within_a_subgroup():
    A4 = preset('A4')
    V4 = frozenset(
        x for x in range(A4.order) if A4.element_order(x) in (1, 2)
    )
    assert A4.is_normal(V4)
    x = next(iter(V4 - {A4.identity}))
    assert not A4.is_normal(A4.subgroup_generated([x]))
    assert A4.is_normal(A4.subgroup_generated([x]), within=V4)


def test_fact_sheet():
    lines = fact_sheet('S3')
    assert lines[0] == 'group S3 order=6'
    assert 'simple F_2-modules: degrees [1, 2]' in lines
    assert 'normal subgroup orders: [1, 3, 6]' in lines
