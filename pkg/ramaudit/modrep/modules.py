from __future__ import annotations

import collections.abc as c
import itertools
import logging
import typing as t
from collections import Counter
from dataclasses import dataclass
from functools import reduce

from sympy import multiplicity
from sympy.combinatorics import Permutation, PermutationGroup

from ..exceptions import (
    DomainError,
    IncompleteEnumerationError,
    InconsistentDataError,
    InvariantViolation,
)
from . import linalg
from .groups import FiniteGroup, extend_homomorphism
from .linalg import Matrix, Vector

logger = logging.getLogger(__name__)

Relation = tuple[str, str]

S3_RELATIONS: tuple[Relation, ...] = (('sss', ''), ('tt', ''), ('tst', 'ss'))
SH16_RELATIONS: tuple[Relation, ...] = (
    ('s' * 8, ''),
    ('tt', ''),
    ('st', 'tsss'),
)


def evaluate_word(
    word: str, images: c.Mapping[str, Matrix], p: int, dim: int
) -> Matrix:
    return reduce(
        lambda a, name: linalg.mat_mul(a, images[name], p),
        word,
        linalg.identity(dim),
    )


@dataclass(frozen=True)
class MatrixModule:
    """A representation over F_p given by matrices for named generators."""

    field_char: int
    dim: int
    generator_images: c.Mapping[str, Matrix]
    relations: tuple[Relation, ...] = ()

    def __post_init__(self) -> None:
        if self.field_char not in (2, 3):
            raise DomainError(f'Unsupported characteristic {self.field_char}')
        if not 1 <= self.dim <= 8:
            raise DomainError(f'Dimension must lie in 1..8, got {self.dim}')
        images = {
            name: linalg.matrix(image, self.field_char)
            for name, image in self.generator_images.items()
        }
        for name, image in images.items():
            if len(image) != self.dim or any(len(r) != self.dim for r in image):
                raise InconsistentDataError(
                    f'Image of {name!r} is not {self.dim}x{self.dim}'
                )
            if not linalg.is_invertible(image, self.field_char):
                raise InconsistentDataError(f'Image of {name!r} is singular')
        object.__setattr__(self, 'generator_images', images)
        self.check_relations(self.relations)

    @property
    def matrices(self) -> list[Matrix]:
        return list(self.generator_images.values())

    def check_relations(self, relations: c.Iterable[Relation]) -> None:
        for lhs, rhs in relations:
            unknown = set(lhs + rhs) - set(self.generator_images)
            if unknown:
                raise InconsistentDataError(
                    f'Relation {lhs}={rhs} uses unknown generators {unknown}'
                )
            left = evaluate_word(
                lhs, self.generator_images, self.field_char, self.dim
            )
            right = evaluate_word(
                rhs, self.generator_images, self.field_char, self.dim
            )
            if left != right:
                raise InconsistentDataError(
                    f'Generator images violate {lhs or "1"} = {rhs or "1"}'
                )

    def submodule(self, vectors: c.Iterable[Vector]) -> tuple[Vector, ...]:
        return submodule_generated(
            vectors, self.matrices, self.field_char, self.dim
        )


def submodule_generated(
    vectors: c.Iterable[Vector],
    matrices: c.Sequence[Matrix],
    p: int,
    dim: int,
) -> tuple[Vector, ...]:
    """Echelon basis of the smallest invariant subspace containing vectors."""
    basis = linalg.row_reduce(vectors, p)
    while True:
        images = [w for a in matrices for w in linalg.apply_to_all(a, basis, p)]
        grown = linalg.row_reduce([*basis, *images], p)
        if grown == basis:
            return basis
        basis = grown


def is_irreducible(matrices: c.Sequence[Matrix], p: int, dim: int) -> bool:
    for v in linalg.all_vectors(dim, p):
        if any(v) and len(submodule_generated([v], matrices, p, dim)) < dim:
            return False
    return True


def submodules(M: MatrixModule) -> set[tuple[Vector, ...]]:
    """Every invariant subspace, as sums of cyclic submodules."""
    p, dim = M.field_char, M.dim
    cyclic = {M.submodule([v]) for v in linalg.all_vectors(dim, p) if any(v)}
    found: set[tuple[Vector, ...]] = {()}
    frontier: set[tuple[Vector, ...]] = {()}
    while frontier:
        new = set()
        for W in frontier:
            for C in cyclic:
                S = linalg.row_reduce([*W, *C], p)
                if S not in found:
                    new.add(S)
        found |= new
        frontier = new
    return found


def is_semisimple(M: MatrixModule) -> bool:
    """Whether every submodule has an invariant complement."""
    subs = submodules(M)
    for W in subs:
        if not any(
            len(W) + len(X) == M.dim
            and linalg.rank([*W, *X], M.field_char) == M.dim
            for X in subs
        ):
            logger.debug('Submodule %s has no complement', W)
            return False
    return True


def is_semisimple_f2s3(M: MatrixModule) -> bool:
    if M.field_char != 2 or set(M.generator_images) != {'s', 't'}:
        raise InconsistentDataError('Expected an F_2[S_3]-module on s and t')
    if M.dim > 6:
        raise DomainError(f'Dimension {M.dim} is too large')
    M.check_relations(S3_RELATIONS)
    return is_semisimple(M)


def sigma_decomposition_holds(M: MatrixModule) -> bool:
    """Checks T = T/(s-1)T x T/(s^2+s+1)T by dimension count."""
    p, dim = M.field_char, M.dim
    sigma, one = M.generator_images['s'], linalg.identity(dim)
    minus_one = linalg.mat_sub(sigma, one, p)
    norm = linalg.mat_add(
        linalg.mat_add(linalg.mat_mul(sigma, sigma, p), sigma, p), one, p
    )
    quotient_dims = [dim - linalg.rank(a, p) for a in (minus_one, norm)]
    return sum(quotient_dims) == dim


def intertwiners(
    A: c.Sequence[Matrix], B: c.Sequence[Matrix], p: int
) -> list[Matrix]:
    """Basis of the matrices P with P a = b P for all paired generators."""
    d = len(A[0]) if A else 1
    equations = []
    for a, b in zip(A, B):
        # coefficient of P[k][l] in (P a - b P)[i][j]
        for i, j in itertools.product(range(d), repeat=2):
            row = [0] * (d * d)
            for k in range(d):
                row[i * d + k] += a[k][j]
                row[k * d + j] -= b[i][k]
            equations.append(tuple(x % p for x in row))
    basis = linalg.nullspace(tuple(equations), p, width=d * d)
    return [
        tuple(tuple(v[i * d : (i + 1) * d]) for i in range(d)) for v in basis
    ]


def are_isomorphic(
    A: c.Sequence[Matrix], B: c.Sequence[Matrix], p: int
) -> bool:
    basis = intertwiners(A, B, p)
    d = len(A[0]) if A else 1
    for coefficients in itertools.product(range(p), repeat=len(basis)):
        P = linalg.linear_combination(coefficients, basis, p, d)
        if linalg.is_invertible(P, p):
            return True
    return False


def representations(
    G: FiniteGroup, p: int, dim: int
) -> t.Iterator[dict[int, Matrix]]:
    """All homomorphisms G -> GL_dim(F_p), as element-indexed images."""
    gl = linalg.general_linear(dim, p)
    candidates = [
        [
            a for a in gl
            if linalg.mat_pow(a, G.element_order(g), p) == linalg.identity(dim)
        ]
        for g in G.generators
    ]
    for images in itertools.product(*candidates):
        mapping = extend_homomorphism(
            G.generators,
            G.mul,
            G.identity,
            images,
            lambda a, b: linalg.mat_mul(a, b, p),
            linalg.identity(dim),
        )
        if mapping is not None:
            yield mapping


def regular_class_count(G: FiniteGroup, p: int) -> int:
    """Number of p-regular classes up to x ~ x^p, i.e. simple F_p[G]-modules."""
    classes = G.conjugacy_classes()
    owner = {x: i for i, cls in enumerate(classes) for x in cls}
    regular = [
        i for i, cls in enumerate(classes) if G.element_order(min(cls)) % p
    ]
    parent = {i: i for i in regular}

    def find(i: int) -> int:
        while parent[i] != i:
            i = parent[i]
        return i

    for i in regular:
        j = owner[G.power(min(classes[i]), p)]
        parent[find(i)] = find(j)
    return len({find(i) for i in regular})


class IrreducibleModule(t.NamedTuple):
    dim: int
    images: tuple[Matrix, ...]


def irreducible_modules(
    G: FiniteGroup, p: int, max_dim: int = 2
) -> list[IrreducibleModule]:
    found: list[IrreducibleModule] = []
    for dim in range(1, max_dim + 1):
        for mapping in representations(G, p, dim):
            images = tuple(mapping[g] for g in G.generators)
            if not is_irreducible(images, p, dim):
                continue
            if any(
                m.dim == dim and are_isomorphic(m.images, images, p)
                for m in found
            ):
                continue
            found.append(IrreducibleModule(dim, images))
    return found


def degree_partition_check(
    G: FiniteGroup, char: int, max_dim: int = 2
) -> list[int]:
    """Degrees of the simple F_char[G]-modules, by exhaustive search."""
    modules = irreducible_modules(G, char, max_dim)
    expected = regular_class_count(G, char)
    if len(modules) != expected:
        raise IncompleteEnumerationError(
            f'{G.name} over F_{char}: found {len(modules)} simple modules up '
            f'to dimension {max_dim}, expected {expected}'
        )
    return sorted(m.dim for m in modules)


class Embedding(t.NamedTuple):
    images: tuple[Matrix, ...]
    traces: dict[int, frozenset[int]]


def embeddings_in_GL2(G: FiniteGroup, q: int) -> list[Embedding]:
    """Faithful representations G -> GL_2(F_q) up to conjugation."""
    if q not in (2, 3):
        raise DomainError(f'Unsupported field size {q}')
    if G.order > len(linalg.general_linear(2, q)):
        return []
    found: list[Embedding] = []
    for mapping in representations(G, q, 2):
        if len(set(mapping.values())) != G.order:
            continue
        images = tuple(mapping[g] for g in G.generators)
        if any(are_isomorphic(e.images, images, q) for e in found):
            continue
        traces: dict[int, set[int]] = {}
        for x, image in mapping.items():
            traces.setdefault(G.element_order(x), set()).add(
                linalg.symmetric_residue(linalg.trace(image, q), q)
            )
        found.append(
            Embedding(
                images,
                {k: frozenset(v) for k, v in sorted(traces.items())},
            )
        )
    return found


class FixedSpace(t.NamedTuple):
    dim: int
    ambient_dim: int
    acts_trivially: bool
    fixed_vectors: int

    @property
    def codim(self) -> int:
        return self.ambient_dim - self.dim


def fixed_space_dim(generators: c.Sequence[Matrix], dim: int) -> FixedSpace:
    """Fixed subspace of a 3-group acting on F_2^dim."""
    p = 2
    if dim < 1 or dim % 2:
        raise DomainError(f'Expected an even dimension 2d, got {dim}')
    matrices = [linalg.matrix(g, p) for g in generators]
    if any(len(g) != dim or not linalg.is_invertible(g, p) for g in matrices):
        raise DomainError(f'Generators must be invertible {dim}x{dim} matrices')
    vectors = list(linalg.all_vectors(dim, p))
    index = {v: i for i, v in enumerate(vectors)}
    # the action on all of F_2^dim is faithful
    group = PermutationGroup(
        [
            Permutation([index[w] for w in linalg.apply_to_all(g, vectors, p)])
            for g in matrices
        ]
    )
    order = group.order()
    if 3 ** multiplicity(3, order) != order:
        raise DomainError(f'Generated group of order {order} is no 3-group')
    one = linalg.identity(dim)
    equations = tuple(
        row for g in matrices for row in linalg.mat_sub(g, one, p)
    )
    fixed_dim = len(linalg.nullspace(equations, p, width=dim))
    orbits = Counter(len(orbit) for orbit in group.orbits())
    fixed_vectors = orbits[1]
    logger.debug('Orbit sizes %s under a group of order %d', orbits, order)
    if fixed_vectors != p**fixed_dim or fixed_vectors % 3 != 1:
        raise InvariantViolation(
            f'{fixed_vectors} fixed vectors for a fixed space of dimension '
            f'{fixed_dim}'
        )
    acts_trivially = all(g == one for g in matrices)
    if acts_trivially:
        logger.warning('The group acts trivially on F_2^%d', dim)
    elif fixed_dim % 2 or fixed_dim >= dim:
        raise InvariantViolation(
            f'Fixed space of dimension {fixed_dim} in F_2^{dim}'
        )
    return FixedSpace(fixed_dim, dim, acts_trivially, fixed_vectors)
