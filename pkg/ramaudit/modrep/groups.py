from __future__ import annotations

import collections.abc as c
import itertools
import logging
import operator
import typing as t
from collections import deque
from dataclasses import dataclass, field
from functools import cache, cached_property

from sympy.combinatorics import Permutation, PermutationGroup
from sympy.combinatorics.named_groups import (
    AlternatingGroup,
    CyclicGroup,
    DihedralGroup,
    SymmetricGroup,
)

from ..exceptions import DomainError, InconsistentDataError
from . import linalg

logger = logging.getLogger(__name__)

Element = t.Hashable
Subgroup = frozenset[int]


def extend_homomorphism(
    generators: c.Sequence[int],
    mul: c.Callable[[int, int], int],
    identity: int,
    images: c.Sequence[t.Any],
    target_mul: c.Callable[[t.Any, t.Any], t.Any],
    target_identity: t.Any,
) -> dict[int, t.Any] | None:
    """Extends generator images along the Cayley graph.

    Returns None when the images do not define a homomorphism.
    """
    result = {identity: target_identity}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g, image in zip(generators, images):
            y = mul(x, g)
            value = target_mul(result[x], image)
            known = result.get(y)
            if known is None:
                result[y] = value
                queue.append(y)
            elif known != value:
                return None
    return result


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group given by its elements and full multiplication table."""

    name: str
    elements: tuple[Element, ...]
    table: tuple[tuple[int, ...], ...]
    generators: tuple[int, ...]
    generator_names: tuple[str, ...] = ()
    _index: dict[Element, int] = field(init=False, repr=False)
    _identity: int = field(init=False, repr=False)

    def __post_init__(self) -> None:
        n = len(self.elements)
        object.__setattr__(
            self, '_index', {x: i for i, x in enumerate(self.elements)}
        )
        if len(self._index) != n:
            raise InconsistentDataError(f'{self.name}: repeated elements')
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise InconsistentDataError(f'{self.name}: table is not {n}x{n}')
        if any(not 0 <= x < n for row in self.table for x in row):
            raise InconsistentDataError(f'{self.name}: table is not closed')
        identities = [
            e for e in range(n)
            if all(self.table[e][x] == x == self.table[x][e] for x in range(n))
        ]
        if len(identities) != 1:
            raise InconsistentDataError(f'{self.name}: no unique identity')
        e = identities[0]
        object.__setattr__(self, '_identity', e)
        if any(e not in row for row in self.table):
            raise InconsistentDataError(f'{self.name}: missing inverses')
        for x, y, z in itertools.product(range(n), repeat=3):
            left, right = self.table[x][y], self.table[y][z]
            if self.table[left][z] != self.table[x][right]:
                raise InconsistentDataError(
                    f'{self.name}: not associative at {x}, {y}, {z}'
                )
        if len(self._closure(self.generators)) != n:
            raise InconsistentDataError(
                f'{self.name}: generators do not generate the group'
            )

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f'FiniteGroup({self.name!r}, order={self.order})'

    @classmethod
    def from_generators(
        cls,
        name: str,
        generators: c.Sequence[Element],
        mul: c.Callable[[t.Any, t.Any], t.Any],
        identity: Element,
        generator_names: c.Sequence[str] = (),
        limit: int = 10**4,
    ) -> t.Self:
        elements = [identity]
        index = {identity: 0}
        queue = deque([identity])
        while queue:
            x = queue.popleft()
            for g in generators:
                y = mul(x, g)
                if y not in index:
                    if len(elements) >= limit:
                        raise DomainError(
                            f'{name}: group order exceeds {limit}'
                        )
                    index[y] = len(elements)
                    elements.append(y)
                    queue.append(y)
        table = tuple(
            tuple(index[mul(x, y)] for y in elements) for x in elements
        )
        return cls(
            name,
            tuple(elements),
            table,
            tuple(index[g] for g in generators),
            tuple(generator_names),
        )

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> int:
        return self._identity

    def index_of(self, element: Element) -> int:
        return self._index[element]

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    @cached_property
    def permutations(self) -> tuple[Permutation, ...]:
        """Faithful permutation images, indexed like ``elements``.

        Permutation presets keep their own permutations; any other group
        acts on itself by right multiplication.
        """
        if all(isinstance(x, Permutation) for x in self.elements):
            return t.cast(tuple[Permutation, ...], self.elements)
        n = self.order
        return tuple(
            Permutation([self.table[i][x] for i in range(n)]) for x in range(n)
        )

    @cached_property
    def _permutation_index(self) -> dict[Permutation, int]:
        return {perm: i for i, perm in enumerate(self.permutations)}

    @cached_property
    def permutation_group(self) -> PermutationGroup:
        return self.subgroup_group(self.generators)

    def subgroup_group(self, generators: c.Iterable[int]) -> PermutationGroup:
        perms = [self.permutations[x] for x in generators]
        return PermutationGroup(perms or [self.permutations[self.identity]])

    def power(self, x: int, k: int) -> int:
        return self._permutation_index[self.permutations[x] ** k]

    def element_order(self, x: int) -> int:
        return int(self.permutations[x].order())

    def subgroup_generated(self, generators: c.Iterable[int]) -> Subgroup:
        index = self._permutation_index
        return frozenset(
            index[x] for x in self.subgroup_group(generators).generate()
        )

    def _closure(self, generators: c.Iterable[int]) -> Subgroup:
        generators = tuple(generators)
        seen = {self.identity}
        queue = deque([self.identity])
        while queue:
            x = queue.popleft()
            for g in generators:
                y = self.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    def is_normal(self, H: Subgroup, within: Subgroup | None = None) -> bool:
        ambient = (
            self.permutation_group
            if within is None
            else self.subgroup_group(within)
        )
        return bool(self.subgroup_group(H).is_normal(ambient))

    def is_solvable(self, H: Subgroup | None = None) -> bool:
        group = self.permutation_group if H is None else self.subgroup_group(H)
        return bool(group.is_solvable)

    def conjugacy_classes(self) -> list[frozenset[int]]:
        index = self._permutation_index
        return [
            frozenset(index[x] for x in cls)
            for cls in self.permutation_group.conjugacy_classes()
        ]

    def all_subgroups(self) -> list[Subgroup]:
        """Every subgroup, found by repeatedly adjoining single elements."""
        generating: dict[Subgroup, tuple[int, ...]] = {}
        frontier = []
        for x in range(self.order):
            H = self._closure([x])
            if H not in generating:
                generating[H] = (x,)
                frontier.append(H)
        while frontier:
            new = []
            for H in frontier:
                for x in range(self.order):
                    if x in H:
                        continue
                    gens = generating[H] + (x,)
                    K = self._closure(gens)
                    if K not in generating:
                        generating[K] = gens
                        new.append(K)
            frontier = new
        logger.debug('%s has %d subgroups', self.name, len(generating))
        return sorted(generating, key=lambda H: (len(H), sorted(H)))

    def quotient(self, N: Subgroup) -> FiniteGroup:
        if not self.is_normal(N):
            raise InconsistentDataError(
                f'Subgroup of order {len(N)} is not normal in {self.name}'
            )
        cosets = {
            x: frozenset(self.mul(x, n) for n in N) for x in range(self.order)
        }

        def coset_mul(a: frozenset[int], b: frozenset[int]) -> frozenset[int]:
            return cosets[self.mul(min(a), min(b))]

        return FiniteGroup.from_generators(
            f'{self.name}/N{len(N)}',
            list(dict.fromkeys(cosets[g] for g in self.generators)),
            coset_mul,
            cosets[self.identity],
        )


def order_profile(G: FiniteGroup) -> list[int]:
    return sorted(G.element_order(x) for x in range(G.order))


def is_isomorphic(A: FiniteGroup, B: FiniteGroup) -> bool:
    if A.order != B.order or order_profile(A) != order_profile(B):
        return False
    gens = [g for g in A.generators if g != A.identity]
    candidates = [
        [y for y in range(B.order)
         if B.element_order(y) == A.element_order(g)]
        for g in gens
    ]
    for images in itertools.product(*candidates):
        mapping = extend_homomorphism(
            gens, A.mul, A.identity, images, B.mul, B.identity
        )
        if mapping is not None and len(set(mapping.values())) == B.order:
            return True
    return False


def _from_permutations(name: str, group: t.Any, names: str = '') -> FiniteGroup:
    generators = list(group.generators)
    identity = generators[0] * ~generators[0]
    return FiniteGroup.from_generators(
        name, generators, operator.mul, identity, tuple(names)
    )


def _semihedral16() -> FiniteGroup:
    # s^a t^b with t s t = s^3
    def mul(x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
        (a, b), (a2, b2) = x, y
        return ((a + a2 * 3**b) % 8, (b + b2) % 2)

    return FiniteGroup.from_generators(
        'SH16', [(1, 0), (0, 1)], mul, (0, 0), ('s', 't')
    )


def _general_linear(p: int) -> FiniteGroup:
    generators = [
        linalg.matrix([[1, 1], [0, 1]], p),
        linalg.matrix([[0, 1], [1, 0]], p),
    ]
    if p > 2:
        generators.append(linalg.matrix([[p - 1, 0], [0, 1]], p))

    def mul(a: linalg.Matrix, b: linalg.Matrix) -> linalg.Matrix:
        return linalg.mat_mul(a, b, p)

    return FiniteGroup.from_generators(
        f'GL2_F{p}', generators, mul, linalg.identity(2)
    )


def _trivial() -> FiniteGroup:
    return FiniteGroup('C1', ('e',), ((0,),), ())


_PRESETS: dict[str, c.Callable[[], FiniteGroup]] = {
    'C1': _trivial,
    'C3': lambda: _from_permutations('C3', CyclicGroup(3), 's'),
    'S3': lambda: _from_permutations('S3', SymmetricGroup(3), 'st'),
    'D4': lambda: _from_permutations('D4', DihedralGroup(4), 'rs'),
    'D5': lambda: _from_permutations('D5', DihedralGroup(5), 'rs'),
    'A4': lambda: _from_permutations('A4', AlternatingGroup(4)),
    'A5': lambda: _from_permutations('A5', AlternatingGroup(5)),
    'SH16': _semihedral16,
    'GL2_F2': lambda: _general_linear(2),
    'GL2_F3': lambda: _general_linear(3),
}

PRESET_NAMES = tuple(_PRESETS)


@cache
def preset(name: str) -> FiniteGroup:
    try:
        builder = _PRESETS[name]
    except KeyError:
        raise DomainError(
            f'Unknown group preset {name!r}, expected one of {PRESET_NAMES}'
        ) from None
    return builder()


class ConjugacyClass(t.NamedTuple):
    size: int
    order: int


def conjugacy_data(G: FiniteGroup) -> list[ConjugacyClass]:
    if G.order > 10**4:
        raise DomainError(f'{G.name} is too large for brute force')
    data = [
        ConjugacyClass(len(cls), G.element_order(min(cls)))
        for cls in G.conjugacy_classes()
    ]
    return sorted(data, key=lambda x: (x.order, x.size))


def quotient_isomorphic(
    G: FiniteGroup, kernel: c.Iterable[Element], target: FiniteGroup
) -> bool:
    """Whether G modulo the normal subgroup generated by kernel is target."""
    N = G.subgroup_generated(G.index_of(x) for x in kernel)
    Q = G.quotient(N)
    if Q.order > 64:
        raise DomainError(f'Quotient of order {Q.order} is too large')
    return is_isomorphic(Q, target)


class SolvableCaps(t.NamedTuple):
    max_solvable_order: int
    max_normal_cyclic_order: int


def solvable_subgroup_caps(G: FiniteGroup) -> SolvableCaps:
    if G.order > 120:
        raise DomainError(f'{G.name} is too large for subgroup enumeration')
    solvable_order = cyclic_order = 1
    for H in G.all_subgroups():
        if not G.is_solvable(H):
            continue
        P = G.subgroup_group(H)
        solvable_order = max(solvable_order, len(H))
        for h in H:
            if G.subgroup_group([h]).is_normal(P):
                cyclic_order = max(cyclic_order, G.element_order(h))
    return SolvableCaps(solvable_order, cyclic_order)


def normal_subgroups(G: FiniteGroup) -> list[Subgroup]:
    return [H for H in G.all_subgroups() if G.is_normal(H)]


def normal_subgroup_orders(G: FiniteGroup) -> list[int]:
    return sorted({len(H) for H in normal_subgroups(G)})


def has_normal_subgroup(
    G: FiniteGroup, order: int, cyclic: bool = False
) -> bool:
    for H in normal_subgroups(G):
        if len(H) != order:
            continue
        if not cyclic or any(G.element_order(h) == order for h in H):
            return True
    return False
