"""Matrices over F_p.

Matrices and vectors travel as tuples so they can key group tables; the
arithmetic runs on sympy's ``DomainMatrix`` over ``GF(p)``.
"""

from __future__ import annotations

import collections.abc as c
import itertools
import typing as t
from functools import cache

from sympy.polys.domains import GF
from sympy.polys.matrices import DomainMatrix

Vector = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]


@cache
def prime_field(p: int) -> t.Any:
    return GF(p)


def to_domain(
    rows: c.Iterable[c.Iterable[int]], p: int, width: int = 0
) -> DomainMatrix:
    data = [list(row) for row in rows]
    if not data:
        return DomainMatrix.zeros((0, width), prime_field(p))
    return DomainMatrix.from_list(data, prime_field(p))


def from_domain(M: DomainMatrix) -> Matrix:
    K = M.domain
    return tuple(tuple(int(x) % K.mod for x in row) for row in M.to_list())


def matrix(rows: c.Iterable[c.Iterable[int]], p: int) -> Matrix:
    return from_domain(to_domain(rows, p))


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix, p: int) -> Matrix:
    return from_domain(to_domain(a, p) * to_domain(b, p))


def apply_to_all(
    a: Matrix, vectors: c.Sequence[Vector], p: int
) -> list[Vector]:
    """Images of many vectors with a single product."""
    if not vectors:
        return []
    columns = to_domain(zip(*vectors), p)
    return list(zip(*from_domain(to_domain(a, p) * columns)))


def mat_add(a: Matrix, b: Matrix, p: int) -> Matrix:
    return from_domain(to_domain(a, p) + to_domain(b, p))


def mat_sub(a: Matrix, b: Matrix, p: int) -> Matrix:
    return from_domain(to_domain(a, p) - to_domain(b, p))


def linear_combination(
    coefficients: c.Sequence[int], matrices: c.Sequence[Matrix], p: int, n: int
) -> Matrix:
    K = prime_field(p)
    total = DomainMatrix.zeros((n, n), K)
    for x, a in zip(coefficients, matrices):
        total = total + to_domain(a, p) * K(x)
    return from_domain(total)


def mat_pow(a: Matrix, k: int, p: int) -> Matrix:
    return from_domain(to_domain(a, p) ** k)


def inverse(a: Matrix, p: int) -> Matrix:
    return from_domain(to_domain(a, p).inv())


def trace(a: Matrix, p: int) -> int:
    K = prime_field(p)
    return int(sum(to_domain(a, p).diagonal(), K.zero)) % p


def symmetric_residue(x: int, p: int) -> int:
    """Representative of x mod p in (-p/2, p/2]."""
    x %= p
    return x - p if x > p // 2 else x


def direct_sum(a: Matrix, b: Matrix) -> Matrix:
    n, m = len(a), len(b)
    top = tuple(row + (0,) * m for row in a)
    bottom = tuple((0,) * n + row for row in b)
    return top + bottom


def row_reduce(rows: c.Iterable[Vector], p: int) -> tuple[Vector, ...]:
    """Reduced row echelon form without zero rows; canonical per subspace."""
    data = list(rows)
    if not data:
        return ()
    reduced, pivots = to_domain(data, p).rref()
    return from_domain(reduced)[: len(pivots)]


def rank(a: c.Iterable[Vector], p: int) -> int:
    rows = list(a)
    return to_domain(rows, p).rank() if rows else 0


def is_invertible(a: Matrix, p: int) -> bool:
    return rank(a, p) == len(a)


def nullspace(a: Matrix, p: int, width: int | None = None) -> list[Vector]:
    """Basis of {v : a v = 0}."""
    width = width if width is not None else len(a[0])
    if not a:
        return list(identity(width))
    return list(from_domain(to_domain(a, p).nullspace()))


def all_vectors(dim: int, p: int) -> t.Iterator[Vector]:
    return itertools.product(range(p), repeat=dim)


def all_matrices(n: int, p: int) -> t.Iterator[Matrix]:
    for entries in itertools.product(range(p), repeat=n * n):
        yield tuple(tuple(entries[i * n : (i + 1) * n]) for i in range(n))


def general_linear(n: int, p: int) -> list[Matrix]:
    return [a for a in all_matrices(n, p) if is_invertible(a, p)]


def matrix_order(a: Matrix, p: int, limit: int = 10**4) -> int:
    one, A, power = identity(len(a)), to_domain(a, p), to_domain(a, p)
    for k in range(1, limit + 1):
        if from_domain(power) == one:
            return k
        power = power * A
    raise ValueError(f'Matrix order exceeds {limit}')
