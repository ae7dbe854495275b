"""Random generators and brute-force oracles shared by the tests.

The oracles deliberately avoid the package's elimination code: ranks come
from Laplace-expanded minors and subspaces from spans of vector subsets.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, product

from quiverstab.chow import ChernClassVector, GradedPresentation, Polynomial, monomials_of_degree
from quiverstab.exactalg import Matrix
from quiverstab.systems import GroupElement, HelmkeSystem, LomadzeSystem, SigmaSystem


def laplace_det(grid):
    n = len(grid)
    if n == 0:
        return 1
    if n == 1:
        return grid[0][0]
    total = 0
    for j in range(n):
        if grid[0][j]:
            minor = [row[:j] + row[j + 1:] for row in grid[1:]]
            total += (-1) ** j * grid[0][j] * laplace_det(minor)
    return total


def minor_rank(grid) -> int:
    """Largest size of a nonzero minor (rationals or GF residues)."""
    rows = len(grid)
    cols = len(grid[0]) if grid else 0
    for r in range(min(rows, cols), 0, -1):
        for ri in combinations(range(rows), r):
            for ci in combinations(range(cols), r):
                if laplace_det([[grid[i][j] for j in ci] for i in ri]):
                    return r
    return 0


def kalman_matrix(a: Matrix, b: Matrix):
    """``[b, ab, ..., a^(n-1) b]`` as a plain grid."""
    n = a.rows
    blocks, cur = [], b
    for _ in range(n):
        blocks.append(cur)
        cur = a @ cur
    return [[x for blk in blocks for x in blk.row(i)] for i in range(n)]


def all_vectors(n: int, q: int):
    return list(product(range(q), repeat=n))


def brute_subspaces(n: int, q: int) -> set[frozenset]:
    """Every subspace of F_q^n as the frozenset of its vectors."""
    vecs = all_vectors(n, q)
    found = set()
    for k in range(n + 1):
        for gens in combinations(vecs, k):
            span = set()
            for coeffs in product(range(q), repeat=k):
                span.add(tuple(sum(c * g[i] for c, g in zip(coeffs, gens)) % q for i in range(n)))
            if not span:
                span = {tuple([0] * n)}
            found.add(frozenset(span))
    return found


def rand_grid(rng: random.Random, rows: int, cols: int, lo: int = -5, hi: int = 5):
    return [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)]


def rand_matrix(rng, rows, cols, lo=-5, hi=5, modulus=None) -> Matrix:
    return Matrix(rand_grid(rng, rows, cols, lo, hi), rows, cols, modulus)


def rand_invertible(rng, k: int, modulus=None) -> Matrix:
    while True:
        m = rand_matrix(rng, k, k, -3, 3, modulus)
        if m.det() != 0:
            return m


def rand_sigma(rng, n=None, m=None, p=None, lo=-5, hi=5, modulus=None) -> SigmaSystem:
    n = rng.randint(1, 3) if n is None else n
    m = rng.randint(0, 3) if m is None else m
    p = rng.randint(0, 3) if p is None else p
    return SigmaSystem(
        rand_matrix(rng, n, n, lo, hi, modulus),
        rand_matrix(rng, n, m, lo, hi, modulus),
        rand_matrix(rng, p, n, lo, hi, modulus),
        rand_matrix(rng, p, m, lo, hi, modulus),
    )


def rand_lomadze(rng, n=None, m=None, p=None, lo=-2, hi=2) -> LomadzeSystem:
    n = rng.randint(1, 2) if n is None else n
    m = rng.randint(0, 2) if m is None else m
    p = rng.randint(0, 2) if p is None else p
    return LomadzeSystem(
        rand_matrix(rng, n + p, n, lo, hi),
        rand_matrix(rng, n + p, n, lo, hi),
        rand_matrix(rng, n + p, p + m, lo, hi),
    )


def rand_helmke(rng, n=None, m=None, p=None, lo=-2, hi=2) -> HelmkeSystem:
    n = rng.randint(1, 2) if n is None else n
    m = rng.randint(0, 2) if m is None else m
    p = rng.randint(0, 2) if p is None else p
    r = lambda a, b: rand_matrix(rng, a, b, lo, hi)  # noqa: E731
    return HelmkeSystem(r(n, n), r(n, n), r(n, m), r(p, n), r(p, m), r(p, p))


def group_for(rng, system) -> GroupElement:
    if isinstance(system, SigmaSystem):
        return GroupElement((rand_invertible(rng, system.n, system.modulus),))
    if isinstance(system, LomadzeSystem):
        return GroupElement((rand_invertible(rng, system.n), rand_invertible(rng, system.n + system.p)))
    return GroupElement(
        (rand_invertible(rng, system.n), rand_invertible(rng, system.n), rand_invertible(rng, system.p))
    )


def as_fractions(grid):
    return [[Fraction(x) for x in row] for row in grid]


def random_chern(rng, base: GradedPresentation, r: int) -> ChernClassVector:
    nv = len(base.variables)
    classes = [Polynomial.constant(1, nv)]
    for k in range(1, r + 1):
        poly = Polynomial({}, nv)
        for mono in monomials_of_degree(base.weights, k):
            poly = poly + Polynomial({mono: rng.randint(-3, 3)}, nv)
        classes.append(poly)
    return ChernClassVector(tuple(classes))
