"""Exhaustive enumeration of subspaces of F_q^n (oracle support)."""

from __future__ import annotations

from itertools import combinations, product

from ..errors import BudgetExceeded, PreconditionError
from .matrix import Matrix
from .scalar import is_prime
from .subspace import Subspace

DEFAULT_BUDGET = 4096


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def subspace_count(n: int, q: int) -> int:
    return sum(gaussian_binomial(n, k, q) for k in range(n + 1))


def enumerate_subspaces(n: int, q: int, budget: int = DEFAULT_BUDGET) -> list[Subspace]:
    """Every subspace of F_q^n once, ordered by dimension then basis entries."""
    if not is_prime(q):
        raise PreconditionError(f"{q} is not prime")
    if q**n > budget:
        raise BudgetExceeded(f"q^n = {q**n} exceeds the subspace budget {budget}")
    out: list[Subspace] = []
    for k in range(n + 1):
        layer = []
        for pivots in combinations(range(n), k):
            # free slots: row r, column c > pivots[r] with c not a pivot
            free = [(r, c) for r in range(k) for c in range(pivots[r] + 1, n) if c not in pivots]
            for values in product(range(q), repeat=len(free)):
                grid = [[0] * n for _ in range(k)]
                for r, c in enumerate(pivots):
                    grid[r][c] = 1
                for (r, c), v in zip(free, values):
                    grid[r][c] = v
                layer.append(Subspace(n, Matrix(grid, k, n, q)))
        layer.sort(key=lambda s: [x.value for row in s.basis.entries for x in row])
        out.extend(layer)
    return out
