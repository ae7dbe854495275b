"""Rank analysis of matrix pencils ``[sK + tL | N]``.

Entries of the pencil are binary forms (linear in the ``sK + tL`` block,
constant in the optional block ``N``). Generic rank is the rank over the
function field, found by Bareiss elimination on forms. Full rank at every
nonzero ``(s, t)`` over the algebraic closure is equivalent to the gcd of
all maximal-size minors being a nonzero constant, because binary forms
split into linear factors there.
"""

from __future__ import annotations

from itertools import combinations
from math import comb
from typing import Iterator

from ..errors import PreconditionError, ShapeError
from .forms import BinaryForm, form_gcd
from .matrix import Matrix, bareiss

#: minors are enumerated exhaustively, so pencils are kept small
MAX_PENCIL_ROWS = 8


def pencil_forms(k_mat: Matrix, l_mat: Matrix, const_block: Matrix | None = None) -> list[list[BinaryForm]]:
    if k_mat.shape != l_mat.shape:
        raise ShapeError(f"pencil blocks differ in shape: {k_mat.shape} vs {l_mat.shape}")
    if k_mat.modulus is not None or l_mat.modulus is not None:
        raise ShapeError("pencils are analysed over Q only")
    if const_block is not None:
        if const_block.rows != k_mat.rows:
            raise ShapeError("constant block has the wrong number of rows")
        if const_block.modulus is not None:
            raise ShapeError("pencils are analysed over Q only")
    grid = []
    for i in range(k_mat.rows):
        row = [BinaryForm.linear(k_mat[i, j], l_mat[i, j]) for j in range(k_mat.cols)]
        if const_block is not None:
            row += [BinaryForm.constant(x) for x in const_block.row(i)]
        grid.append(row)
    return grid


def _form_bareiss(grid: list[list[BinaryForm]]):
    return bareiss([list(r) for r in grid], BinaryForm.exact_div, BinaryForm.constant(1))


def form_det(grid: list[list[BinaryForm]]) -> BinaryForm:
    """Determinant of a square matrix of binary forms."""
    n = len(grid)
    if n == 0:
        return BinaryForm.constant(1)
    if any(len(r) != n for r in grid):
        raise ShapeError("determinant of a non-square form matrix")
    r, _, swaps, last = _form_bareiss(grid)
    if r < n:
        return BinaryForm.zero()
    return last if swaps % 2 == 0 else -last


def pencil_determinant(k_mat: Matrix, l_mat: Matrix) -> BinaryForm:
    """``det(sK + tL)`` expanded as a binary form."""
    if not k_mat.is_square():
        raise ShapeError("determinant of a non-square pencil")
    return form_det(pencil_forms(k_mat, l_mat))


def pencil_generic_rank(k_mat: Matrix, l_mat: Matrix, const_block: Matrix | None = None) -> int:
    grid = pencil_forms(k_mat, l_mat, const_block)
    if not grid or not grid[0]:
        return 0
    r, *_ = _form_bareiss(grid)
    return r


def iter_minors(grid: list[list[BinaryForm]], r: int) -> Iterator[BinaryForm]:
    rows = len(grid)
    cols = len(grid[0]) if grid else 0
    for ri in combinations(range(rows), r):
        for ci in combinations(range(cols), r):
            yield form_det([[grid[i][j] for j in ci] for i in ri])


def pencil_minors_gcd(
    k_mat: Matrix,
    l_mat: Matrix,
    const_block: Matrix | None = None,
    r: int | None = None,
    *,
    stop_at_unit: bool = False,
) -> BinaryForm:
    """Normalized gcd of all ``r x r`` minors of ``[sK + tL | const_block]``.

    With ``stop_at_unit`` the scan ends as soon as the running gcd is a
    nonzero constant; the result is then exactly ``1``, the same value a
    full scan would return.
    """
    grid = pencil_forms(k_mat, l_mat, const_block)
    rows = len(grid)
    cols = k_mat.cols + (const_block.cols if const_block is not None else 0)
    if r is None:
        r = rows
    if not 0 <= r <= min(rows, cols):
        raise PreconditionError(f"minor size {r} out of range for a {rows}x{cols} pencil")
    if rows > MAX_PENCIL_ROWS:
        raise PreconditionError(f"pencil has {rows} rows; minor enumeration is capped at {MAX_PENCIL_ROWS}")
    if r == 0:
        return BinaryForm.constant(1)
    g = BinaryForm.zero()
    for minor in iter_minors(grid, r):
        if minor.is_zero():
            continue
        g = form_gcd([g, minor])
        if stop_at_unit and g.degree == 0:
            return g
    return g


def minor_count(rows: int, cols: int, r: int) -> int:
    return comb(rows, r) * comb(cols, r)


def pencil_rank_at(k_mat: Matrix, l_mat: Matrix, s, t, const_block: Matrix | None = None) -> int:
    """Rank of the evaluated pencil ``[sK + tL | const_block]`` at a rational point."""
    m = k_mat.scaled(s) + l_mat.scaled(t)
    if const_block is not None:
        m = Matrix.hstack(m, const_block)
    return m.rank()


def has_full_rank_everywhere(
    k_mat: Matrix, l_mat: Matrix, const_block: Matrix | None = None, r: int | None = None
) -> bool:
    """The pencil has rank ``r`` (default: its smaller dimension) at every nonzero ``(s, t)``."""
    rows = k_mat.rows
    cols = k_mat.cols + (const_block.cols if const_block is not None else 0)
    if r is None:
        r = min(rows, cols)
    if r > min(rows, cols):
        return False
    g = pencil_minors_gcd(k_mat, l_mat, const_block, r, stop_at_unit=True)
    return not g.is_zero() and g.degree == 0
