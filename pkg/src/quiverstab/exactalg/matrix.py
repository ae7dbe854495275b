"""Immutable dense matrices over Q or a prime field, with exact elimination.

Rank and determinant use fraction-free (Bareiss) elimination. Over Q the
rows are first scaled to integers so every intermediate value is an exact
integer minor; over F_q the same loop runs on residues.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Callable, Iterable, Sequence

from ..errors import ShapeError
from .scalar import GF, format_scalar, is_prime, to_scalar


class Matrix:
    """A ``rows x cols`` matrix; ``modulus`` is ``None`` for Q, else a prime."""

    __slots__ = ("rows", "cols", "entries", "modulus")

    def __init__(
        self,
        entries: Iterable[Iterable] = (),
        rows: int | None = None,
        cols: int | None = None,
        modulus: int | None = None,
    ):
        if modulus is not None and not is_prime(modulus):
            raise ValueError(f"modulus {modulus} is not prime")
        grid = tuple(tuple(to_scalar(x, modulus) for x in row) for row in entries)
        r = len(grid) if rows is None else rows
        if len(grid) != r:
            raise ShapeError(f"expected {r} rows, got {len(grid)}")
        if cols is None:
            cols = len(grid[0]) if grid else 0
        for row in grid:
            if len(row) != cols:
                raise ShapeError(f"ragged matrix: row of length {len(row)} in a {cols}-column matrix")
        self.rows = r
        self.cols = cols
        self.entries = grid
        self.modulus = modulus

    # -- constructors -----------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int, modulus: int | None = None) -> Matrix:
        return cls([[0] * cols for _ in range(rows)], rows, cols, modulus)

    @classmethod
    def identity(cls, n: int, modulus: int | None = None) -> Matrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n, n, modulus)

    @classmethod
    def hstack(cls, *blocks: Matrix) -> Matrix:
        if not blocks:
            raise ShapeError("hstack of nothing")
        rows = blocks[0].rows
        mod = _common_modulus(blocks)
        if any(b.rows != rows for b in blocks):
            raise ShapeError("hstack: row counts differ")
        grid = [sum((b.entries[i] for b in blocks), ()) for i in range(rows)]
        return cls._raw(grid, rows, sum(b.cols for b in blocks), mod)

    @classmethod
    def vstack(cls, *blocks: Matrix) -> Matrix:
        if not blocks:
            raise ShapeError("vstack of nothing")
        cols = blocks[0].cols
        mod = _common_modulus(blocks)
        if any(b.cols != cols for b in blocks):
            raise ShapeError("vstack: column counts differ")
        grid = [row for b in blocks for row in b.entries]
        return cls._raw(grid, sum(b.rows for b in blocks), cols, mod)

    @classmethod
    def _raw(cls, grid, rows, cols, modulus) -> Matrix:
        # entries already coerced; skip validation
        m = object.__new__(cls)
        m.rows, m.cols, m.modulus = rows, cols, modulus
        m.entries = tuple(tuple(r) for r in grid)
        return m

    # -- basic access -----------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def scalar(self, x):
        return to_scalar(x, self.modulus)

    @property
    def T(self) -> Matrix:
        return Matrix._raw(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
            self.cols,
            self.rows,
            self.modulus,
        )

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
        return Matrix._raw(
            [[self.entries[i][j] for j in cols] for i in rows], len(rows), len(cols), self.modulus
        )

    def is_zero(self) -> bool:
        return not any(x for row in self.entries for x in row)

    def is_square(self) -> bool:
        return self.rows == self.cols

    # -- arithmetic -------------------------------------------------------

    def _check_same(self, other: Matrix):
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")
        _common_modulus((self, other))

    def __add__(self, other: Matrix) -> Matrix:
        self._check_same(other)
        return Matrix._raw(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
            self.rows,
            self.cols,
            self.modulus,
        )

    def __sub__(self, other: Matrix) -> Matrix:
        self._check_same(other)
        return Matrix._raw(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
            self.rows,
            self.cols,
            self.modulus,
        )

    def __neg__(self) -> Matrix:
        return Matrix._raw([[-a for a in r] for r in self.entries], self.rows, self.cols, self.modulus)

    def scaled(self, c) -> Matrix:
        c = self.scalar(c)
        return Matrix._raw([[c * a for a in r] for r in self.entries], self.rows, self.cols, self.modulus)

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        mod = _common_modulus((self, other))
        zero = to_scalar(0, mod)
        cols = other.column_tuples()
        grid = [[sum((a * b for a, b in zip(r, c)), zero) for c in cols] for r in self.entries]
        return Matrix._raw(grid, self.rows, other.cols, mod)

    def column_tuples(self) -> list[tuple]:
        return [self.column(j) for j in range(self.cols)]

    def __pow__(self, e: int) -> Matrix:
        if not self.is_square():
            raise ShapeError("power of a non-square matrix")
        if e < 0:
            return self.inverse() ** (-e)
        result = Matrix.identity(self.rows, self.modulus)
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def apply(self, vector: Sequence) -> tuple:
        zero = to_scalar(0, self.modulus)
        return tuple(sum((a * b for a, b in zip(r, vector)), zero) for r in self.entries)

    def reduce_mod(self, q: int) -> Matrix:
        """Read an integer/rational matrix over F_q (denominators must be units)."""
        return Matrix(self.entries, self.rows, self.cols, q)

    # -- exact elimination --------------------------------------------------

    def rank(self) -> int:
        return rank(self)

    def det(self):
        return det(self)

    def inverse(self) -> Matrix:
        return inverse(self)

    # -- value semantics ----------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and self.modulus == other.modulus
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.modulus, self.entries))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(format_scalar(x) for x in r) + "]" for r in self.entries)
        mod = "" if self.modulus is None else f", modulus={self.modulus}"
        return f"Matrix([{body}], {self.rows}x{self.cols}{mod})"

    # -- serialization ------------------------------------------------------

    def to_json(self):
        grid = [[format_scalar(x) for x in r] for r in self.entries]
        if self.modulus is None:
            return grid
        return {"modulus": self.modulus, "entries": grid}

    @classmethod
    def from_json(cls, data, rows: int | None = None, cols: int | None = None, modulus: int | None = None):
        if isinstance(data, dict):
            if "modulus" in data:
                modulus = int(data["modulus"])
            data = data.get("entries", [])
        if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
            raise ValueError("a matrix must be a list of lists")
        if data == [] and (rows == 0 or cols == 0):
            return cls.zeros(rows or 0, cols or 0, modulus)
        for r in data:
            for x in r:
                if not isinstance(x, (str, int)) or isinstance(x, bool):
                    raise ValueError(f"matrix entries must be strings or integers, got {x!r}")
        return cls([[_parse_entry(x) for x in r] for r in data], rows, cols, modulus)


def _parse_entry(x):
    if isinstance(x, int):
        return x
    try:
        return Fraction(x.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"bad rational {x!r}") from e


def _common_modulus(blocks: Iterable[Matrix]) -> int | None:
    mods = {b.modulus for b in blocks}
    if len(mods) > 1:
        raise ShapeError(f"mixed domains: {sorted(mods, key=str)}")
    return mods.pop()


# -- Bareiss core -----------------------------------------------------------


def bareiss(a: list[list], exact_div: Callable, one) -> tuple[int, list[int], int, object]:
    """In-place fraction-free elimination of ``a``.

    Returns ``(rank, pivot_columns, row_swaps, last_pivot)``. Every entry
    produced is a minor of the (row-permuted) input, so ``exact_div`` only
    ever sees exact quotients.
    """
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    prev = one
    r = 0
    swaps = 0
    pivots: list[int] = []
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
            swaps += 1
        p = a[r][c]
        prow = a[r]
        for i in range(r + 1, nrows):
            row = a[i]
            x = row[c]
            for j in range(c + 1, ncols):
                row[j] = exact_div(p * row[j] - x * prow[j], prev)
            row[c] = x * 0
        prev = p
        pivots.append(c)
        r += 1
    return r, pivots, swaps, prev


def _integer_rows(m: Matrix) -> list[list[int]]:
    out = []
    for row in m.entries:
        d = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * d) for x in row])
    return out


def rank(m: Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    if m.modulus is None:
        r, *_ = bareiss(_integer_rows(m), lambda x, y: x // y, 1)
    else:
        r, *_ = bareiss([list(row) for row in m.entries], lambda x, y: x / y, GF(1, m.modulus))
    return r


def det(m: Matrix):
    if not m.is_square():
        raise ShapeError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return m.scalar(1)
    if m.modulus is None:
        # scale each row to integers, then undo the scaling
        scale = 1
        rows = []
        for row in m.entries:
            d = lcm(*(x.denominator for x in row))
            scale *= d
            rows.append([int(x * d) for x in row])
        r, _, swaps, last = bareiss(rows, lambda x, y: x // y, 1)
        if r < n:
            return Fraction(0)
        return Fraction((-1) ** swaps * last, scale)
    a = [list(row) for row in m.entries]
    r, _, swaps, last = bareiss(a, lambda x, y: x / y, GF(1, m.modulus))
    if r < n:
        return GF(0, m.modulus)
    return last * (-1) ** swaps


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form (Gauss-Jordan) and the pivot columns."""
    a = [list(row) for row in m.entries]
    nrows, ncols = m.rows, m.cols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return Matrix._raw(a, nrows, ncols, m.modulus), pivots


def inverse(m: Matrix) -> Matrix:
    if not m.is_square():
        raise ShapeError("inverse of a non-square matrix")
    n = m.rows
    aug = Matrix.hstack(m, Matrix.identity(n, m.modulus))
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return red.submatrix(range(n), range(n, 2 * n))
