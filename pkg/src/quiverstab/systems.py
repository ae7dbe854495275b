"""Linear systems as quiver representations: classical, Lomadze and Helmke.

A classical system is ``(A, B, C, D)`` over Q or a prime field. A Lomadze
system ``(K, L, M)`` replaces the state equation by the pencil ``sK + tL``;
a Helmke system ``(E, A, B, C, D, F)`` puts descriptor matrices on both the
state and the output side. The deciders below are exact: "for all
``(s, t) != 0``" conditions become gcd conditions on pencil minors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterator, Sequence

from .errors import PreconditionError, ShapeError
from .exactalg import (
    Matrix,
    has_full_rank_everywhere,
    krylov_image,
    krylov_kernel,
    pencil_determinant,
    pencil_generic_rank,
    pencil_rank_at,
)
from .quiver import Representation, helmke_quiver, lomadze_quiver, sigma_quiver


def _expect(name: str, m: Matrix, shape: tuple[int, int]):
    if m.shape != shape:
        raise ShapeError(f"{name}: expected shape {shape}, got {m.shape}")


def _one_domain(*mats: Matrix) -> int | None:
    mods = {m.modulus for m in mats}
    if len(mods) != 1:
        raise ShapeError("system matrices live over different domains")
    return mods.pop()


@dataclass(frozen=True)
class SigmaSystem:
    A: Matrix
    B: Matrix
    C: Matrix
    D: Matrix

    def __post_init__(self):
        n, m, p = self.A.rows, self.B.cols, self.C.rows
        if n < 1:
            raise ShapeError("state dimension n must be at least 1")
        _expect("A", self.A, (n, n))
        _expect("B", self.B, (n, m))
        _expect("C", self.C, (p, n))
        _expect("D", self.D, (p, m))
        _one_domain(self.A, self.B, self.C, self.D)

    @property
    def n(self) -> int:
        return self.A.rows

    @property
    def m(self) -> int:
        return self.B.cols

    @property
    def p(self) -> int:
        return self.C.rows

    @property
    def modulus(self) -> int | None:
        return self.A.modulus

    @classmethod
    def from_lists(cls, n, m, p, A, B, C, D, modulus=None) -> SigmaSystem:
        return cls(
            Matrix(A, n, n, modulus),
            Matrix(B, n, m, modulus),
            Matrix(C, p, n, modulus),
            Matrix(D, p, m, modulus),
        )

    @classmethod
    def zero(cls, n: int, m: int, p: int, modulus: int | None = None) -> SigmaSystem:
        z = Matrix.zeros
        return cls(z(n, n, modulus), z(n, m, modulus), z(p, n, modulus), z(p, m, modulus))

    def matrices(self) -> dict[str, Matrix]:
        return {"A": self.A, "B": self.B, "C": self.C, "D": self.D}


@dataclass(frozen=True)
class LomadzeSystem:
    K: Matrix
    L: Matrix
    M: Matrix

    def __post_init__(self):
        n = self.K.cols
        rows = self.K.rows
        if n < 1:
            raise ShapeError("state dimension n must be at least 1")
        if rows < n:
            raise ShapeError(f"K must have at least n = {n} rows")
        _expect("L", self.L, self.K.shape)
        if self.M.rows != rows or self.M.cols < rows - n:
            raise ShapeError(f"M: expected {rows} rows and at least p = {rows - n} columns, got {self.M.shape}")
        if _one_domain(self.K, self.L, self.M) is not None:
            raise ShapeError("Lomadze systems are defined over Q only")

    @property
    def n(self) -> int:
        return self.K.cols

    @property
    def p(self) -> int:
        return self.K.rows - self.K.cols

    @property
    def m(self) -> int:
        return self.M.cols - self.p

    @classmethod
    def from_lists(cls, n, m, p, K, L, M) -> LomadzeSystem:
        return cls(Matrix(K, n + p, n), Matrix(L, n + p, n), Matrix(M, n + p, p + m))

    @classmethod
    def zero(cls, n: int, m: int, p: int) -> LomadzeSystem:
        return cls(Matrix.zeros(n + p, n), Matrix.zeros(n + p, n), Matrix.zeros(n + p, p + m))

    def matrices(self) -> dict[str, Matrix]:
        return {"K": self.K, "L": self.L, "M": self.M}


@dataclass(frozen=True)
class HelmkeSystem:
    E: Matrix
    A: Matrix
    B: Matrix
    C: Matrix
    D: Matrix
    F: Matrix

    def __post_init__(self):
        n, m, p = self.E.rows, self.B.cols, self.C.rows
        if n < 1:
            raise ShapeError("state dimension n must be at least 1")
        _expect("E", self.E, (n, n))
        _expect("A", self.A, (n, n))
        _expect("B", self.B, (n, m))
        _expect("C", self.C, (p, n))
        _expect("D", self.D, (p, m))
        _expect("F", self.F, (p, p))
        if _one_domain(self.E, self.A, self.B, self.C, self.D, self.F) is not None:
            raise ShapeError("Helmke systems are defined over Q only")

    @property
    def n(self) -> int:
        return self.E.rows

    @property
    def m(self) -> int:
        return self.B.cols

    @property
    def p(self) -> int:
        return self.C.rows

    @classmethod
    def from_lists(cls, n, m, p, E, A, B, C, D, F) -> HelmkeSystem:
        return cls(
            Matrix(E, n, n), Matrix(A, n, n), Matrix(B, n, m),
            Matrix(C, p, n), Matrix(D, p, m), Matrix(F, p, p),
        )

    @classmethod
    def zero(cls, n: int, m: int, p: int) -> HelmkeSystem:
        z = Matrix.zeros
        return cls(z(n, n), z(n, n), z(n, m), z(p, n), z(p, m), z(p, p))

    def matrices(self) -> dict[str, Matrix]:
        return {"E": self.E, "A": self.A, "B": self.B, "C": self.C, "D": self.D, "F": self.F}


System = SigmaSystem | LomadzeSystem | HelmkeSystem


@dataclass(frozen=True)
class GroupElement:
    """A tuple of invertible square blocks; checked when built."""

    blocks: tuple[Matrix, ...]

    def __post_init__(self):
        blocks = tuple(self.blocks)
        object.__setattr__(self, "blocks", blocks)
        for i, b in enumerate(blocks):
            if not b.is_square():
                raise ShapeError(f"group block {i} is not square")
            if b.det() == 0:
                raise PreconditionError(f"group block {i} is singular")

    def inverse(self) -> GroupElement:
        return GroupElement(tuple(b.inverse() for b in self.blocks))


def _check_blocks(g: GroupElement, sizes: Sequence[int], what: str):
    got = [b.rows for b in g.blocks]
    if got != list(sizes):
        raise ShapeError(f"{what} group needs blocks of sizes {list(sizes)}, got {got}")


# -- deciders ------------------------------------------------------------------


def sigma_controllable(s: SigmaSystem) -> bool:
    """The Krylov space of ``(A, B)`` is the whole state space."""
    return krylov_image(s.A, s.B).is_full()


def sigma_observable(s: SigmaSystem) -> bool:
    """No nonzero state is invisible to every ``C A^j``."""
    return krylov_kernel(s.C, s.A).is_zero()


def lomadze_controllable(s: LomadzeSystem) -> bool:
    n, p = s.n, s.p
    if pencil_generic_rank(s.K, s.L) != n:
        return False
    if pencil_generic_rank(s.K, s.L, s.M) != n + p:
        return False
    return has_full_rank_everywhere(s.K, s.L, s.M, r=n + p)


def lomadze_observable(s: LomadzeSystem) -> bool:
    n, p = s.n, s.p
    if pencil_generic_rank(s.K, s.L) != n:
        return False
    if not has_full_rank_everywhere(s.K, s.L, r=n):
        return False
    return pencil_generic_rank(s.K, s.L, s.M) == n + p


def lomadze_regular(s: LomadzeSystem) -> bool:
    """``[K | first p columns of M]`` is invertible."""
    p = s.p
    head = s.M.submatrix(range(s.M.rows), range(p))
    return Matrix.hstack(s.K, head).rank() == s.n + p


def helmke_controllable(s: HelmkeSystem) -> bool:
    if pencil_determinant(s.E, s.A).is_zero():
        return False
    if not has_full_rank_everywhere(s.E, s.A, s.B, r=s.n):
        return False
    return Matrix.hstack(s.F, s.C, s.D).rank() == s.p


# -- embeddings and actions ---------------------------------------------------------


def embed_sigma_lomadze(s: SigmaSystem) -> LomadzeSystem:
    """``K = (I; 0)``, ``L = (A; C)``, ``M = ((0, B); (I, D))``."""
    if s.modulus is not None:
        raise ShapeError("Lomadze systems are defined over Q only")
    n, p = s.n, s.p
    K = Matrix.vstack(Matrix.identity(n), Matrix.zeros(p, n))
    L = Matrix.vstack(s.A, s.C)
    M = Matrix.vstack(
        Matrix.hstack(Matrix.zeros(n, p), s.B),
        Matrix.hstack(Matrix.identity(p), s.D),
    )
    return LomadzeSystem(K, L, M)


def embed_sigma_helmke(s: SigmaSystem) -> HelmkeSystem:
    """``(I, A, B, C, D, I)``."""
    if s.modulus is not None:
        raise ShapeError("Helmke systems are defined over Q only")
    return HelmkeSystem(Matrix.identity(s.n), s.A, s.B, s.C, s.D, Matrix.identity(s.p))


def _block_diag(a: Matrix, b: Matrix) -> Matrix:
    return Matrix.vstack(
        Matrix.hstack(a, Matrix.zeros(a.rows, b.cols, a.modulus)),
        Matrix.hstack(Matrix.zeros(b.rows, a.cols, a.modulus), b),
    )


def embed_group_lomadze(g: GroupElement, p: int) -> GroupElement:
    """``g -> (g, diag(g, I_p))``; the Lomadze embedding is equivariant along it."""
    (g0,) = g.blocks
    return GroupElement((g0, _block_diag(g0, Matrix.identity(p, g0.modulus))))


def embed_group_helmke(g: GroupElement, p: int) -> GroupElement:
    (g0,) = g.blocks
    return GroupElement((g0, g0, Matrix.identity(p, g0.modulus)))


def act_sigma(g: GroupElement, s: SigmaSystem) -> SigmaSystem:
    """``(g A g^-1, g B, C g^-1, D)``."""
    _check_blocks(g, [s.n], "sigma")
    (g0,) = g.blocks
    gi = g0.inverse()
    return SigmaSystem(g0 @ s.A @ gi, g0 @ s.B, s.C @ gi, s.D)


def act_lomadze(g: GroupElement, s: LomadzeSystem) -> LomadzeSystem:
    """``(g1 K g0^-1, g1 L g0^-1, g1 M)``."""
    _check_blocks(g, [s.n, s.n + s.p], "Lomadze")
    g0, g1 = g.blocks
    gi = g0.inverse()
    return LomadzeSystem(g1 @ s.K @ gi, g1 @ s.L @ gi, g1 @ s.M)


def act_helmke(g: GroupElement, s: HelmkeSystem) -> HelmkeSystem:
    """``(g1 E g0^-1, g1 A g0^-1, g1 B, g2 C g0^-1, g2 D, g2 F)``."""
    _check_blocks(g, [s.n, s.n, s.p], "Helmke")
    g0, g1, g2 = g.blocks
    gi = g0.inverse()
    return HelmkeSystem(g1 @ s.E @ gi, g1 @ s.A @ gi, g1 @ s.B, g2 @ s.C @ gi, g2 @ s.D, g2 @ s.F)


def transform_T(omega: Matrix, h: Matrix, s: LomadzeSystem) -> LomadzeSystem:
    """``(aK + bL, cK + dL, M h)`` for ``omega = [[a, b], [c, d]]``."""
    if omega.shape != (2, 2):
        raise ShapeError("omega must be 2x2")
    if h.shape != (s.M.cols, s.M.cols):
        raise ShapeError(f"h must be {s.M.cols}x{s.M.cols}")
    if omega.det() == 0:
        raise PreconditionError("omega is singular")
    if h.det() == 0:
        raise PreconditionError("h is singular")
    a, b = omega.row(0)
    c, d = omega.row(1)
    return LomadzeSystem(
        s.K.scaled(a) + s.L.scaled(b),
        s.K.scaled(c) + s.L.scaled(d),
        s.M @ h,
    )


def coprime_pairs() -> Iterator[tuple[int, int]]:
    """``(1,0), (0,1), (1,1), (1,-1), (1,2), (2,1), ...``: primitive points of P^1 by height."""
    yield (1, 0)
    yield (0, 1)
    height = 1
    while True:
        for a in range(1, height + 1):
            b = height
            for pair in ((a, b), (a, -b), (b, a), (b, -a)):
                if gcd(*pair) == 1 and abs(pair[0]) <= height and abs(pair[1]) <= height:
                    yield pair
        height += 1


def _unique_pairs() -> Iterator[tuple[int, int]]:
    seen = set()
    for pair in coprime_pairs():
        if pair not in seen:
            seen.add(pair)
            yield pair


def _permutation_matrix(order: Sequence[int]) -> Matrix:
    """Column ``j`` is the unit vector ``e_{order[j]}``, so ``(M h)[:, j] = M[:, order[j]]``."""
    k = len(order)
    grid = [[0] * k for _ in range(k)]
    for j, i in enumerate(order):
        grid[i][j] = 1
    return Matrix(grid, k, k)


def regularize(s: LomadzeSystem) -> tuple[Matrix, Matrix]:
    """Find ``(omega, h)`` with ``transform_T(omega, h, s)`` regular.

    Needs a point where ``s0 K + t0 L`` has rank ``n`` and ``[s0 K + t0 L | M]``
    rank ``n + p``. Both fail only at roots of a gcd of minors of degree at
    most ``n``, so ``2n + 1`` sample points always suffice.
    """
    n, p, k = s.n, s.p, s.M.cols
    if lomadze_regular(s):
        return Matrix.identity(2), Matrix.identity(k)
    if pencil_generic_rank(s.K, s.L) != n or pencil_generic_rank(s.K, s.L, s.M) != n + p:
        raise PreconditionError("no point of P^1 gives full rank; the system cannot be regularized")
    pairs = _unique_pairs()
    for _ in range(2 * n + 1):
        s0, t0 = next(pairs)
        if pencil_rank_at(s.K, s.L, s0, t0) != n:
            continue
        if pencil_rank_at(s.K, s.L, s0, t0, s.M) != n + p:
            continue
        omega = Matrix([[s0, t0], [0, 1]] if s0 != 0 else [[s0, t0], [1, 0]])
        head = s.K.scaled(s0) + s.L.scaled(t0)
        chosen: list[int] = []
        current = head
        for j in range(k):
            if len(chosen) == p:
                break
            trial = Matrix.hstack(current, s.M.submatrix(range(s.M.rows), [j]))
            if trial.rank() > current.rank():
                chosen.append(j)
                current = trial
        order = chosen + [j for j in range(k) if j not in chosen]
        h = _permutation_matrix(order)
        if not lomadze_regular(transform_T(omega, h, s)):
            raise AssertionError("regularizing transform failed to produce a regular system")
        return omega, h
    raise PreconditionError("exhausted the sample bound without a full-rank point")


def _linear_system(var_sizes: Sequence[tuple[int, int]], equations) -> Matrix:
    """Coefficient matrix of ``sum sign * left @ X_v @ right = 0`` equations.

    ``equations`` is a list of term lists; each term is
    ``(left, v, right, sign)`` with ``None`` standing for an identity.
    """
    offsets, total = [], 0
    for r, c in var_sizes:
        offsets.append(total)
        total += r * c
    rows: list[list[Fraction]] = []
    for terms in equations:
        shape = None
        for left, v, right, _ in terms:
            r, c = var_sizes[v]
            out = (left.rows if left is not None else r, right.cols if right is not None else c)
            if shape is not None and shape != out:
                raise ShapeError("inconsistent term shapes in a linear equation")
            shape = out
        block = [[Fraction(0)] * total for _ in range(shape[0] * shape[1])]
        for left, v, right, sign in terms:
            r, c = var_sizes[v]
            for a in range(shape[0]):
                for b in range(shape[1]):
                    row = block[a * shape[1] + b]
                    # (left X right)[a, b] = sum_ij left[a, i] X[i, j] right[j, b]
                    for i in range(r):
                        li = (1 if i == a else 0) if left is None else left[a, i]
                        if not li:
                            continue
                        for j in range(c):
                            rj = (1 if j == b else 0) if right is None else right[j, b]
                            if rj:
                                row[offsets[v] + i * c + j] += sign * li * rj
        rows.extend(block)
    return Matrix(rows, len(rows), total)


def stabilizer_lie_dimension(s: LomadzeSystem | HelmkeSystem) -> int:
    """Dimension of the Lie algebra of the stabilizer (solutions of the linearized equations)."""
    if isinstance(s, LomadzeSystem):
        n, np_ = s.n, s.n + s.p
        sizes = [(n, n), (np_, np_)]
        eqs = [
            [(None, 1, s.K, 1), (s.K, 0, None, -1)],
            [(None, 1, s.L, 1), (s.L, 0, None, -1)],
            [(None, 1, s.M, 1)],
        ]
    elif isinstance(s, HelmkeSystem):
        n, p = s.n, s.p
        sizes = [(n, n), (n, n), (p, p)]
        eqs = [
            [(None, 1, s.E, 1), (s.E, 0, None, -1)],
            [(None, 1, s.A, 1), (s.A, 0, None, -1)],
            [(None, 1, s.B, 1)],
            [(None, 2, s.C, 1), (s.C, 0, None, -1)],
            [(None, 2, s.D, 1)],
            [(None, 2, s.F, 1)],
        ]
    else:
        raise TypeError("stabilizers are computed for Lomadze and Helmke systems")
    unknowns = sum(r * c for r, c in sizes)
    eqs = [t for t in eqs if _equation_rows(t, sizes)]
    if not eqs:
        return unknowns
    return unknowns - _linear_system(sizes, eqs).rank()


def _equation_rows(terms, sizes) -> int:
    left, v, right, _ = terms[0]
    r, c = sizes[v]
    return (left.rows if left is not None else r) * (right.cols if right is not None else c)


def forget_output(s: HelmkeSystem) -> LomadzeSystem:
    """``(E, A, B)`` read as a Lomadze system without outputs."""
    return LomadzeSystem(s.E, s.A, s.B)


def moduli_dimension(n: int, m: int, p: int) -> int:
    if n < 1:
        raise PreconditionError("n must be at least 1")
    return n * (m + p) + p * m


# -- quiver representations ------------------------------------------------------------


def sigma_representation(s: SigmaSystem) -> Representation:
    return Representation(sigma_quiver(s.n, s.m, s.p), (s.A, s.B, s.C, s.D), s.modulus)


def lomadze_representation(s: LomadzeSystem) -> Representation:
    return Representation(lomadze_quiver(s.n, s.m, s.p), (s.K, s.L, s.M))


def helmke_representation(s: HelmkeSystem) -> Representation:
    return Representation(helmke_quiver(s.n, s.m, s.p), (s.E, s.A, s.B, s.C, s.D, s.F))


def sigma_from_representation(rep: Representation) -> SigmaSystem:
    mq = rep.marked_quiver
    n, m, p = mq.dims
    if mq != sigma_quiver(n, m, p):
        raise ShapeError("representation is not on the classical system quiver")
    return SigmaSystem(*rep.maps)


# -- JSON -------------------------------------------------------------------------------

_FIELDS = {
    "sigma": (("A", "n", "n"), ("B", "n", "m"), ("C", "p", "n"), ("D", "p", "m")),
    "lomadze": (("K", "n+p", "n"), ("L", "n+p", "n"), ("M", "n+p", "p+m")),
    "helmke": (
        ("E", "n", "n"), ("A", "n", "n"), ("B", "n", "m"),
        ("C", "p", "n"), ("D", "p", "m"), ("F", "p", "p"),
    ),
}
_CLASSES = {"sigma": SigmaSystem, "lomadze": LomadzeSystem, "helmke": HelmkeSystem}


def _size(expr: str, dims: dict[str, int]) -> int:
    return sum(dims[x] for x in expr.split("+"))


def system_type(s: System) -> str:
    for name, cls in _CLASSES.items():
        if isinstance(s, cls):
            return name
    raise TypeError(f"not a system: {s!r}")


def system_to_json(s: System) -> dict:
    out = {"type": system_type(s), "n": s.n, "m": s.m, "p": s.p}
    modulus = getattr(s, "modulus", None)
    for name, mat in s.matrices().items():
        out[name] = [list(r) for r in mat.to_json()] if modulus is None else mat.to_json()["entries"]
    if modulus is not None:
        out["modulus"] = modulus
    return out


def system_from_json(data: dict) -> System:
    """Parse a system; ``ValueError`` for malformed input, ``ShapeError`` for bad shapes."""
    if not isinstance(data, dict):
        raise ValueError("a system must be a JSON object")
    kind = data.get("type")
    if kind not in _CLASSES:
        raise ValueError(f"unknown system type {kind!r}")
    try:
        dims = {k: int(data[k]) for k in ("n", "m", "p")}
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"system needs integer n, m, p: {exc}") from exc
    if min(dims.values()) < 0:
        raise ShapeError("dimensions must be nonnegative")
    modulus = data.get("modulus")
    if modulus is not None:
        if kind != "sigma":
            raise ShapeError(f"{kind} systems are defined over Q only")
        modulus = int(modulus)
    mats = []
    for name, rows, cols in _FIELDS[kind]:
        if name not in data:
            raise ValueError(f"missing matrix {name}")
        mats.append(Matrix.from_json(data[name], _size(rows, dims), _size(cols, dims), modulus))
    s = _CLASSES[kind](*mats)
    if (s.n, s.m, s.p) != (dims["n"], dims["m"], dims["p"]):
        raise ShapeError("declared dimensions disagree with the matrices")
    return s
