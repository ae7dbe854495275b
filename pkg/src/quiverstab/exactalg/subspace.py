"""Subspaces of k^n stored canonically by an RREF basis.

Two subspaces are equal exactly when their RREF basis matrices are equal,
so :class:`Subspace` is hashable and usable as a dict key.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import ShapeError
from .matrix import Matrix, rref


@dataclass(frozen=True)
class Subspace:
    ambient_dim: int
    basis: Matrix

    @classmethod
    def span(cls, vectors: Matrix) -> Subspace:
        """Row space of ``vectors``."""
        red, pivots = rref(vectors)
        return cls(vectors.cols, red.submatrix(range(len(pivots)), range(vectors.cols)))

    @classmethod
    def from_vectors(cls, vectors, ambient_dim: int, modulus: int | None = None) -> Subspace:
        vectors = list(vectors)
        return cls.span(Matrix(vectors, len(vectors), ambient_dim, modulus))

    @classmethod
    def zero(cls, n: int, modulus: int | None = None) -> Subspace:
        return cls(n, Matrix.zeros(0, n, modulus))

    @classmethod
    def full(cls, n: int, modulus: int | None = None) -> Subspace:
        return cls(n, Matrix.identity(n, modulus))

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def modulus(self) -> int | None:
        return self.basis.modulus

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def vectors(self) -> list[tuple]:
        return list(self.basis.entries)

    def contains_vector(self, v) -> bool:
        if len(v) != self.ambient_dim:
            raise ShapeError("vector length differs from ambient dimension")
        stacked = Matrix.vstack(self.basis, Matrix([v], 1, self.ambient_dim, self.modulus))
        return stacked.rank() == self.dim

    def image_under(self, m: Matrix) -> Subspace:
        """``m(self)`` for a ``k x ambient_dim`` matrix ``m``."""
        if m.cols != self.ambient_dim:
            raise ShapeError(f"map with {m.cols} columns applied to a subspace of k^{self.ambient_dim}")
        return Subspace.span(self.basis @ m.T)

    def preimage_under(self, m: Matrix) -> Subspace:
        """``{x : m x in self}`` for an ``ambient_dim x k`` matrix ``m``."""
        if m.rows != self.ambient_dim:
            raise ShapeError("preimage: row count differs from ambient dimension")
        ann = annihilator(self)
        return kernel(ann.basis @ m) if ann.dim else Subspace.full(m.cols, m.modulus)

    def __repr__(self):
        return f"Subspace(dim={self.dim}/{self.ambient_dim}, basis={self.basis!r})"

    def to_json(self):
        return {"ambient_dim": self.ambient_dim, "basis": self.basis.to_json()}

    @classmethod
    def from_json(cls, data, modulus: int | None = None) -> Subspace:
        n = int(data["ambient_dim"])
        basis = data["basis"]
        if isinstance(basis, dict):
            if basis.get("modulus") is not None:
                modulus = int(basis["modulus"])
            basis = basis.get("entries", [])
        return cls.span(Matrix.from_json(basis, len(basis), n, modulus))


def image(m: Matrix) -> Subspace:
    """Column space of ``m`` inside k^rows."""
    return Subspace.span(m.T)


def kernel(m: Matrix) -> Subspace:
    """Null space ``{x : m x = 0}`` inside k^cols."""
    red, pivots = rref(m)
    n = m.cols
    free = [j for j in range(n) if j not in pivots]
    zero, one = m.scalar(0), m.scalar(1)
    vecs = []
    for f in free:
        v = [zero] * n
        v[f] = one
        for r, pc in enumerate(pivots):
            v[pc] = -red[r, f]
        vecs.append(v)
    return Subspace.span(Matrix(vecs, len(vecs), n, m.modulus))


def annihilator(a: Subspace) -> Subspace:
    """Vectors ``w`` with ``w . x = 0`` for all ``x`` in ``a``."""
    if a.dim == 0:
        return Subspace.full(a.ambient_dim, a.modulus)
    return kernel(a.basis)


def _check_ambient(a: Subspace, b: Subspace):
    if a.ambient_dim != b.ambient_dim:
        raise ShapeError(f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}")
    if a.modulus != b.modulus:
        raise ShapeError("subspaces over different fields")


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    return Subspace.span(Matrix.vstack(a.basis, b.basis))


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    constraints = Matrix.vstack(annihilator(a).basis, annihilator(b).basis)
    if constraints.rows == 0:
        return Subspace.full(a.ambient_dim, a.modulus)
    return kernel(constraints)


def subspace_contains(a: Subspace, b: Subspace) -> bool:
    """``b`` is a subspace of ``a``."""
    _check_ambient(a, b)
    if b.dim > a.dim:
        return False
    return Matrix.vstack(a.basis, b.basis).rank() == a.dim


def krylov_image(a: Matrix, b: Matrix) -> Subspace:
    """``im [b, ab, ..., a^(n-1) b]``: the smallest a-invariant subspace containing im b."""
    n = a.rows
    if not a.is_square() or b.rows != n:
        raise ShapeError(f"krylov_image: a is {a.shape}, b is {b.shape}")
    blocks = [b]
    for _ in range(1, n):
        blocks.append(a @ blocks[-1])
    return image(Matrix.hstack(*blocks)) if b.cols else Subspace.zero(n, a.modulus)


def krylov_kernel(c: Matrix, a: Matrix) -> Subspace:
    """``ker [c; ca; ...; ca^(n-1)]``: the largest a-invariant subspace inside ker c."""
    n = a.rows
    if not a.is_square() or c.cols != n:
        raise ShapeError(f"krylov_kernel: c is {c.shape}, a is {a.shape}")
    if c.rows == 0:
        return Subspace.full(n, a.modulus)
    blocks = [c]
    for _ in range(1, n):
        blocks.append(blocks[-1] @ a)
    return kernel(Matrix.vstack(*blocks))
