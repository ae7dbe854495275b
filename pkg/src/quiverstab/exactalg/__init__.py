"""Exact linear algebra over Q and prime fields, subspaces, and binary forms."""

from .ffenum import enumerate_subspaces, gaussian_binomial, subspace_count
from .forms import BinaryForm, form_gcd
from .matrix import Matrix, det, inverse, rank, rref
from .pencil import (
    form_det,
    has_full_rank_everywhere,
    pencil_determinant,
    pencil_generic_rank,
    pencil_minors_gcd,
    pencil_rank_at,
)
from .scalar import GF, format_scalar, is_prime, to_scalar
from .subspace import (
    Subspace,
    annihilator,
    image,
    kernel,
    krylov_image,
    krylov_kernel,
    subspace_contains,
    subspace_intersect,
    subspace_sum,
)

__all__ = [
    "BinaryForm",
    "GF",
    "Matrix",
    "Subspace",
    "annihilator",
    "det",
    "enumerate_subspaces",
    "form_det",
    "form_gcd",
    "format_scalar",
    "gaussian_binomial",
    "has_full_rank_everywhere",
    "image",
    "inverse",
    "is_prime",
    "kernel",
    "krylov_image",
    "krylov_kernel",
    "pencil_determinant",
    "pencil_generic_rank",
    "pencil_minors_gcd",
    "pencil_rank_at",
    "rank",
    "rref",
    "subspace_contains",
    "subspace_count",
    "subspace_intersect",
    "subspace_sum",
    "to_scalar",
]
