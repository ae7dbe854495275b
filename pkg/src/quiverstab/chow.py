"""Chow rings of the two compactifications as weighted graded presentations.

A presentation is a polynomial ring in weighted variables modulo integer
relations. Its additive rank is computed degree by degree over Q: the
quotient in degree ``k`` has dimension (monomials of degree ``k``) minus the
rank of the span of ``monomial * relation`` products landing in degree
``k``. The rings here are torsion-free over Z, so the Q-rank is the Z-rank.

Only single-input presentations can be built; for more inputs only the
closed-form ranks are available.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import comb, gcd
from typing import Iterable, Sequence

from .errors import BudgetExceeded, PreconditionError, ShapeError, UnavailableError

MONOMIAL_BUDGET = 20000

Monomial = tuple[int, ...]


class Polynomial:
    """Sparse polynomial with integer coefficients in ``nvars`` variables."""

    __slots__ = ("nvars", "terms")

    def __init__(self, terms: dict[Monomial, int] | None = None, nvars: int = 0):
        self.nvars = nvars
        clean = {}
        for mono, c in (terms or {}).items():
            if len(mono) != nvars:
                raise ShapeError(f"monomial {mono} has the wrong number of exponents")
            if c:
                clean[tuple(mono)] = int(c)
        self.terms = clean

    @classmethod
    def constant(cls, c: int, nvars: int) -> Polynomial:
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def var(cls, i: int, nvars: int, power: int = 1) -> Polynomial:
        mono = [0] * nvars
        mono[i] = power
        return cls({tuple(mono): 1}, nvars)

    def is_zero(self) -> bool:
        return not self.terms

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ShapeError("polynomials in different rings")
            return other
        return Polynomial.constant(int(other), self.nvars)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Polynomial(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({m: -c for m, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(out, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = Polynomial.constant(1, self.nvars)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def extended(self, nvars: int) -> Polynomial:
        """The same polynomial in a ring with extra trailing variables."""
        pad = (0,) * (nvars - self.nvars)
        return Polynomial({m + pad: c for m, c in self.terms.items()}, nvars)

    def degrees(self, weights: Sequence[int]) -> set[int]:
        return {weighted_degree(m, weights) for m in self.terms}

    def is_homogeneous(self, weights: Sequence[int]) -> bool:
        return len(self.degrees(weights)) <= 1

    def degree(self, weights: Sequence[int]) -> int:
        degs = self.degrees(weights)
        if len(degs) != 1:
            raise ShapeError("degree of a zero or inhomogeneous polynomial")
        return degs.pop()

    def format(self, names: Sequence[str], weights: Sequence[int] | None = None) -> str:
        if not self.terms:
            return "0"
        weights = weights or [1] * self.nvars
        monos = sorted(self.terms, key=lambda m: degrevlex_key(m, weights), reverse=True)
        parts = []
        for m in monos:
            c = self.terms[m]
            factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e]
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Polynomial({self.terms!r}, nvars={self.nvars})"


_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")


def parse_polynomial(text: str, names: Sequence[str]) -> Polynomial:
    """Inverse of :meth:`Polynomial.format`."""
    index = {n: i for i, n in enumerate(names)}
    nvars = len(names)
    out = Polynomial({}, nvars)
    text = text.strip()
    if text == "0":
        return out
    pos = 0
    while pos < len(text):
        match = _TERM.match(text, pos)
        if not match or match.end() == pos:
            raise ValueError(f"cannot parse polynomial {text!r}")
        pos = match.end()
        sign = -1 if match.group(1) == "-" else 1
        coef, mono = sign, [0] * nvars
        for factor in match.group(2).strip().split("*"):
            factor = factor.strip()
            if factor.isdigit():
                coef *= int(factor)
                continue
            base, _, exp = factor.partition("^")
            if base not in index:
                raise ValueError(f"unknown variable {base!r}")
            mono[index[base]] += int(exp) if exp else 1
        out = out + Polynomial({tuple(mono): coef}, nvars)
    return out


def weighted_degree(mono: Monomial, weights: Sequence[int]) -> int:
    return sum(e * w for e, w in zip(mono, weights))


def degrevlex_key(mono: Monomial, weights: Sequence[int]):
    """Sort key: weighted degree, then smaller trailing exponents rank higher."""
    return (weighted_degree(mono, weights), tuple(-e for e in reversed(mono)))


def monomials_of_degree(weights: Sequence[int], degree: int) -> list[Monomial]:
    """All monomials of the given weighted degree, in descending degrevlex order."""
    out: list[Monomial] = []

    def rec(i: int, left: int, acc: list[int]):
        if i == len(weights):
            if left == 0:
                out.append(tuple(acc))
            return
        for e in range(left // weights[i] + 1):
            acc.append(e)
            rec(i + 1, left - e * weights[i], acc)
            acc.pop()

    rec(0, degree, [])
    out.sort(key=lambda m: degrevlex_key(m, weights), reverse=True)
    return out


@dataclass(frozen=True)
class GradedPresentation:
    variables: tuple[tuple[str, int], ...]
    relations: tuple[Polynomial, ...]
    top_degree: int

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple((str(n), int(w)) for n, w in self.variables))
        object.__setattr__(self, "relations", tuple(self.relations))
        if self.top_degree < 0:
            raise ShapeError("top degree must be nonnegative")
        if any(w < 1 for _, w in self.variables):
            raise ShapeError("variable weights must be positive")
        k = len(self.variables)
        for r in self.relations:
            if r.nvars != k:
                raise ShapeError("relation lives in the wrong ring")
            if not r.is_homogeneous(self.weights):
                raise ShapeError(f"relation {r.format(self.names)} is not homogeneous")

    @property
    def names(self) -> list[str]:
        return [n for n, _ in self.variables]

    @property
    def weights(self) -> list[int]:
        return [w for _, w in self.variables]

    def to_json(self) -> dict:
        return {
            "variables": [{"name": n, "weight": w} for n, w in self.variables],
            "relations": [r.format(self.names, self.weights) for r in self.relations],
            "top_degree": self.top_degree,
        }

    @classmethod
    def from_json(cls, data: dict) -> GradedPresentation:
        variables = tuple((v["name"], int(v["weight"])) for v in data["variables"])
        names = [n for n, _ in variables]
        rels = tuple(parse_polynomial(r, names) for r in data["relations"])
        return cls(variables, rels, int(data["top_degree"]))


@dataclass(frozen=True)
class ChernClassVector:
    """``classes[k]`` is ``c_k`` of a bundle, a polynomial in the base variables."""

    classes: tuple[Polynomial, ...]

    @classmethod
    def trivial(cls, r: int, nvars: int) -> ChernClassVector:
        zero = Polynomial({}, nvars)
        return cls((Polynomial.constant(1, nvars),) + (zero,) * r)

    def validate(self, base: GradedPresentation, r: int):
        if len(self.classes) != r + 1:
            raise ShapeError(f"a rank-{r} bundle needs {r + 1} Chern classes, got {len(self.classes)}")
        nvars = len(base.variables)
        if self.classes[0] != Polynomial.constant(1, nvars):
            raise ShapeError("c_0 must be 1")
        for k, c in enumerate(self.classes):
            if c.nvars != nvars:
                raise ShapeError(f"c_{k} lives in the wrong ring")
            if not c.is_zero() and c.degrees(base.weights) != {k}:
                raise ShapeError(f"c_{k} is not homogeneous of degree {k}")


def presentation_projective_space(N: int) -> GradedPresentation:
    """``Z[h]/(h^(N+1))``."""
    if N < 0:
        raise PreconditionError("N must be nonnegative")
    return GradedPresentation((("h", 1),), (Polynomial.var(0, 1, N + 1),), N)


def grassmann_bundle_presentation(
    base: GradedPresentation,
    chern: ChernClassVector,
    d: int,
    r: int,
    fiber_top: int | None = None,
) -> GradedPresentation:
    """Adjoin ``X_1..X_d`` and ``Y_1..Y_{r-d}`` with ``sum_i X_i Y_{k-i} = c_k`` for ``k = 1..r``."""
    if not 0 <= d <= r:
        raise PreconditionError(f"need 0 <= d <= r, got d={d}, r={r}")
    chern.validate(base, r)
    if d == 0:
        return base
    k0 = len(base.variables)
    variables = list(base.variables)
    variables += [(f"X{i}", i) for i in range(1, d + 1)]
    variables += [(f"Y{j}", j) for j in range(1, r - d + 1)]
    nv = len(variables)
    one = Polynomial.constant(1, nv)

    def x(i):
        if i == 0:
            return one
        return Polynomial.var(k0 + i - 1, nv) if i <= d else None

    def y(j):
        if j == 0:
            return one
        return Polynomial.var(k0 + d + j - 1, nv) if j <= r - d else None

    relations = [rel.extended(nv) for rel in base.relations]
    for k in range(1, r + 1):
        rel = Polynomial({}, nv)
        for i in range(k + 1):
            xi, yj = x(i), y(k - i)
            if xi is not None and yj is not None:
                rel = rel + xi * yj
        relations.append(rel - chern.classes[k].extended(nv))
    top = base.top_degree + (d * (r - d) if fiber_top is None else fiber_top)
    return GradedPresentation(tuple(variables), tuple(relations), top)


def single_input_chern(n: int, p: int) -> ChernClassVector:
    """Chern classes ``binom(n, k) h^k`` of the rank ``n+1+p`` bundle over ``P^n``."""
    r = n + 1 + p
    classes = [Polynomial.constant(comb(n, k), 1) * Polynomial.var(0, 1, k) for k in range(r + 1)]
    return ChernClassVector(tuple(classes))


def presentation_H_single_input(n: int, p: int) -> GradedPresentation:
    if n < 1:
        raise PreconditionError("n must be at least 1")
    return grassmann_bundle_presentation(
        presentation_projective_space(n), single_input_chern(n, p), p, n + 1 + p
    )


def presentation_L_single_input(n: int, p: int) -> GradedPresentation:
    if n < 1:
        raise PreconditionError("n must be at least 1")
    return presentation_projective_space((p + 1) * (n + 1) - 1)


def presentation_for(space: str, n: int, m: int, p: int) -> GradedPresentation:
    if m != 1:
        raise UnavailableError(
            "presentations are only available for a single input (m = 1); "
            "the Chern classes of the tautological bundle are not known for m > 1"
        )
    if space == "H":
        return presentation_H_single_input(n, p)
    if space == "L":
        return presentation_L_single_input(n, p)
    raise ValueError(f"unknown space {space!r}")


# -- additive rank ---------------------------------------------------------------


class _Echelon:
    """Incremental sparse row echelon form with primitive integer rows.

    Rows are dicts from column index to integer coefficient; the pivot of a
    row is its smallest column. Fraction-free updates keep every entry an
    integer, which is much faster than rational arithmetic here.
    """

    def __init__(self):
        self.pivots: dict[int, dict[int, int]] = {}

    def add(self, row: dict[int, int]) -> bool:
        row = {k: v for k, v in row.items() if v}
        while row:
            lead = min(row)
            piv = self.pivots.get(lead)
            if piv is None:
                self.pivots[lead] = _primitive(row)
                return True
            a, b = piv[lead], row[lead]
            g = gcd(a, b)
            a, b = a // g, b // g
            out = {k: v * a for k, v in row.items()}
            for k, v in piv.items():
                nv = out.get(k, 0) - b * v
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)
            row = out
        return False

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
    if row[min(row)] < 0:
        g = -g
    return {k: v // g for k, v in row.items()}


def quotient_dimension(pres: GradedPresentation, degree: int, budget: int = MONOMIAL_BUDGET) -> int:
    weights = pres.weights
    monos = monomials_of_degree(weights, degree)
    if len(monos) > budget:
        raise BudgetExceeded(f"{len(monos)} monomials in degree {degree} exceed the budget {budget}")
    index = {m: i for i, m in enumerate(monos)}
    ech = _Echelon()
    full = len(monos)
    # highest-degree relations first; on the Whitney presentations this keeps fill-in far lower
    rels = sorted(
        ((rel.degree(weights), i, rel) for i, rel in enumerate(pres.relations) if not rel.is_zero()),
        key=lambda x: (-x[0], x[1]),
    )
    for dr, _, rel in rels:
        if dr > degree:
            continue
        for u in monomials_of_degree(weights, degree - dr):
            row = {}
            for m, c in rel.terms.items():
                j = index[tuple(a + b for a, b in zip(u, m))]
                row[j] = row.get(j, 0) + c
            ech.add(row)
            if ech.rank == full:
                return 0
    return full - ech.rank


@dataclass(frozen=True)
class RankReport:
    total: int
    per_degree: tuple[int, ...]

    def to_json(self) -> dict:
        return {"total": self.total, "per_degree": list(self.per_degree)}


def additive_rank(pres: GradedPresentation, budget: int = MONOMIAL_BUDGET) -> RankReport:
    """Q-dimension of the quotient ring, per degree ``0..top_degree``.

    Degrees ``top+1 .. top+max_weight`` are checked to vanish, which forces
    every higher degree to vanish too.
    """
    per = [quotient_dimension(pres, k, budget) for k in range(pres.top_degree + 1)]
    top_w = max(pres.weights, default=1)
    for k in range(pres.top_degree + 1, pres.top_degree + top_w + 1):
        extra = quotient_dimension(pres, k, budget)
        if extra:
            raise PreconditionError(
                f"quotient is nonzero in degree {k} above the top degree {pres.top_degree}; "
                "the presentation is incomplete"
            )
    return RankReport(sum(per), tuple(per))


# -- closed forms -------------------------------------------------------------------


def _check_n(n: int):
    if n < 1:
        raise PreconditionError("n must be at least 1")


def rank_L_formula(n: int, m: int, p: int) -> int:
    _check_n(n)
    return comb(m + p, p) * comb(n + 2 * m - 1, n)


def rank_H_formula(n: int, m: int, p: int) -> int:
    _check_n(n)
    return comb(n + p + m, p) * comb(n + 2 * m - 1, n)


@dataclass(frozen=True)
class Comparison:
    n: int
    m: int
    p: int
    rank_L: int
    rank_H: int
    fiber_factor_L: int
    fiber_factor_H: int

    @property
    def isomorphic(self) -> bool:
        return self.p == 0

    @property
    def certificate(self) -> str | None:
        """Why the spaces differ, or ``None`` when they coincide."""
        if self.p == 0:
            return None
        if self.rank_L != self.rank_H:
            return f"rank_L = {self.rank_L} != rank_H = {self.rank_H}"
        return (
            f"fiber factors binom(m+p,p) = {self.fiber_factor_L} < binom(n+m+p,p) = {self.fiber_factor_H}"
            f" (both total ranks are {self.rank_L})"
        )

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "p": self.p,
            "isomorphic": self.isomorphic,
            "rank_L": self.rank_L,
            "rank_H": self.rank_H,
            "certificate": self.certificate,
        }


def compare_compactifications(n: int, m: int, p: int) -> Comparison:
    _check_n(n)
    return Comparison(
        n, m, p,
        rank_L_formula(n, m, p),
        rank_H_formula(n, m, p),
        comb(m + p, p),
        comb(n + m + p, p),
    )


def not_isomorphic(n: int, m: int, p: int) -> bool:
    return not compare_compactifications(n, m, p).isomorphic


def quot_dimension(q: int, r: int, d: int) -> int:
    if r >= q:
        raise PreconditionError(f"need r < q, got r={r}, q={q}")
    return q * (r + d) - r * r


def chern_from_lists(base: GradedPresentation, classes: Iterable[str]) -> ChernClassVector:
    names = base.names
    return ChernClassVector(tuple(parse_polynomial(c, names) for c in classes))
