"""Homogeneous binary forms in (s, t) with rational coefficients.

``coeffs[i]`` is the coefficient of ``s^(degree-i) t^i``. Reading the list
as a polynomial in ``t`` is the same as setting ``s = 1``; the power of
``s`` dividing a form (its multiplicity at the point ``t = 1, s = 0``) is
``degree - deg_t``. Exact division and gcd work on that univariate image
and restore the lost ``s`` factors explicitly.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence


def _trim(c: list) -> list:
    while c and not c[-1]:
        c.pop()
    return c


class BinaryForm:
    __slots__ = ("degree", "coeffs")

    def __init__(self, coeffs: Sequence, degree: int | None = None):
        c = [Fraction(x) for x in coeffs]
        if degree is None:
            degree = len(c) - 1
        if len(c) != degree + 1:
            raise ValueError(f"degree {degree} form needs {degree + 1} coefficients, got {len(c)}")
        if not any(c):
            degree, c = 0, [Fraction(0)]
        self.degree = degree
        self.coeffs = tuple(c)

    @classmethod
    def zero(cls) -> BinaryForm:
        return cls([0])

    @classmethod
    def constant(cls, c) -> BinaryForm:
        return cls([c])

    @classmethod
    def linear(cls, a, b) -> BinaryForm:
        """``a s + b t``."""
        return cls([a, b])

    @classmethod
    def _from_t_poly(cls, poly: list, degree: int) -> BinaryForm:
        return cls(list(poly) + [0] * (degree + 1 - len(poly)), degree)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def t_poly(self) -> list:
        """Dehomogenization at ``s = 1``: coefficients of ``t^0, t^1, ...``."""
        return _trim(list(self.coeffs))

    def s_multiplicity(self) -> int:
        """Exponent of the largest power of ``s`` dividing the form."""
        return self.degree - (len(self.t_poly()) - 1)

    def __add__(self, other):
        other = _as_form(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise ValueError(f"adding forms of degrees {self.degree} and {other.degree}")
        return BinaryForm([a + b for a, b in zip(self.coeffs, other.coeffs)], self.degree)

    __radd__ = __add__

    def __neg__(self):
        return BinaryForm([-a for a in self.coeffs], self.degree)

    def __sub__(self, other):
        return self + (-_as_form(other))

    def __rsub__(self, other):
        return _as_form(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return BinaryForm.zero()
            return BinaryForm([a * other for a in self.coeffs], self.degree)
        other = _as_form(other)
        if self.is_zero() or other.is_zero():
            return BinaryForm.zero()
        out = [Fraction(0)] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return BinaryForm(out, self.degree + other.degree)

    __rmul__ = __mul__

    def exact_div(self, other: BinaryForm) -> BinaryForm:
        """Quotient ``self / other``; ``other`` must divide ``self``."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero form")
        if self.is_zero():
            return BinaryForm.zero()
        q, r = _poly_divmod(self.t_poly(), other.t_poly())
        if any(r) or self.degree < other.degree:
            raise ArithmeticError("inexact division of binary forms")
        return BinaryForm._from_t_poly(q, self.degree - other.degree)

    def __call__(self, s, t):
        d = self.degree
        return sum(c * Fraction(s) ** (d - i) * Fraction(t) ** i for i, c in enumerate(self.coeffs))

    def normalized(self) -> BinaryForm:
        """Primitive integer coefficients with positive leading (first nonzero) coefficient."""
        if self.is_zero():
            return self
        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for x in ints:
            g = gcd(g, x)
        lead = next(x for x in ints if x)
        if lead < 0:
            g = -g
        return BinaryForm([Fraction(x, g) for x in ints], self.degree)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BinaryForm.constant(other)
        if not isinstance(other, BinaryForm):
            return NotImplemented
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.degree, self.coeffs))

    def __repr__(self):
        return f"BinaryForm({self})"

    def __str__(self):
        if self.is_zero():
            return "0"
        d = self.degree
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "*".join(
                x for x in (_power("s", d - i), _power("t", i)) if x
            )
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")

    def to_json(self):
        from .scalar import format_scalar

        return {"degree": self.degree, "coeffs": [format_scalar(c) for c in self.coeffs]}


def _power(var: str, e: int) -> str:
    if e == 0:
        return ""
    return var if e == 1 else f"{var}^{e}"


def _as_form(x) -> BinaryForm:
    if isinstance(x, BinaryForm):
        return x
    return BinaryForm.constant(x)


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    b = _trim(list(b))
    if len(a) < len(b):
        return [], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] / lead
        q[k] = c
        if c:
            for j, bj in enumerate(b):
                a[k + j] -= c * bj
    return q, _trim(a[: len(b) - 1])


def _poly_gcd(a: list, b: list) -> list:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    if not a:
        return a
    lead = a[-1]
    return [c / lead for c in a]


def form_gcd(forms: Iterable[BinaryForm]) -> BinaryForm:
    """Gcd of binary forms, normalized; the zero form if every input is zero."""
    g_poly: list | None = None
    s_mult: int | None = None
    for f in forms:
        if f.is_zero():
            continue
        fp = f.t_poly()
        mult = f.degree - (len(fp) - 1)
        s_mult = mult if s_mult is None else min(s_mult, mult)
        g_poly = fp if g_poly is None else _poly_gcd(g_poly, fp)
    if g_poly is None:
        return BinaryForm.zero()
    g_poly = _poly_gcd(g_poly, g_poly)
    return BinaryForm._from_t_poly(g_poly, s_mult + len(g_poly) - 1).normalized()
