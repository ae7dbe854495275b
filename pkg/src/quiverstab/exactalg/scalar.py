"""Scalars: exact rationals (``fractions.Fraction``) and prime-field residues.

Rationals are plain :class:`~fractions.Fraction` objects; residues mod a
prime ``q`` are :class:`GF` instances. Both support ``+ - * /`` so the
elimination code in :mod:`quiverstab.exactalg.matrix` is domain-agnostic.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


@lru_cache(maxsize=None)
def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    f = 3
    while f * f <= q:
        if q % f == 0:
            return False
        f += 2
    return True


class GF:
    """Residue class modulo a prime ``q``; ``value`` always lies in ``[0, q)``."""

    __slots__ = ("value", "q")

    def __init__(self, value: int, q: int):
        self.value = value % q
        self.q = q

    def _other(self, other):
        if isinstance(other, GF):
            if other.q != self.q:
                raise ValueError(f"mixed moduli {self.q} and {other.q}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return GF(self.value + o, self.q)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return GF(self.value - o, self.q)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return GF(o - self.value, self.q)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return GF(self.value * o, self.q)

    __rmul__ = __mul__

    def __neg__(self):
        return GF(-self.value, self.q)

    def inverse(self) -> GF:
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse mod {self.q}")
        return GF(pow(self.value, -1, self.q), self.q)

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * GF(o, self.q).inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return GF(o, self.q) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return GF(pow(self.value, e, self.q), self.q)

    def __eq__(self, other):
        if isinstance(other, GF):
            return self.q == other.q and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.q
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.q))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"GF({self.value}, {self.q})"

    def __str__(self):
        return str(self.value)


def to_scalar(x, modulus: int | None = None):
    """Coerce ``x`` (int, Fraction, GF, or a ``"p/q"`` string) into the domain."""
    if modulus is None:
        if isinstance(x, GF):
            raise ValueError("finite-field residue given where a rational was expected")
        if isinstance(x, float):
            raise TypeError("floating-point entries are not accepted")
        return Fraction(x)
    if isinstance(x, GF):
        if x.q != modulus:
            raise ValueError(f"mixed moduli {x.q} and {modulus}")
        return x
    if isinstance(x, float):
        raise TypeError("floating-point entries are not accepted")
    f = Fraction(x)
    return GF(f.numerator, modulus) / f.denominator


def format_scalar(x) -> str:
    """Canonical string: lowest-terms ``"p/q"``, integers without ``/1``."""
    if isinstance(x, GF):
        return str(x.value)
    f = Fraction(x)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"
