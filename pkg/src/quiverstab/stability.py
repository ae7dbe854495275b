"""Stability verdicts for quiver representations and the three system classes.

Lomadze characters ``(chi0, chi1)`` only matter through the ratio
``-chi0/chi1``; the finite set of walls splits ``[0, inf]`` into open
intervals. Only the wall ``1`` and its two neighbouring intervals have a
decision procedure (observability and controllability); other chambers are
reported as unsupported. ``king_exhaustive`` is an independent oracle that
checks every subrepresentation over a small prime field.
"""

from __future__ import annotations

import bisect
import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import BudgetExceeded, PreconditionError, ShapeError
from .exactalg import Subspace, enumerate_subspaces, subspace_count
from .quiver import Character, Representation, SubrepWitness, pairing_dims, subrep_is_valid
from .systems import (
    HelmkeSystem,
    LomadzeSystem,
    SigmaSystem,
    helmke_controllable,
    lomadze_controllable,
    lomadze_observable,
    sigma_controllable,
    sigma_observable,
)

ORACLE_BUDGET = 10**6


class Verdict(enum.Enum):
    STABLE = "stable"
    SEMISTABLE_NOT_STABLE = "semistable-not-stable"
    UNSTABLE = "unstable"
    NO_SEMISTABLE_POINTS = "no-semistable-points"
    UNSUPPORTED = "unsupported"

    @property
    def semistable(self) -> bool:
        return self in (Verdict.STABLE, Verdict.SEMISTABLE_NOT_STABLE)


@dataclass(frozen=True)
class StabilityVerdict:
    kind: Verdict
    witness: SubrepWitness | None = None
    chamber: str | None = None

    def to_json(self) -> dict:
        out = {"verdict": self.kind.value}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.chamber is not None:
            out["chamber"] = self.chamber
        return out


# -- walls and chambers ------------------------------------------------------------

Extended = Fraction | float  # math.inf stands for the wall at infinity


def format_extended(x: Extended) -> str:
    if x == math.inf:
        return "inf"
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


@dataclass(frozen=True)
class LambdaSet:
    n: int
    p: int
    values: tuple[Extended, ...]

    def intervals(self) -> list[tuple[Extended, Extended]]:
        return list(zip(self.values, self.values[1:]))


def lambda_set(n: int, p: int) -> LambdaSet:
    """All ``v/u`` with ``0 <= v <= n+p`` and ``0 <= u <= n``, ``v/0`` read as ``inf``."""
    if n < 1:
        raise PreconditionError("n must be at least 1")
    if p < 0:
        raise PreconditionError("p must be nonnegative")
    vals: set[Extended] = {math.inf}
    for u in range(1, n + 1):
        for v in range(n + p + 1):
            vals.add(Fraction(v, u))
    return LambdaSet(n, p, tuple(sorted(vals)))


@dataclass(frozen=True)
class ChamberLocation:
    """``kind`` is ``wall``, ``interval`` or ``outside``.

    An interval ``(lower, upper)`` is at once the lower neighbourhood of the
    wall ``upper`` and the upper neighbourhood of the wall ``lower``.
    """

    kind: str
    value: Extended | None = None
    lower: Extended | None = None
    upper: Extended | None = None

    def label(self) -> str:
        if self.kind == "wall":
            return f"wall({format_extended(self.value)})"
        if self.kind == "interval":
            return f"interval({format_extended(self.lower)}, {format_extended(self.upper)})"
        return "outside-cone"

    def is_wall(self, lam) -> bool:
        return self.kind == "wall" and self.value == lam

    def is_just_below(self, lam) -> bool:
        return self.kind == "interval" and self.upper == lam

    def is_just_above(self, lam) -> bool:
        return self.kind == "interval" and self.lower == lam


def no_semistable_points(chi0: int, chi1: int, n: int, p: int) -> bool:
    return chi0 > 0 or chi1 < 0 or n * chi0 + (n + p) * chi1 < 0


def character_ratio(chi0: int, chi1: int) -> Extended:
    return math.inf if chi1 == 0 else Fraction(-chi0, chi1)


def classify_lomadze_character(chi0: int, chi1: int, n: int, p: int) -> ChamberLocation:
    if chi0 == 0 and chi1 == 0:
        raise PreconditionError("the zero character has no chamber")
    if no_semistable_points(chi0, chi1, n, p):
        return ChamberLocation("outside")
    lam = lambda_set(n, p)
    x = character_ratio(chi0, chi1)
    i = bisect.bisect_left(lam.values, x)
    if i < len(lam.values) and lam.values[i] == x:
        return ChamberLocation("wall", value=x)
    return ChamberLocation("interval", lower=lam.values[i - 1], upper=lam.values[i])


def sample_character(loc: ChamberLocation) -> tuple[int, int] | None:
    """A primitive ``(chi0, chi1)`` with ratio at the wall or the interval midpoint."""
    if loc.kind == "outside":
        return None
    if loc.kind == "wall":
        x = loc.value
    elif loc.upper == math.inf:
        x = Fraction(loc.lower) + 1
    else:
        x = (Fraction(loc.lower) + Fraction(loc.upper)) / 2
    if x == math.inf:
        return (-1, 0)
    x = Fraction(x)
    return (-x.numerator, x.denominator)


# -- deciders ---------------------------------------------------------------------


def sigma_stability(sys: SigmaSystem, chi: int) -> StabilityVerdict:
    if chi > 0:
        kind = Verdict.STABLE if sigma_controllable(sys) else Verdict.UNSTABLE
    elif chi < 0:
        kind = Verdict.STABLE if sigma_observable(sys) else Verdict.UNSTABLE
    else:
        both = sigma_controllable(sys) and sigma_observable(sys)
        kind = Verdict.STABLE if both else Verdict.SEMISTABLE_NOT_STABLE
    return StabilityVerdict(kind, chamber=f"chi={chi}")


def lomadze_stability(sys: LomadzeSystem, chi0: int, chi1: int) -> StabilityVerdict:
    loc = classify_lomadze_character(chi0, chi1, sys.n, sys.p)
    label = loc.label()
    if loc.kind == "outside":
        return StabilityVerdict(Verdict.NO_SEMISTABLE_POINTS, chamber=label)
    if loc.is_just_below(1):
        ok = lomadze_controllable(sys)
    elif loc.is_just_above(1):
        ok = lomadze_observable(sys)
    elif loc.is_wall(1):
        c, o = lomadze_controllable(sys), lomadze_observable(sys)
        if c and o:
            kind = Verdict.STABLE
        elif c or o:
            kind = Verdict.SEMISTABLE_NOT_STABLE
        else:
            kind = Verdict.UNSTABLE
        return StabilityVerdict(kind, chamber=label)
    else:
        return StabilityVerdict(Verdict.UNSUPPORTED, chamber=label)
    return StabilityVerdict(Verdict.STABLE if ok else Verdict.UNSTABLE, chamber=label)


def helmke_chamber_holds(n: int, p: int, r: int, s: int, t: int) -> bool:
    return n * r + (n - 1) * s + min(p, n) * t < 0 and s + r > 0 and t > 0


def helmke_stability(sys: HelmkeSystem, r: int, s: int, t: int) -> StabilityVerdict:
    if not helmke_chamber_holds(sys.n, sys.p, r, s, t):
        return StabilityVerdict(Verdict.UNSUPPORTED, chamber="outside-controllable-chamber")
    kind = Verdict.STABLE if helmke_controllable(sys) else Verdict.UNSTABLE
    return StabilityVerdict(kind, chamber="controllable-chamber")


# -- exhaustive oracle -----------------------------------------------------------------


def king_exhaustive(rep: Representation, chi: Character, budget: int = ORACLE_BUDGET) -> StabilityVerdict:
    """Check every admissible subrepresentation over ``F_q``.

    Unmarked vertices carry either all-zero subspaces (then the pairing must
    be ``>= 0``) or all-full ones (then it must be ``>= <chi, R>``).
    Strictness is required for proper subrepresentations once the unmarked
    vertices are collapsed to one: a zero pattern is proper unless the marked
    part is zero, a full pattern unless the marked part is full.
    """
    q = rep.modulus
    if q is None:
        raise PreconditionError("the oracle runs over a prime field only")
    mq = rep.marked_quiver
    chi.weight_map(mq)
    if any(m.modulus != q for m in rep.maps):
        raise ShapeError("mixed domains in the representation")
    marked = mq.marked_list
    sizes = [subspace_count(mq.dims[v], q) for v in marked]
    configurations = 2 * math.prod(sizes)
    if configurations > budget:
        raise BudgetExceeded(f"{configurations} subspace families exceed the oracle budget {budget}")
    lattices = [enumerate_subspaces(mq.dims[v], q, budget=max(budget, 1)) for v in marked]
    total = pairing_dims(chi, mq.dims, mq)

    tie: SubrepWitness | None = None
    for pattern in ("zero", "full"):
        fill = {
            v: (Subspace.zero if pattern == "zero" else Subspace.full)(mq.dims[v], q)
            for v in mq.unmarked_list
        }
        bound = 0 if pattern == "zero" else total
        for combo in product(*lattices):
            subs = dict(zip(marked, combo))
            subs.update(fill)
            witness = SubrepWitness(tuple(subs[v] for v in range(mq.quiver.vertex_count)))
            if not subrep_is_valid(rep, witness):
                continue
            value = pairing_dims(chi, witness.dims(), mq)
            if value < bound:
                return StabilityVerdict(Verdict.UNSTABLE, witness)
            if value == bound and tie is None:
                if pattern == "zero":
                    proper = any(not s.is_zero() for s in combo)
                else:
                    proper = any(not s.is_full() for s in combo)
                if proper:
                    tie = witness
    if tie is not None:
        return StabilityVerdict(Verdict.SEMISTABLE_NOT_STABLE, tie)
    return StabilityVerdict(Verdict.STABLE)
