import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quiverstab.errors import BudgetExceeded, PreconditionError
from quiverstab.exactalg import Matrix
from quiverstab.quiver import Character, Representation
from quiverstab.stability import (
    ChamberLocation,
    Verdict,
    character_ratio,
    classify_lomadze_character,
    helmke_stability,
    king_exhaustive,
    lambda_set,
    lomadze_stability,
    no_semistable_points,
    sample_character,
    sigma_stability,
)
from quiverstab.systems import (
    HelmkeSystem,
    LomadzeSystem,
    SigmaSystem,
    embed_sigma_helmke,
    embed_sigma_lomadze,
    lomadze_representation,
    sigma_controllable,
    sigma_observable,
    sigma_representation,
)

from helpers import rand_lomadze, rand_sigma

F = Fraction


def sigma(n, m, p, A, B, C, D, modulus=None):
    return SigmaSystem.from_lists(n, m, p, A, B, C, D, modulus)


# -- walls and chambers ------------------------------------------------------------


def test_lambda_set_examples():
    assert lambda_set(1, 0).values == (0, 1, math.inf)
    assert lambda_set(1, 1).values == (0, 1, 2, math.inf)
    assert lambda_set(2, 1).values == (0, F(1, 2), 1, F(3, 2), 2, 3, math.inf)
    with pytest.raises(PreconditionError):
        lambda_set(0, 1)


def test_classify_examples():
    for n, p in ((1, 0), (2, 3)):
        assert classify_lomadze_character(1, 1, n, p).kind == "outside"
        assert classify_lomadze_character(-1, 1, n, p).is_wall(1)
    loc = classify_lomadze_character(-2, 3, 2, 1)
    assert loc.is_just_below(1) and loc.lower == F(1, 2)
    assert classify_lomadze_character(-4, 3, 2, 1).is_just_above(1)
    with pytest.raises(PreconditionError):
        classify_lomadze_character(0, 0, 1, 1)


def test_chamber_coverage():
    for n in range(1, 5):
        for p in range(0, 5):
            lam = lambda_set(n, p).values
            for c0, c1 in itertools.product(range(-12, 13), repeat=2):
                if (c0, c1) == (0, 0):
                    continue
                loc = classify_lomadze_character(c0, c1, n, p)
                if no_semistable_points(c0, c1, n, p):
                    assert loc.kind == "outside"
                    continue
                x = character_ratio(c0, c1)
                assert x >= 0
                if loc.kind == "wall":
                    assert x in lam and loc.value == x
                else:
                    assert loc.kind == "interval" and x not in lam
                    assert loc.lower < x < loc.upper
                    assert not any(loc.lower < v < loc.upper for v in lam)


def test_sample_characters_land_in_their_chamber():
    for n, p in ((1, 0), (2, 1), (3, 2)):
        lam = lambda_set(n, p)
        for v in lam.values:
            chi = sample_character(ChamberLocation("wall", value=v))
            if not no_semistable_points(*chi, n, p):
                assert classify_lomadze_character(*chi, n, p).is_wall(v)
        for lo, hi in lam.intervals():
            chi = sample_character(ChamberLocation("interval", lower=lo, upper=hi))
            loc = classify_lomadze_character(*chi, n, p)
            assert loc.kind == "outside" or (loc.lower, loc.upper) == (lo, hi)


# -- deciders ----------------------------------------------------------------------


def test_sigma_stability_examples():
    ok = sigma(1, 1, 1, [[0]], [[1]], [[1]], [[0]])
    assert sigma_stability(ok, 1).kind is Verdict.STABLE
    assert sigma_stability(sigma(1, 1, 0, [[0]], [[0]], [], []), 1).kind is Verdict.UNSTABLE
    assert sigma_stability(ok, 0).kind is Verdict.STABLE
    assert sigma_stability(sigma(1, 1, 0, [[0]], [[1]], [], []), 0).kind is Verdict.SEMISTABLE_NOT_STABLE
    assert sigma_stability(sigma(1, 1, 0, [[0]], [[1]], [], []), -1).kind is Verdict.UNSTABLE


def test_lomadze_stability_examples():
    s = sigma(2, 1, 0, [[0, 1], [0, 0]], [[0], [1]], [], [])
    assert lomadze_stability(embed_sigma_lomadze(s), -2, 3).kind is Verdict.STABLE
    bad = LomadzeSystem.from_lists(1, 1, 0, [[1]], [[0]], [[0]])
    assert lomadze_stability(bad, -1, 3).kind is Verdict.UNSTABLE
    assert lomadze_stability(bad, 1, 1).kind is Verdict.NO_SEMISTABLE_POINTS


def test_lomadze_wall_verdicts():
    both = embed_sigma_lomadze(sigma(1, 1, 1, [[0]], [[1]], [[1]], [[0]]))
    only_c = embed_sigma_lomadze(sigma(1, 1, 1, [[0]], [[1]], [[0]], [[0]]))
    neither = embed_sigma_lomadze(sigma(1, 1, 1, [[0]], [[0]], [[0]], [[0]]))
    assert lomadze_stability(both, -1, 1).kind is Verdict.STABLE
    assert lomadze_stability(only_c, -1, 1).kind is Verdict.SEMISTABLE_NOT_STABLE
    assert lomadze_stability(neither, -1, 1).kind is Verdict.UNSTABLE


def test_lomadze_other_chambers_unsupported():
    s = embed_sigma_lomadze(sigma(2, 1, 1, [[0, 1], [0, 0]], [[0], [1]], [[1, 0]], [[0]]))
    # ratio 1/4 lies in (0, 1/2), away from the wall 1
    v = lomadze_stability(s, -1, 4)
    assert v.kind is Verdict.UNSUPPORTED and v.chamber == "interval(0, 1/2)"


def test_helmke_stability_examples():
    h = embed_sigma_helmke(sigma(1, 1, 1, [[0]], [[1]], [[1]], [[0]]))
    assert helmke_stability(h, -2, 1, 1).kind is Verdict.UNSUPPORTED
    assert helmke_stability(h, -3, 4, 1).kind is Verdict.STABLE
    zero_pencil = HelmkeSystem(Matrix.zeros(1, 1), Matrix.zeros(1, 1), h.B, h.C, h.D, h.F)
    assert helmke_stability(zero_pencil, -3, 4, 1).kind is Verdict.UNSTABLE
    assert helmke_stability(h, 1, 1, 1).kind is Verdict.UNSUPPORTED


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**9), st.integers(1, 6))
def test_lomadze_scaling_invariance(seed, scale):
    rng = random.Random(seed)
    s = rand_lomadze(rng)
    c0, c1 = rng.randint(-6, 6), rng.randint(-6, 6)
    if (c0, c1) == (0, 0):
        return
    assert lomadze_stability(s, c0, c1).kind == lomadze_stability(s, scale * c0, scale * c1).kind


def _points_inside(lo, hi):
    lo = F(lo)
    hi = lo + 2 if hi == math.inf else F(hi)
    return [lo + (hi - lo) * F(k, 5) for k in (1, 2, 4)]


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**9))
def test_verdict_constant_on_chambers(seed):
    rng = random.Random(seed)
    s = rand_lomadze(rng)
    for lo, hi in lambda_set(s.n, s.p).intervals():
        kinds = set()
        for x in _points_inside(lo, hi):
            chi = (-x.numerator, x.denominator)
            if not no_semistable_points(*chi, s.n, s.p):
                kinds.add(lomadze_stability(s, *chi).kind)
        assert len(kinds) <= 1


# -- oracle ----------------------------------------------------------------------------


def test_oracle_examples():
    rep = sigma_representation(sigma(1, 1, 0, [[0]], [[1]], [], [], modulus=2))
    assert king_exhaustive(rep, Character((1,))).kind is Verdict.STABLE
    rep0 = sigma_representation(sigma(1, 1, 0, [[0]], [[0]], [], [], modulus=2))
    v = king_exhaustive(rep0, Character((1,)))
    assert v.kind is Verdict.UNSTABLE
    assert v.witness.subspaces[0].is_zero()


def test_oracle_never_unstable_at_zero_character():
    rng = random.Random(2)
    for _ in range(40):
        s = rand_sigma(rng, n=rng.randint(1, 2), m=rng.randint(0, 2), p=rng.randint(0, 2), lo=0, hi=1, modulus=2)
        assert king_exhaustive(sigma_representation(s), Character((0,))).kind.semistable


def test_oracle_witnesses_are_subrepresentations():
    from quiverstab.quiver import subrep_is_valid

    rng = random.Random(8)
    for _ in range(40):
        s = rand_sigma(rng, n=2, m=1, p=1, lo=0, hi=1, modulus=2)
        rep = sigma_representation(s)
        for chi in (-1, 0, 1):
            v = king_exhaustive(rep, Character((chi,)))
            if v.witness is not None:
                assert subrep_is_valid(rep, v.witness)


def test_oracle_budget_and_domain_errors():
    rep = sigma_representation(sigma(2, 0, 0, [[0, 0], [0, 0]], [[], []], [], [], modulus=3))
    with pytest.raises(BudgetExceeded):
        king_exhaustive(rep, Character((1,)), budget=5)
    with pytest.raises(PreconditionError):
        king_exhaustive(sigma_representation(sigma(1, 0, 0, [[0]], [[]], [], [])), Character((1,)))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9), st.sampled_from([2, 3]))
def test_oracle_agrees_with_classical_decider(seed, q):
    rng = random.Random(seed)
    n, m, p = rng.randint(1, 2), rng.randint(0, 2), rng.randint(0, 2)
    s = rand_sigma(rng, n, m, p, lo=0, hi=q - 1, modulus=q)
    rep = sigma_representation(s)
    for chi in (-1, 0, 1):
        assert king_exhaustive(rep, Character((chi,))).kind is sigma_stability(s, chi).kind


def _lomadze_pair(rng):
    """A Lomadze embedding over Q and the same matrices over F_3, with matching Kalman ranks."""
    while True:
        n, m, p = rng.randint(1, 2), rng.randint(0, 1), rng.randint(0, 1)
        s = rand_sigma(rng, n, m, p, lo=0, hi=2)
        s3 = SigmaSystem(*(x.reduce_mod(3) for x in (s.A, s.B, s.C, s.D)))
        if (sigma_controllable(s), sigma_observable(s)) == (sigma_controllable(s3), sigma_observable(s3)):
            L = embed_sigma_lomadze(s)
            base = lomadze_representation(L)
            return L, Representation(base.marked_quiver, tuple(x.reduce_mod(3) for x in base.maps), 3)


def test_lomadze_intervals_next_to_wall_agree_with_oracle():
    rng = random.Random(11)
    for _ in range(40):
        L, rep = _lomadze_pair(rng)
        for lo, hi in lambda_set(L.n, L.p).intervals():
            if 1 not in (lo, hi):
                continue
            chi = sample_character(ChamberLocation("interval", lower=lo, upper=hi))
            decided = lomadze_stability(L, *chi).kind
            oracle = king_exhaustive(rep, Character(chi)).kind
            assert decided.semistable == oracle.semistable
            assert (decided is Verdict.STABLE) == (oracle is Verdict.STABLE)


def test_lomadze_wall_stability_agrees_with_oracle():
    rng = random.Random(12)
    for _ in range(40):
        L, rep = _lomadze_pair(rng)
        decided = lomadze_stability(L, -1, 1).kind
        oracle = king_exhaustive(rep, Character((-1, 1))).kind
        assert (decided is Verdict.STABLE) == (oracle is Verdict.STABLE)
        if decided is Verdict.SEMISTABLE_NOT_STABLE:
            assert oracle is Verdict.SEMISTABLE_NOT_STABLE


def test_wall_reading_misses_semistable_points_found_by_oracle():
    """At the wall the decider calls a system semistable only when it is controllable
    or observable. The oracle finds semistable points beyond that: here a system
    that is neither."""
    L = embed_sigma_lomadze(sigma(1, 0, 0, [[0]], [[]], [], []))
    base = lomadze_representation(L)
    rep = Representation(base.marked_quiver, tuple(x.reduce_mod(3) for x in base.maps), 3)
    assert lomadze_stability(L, -1, 1).kind is Verdict.UNSTABLE
    assert king_exhaustive(rep, Character((-1, 1))).kind is Verdict.SEMISTABLE_NOT_STABLE
