"""Acceptance criteria 1 to 10.

Each test tags itself with its criterion number; ``conftest.py`` prints one
PASS/FAIL line per criterion at the end of the run. Run directly with
``python3 tests/test_acceptance.py``.
"""

import itertools
import math
import random
import time
from fractions import Fraction
from math import comb

import pytest

from quiverstab.chow import (
    additive_rank,
    compare_compactifications,
    grassmann_bundle_presentation,
    not_isomorphic,
    presentation_H_single_input,
    presentation_L_single_input,
    presentation_projective_space,
    quot_dimension,
    rank_H_formula,
    rank_L_formula,
)
from quiverstab.quiver import (
    Character,
    MarkedQuiver,
    Quiver,
    helmke_quiver,
    is_quotient_projective,
    lomadze_quiver,
    sigma_quiver,
)
from quiverstab.stability import (
    classify_lomadze_character,
    helmke_stability,
    king_exhaustive,
    lambda_set,
    lomadze_stability,
    sigma_stability,
)
from quiverstab.systems import (
    LomadzeSystem,
    SigmaSystem,
    act_helmke,
    act_lomadze,
    act_sigma,
    embed_sigma_helmke,
    embed_sigma_lomadze,
    helmke_controllable,
    lomadze_controllable,
    lomadze_observable,
    lomadze_regular,
    moduli_dimension,
    sigma_controllable,
    sigma_observable,
    sigma_representation,
    stabilizer_lie_dimension,
)

from helpers import group_for, rand_helmke, rand_lomadze, rand_sigma, random_chern

SEED = 20240811


@pytest.fixture
def criterion(record_property):
    def tag(number: int, detail: str):
        record_property("criterion", number)
        record_property("detail", detail)

    return tag


def embedding_systems() -> list[SigmaSystem]:
    rng = random.Random(SEED)
    return [rand_sigma(rng, rng.randint(1, 3), rng.randint(0, 3), rng.randint(0, 3)) for _ in range(500)]


def test_criterion_01_embedding_equivalence(criterion):
    criterion(1, "embedding equivalence on 500 random systems, < 10 s")
    start = time.perf_counter()
    mismatches = 0
    for s in embedding_systems():
        c, o = sigma_controllable(s), sigma_observable(s)
        lom, hel = embed_sigma_lomadze(s), embed_sigma_helmke(s)
        if not (c == lomadze_controllable(lom) == helmke_controllable(hel) and o == lomadze_observable(lom)):
            mismatches += 1
    elapsed = time.perf_counter() - start
    assert mismatches == 0
    assert elapsed < 10, f"{elapsed:.1f} s"


def binary_sigma_systems():
    for n, m, p in itertools.product((1, 2), (0, 1, 2), (0, 1)):
        shapes = [(n, n), (n, m), (p, n), (p, m)]
        for values in itertools.product((0, 1), repeat=sum(r * c for r, c in shapes)):
            it = iter(values)
            grids = [[[next(it) for _ in range(c)] for _ in range(r)] for r, c in shapes]
            yield SigmaSystem.from_lists(n, m, p, *grids, modulus=2)


def test_criterion_02_oracle_equivalence(criterion):
    criterion(2, "exhaustive F_2 oracle vs classical verdict, zero mismatches, < 60 s")
    start = time.perf_counter()
    count = mismatches = 0
    for s in binary_sigma_systems():
        rep = sigma_representation(s)
        for chi in (-1, 0, 1):
            count += 1
            if king_exhaustive(rep, Character((chi,))).kind is not sigma_stability(s, chi).kind:
                mismatches += 1
    elapsed = time.perf_counter() - start
    assert count == 15318
    assert mismatches == 0
    assert elapsed < 60, f"{elapsed:.1f} s"


def test_criterion_03_chamber_structure(criterion):
    criterion(3, "wall set for (2,1) and the outside-cone test on a 41x41 grid")
    F = Fraction
    assert lambda_set(2, 1).values == (F(0), F(1, 2), F(1), F(3, 2), F(2), F(3), math.inf)
    for n, p in [(2, 1), (1, 0), (3, 2)]:
        for chi0, chi1 in itertools.product(range(-20, 21), repeat=2):
            if chi0 == chi1 == 0:
                continue
            outside = chi0 > 0 or chi1 < 0 or n * chi0 + (n + p) * chi1 < 0
            assert (classify_lomadze_character(chi0, chi1, n, p).kind == "outside") == outside


def lomadze_verdicts(s: LomadzeSystem):
    chars = [(-1, 2), (-1, 1), (-3, 2), (0, 1), (-1, 0)]
    return [lomadze_stability(s, *chi).kind for chi in chars]


def test_criterion_04_group_invariance(criterion):
    criterion(4, "deciders invariant under the group action, 200 pairs per system type")
    rng = random.Random(SEED + 4)
    for _ in range(200):
        s = rand_sigma(rng)
        g = group_for(rng, s)
        t = act_sigma(g, s)
        assert (sigma_controllable(t), sigma_observable(t)) == (sigma_controllable(s), sigma_observable(s))
        for chi in (-1, 0, 1):
            assert sigma_stability(t, chi).kind is sigma_stability(s, chi).kind
    for _ in range(200):
        s = rand_lomadze(rng)
        t = act_lomadze(group_for(rng, s), s)
        for decide in (lomadze_controllable, lomadze_observable, lomadze_regular, stabilizer_lie_dimension):
            assert decide(t) == decide(s)
        assert lomadze_verdicts(t) == lomadze_verdicts(s)
    for _ in range(200):
        s = rand_helmke(rng)
        t = act_helmke(group_for(rng, s), s)
        assert helmke_controllable(t) == helmke_controllable(s)
        assert stabilizer_lie_dimension(t) == stabilizer_lie_dimension(s)
        assert helmke_stability(t, -3, 4, 1).kind is helmke_stability(s, -3, 4, 1).kind


def test_criterion_05_stabilizer_triviality(criterion):
    criterion(5, "trivial stabilizer on controllable or observable systems; zero system")
    checked = 0
    for s in embedding_systems():
        c, o = sigma_controllable(s), sigma_observable(s)
        if c or o:
            checked += 1
            assert stabilizer_lie_dimension(embed_sigma_lomadze(s)) == 0
        if c:
            assert stabilizer_lie_dimension(embed_sigma_helmke(s)) == 0
    assert checked > 0
    for n, m, p in itertools.product((1, 2, 3), (0, 1, 2), (0, 1, 2)):
        assert stabilizer_lie_dimension(LomadzeSystem.zero(n, m, p)) == n * n + (n + p) ** 2


def timed_rank(pres):
    start = time.perf_counter()
    report = additive_rank(pres)
    elapsed = time.perf_counter() - start
    assert elapsed < 5, f"{elapsed:.1f} s"
    return report


def test_criterion_06_chow_ranks(criterion):
    criterion(6, "rank formulas and presentation ranks, each < 5 s")
    assert rank_L_formula(1, 1, 1) == 4
    assert rank_H_formula(1, 1, 1) == 6
    assert rank_H_formula(1, 1, 2) == 12
    for n, m in itertools.product(range(1, 5), range(1, 5)):
        assert rank_H_formula(n, m, 0) == rank_L_formula(n, m, 0)
    report = timed_rank(presentation_H_single_input(1, 1))
    assert (report.total, report.per_degree) == (6, (1, 2, 2, 1))
    for n, p in itertools.product(range(1, 4), range(3)):
        assert timed_rank(presentation_L_single_input(n, p)).total == (p + 1) * (n + 1)


def test_criterion_07_grassmann_multiplicativity(criterion):
    criterion(7, "Grassmann bundle rank is (N+1) binom(r,d) for random Chern data")
    rng = random.Random(SEED + 7)
    for N, r in itertools.product(range(3), range(1, 5)):
        base = presentation_projective_space(N)
        for d in range(min(2, r) + 1):
            for _ in range(3):
                pres = grassmann_bundle_presentation(base, random_chern(rng, base, r), d, r)
                assert additive_rank(pres).total == (N + 1) * comb(r, d)


def test_criterion_08_projectivity(criterion):
    criterion(8, "projectivity of the three system quivers and an unmarked path")
    assert not is_quotient_projective(sigma_quiver(2, 1, 1))
    assert is_quotient_projective(lomadze_quiver(2, 1, 1))
    assert is_quotient_projective(helmke_quiver(2, 1, 1))
    chain = MarkedQuiver(Quiver(3, ((0, 1), (1, 2))), frozenset({0}), (1, 1, 1))
    assert not is_quotient_projective(chain)


def test_criterion_09_dimension_identities(criterion):
    criterion(9, "Quot dimension equals moduli dimension equals n(m+p)+mp")
    for n in range(1, 6):
        for p in range(0, 6):
            for m in range(1, 7 - p):
                assert quot_dimension(p + m, p, n) == moduli_dimension(n, m, p) == n * (m + p) + m * p


def test_criterion_10_non_isomorphism(criterion):
    criterion(10, "compactifications differ exactly when p > 0, with a certificate")
    for n, m, p in itertools.product(range(1, 5), range(5), range(5)):
        if m + p == 0:
            continue
        assert not_isomorphic(n, m, p) == (p > 0)
        c = compare_compactifications(n, m, p)
        if p == 0:
            assert c.rank_L == c.rank_H
        elif m >= 1:
            assert c.rank_L < c.rank_H
        else:
            assert c.fiber_factor_L < c.fiber_factor_H


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
