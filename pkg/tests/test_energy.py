import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from mppc.energy import (
    DIFFERENCES, POSITIVE, additive_energy, additive_energy_by_sums, additive_energy_fft,
    energy_growth_profile, fourth_moment_multiplicative, representation_function,
)
from mppc.gcdsums import WeightedSupport
from mppc.sequences import IntegerSequence, gen_power


def brute_energy(A):
    return sum(1 for a, b, c, d in itertools.product(A, repeat=4) if a + b == c + d)


def brute_fourth(items):
    return sum(fa * fb * fc * fd for (a, fa), (b, fb), (c, fc), (d, fd)
               in itertools.product(items, repeat=4) if a * b == c * d)


def test_examples():
    A = IntegerSequence((1, 2, 4, 8))
    r = representation_function(A, POSITIVE).as_dict()
    assert r == {1: 1, 2: 1, 3: 1, 4: 1, 6: 1, 7: 1}
    assert additive_energy(IntegerSequence((1, 2, 3))).energy == 19
    assert additive_energy(A).energy == 28


def test_full_representation_is_symmetric():
    r = representation_function(IntegerSequence((1, 2, 3)), DIFFERENCES).as_dict()
    assert r == {-2: 1, -1: 2, 0: 3, 1: 2, 2: 1}


@settings(max_examples=60, deadline=None)
@given(st.sets(st.integers(1, 60), min_size=1, max_size=14))
def test_three_routes_match_brute(values):
    A = IntegerSequence(tuple(sorted(values)))
    e = brute_energy(A.terms)
    assert additive_energy(A).energy == e
    assert additive_energy_by_sums(A) == e
    assert additive_energy_fft(A) == e


def test_backends_agree_on_sparse_sets(any_backend):
    rng = random.Random(1)
    A = IntegerSequence(tuple(sorted(rng.sample(range(1, 10**12), 300))))
    assert additive_energy(A).energy == additive_energy_by_sums(A)


@pytest.mark.parametrize("n", [1, 2, 3, 10, 50])
def test_interval_closed_form(n):
    assert additive_energy(gen_power(1, n)).energy == (2 * n**3 + n) // 3


def test_sidon_and_bounds():
    for n in (1, 5, 20, 40):
        A = IntegerSequence(tuple(2**k for k in range(n)))
        rep = additive_energy(A)
        assert rep.energy == 2 * n * n - n
        assert rep.lower <= rep.energy <= rep.upper


def test_fourth_moment_examples():
    assert fourth_moment_multiplicative({1: 1}) == 1
    assert fourth_moment_multiplicative({1: 1, 2: 1}) == 6
    r = representation_function(IntegerSequence((1, 2, 3)), POSITIVE)
    assert fourth_moment_multiplicative(r) == 33
    assert fourth_moment_multiplicative(WeightedSupport.from_mapping({1: 2.0, 2: 1.0})) == pytest.approx(33.0)


@settings(max_examples=30, deadline=None)
@given(st.dictionaries(st.integers(1, 40), st.integers(1, 4), min_size=1, max_size=7))
def test_fourth_moment_matches_brute(f):
    assert fourth_moment_multiplicative(f) == brute_fourth(sorted(f.items()))


def test_growth_profile():
    rows = energy_growth_profile(gen_power(1, 400), [100, 200, 400], 0.0)
    ratios = [r.normalized for r in rows]
    assert ratios == sorted(ratios, reverse=True)
    assert ratios[-1] == pytest.approx(2 / 3, rel=1e-4)
    sq = energy_growth_profile(gen_power(2, 200), [100, 200], 0.0)
    assert sq[1].normalized < sq[0].normalized
