import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from mppc.errors import DomainError, ParseError, SieveLimitError, SizeError
from mppc.gcdsums import (
    NAIVE, SIEVE, WeightedSupport, difference_set_gcd_sum, difference_weights,
    gcd_sum, gcd_sum_naive, gcd_sum_sieve, load_support,
)
from mppc.sequences import IntegerSequence


def oracle(f, sigma):
    """Direct double sum with exact gcds, compensated."""
    items = list(zip(f.support, f.weights))
    return math.fsum(wa * wb * math.gcd(a, b) ** (2 * sigma) / (a * b) ** sigma
                     for a, wa in items for b, wb in items)


def test_hand_examples(any_backend):
    for sup in ((1, 2), (2, 4)):
        f = WeightedSupport.ones(sup)
        assert gcd_sum_naive(f, 0.5).value == pytest.approx(2 + math.sqrt(2), rel=1e-14)
        assert gcd_sum_sieve(f, 0.5).value == pytest.approx(2 + math.sqrt(2), rel=1e-14)
    A = IntegerSequence((1, 2, 3))
    assert difference_set_gcd_sum(A).value == pytest.approx(5 + 2 * math.sqrt(2), rel=1e-14)
    assert difference_set_gcd_sum(IntegerSequence((1, 2))).value == 1.0


def test_sidon_difference_set_paths_agree(any_backend):
    A = IntegerSequence((1, 2, 4, 8))
    a = difference_set_gcd_sum(A, 0.5, NAIVE).value
    b = difference_set_gcd_sum(A, 0.5, SIEVE).value
    assert a == pytest.approx(b, rel=1e-12)


@settings(max_examples=50, deadline=None)
@given(
    st.dictionaries(st.integers(1, 5000), st.floats(0.0, 10.0), min_size=1, max_size=40),
    st.sampled_from([0.5, 0.6, 0.75, 1.0, 0.01]),
)
def test_both_paths_match_oracle(mapping, sigma):
    f = WeightedSupport.from_mapping(mapping)
    ref = oracle(f, sigma)
    assert gcd_sum_naive(f, sigma).value == pytest.approx(ref, rel=1e-12, abs=1e-300)
    assert gcd_sum_sieve(f, sigma).value == pytest.approx(ref, rel=1e-12, abs=1e-300)


def test_random_support_200(any_backend):
    rng = random.Random(3)
    sup = rng.sample(range(1, 10**5), 200)
    f = WeightedSupport(tuple(sup), tuple(rng.random() for _ in sup))
    assert gcd_sum_sieve(f, 0.6).value == pytest.approx(gcd_sum_naive(f, 0.6).value, rel=1e-9)


@pytest.mark.parametrize("lam", [2, 3, 30, 997])
def test_dilation_invariance(lam):
    rng = random.Random(lam)
    f = WeightedSupport.ones(rng.sample(range(1, 3000), 60))
    for sigma in (0.5, 0.75):
        base = gcd_sum_naive(f, sigma).value
        assert gcd_sum_naive(f.scaled(lam), sigma).value == pytest.approx(base, rel=1e-10)
        assert gcd_sum_sieve(f.scaled(lam), sigma).value == pytest.approx(base, rel=1e-10)


def test_lower_bound_is_l2_norm():
    f = WeightedSupport.from_mapping({3: 1.0, 5: 2.0, 7: 0.5})
    assert gcd_sum(f, 0.5).value >= f.l2sq


def test_errors():
    f = WeightedSupport.ones((1, 2))
    for bad in (0.0, -0.1, 1.5):
        with pytest.raises(DomainError):
            gcd_sum_naive(f, bad)
    with pytest.raises(SieveLimitError):
        gcd_sum_sieve(WeightedSupport.ones((1, 10**6)), 0.5, limit=1000)
    with pytest.raises(SizeError):
        gcd_sum_naive(WeightedSupport.ones(range(1, 20_002)), 0.5)
    with pytest.raises(ValueError):
        WeightedSupport((1, 2), (1.0, -1.0))
    with pytest.raises(ValueError):
        gcd_sum(f, 0.5, method="bogus")


def test_auto_falls_back_when_sieve_is_over_budget(monkeypatch):
    monkeypatch.setenv("MPPC_SIEVE_LIMIT", "10")
    f = WeightedSupport.ones((3, 50))
    assert gcd_sum(f, 0.5).method == NAIVE


def test_empty_support():
    f = WeightedSupport((), ())
    assert gcd_sum_naive(f, 0.5).value == 0.0 == gcd_sum_sieve(f, 0.5).value


def test_difference_weights():
    f = difference_weights(IntegerSequence((1, 2, 3)))
    assert f.support == (1, 2) and f.weights == (2.0, 1.0)


def test_load_support(tmp_path):
    p = tmp_path / "f.txt"
    p.write_text("# f\n1:2\n2:1.5\n\n1:1\n")
    f = load_support(p)
    assert f.support == (1, 2) and f.weights == (3.0, 1.5)
    p.write_text("1:2\n3\n")
    with pytest.raises(ParseError) as info:
        load_support(p)
    assert info.value.line == 2
