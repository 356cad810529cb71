import math

import mpmath
import numpy as np
import pytest

from mppc import bounds
from mppc.constants import BETA, beta_mp, c_threshold_closed_form
from mppc.errors import DomainError


def test_beta_value():
    assert bounds.compute_beta() == pytest.approx(1.7032, abs=1e-4)
    with mpmath.workdps(40):
        ref = -2 * mpmath.sqrt(3) - 6 * mpmath.log(1 - 1 / mpmath.sqrt(3))
    assert BETA == float(ref)
    assert float(beta_mp(300)) == BETA


def test_beta_makes_endpoint_tight():
    # at a = 1/sqrt 3, x = 0 the log-margin vanishes
    assert abs(bounds.beta_equality_residual()) < 1e-14


def test_c_threshold():
    c = bounds.solve_c_threshold()
    assert c == pytest.approx(13.155, abs=1e-3)
    assert c == pytest.approx(c_threshold_closed_form(), rel=1e-14)
    assert float(bounds.c_threshold_mp()) == pytest.approx(c, rel=1e-15)
    assert c - BETA - 2 * math.sqrt(2 * c + 1) == pytest.approx(1.0, abs=1e-12)


def test_exponent_chain():
    chain = bounds.variance_exponent(bounds.solve_c_threshold())
    assert chain.gcd_exponent == pytest.approx(-2.0, abs=1e-9)
    assert chain.variance_exponent == pytest.approx(-1.0, abs=1e-9)
    assert bounds.variance_exponent(13.155).gcd_exponent == pytest.approx(-2.0, abs=1e-3)
    assert bounds.variance_exponent(20).variance_exponent < -1
    with pytest.raises(DomainError):
        bounds.variance_exponent(1.0)


def test_beta_lemma_point_values():
    assert bounds.beta_lemma_margin(0.3, math.pi) == pytest.approx(math.exp(BETA * 0.09 - 0.6) * 1.69 - 1)
    assert bounds.beta_lemma_margin(0.3, math.pi) > 0


def test_beta_lemma_report():
    rep = bounds.verify_lemma_beta_inequality()
    assert rep.passed and rep.min_margin >= -1e-12
    assert rep.worst_point["a"] == pytest.approx(1 / math.sqrt(3))


def test_beta_lemma_detects_smaller_beta():
    rep = bounds.verify_lemma_beta_inequality(beta=1.6)
    assert not rep.passed


def test_two_alpha():
    assert bounds.two_alpha_margin(0.75) == pytest.approx(2.56 / 2**1.5 + math.log(1 - 2**-0.75))
    assert bounds.two_alpha_margin(0.75) == pytest.approx(0.0022, abs=1e-4)
    assert bounds.two_alpha_margin(0.5) > 0
    rep = bounds.verify_lemma_2alpha()
    assert rep.passed and rep.worst_point["alpha"] == pytest.approx(0.75)


def test_bessel_series_against_mpmath():
    for t in (0.0, 0.5, 2.0, 10.0, 40.0):
        assert bounds.bessel_i0_series(t) == pytest.approx(float(mpmath.besseli(0, t)), rel=1e-14)
    assert 1 - math.log(bounds.bessel_i0_series(2.0)) == pytest.approx(0.176, abs=1e-3)
    assert bounds.verify_bessel_bound().passed


@pytest.mark.parametrize("s", [1.0 + 1e-9, 1.001, 1.2, 1.5, 2.0, 3.0])
def test_zeta_against_mpmath(s):
    with mpmath.workdps(40):
        ref = mpmath.zeta(mpmath.mpf(s)) - 1 / (mpmath.mpf(s) - 1)
    value, tail = bounds.zeta_minus_pole(s)
    assert value == pytest.approx(float(ref), abs=1e-13)
    assert tail < 1e-12


def test_zeta_near_one_gives_euler_gamma():
    assert bounds.zeta_minus_pole(1.0)[0] == pytest.approx(float(mpmath.euler), abs=1e-14)
    assert bounds.zeta(1.2) == pytest.approx(5.591, abs=1e-3)
    assert math.log(bounds.zeta(1.2)) <= math.log(10)


def test_zeta_report():
    rep = bounds.verify_zeta_near_half()
    assert rep.passed
    assert rep.min_margin > 0.3


def test_moment_lemma_small():
    rep = bounds.verify_moment_lemma(l_values=[4], sigma_values=[0.6], prime_limit=2000, per_prime_limit=500)
    assert rep.passed


def test_report_dict_roundtrip():
    d = bounds.verify_lemma_2alpha().to_dict()
    assert {"lemma_id", "grid_spec", "min_margin", "passed", "worst_point", "details"} <= set(d)
