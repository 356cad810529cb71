"""The explicit constants: beta and the additive-energy threshold for C."""

import math

import mpmath


def beta_mp(prec=160):
    """beta = -2 sqrt(3) - 6 log(1 - 1/sqrt(3)) at ``prec`` bits."""
    with mpmath.workprec(prec):
        r3 = mpmath.sqrt(3)
        return -2 * r3 - 6 * mpmath.log(1 - 1 / r3)


BETA = float(beta_mp())


def c_threshold_closed_form(beta=BETA):
    """Root of C - beta - 2 sqrt(2C + 1) = 1: (beta+1) + 4 + 2 sqrt(2(beta+1) + 5)."""
    return (beta + 1) + 4 + 2 * math.sqrt(2 * (beta + 1) + 5)


def moment_bound_rhs(l, sigma, beta=BETA):
    """(l^2 + beta l) log(1/(sigma - 1/2)), the bound on log E|zeta_X(sigma)|^{2l}."""
    return (l * l + beta * l) * math.log(1.0 / (sigma - 0.5))
