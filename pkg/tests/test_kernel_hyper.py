"""Gamma, Pochhammer, and generalized hypergeometric series."""

import math

import pytest

from mxsum.errors import NonConvergenceError, PreconditionError
from mxsum.kernel import gamma_real, pfq_series, pochhammer


def test_gamma_values():
    assert gamma_real(1.0) == 1.0
    assert abs(gamma_real(0.5) - math.sqrt(math.pi)) < 1e-15
    assert abs(gamma_real(7.5) - 1871.2543057977884) < 1e-11
    # reflection: Gamma(-1/2) = -2 sqrt(pi)
    assert abs(gamma_real(-0.5) + 2.0 * math.sqrt(math.pi)) < 1e-14
    for x in (0.25, 1.0, 3.7, 12.0, 49.5, -2.5):
        assert gamma_real(x) == math.gamma(x)


def test_gamma_domain():
    for x in (0.0, -1.0, -7.0):
        with pytest.raises(PreconditionError):
            gamma_real(x)
    with pytest.raises(PreconditionError):
        gamma_real(51.0)


def test_pochhammer():
    assert pochhammer(2.5, 0) == 1.0
    assert pochhammer(3.0, 4) == 360.0
    assert pochhammer(0.5, 3) == 1.875
    assert pochhammer(0.0, 3) == 0.0
    got = pochhammer(1 + 2j, 2)
    assert abs(got - (-2 + 6j)) < 1e-14


def test_pfq_closed_forms():
    # 2F1(1,1;2;z) = -ln(1-z)/z
    r = pfq_series([1.0, 1.0], [2.0], 0.5)
    assert r.converged
    assert abs(r.value.real - 2.0 * math.log(2.0)) < 1e-14, r.value
    # 0F0(z) = e^z
    r2 = pfq_series([], [], 0.9)
    assert abs(r2.value.real - math.exp(0.9)) < 1e-14
    # z = 0 truncates immediately
    r3 = pfq_series([0.5, 1.5], [2.5], 0.0)
    assert r3.value == 1.0


def test_pfq_real_path_is_exactly_real():
    for z in (0.3, -0.7, 0.99):
        r = pfq_series([0.25, 1.0], [1.75], z)
        assert r.value.imag == 0.0, (z, r.value)


def test_pfq_complex_parameters():
    # 2F1(1, 3i; 1+3i; 1/e), oracle summed at 30 digits
    want = 1.4587522763769882 + 0.21097184880095135j
    r = pfq_series([1.0, 3j], [1 + 3j], math.exp(-1.0))
    assert r.converged
    assert abs(r.value - want) < 1e-13 * abs(want), r.value


def test_pfq_domain():
    with pytest.raises(NonConvergenceError):
        pfq_series([1.0], [2.0], 1.0)
    with pytest.raises(NonConvergenceError):
        pfq_series([1.0], [2.0], -1.2)
    for bad in (0.0, -2.0):
        with pytest.raises(PreconditionError):
            pfq_series([1.0], [bad], 0.5)
    # complex denominator away from the nonpositive integers is fine
    assert pfq_series([1.0], [-2.0 + 1j], 0.5).converged
