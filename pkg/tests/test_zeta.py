import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from delpezzo_mirror import config
from delpezzo_mirror.errors import NonconvergentDomain, PreconditionViolation
from delpezzo_mirror.topology import KaehlerClass
from delpezzo_mirror.zeta import (degeneration_factor, degeneration_normalized, degeneration_series,
                                  exponent, is_degenerate, zeta_transforms, zeta_triple)

# plain partial sums over |n| <= 40 at qX = 0.5+0.2i, qF = 0.1
ZETA_PLUS = 0.8226111981673704 + 0.06694175603435962j
ZETA_MINUS = 0.9327609703923223 - 0.013101686088126667j
ZETA_ZERO = 0.4984858645009928 - 0.1991103473477075j
# the degeneration factor at q' = 0.3+0.3i, qF = 0.15, same method
DEGEN_GENERIC = 0.4502871717938102 - 0.04182678121647668j


def test_exponents():
    assert [exponent("plus", n) for n in (-2, -1, 0, 1, 2)] == [5, 1, 0, 2, 7]
    assert [exponent("minus", n) for n in (-2, -1, 0, 1, 2)] == [7, 2, 0, 1, 5]
    assert [exponent("zero", n) for n in (-1, 0, 1, 2)] == [3, 0, 0, 3]
    assert [exponent("degeneration", n) for n in (-1, 0, 1, 2)] == [1, 0, 0, 1]


def test_zeta_against_fixed_window():
    z = zeta_triple(0.5 + 0.2j, 0.1, tol=1e-14)
    assert abs(z.plus - ZETA_PLUS) < 1e-13
    assert abs(z.minus - ZETA_MINUS) < 1e-13
    assert abs(z.zero - ZETA_ZERO) < 1e-13


def test_zeta_qf_zero():
    z = zeta_triple(0.4 + 0.1j, 0)
    assert (z.plus, z.minus, z.zero) == (1, 1, 1 - (0.4 + 0.1j))


@given(st.floats(0.01, 0.5), st.floats(0, 2 * math.pi))
def test_zeta_zero_vanishes_at_one(r, th):
    assert abs(zeta_triple(1, r * cmath.exp(1j * th)).zero) < 1e-12


def test_zeta_errors():
    with pytest.raises(PreconditionViolation):
        zeta_triple(0, 0.1)
    with pytest.raises(NonconvergentDomain):
        zeta_triple(0.5, 1.0)
    with pytest.raises(PreconditionViolation):
        zeta_transforms(0.5, 0)


def test_transforms_at_sample():
    assert max(zeta_transforms(0.7 + 0.1j, 0.2)) < 1e-9


def test_transforms_at_qc_one():
    qF = 0.3 - 0.1j
    assert abs(zeta_triple(qF, qF).plus) < 1e-12
    assert abs(zeta_triple(1, qF).zero) < 1e-12


@settings(max_examples=40, deadline=None)
@given(st.floats(0.05, 3), st.floats(0, 2 * math.pi), st.floats(0.01, 0.5), st.floats(0, 2 * math.pi))
def test_transforms_random(rc, tc, rf, tf):
    res = zeta_transforms(rc * cmath.exp(1j * tc), rf * cmath.exp(1j * tf))
    assert max(res) < 1e-9


def test_window_doubling_is_stable():
    a = zeta_triple(0.5 + 0.2j, 0.4)
    with config.series_settings(window_factor=2):
        b = zeta_triple(0.5 + 0.2j, 0.4)
    assert b.terms_used > a.terms_used
    assert abs(a.plus - b.plus) + abs(a.minus - b.minus) + abs(a.zero - b.zero) < 1e-12


def test_degeneration_factor():
    assert abs(degeneration_factor(1, 0.2 + 0.1j)) < 1e-13
    qF = 0.15 + 0.05j
    for k in range(-2, 3):
        assert abs(degeneration_factor(qF ** k, qF)) < 1e-8
        assert degeneration_normalized(qF ** k, qF) < 1e-12
    val = degeneration_factor(0.3 + 0.3j, 0.15)
    assert abs(val - DEGEN_GENERIC) < 1e-13
    assert abs(val) > 0.1
    assert degeneration_series(0.75, 0).value == 0.25


def test_is_degenerate():
    tau = 0.1 + 1.1j
    kc = KaehlerClass(2, tau, 0.4, (0.2 + 0.1j, 0.2 + 0.1j + 3 * (2 + tau)))
    rep = is_degenerate(kc, 0, 1)
    assert rep.degenerate and rep.witness == (2, 1)
    kc = KaehlerClass(2, 1j, 0.4, (0.0, 3 * (0.37 + 0.11j)))
    rep = is_degenerate(kc, 0, 1)
    assert not rep.degenerate and not rep.marginal
    assert abs(rep.distance - math.hypot(0.37, 0.11)) < 1e-12
    with pytest.raises(IndexError):
        is_degenerate(kc, 1, 1)


def test_marginal_band():
    kc = KaehlerClass(2, 1j, 0.4, (0.0, 3 * (1 + 5e-8)))
    rep = is_degenerate(kc, 0, 1, tol=1e-8)
    assert not rep.degenerate and rep.marginal
